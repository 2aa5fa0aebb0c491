#include "tmdyn/nda.hpp"

#include <map>
#include <sstream>

namespace tmdyn {

Point AffineBranch::apply(const Point& p) const {
  return {translation_x + scale_x * p.x, translation_y + scale_y * p.y};
}

Rect AffineBranch::image(const Rect& r) const {
  return Rect(interval_affine(r.ix(), scale_x, translation_x), interval_affine(r.iy(), scale_y, translation_y));
}

bool AffineBranch::is_identity() const {
  return scale_x == Rational(1) && scale_y == Rational(1) && translation_x.is_zero() && translation_y.is_zero();
}

Rational branch_preimage(const Rational& scale, const Rational& offset, const Rational& x) {
  if (scale.is_zero()) throw SingularBranchError("branch with zero scaling has no simple zero");
  return (x - offset) / scale;
}

Point branch_preimage(const AffineBranch& branch, const Point& p) {
  return {branch_preimage(branch.scale_x, branch.translation_x, p.x),
          branch_preimage(branch.scale_y, branch.translation_y, p.y)};
}

PartitionConsistencyError::PartitionConsistencyError(const std::string& message, std::optional<std::size_t> step)
    : std::runtime_error(step ? "step " + std::to_string(*step) + ": " + message : message), step_(step) {}

NdaMachine::NdaMachine(GoedelCoding coding, std::vector<AffineBranch> branches,
                       std::shared_ptr<const TuringMachine> source)
    : coding_(std::move(coding)), branches_(std::move(branches)), source_(std::move(source)) {
  for (std::size_t i = 0; i < branches_.size(); ++i) {
    const auto& cell = branches_[i].cell.rect;
    for (std::size_t j = i + 1; j < branches_.size(); ++j) {
      if (cell.intersects(branches_[j].cell.rect)) {
        throw std::invalid_argument("partition cells " + std::to_string(i) + " and " + std::to_string(j) +
                                    " overlap");
      }
    }
    (void)branches_[i].image(cell);
  }
}

std::optional<std::size_t> NdaMachine::locate(const Point& p) const {
  for (std::size_t i = 0; i < branches_.size(); ++i) {
    if (branches_[i].cell.rect.contains(p)) return i;
  }
  return std::nullopt;
}

std::optional<std::size_t> NdaMachine::locate(const Rect& r) const {
  std::vector<std::size_t> hits;
  for (std::size_t i = 0; i < branches_.size(); ++i) {
    if (r.intersects(branches_[i].cell.rect)) hits.push_back(i);
  }
  if (hits.empty()) return std::nullopt;
  if (hits.size() == 1 && rect_subset(r, branches_[hits.front()].cell.rect)) return hits.front();

  std::ostringstream msg;
  msg << "rectangle " << r.str() << " is not inside a single partition cell; it meets";
  for (const auto i : hits) msg << " cell " << i << " " << branches_[i].cell.rect.str();
  if (hits.size() == 1) msg << " and the terminated region";
  msg << "; violated boundaries:";
  std::map<std::string, bool> seen;
  for (const auto i : hits) {
    const Rect& c = branches_[i].cell.rect;
    const auto inside = [](const Rational& v, const Interval& iv) { return iv.lo() < v && v < iv.hi(); };
    for (const auto* v : {&c.ix().lo(), &c.ix().hi()}) {
      if (inside(*v, r.ix()) && !seen["x=" + v->str()]) {
        seen["x=" + v->str()] = true;
        msg << " x=" << v->str();
      }
    }
    for (const auto* v : {&c.iy().lo(), &c.iy().hi()}) {
      if (inside(*v, r.iy()) && !seen["y=" + v->str()]) {
        seen["y=" + v->str()] = true;
        msg << " y=" << v->str();
      }
    }
  }
  throw PartitionConsistencyError(msg.str());
}

namespace {

/// x ↦ scale x + offset
struct Affine1d {
  Rational scale{1};
  Rational offset;

  void then(const Rational& a, const Rational& b) {
    // x ↦ a (scale x + offset) + b
    scale = a * scale;
    offset = a * offset + b;
  }
};

}  // namespace

AffineBranch derive_branch(const GoedelCoding& coding, const ShiftRule& rule) {
  const Rational bl(static_cast<long>(coding.base_left()));
  const Rational br(static_cast<long>(coding.base_right()));
  const auto psi = [&](const Letter& l) { return Rational(static_cast<long>(coding.number(l))); };

  AffineBranch branch;
  Word left_rev(rule.dod.left.rbegin(), rule.dod.left.rend());
  branch.cell.index = {rule.head, rule.state, rule.next};
  branch.cell.rect = Rect(cylinder_to_interval(coding, {Side::Left, left_rev}),
                          cylinder_to_interval(coding, {Side::Right, rule.dod.right}));

  // substitution: translate by the digit differences inside the DoD
  Affine1d fx;
  Affine1d fy;
  const std::size_t dl = rule.dod.left.size();
  for (std::size_t k = 1; k <= dl; ++k) {
    fx.offset += (psi(rule.doe.left[dl - k]) - psi(rule.dod.left[dl - k])) * Rational::power(bl, -static_cast<long>(k));
  }
  for (std::size_t k = 0; k < rule.dod.right.size(); ++k) {
    fy.offset += (psi(rule.doe.right[k]) - psi(rule.dod.right[k])) * Rational::power(br, -static_cast<long>(k + 1));
  }

  // dot moves; the crossing letter must lie inside the DoE window
  std::map<long, Letter> window;
  for (std::size_t k = 1; k <= dl; ++k) window.emplace(-static_cast<long>(k), rule.doe.left[dl - k]);
  for (std::size_t k = 0; k < rule.doe.right.size(); ++k) window.emplace(static_cast<long>(k), rule.doe.right[k]);
  long dot = 0;
  const auto crossing = [&](long position) {
    const auto it = window.find(position);
    if (it == window.end()) throw std::invalid_argument("shift moves the dot past the DoE; branch is not affine");
    return psi(it->second);
  };
  for (int l = rule.shift; l > 0; --l) {
    const Rational c = crossing(dot);
    fx.then(Rational(1) / bl, c / bl);
    fy.then(br, -c);
    ++dot;
  }
  for (int l = rule.shift; l < 0; ++l) {
    const Rational c = crossing(dot - 1);
    fx.then(bl, -c);
    fy.then(Rational(1) / br, c / br);
    --dot;
  }

  branch.scale_x = fx.scale;
  branch.translation_x = fx.offset;
  branch.scale_y = fy.scale;
  branch.translation_y = fy.offset;
  return branch;
}

NdaMachine compile_nda(std::shared_ptr<const TuringMachine> m, const GoedelCoding& coding) {
  if (!coding.consistent_with(*m)) throw CodingError("coding does not match the machine's alphabet and states");
  const auto rules = compile_rules(*m);
  std::vector<AffineBranch> branches;
  branches.reserve(rules.rules().size());
  for (const auto& rule : rules.rules()) branches.push_back(derive_branch(coding, rule));
  return NdaMachine(coding, std::move(branches), std::move(m));
}

NdaMachine compile_nda(const TuringMachine& m, const GoedelCoding& coding) {
  return compile_nda(std::make_shared<const TuringMachine>(m), coding);
}

Point nda_point_step(const NdaMachine& nda, const Point& p) {
  if (!Rect::unit().contains(p)) throw std::invalid_argument("point outside the unit square");
  const auto i = nda.locate(p);
  return i ? nda.branches()[*i].apply(p) : p;
}

Rect macrostep(const NdaMachine& nda, const Rect& r) {
  const auto i = nda.locate(r);
  return i ? nda.branches()[*i].image(r) : r;
}

MacroTrajectory run_macro(const NdaMachine& nda, const Rect& r0, std::size_t t_max) {
  MacroTrajectory run;
  run.rects.push_back(r0);
  for (std::size_t t = 0;; ++t) {
    std::optional<std::size_t> cell;
    try {
      cell = nda.locate(run.rects.back());
    } catch (const PartitionConsistencyError& e) {
      throw PartitionConsistencyError(e.what(), t);
    }
    run.cells.push_back(cell);
    if (!cell || nda.branches()[*cell].is_identity()) {
      run.halted = true;
      break;
    }
    if (t == t_max) break;
    run.rects.push_back(nda.branches()[*cell].image(run.rects.back()));
  }
  return run;
}

PointTrajectory run_points(const NdaMachine& nda, const Point& p0, std::size_t t_max) {
  PointTrajectory run;
  run.points.push_back(p0);
  for (std::size_t t = 0;; ++t) {
    const auto cell = nda.locate(run.points.back());
    run.cells.push_back(cell);
    if (!cell || nda.branches()[*cell].is_identity()) {
      run.halted = true;
      break;
    }
    if (t == t_max) break;
    run.points.push_back(nda.branches()[*cell].apply(run.points.back()));
  }
  return run;
}

std::string format_cell_index(const GoedelCoding& coding, const CellIndex& index) {
  std::string out = "(" + coding.symbol_names().at(index.head.index) + "," + coding.state_names().at(index.state.index);
  if (index.next) out += "," + coding.symbol_names().at(index.next->index);
  return out + ")";
}

}  // namespace tmdyn
