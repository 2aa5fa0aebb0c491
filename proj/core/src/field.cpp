#include "tmdyn/field.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <thread>

namespace tmdyn {

std::string to_string(ArithmeticMode mode) { return mode == ArithmeticMode::Exact ? "exact" : "float"; }

Grid::Grid(std::size_t n) : n_(n) {
  if (n == 0) throw std::invalid_argument("grid needs at least one cell per axis");
}

Rect Grid::cell(std::size_t i, std::size_t j) const {
  const long n = static_cast<long>(n_);
  return Rect(Interval(Rational(static_cast<long>(i), n), Rational(static_cast<long>(i + 1), n)),
              Interval(Rational(static_cast<long>(j), n), Rational(static_cast<long>(j + 1), n)));
}

template <class T>
T GridDensity<T>::total() const {
  T sum{};
  for (const auto& m : mass) sum += m;
  return sum;
}

template <class T>
TransferMatrix<T>::TransferMatrix(std::size_t n, std::vector<std::vector<Entry>> columns)
    : n_(n), columns_(std::move(columns)) {
  if (columns_.size() != n_ * n_) throw DimensionMismatchError("transfer matrix needs n^2 columns");
}

template <class T>
T TransferMatrix<T>::column_sum(std::size_t source) const {
  T sum{};
  for (const auto& e : column(source)) sum += e.value;
  return sum;
}

template <class T>
std::size_t TransferMatrix<T>::nonzeros() const {
  std::size_t total = 0;
  for (const auto& c : columns_) total += c.size();
  return total;
}

template <class T>
std::size_t TransferMatrix<T>::max_column_nonzeros() const {
  std::size_t most = 0;
  for (const auto& c : columns_) most = std::max(most, c.size());
  return most;
}

template <class T>
std::vector<std::tuple<std::uint32_t, std::uint32_t, T>> TransferMatrix<T>::triplets() const {
  std::vector<std::tuple<std::uint32_t, std::uint32_t, T>> out;
  out.reserve(nonzeros());
  for (std::uint32_t s = 0; s < columns_.size(); ++s) {
    for (const auto& e : columns_[s]) out.emplace_back(e.target, s, e.value);
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    return std::tie(std::get<0>(a), std::get<1>(a)) < std::tie(std::get<0>(b), std::get<1>(b));
  });
  return out;
}

namespace {

std::size_t grid_floor(const Rational& v, std::size_t n) {
  const mpz_class f = (v * Rational(static_cast<long>(n))).floor();
  return std::min<std::size_t>(f.get_ui(), n - 1);
}

/// Fractions of the interval's length per grid slot; a degenerate interval
/// puts all weight on the slot containing it.
std::vector<std::pair<std::uint32_t, Rational>> axis_fractions(const Interval& iv, std::size_t n) {
  std::vector<std::pair<std::uint32_t, Rational>> out;
  const Rational len = iv.length();
  if (len.is_zero()) {
    out.emplace_back(static_cast<std::uint32_t>(grid_floor(iv.lo(), n)), Rational(1));
    return out;
  }
  const long nn = static_cast<long>(n);
  const std::size_t first = grid_floor(iv.lo(), n);
  for (std::size_t k = first; k < n; ++k) {
    const Rational lo(static_cast<long>(k), nn);
    if (lo >= iv.hi()) break;
    const Rational hi(static_cast<long>(k + 1), nn);
    const Rational overlap = min(hi, iv.hi()) - max(lo, iv.lo());
    if (overlap.sign() > 0) out.emplace_back(static_cast<std::uint32_t>(k), overlap / len);
  }
  return out;
}

struct BranchFootprint {
  std::size_t ix0, ix1, iy0, iy1;  // inclusive grid ranges
};

std::vector<TransferMatrix<Rational>::Entry> exact_column(const NdaMachine& nda,
                                                           const std::vector<BranchFootprint>& footprints,
                                                           const Grid& grid, std::size_t i, std::size_t j) {
  const Rect cell = grid.cell(i, j);
  const Rational cell_area = rect_measure(cell);
  std::map<std::uint32_t, Rational> weights;
  Rational covered;
  const auto& branches = nda.branches();
  for (std::size_t b = 0; b < branches.size(); ++b) {
    const auto& fp = footprints[b];
    if (i < fp.ix0 || i > fp.ix1 || j < fp.iy0 || j > fp.iy1) continue;
    const auto fragment = cell.intersect(branches[b].cell.rect);
    if (!fragment) continue;
    const Rational area = rect_measure(*fragment);
    if (area.is_zero()) continue;
    covered += area;
    const Rect image = branches[b].image(*fragment);
    const Rational share = area / cell_area;
    const auto xs = axis_fractions(image.ix(), grid.n());
    const auto ys = axis_fractions(image.iy(), grid.n());
    for (const auto& [ty, fy] : ys) {
      for (const auto& [tx, fx] : xs) {
        weights[static_cast<std::uint32_t>(grid.index(tx, ty))] += share * fx * fy;
      }
    }
  }
  if (covered < cell_area) {
    // terminated region: identity
    weights[static_cast<std::uint32_t>(grid.index(i, j))] += (cell_area - covered) / cell_area;
  }
  std::vector<TransferMatrix<Rational>::Entry> column;
  column.reserve(weights.size());
  for (auto& [target, value] : weights) {
    if (!value.is_zero()) column.push_back({target, std::move(value)});
  }
  return column;
}

template <class T>
T convert(const Rational& r) {
  if constexpr (std::is_same_v<T, Rational>) {
    return r;
  } else {
    return r.to_double();
  }
}

}  // namespace

template <class T>
TransferMatrix<T> build_transfer(const NdaMachine& nda, std::size_t n, unsigned threads) {
  const Grid grid(n);
  std::vector<BranchFootprint> footprints;
  for (const auto& b : nda.branches()) {
    const Rect& r = b.cell.rect;
    footprints.push_back({grid_floor(r.ix().lo(), n), grid_floor(r.ix().hi(), n), grid_floor(r.iy().lo(), n),
                          grid_floor(r.iy().hi(), n)});
  }

  std::vector<std::vector<typename TransferMatrix<T>::Entry>> columns(grid.size());
  const auto work = [&](std::size_t begin, std::size_t end) {
    for (std::size_t k = begin; k < end; ++k) {
      const auto exact = exact_column(nda, footprints, grid, k % n, k / n);
      auto& column = columns[k];
      column.reserve(exact.size());
      for (const auto& e : exact) column.push_back({e.target, convert<T>(e.value)});
    }
  };

  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, grid.size()));
  if (threads <= 1) {
    work(0, grid.size());
  } else {
    std::vector<std::thread> pool;
    const std::size_t chunk = (grid.size() + threads - 1) / threads;
    for (unsigned t = 0; t < threads; ++t) {
      const std::size_t begin = t * chunk;
      const std::size_t end = std::min(grid.size(), begin + chunk);
      if (begin < end) pool.emplace_back(work, begin, end);
    }
    for (auto& th : pool) th.join();
  }
  return TransferMatrix<T>(n, std::move(columns));
}

template <class T>
GridDensity<T> fp_step(const TransferMatrix<T>& m, const GridDensity<T>& u) {
  if (u.n != m.n() || u.mass.size() != m.size()) {
    throw DimensionMismatchError("density of size " + std::to_string(u.n) + " against transfer matrix of size " +
                                 std::to_string(m.n()));
  }
  GridDensity<T> out{u.n, std::vector<T>(u.mass.size())};
  for (std::size_t s = 0; s < u.mass.size(); ++s) {
    const T& source = u.mass[s];
    if (source == T{}) continue;
    for (const auto& e : m.column(s)) out.mass[e.target] += e.value * source;
  }
  return out;
}

template <class T>
GridDensity<T> amari_euler_step(const TransferMatrix<T>& m, const GridDensity<T>& u, double tau, Activation f) {
  if (tau != 1.0 || f != Activation::Identity) {
    throw NotImplementedError(
        "Amari step supports only tau = 1 with identity activation; other time constants, sigmoidal "
        "activations and higher-order schemes are an open question of the construction");
  }
  // u(t + tau) = ∫ w(x, x') f(u(x', t)) dx' with f = id
  return fp_step(m, u);
}

template <class T>
GridDensity<T> rasterize_rect(const Rect& r, std::size_t n) {
  const Grid grid(n);
  const Rational area = rect_measure(r);
  if (area.is_zero()) throw std::invalid_argument("cannot rasterize zero-measure rectangle " + r.str());
  GridDensity<T> out{n, std::vector<T>(grid.size())};
  const auto xs = axis_fractions(r.ix(), n);
  const auto ys = axis_fractions(r.iy(), n);
  for (const auto& [j, fy] : ys) {
    for (const auto& [i, fx] : xs) out.mass[grid.index(i, j)] = convert<T>(fx * fy);
  }
  return out;
}

template <class T>
T l1_distance(const GridDensity<T>& u, const GridDensity<T>& v) {
  if (u.n != v.n || u.mass.size() != v.mass.size()) throw DimensionMismatchError("densities on different grids");
  T sum{};
  for (std::size_t k = 0; k < u.mass.size(); ++k) {
    if constexpr (std::is_same_v<T, Rational>) {
      const Rational d = u.mass[k] - v.mass[k];
      sum += d.sign() < 0 ? -d : d;
    } else {
      sum += std::abs(u.mass[k] - v.mass[k]);
    }
  }
  return sum;
}

FloatDensity to_float(const ExactDensity& u) {
  FloatDensity out{u.n, {}};
  out.mass.reserve(u.mass.size());
  for (const auto& m : u.mass) out.mass.push_back(m.to_double());
  return out;
}

TransferMatrix<double> to_float(const TransferMatrix<Rational>& m) {
  std::vector<std::vector<TransferMatrix<double>::Entry>> columns(m.size());
  for (std::size_t s = 0; s < m.size(); ++s) {
    for (const auto& e : m.column(s)) columns[s].push_back({e.target, e.value.to_double()});
  }
  return TransferMatrix<double>(m.n(), std::move(columns));
}

template struct GridDensity<Rational>;
template struct GridDensity<double>;
template class TransferMatrix<Rational>;
template class TransferMatrix<double>;
template TransferMatrix<Rational> build_transfer<Rational>(const NdaMachine&, std::size_t, unsigned);
template TransferMatrix<double> build_transfer<double>(const NdaMachine&, std::size_t, unsigned);
template ExactDensity fp_step(const TransferMatrix<Rational>&, const ExactDensity&);
template FloatDensity fp_step(const TransferMatrix<double>&, const FloatDensity&);
template ExactDensity amari_euler_step(const TransferMatrix<Rational>&, const ExactDensity&, double, Activation);
template FloatDensity amari_euler_step(const TransferMatrix<double>&, const FloatDensity&, double, Activation);
template ExactDensity rasterize_rect<Rational>(const Rect&, std::size_t);
template FloatDensity rasterize_rect<double>(const Rect&, std::size_t);
template Rational l1_distance(const ExactDensity&, const ExactDensity&);
template double l1_distance(const FloatDensity&, const FloatDensity&);

}  // namespace tmdyn
