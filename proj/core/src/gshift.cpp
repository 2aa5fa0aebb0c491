#include "tmdyn/gshift.hpp"

#include <algorithm>
#include <deque>
#include <sstream>

namespace tmdyn {

namespace {

Letter letter_at_left(const DottedSequence& s, std::size_t k) {
  // k = 1 is the cell just left of the dot
  return k <= s.left_rev.size() ? Letter{s.left_rev[k - 1]} : kBlankLetter;
}

Letter letter_at_right(const DottedSequence& s, std::size_t k) {
  return k < s.right.size() ? s.right[k] : kBlankLetter;
}

}  // namespace

std::optional<State> DottedSequence::state() const {
  if (terminated()) return std::nullopt;
  return std::get<State>(right.front());
}

bool DottedSequence::well_formed() const {
  for (std::size_t k = 1; k < right.size(); ++k) {
    if (is_state(right[k])) return false;
  }
  return true;
}

DottedSequence DottedSequence::canonical() const {
  DottedSequence c = *this;
  while (!c.left_rev.empty() && c.left_rev.back() == kBlank) c.left_rev.pop_back();
  while (!c.right.empty() && c.right.back() == kBlankLetter) c.right.pop_back();
  return c;
}

DottedSequence pad_blanks(const DottedSequence& s, std::size_t left, std::size_t right) {
  DottedSequence p = s;
  p.left_rev.insert(p.left_rev.end(), left, kBlank);
  p.right.insert(p.right.end(), right, kBlankLetter);
  return p;
}

DottedSequence config_to_dotted(const TapeConfiguration& c) {
  DottedSequence s;
  s.left_rev.push_back(c.head);
  s.left_rev.insert(s.left_rev.end(), c.left.begin(), c.left.end());
  s.right.push_back(c.state ? Letter{*c.state} : kBlankLetter);
  for (const Symbol a : c.right) s.right.emplace_back(a);
  return s.canonical();
}

TapeConfiguration dotted_to_config(const DottedSequence& s) {
  if (s.terminated()) throw NoConfigurationError("terminated sequence has no control state");
  if (!s.well_formed()) throw std::invalid_argument("state letter after the control position");
  TapeConfiguration c;
  c.head = s.left_rev.empty() ? kBlank : s.left_rev.front();
  if (s.left_rev.size() > 1) c.left.assign(s.left_rev.begin() + 1, s.left_rev.end());
  c.state = std::get<State>(s.right.front());
  for (std::size_t k = 1; k < s.right.size(); ++k) c.right.push_back(std::get<Symbol>(s.right[k]));
  return c.canonical();
}

ShiftRuleTable::ShiftRuleTable(std::vector<ShiftRule> rules) : rules_(std::move(rules)) {
  for (std::size_t i = 0; i < rules_.size(); ++i) {
    const auto& r = rules_[i];
    if (r.dod.left.size() != r.doe.left.size() || r.dod.right.size() != r.doe.right.size()) {
      throw std::invalid_argument("DoE must cover the same cells as the DoD");
    }
    if (r.dod.left.empty() || r.dod.right.empty() || r.dod.left.back() != Letter{r.head} ||
        r.dod.right.front() != Letter{r.state}) {
      throw std::invalid_argument("rule DoD must read 'head . state'");
    }
    by_key_[{r.state.index, r.head.index}].push_back(i);
  }
}

bool dod_matches(const ShiftRule& rule, const DottedSequence& s) {
  const auto& left = rule.dod.left;
  for (std::size_t k = 1; k <= left.size(); ++k) {
    if (left[left.size() - k] != letter_at_left(s, k)) return false;
  }
  for (std::size_t k = 0; k < rule.dod.right.size(); ++k) {
    if (rule.dod.right[k] != letter_at_right(s, k)) return false;
  }
  return true;
}

const ShiftRule* ShiftRuleTable::match(const DottedSequence& s) const {
  const auto q = s.state();
  if (!q) return nullptr;
  const Symbol head = s.left_rev.empty() ? kBlank : s.left_rev.front();
  const auto it = by_key_.find({q->index, head.index});
  if (it == by_key_.end()) return nullptr;
  for (const std::size_t i : it->second) {
    if (dod_matches(rules_[i], s)) return &rules_[i];
  }
  return nullptr;
}

std::size_t ShiftRuleTable::count_matches(const DottedSequence& s) const {
  return static_cast<std::size_t>(
      std::count_if(rules_.begin(), rules_.end(), [&](const ShiftRule& r) { return dod_matches(r, s); }));
}

ShiftRuleTable compile_rules(const TuringMachine& m) {
  std::vector<ShiftRule> rules;
  for (std::uint32_t qi = 0; qi < m.state_count(); ++qi) {
    const State q{qi};
    for (std::uint32_t ai = 0; ai < m.symbol_count(); ++ai) {
      const Symbol a{ai};
      const Transition* t = m.transition(q, a);
      if (!t) {
        ShiftRule r{q, a, std::nullopt, {{a}, {q}}, {{a}, {q}}, 0};
        rules.push_back(std::move(r));
        continue;
      }
      const Letter target = t->next ? Letter{*t->next} : kBlankLetter;
      const Letter written{t->write};
      switch (t->move) {
        case Move::Left:
          rules.push_back({q, a, std::nullopt, {{a}, {q}}, {{target}, {written}}, -1});
          break;
        case Move::Stay:
          rules.push_back({q, a, std::nullopt, {{a}, {q}}, {{written}, {target}}, 0});
          break;
        case Move::Right:
          for (std::uint32_t bi = 0; bi < m.symbol_count(); ++bi) {
            const Symbol b{bi};
            rules.push_back({q, a, b, {{a}, {q, b}}, {{written}, {b, target}}, +1});
          }
          break;
      }
    }
  }
  return ShiftRuleTable(std::move(rules));
}

std::optional<DottedSequence> gshift_apply(const ShiftRuleTable& rules, const DottedSequence& s) {
  const ShiftRule* rule = rules.match(s);
  if (!rule) return std::nullopt;

  std::deque<Letter> left(s.left_rev.begin(), s.left_rev.end());
  std::deque<Letter> right(s.right.begin(), s.right.end());
  while (left.size() < rule->dod.left.size()) left.push_back(kBlankLetter);
  while (right.size() < rule->dod.right.size()) right.push_back(kBlankLetter);

  // s ⊕ G(s)
  const auto& new_left = rule->doe.left;
  for (std::size_t k = 1; k <= new_left.size(); ++k) left[k - 1] = new_left[new_left.size() - k];
  for (std::size_t k = 0; k < rule->doe.right.size(); ++k) right[k] = rule->doe.right[k];

  // sigma^F
  for (int l = rule->shift; l > 0; --l) {
    left.push_front(right.empty() ? kBlankLetter : right.front());
    if (!right.empty()) right.pop_front();
  }
  for (int l = rule->shift; l < 0; ++l) {
    right.push_front(left.empty() ? kBlankLetter : left.front());
    if (!left.empty()) left.pop_front();
  }

  DottedSequence out;
  for (const auto& l : left) {
    if (is_state(l)) throw std::logic_error("shift rule left a state letter behind the dot");
    out.left_rev.push_back(std::get<Symbol>(l));
  }
  out.right.assign(right.begin(), right.end());
  if (!out.well_formed()) throw std::logic_error("shift rule produced a misplaced state letter");
  return out;
}

std::optional<DottedSequence> gshift_step(const ShiftRuleTable& rules, const DottedSequence& s) {
  auto next = gshift_apply(rules, s);
  if (next) return next->canonical();
  return next;
}

std::string format_letter(const TuringMachine& m, const Letter& l) {
  if (is_state(l)) return m.state_name(std::get<State>(l));
  return m.symbol_name(std::get<Symbol>(l));
}

std::string format_dotted_word(const TuringMachine& m, const DottedWord& w) {
  std::string out;
  for (const auto& l : w.left) out += format_letter(m, l) + " ";
  out += ".";
  for (const auto& l : w.right) out += " " + format_letter(m, l);
  return out;
}

std::string format_dotted(const TuringMachine& m, const DottedSequence& s) {
  DottedWord w;
  for (auto it = s.left_rev.rbegin(); it != s.left_rev.rend(); ++it) w.left.emplace_back(*it);
  w.right = s.right;
  return format_dotted_word(m, w);
}

std::string dump_rules(const TuringMachine& m, const ShiftRuleTable& table) {
  std::vector<const ShiftRule*> order;
  for (const auto& r : table.rules()) order.push_back(&r);
  std::stable_sort(order.begin(), order.end(), [](const ShiftRule* a, const ShiftRule* b) {
    return std::tie(a->state, a->head, a->next) < std::tie(b->state, b->head, b->next);
  });
  std::ostringstream out;
  for (const auto* r : order) {
    out << format_dotted_word(m, r->dod) << " -> " << format_dotted_word(m, r->doe) << " shift=" << r->shift
        << "\n";
  }
  return out.str();
}

}  // namespace tmdyn
