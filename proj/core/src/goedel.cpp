#include "tmdyn/goedel.hpp"

#include <algorithm>
#include <limits>

namespace tmdyn {

namespace {

constexpr std::uint32_t kUnused = std::numeric_limits<std::uint32_t>::max();

Rational encode(const GoedelCoding& coding, const Word& word, std::uint32_t base) {
  // Horner from the far end: exact and linear in the word length
  Rational sum;
  const Rational b(static_cast<long>(base));
  for (std::size_t k = word.size(); k-- > 0;) {
    sum = (sum + Rational(static_cast<long>(coding.number(word[k])))) / b;
  }
  return sum;
}

}  // namespace

GoedelCoding::GoedelCoding(std::vector<std::string> symbol_names, std::vector<std::string> state_names,
                           std::vector<std::uint32_t> symbol_numbers, std::vector<std::uint32_t> state_numbers)
    : symbol_names_(std::move(symbol_names)),
      state_names_(std::move(state_names)),
      symbol_numbers_(std::move(symbol_numbers)),
      state_numbers_(std::move(state_numbers)) {
  if (symbol_names_.size() != symbol_numbers_.size() || state_names_.size() != state_numbers_.size()) {
    throw CodingError("coding table sizes do not match the name lists");
  }
  if (symbol_numbers_.empty() || state_numbers_.empty()) throw CodingError("empty alphabet in coding");
  if (symbol_numbers_[kBlank.index] != 0) throw CodingError("the blank must be numbered 0");
  const std::uint32_t na = base_left();
  const std::uint32_t total = base_right();
  std::vector<bool> used(total, false);
  symbol_by_number_.assign(na, kUnused);
  for (std::uint32_t i = 0; i < na; ++i) {
    const auto n = symbol_numbers_[i];
    if (n >= na || used[n]) throw CodingError("tape symbols must be numbered injectively in 0..|A|-1");
    used[n] = true;
    symbol_by_number_[n] = i;
  }
  for (const auto n : state_numbers_) {
    if (n < na || n >= total || used[n]) throw CodingError("states must be numbered injectively in |A|..|A|+|Q|-1");
    used[n] = true;
  }
}

GoedelCoding GoedelCoding::standard(const TuringMachine& m) {
  std::vector<std::uint32_t> symbols(m.symbol_count());
  std::vector<std::uint32_t> states(m.state_count());
  for (std::uint32_t i = 0; i < symbols.size(); ++i) symbols[i] = i;
  for (std::uint32_t i = 0; i < states.size(); ++i) states[i] = static_cast<std::uint32_t>(symbols.size()) + i;
  return GoedelCoding(m.symbol_names(), m.state_names(), std::move(symbols), std::move(states));
}

std::uint32_t GoedelCoding::number(Symbol a) const {
  if (a.index >= symbol_numbers_.size()) throw CodingError("unknown tape symbol #" + std::to_string(a.index));
  return symbol_numbers_[a.index];
}

std::uint32_t GoedelCoding::number(State q) const {
  if (q.index >= state_numbers_.size()) throw CodingError("unknown state #" + std::to_string(q.index));
  return state_numbers_[q.index];
}

std::uint32_t GoedelCoding::number(const Letter& l) const {
  return std::visit([this](const auto& v) { return number(v); }, l);
}

std::optional<Symbol> GoedelCoding::symbol_with_number(std::uint32_t n) const {
  if (n >= symbol_by_number_.size()) return std::nullopt;
  return Symbol{symbol_by_number_[n]};
}

std::optional<State> GoedelCoding::state_with_number(std::uint32_t n) const {
  const auto it = std::find(state_numbers_.begin(), state_numbers_.end(), n);
  if (it == state_numbers_.end()) return std::nullopt;
  return State{static_cast<std::uint32_t>(it - state_numbers_.begin())};
}

bool GoedelCoding::consistent_with(const TuringMachine& m) const {
  return symbol_names_ == m.symbol_names() && state_names_ == m.state_names();
}

Rational encode_left(const GoedelCoding& coding, const Word& word) {
  if (std::any_of(word.begin(), word.end(), is_state)) {
    throw CodingError("state letter in the left half of a dotted sequence");
  }
  return encode(coding, word, coding.base_left());
}

Rational encode_left(const GoedelCoding& coding, const std::vector<Symbol>& word) {
  return encode_left(coding, Word(word.begin(), word.end()));
}

Rational encode_right(const GoedelCoding& coding, const Word& word) {
  if (word.size() > 1 && std::any_of(word.begin() + 1, word.end(), is_state)) {
    throw CodingError("state letter after the control position");
  }
  return encode(coding, word, coding.base_right());
}

Interval cylinder_to_interval(const GoedelCoding& coding, const CylinderSet& c) {
  const bool left = c.side == Side::Left;
  const Rational lo = left ? encode_left(coding, c.word) : encode_right(coding, c.word);
  const Rational base(static_cast<long>(left ? coding.base_left() : coding.base_right()));
  return Interval(lo, lo + Rational::power(base, -static_cast<long>(c.word.size())));
}

Rect config_to_rect(const GoedelCoding& coding, const DottedSequence& s) {
  return Rect(cylinder_to_interval(coding, {Side::Left, Word(s.left_rev.begin(), s.left_rev.end())}),
              cylinder_to_interval(coding, {Side::Right, s.right}));
}

Point encode_point(const GoedelCoding& coding, const DottedSequence& s) {
  return {encode_left(coding, s.left_rev), encode_right(coding, s.right)};
}

namespace {

std::vector<std::uint32_t> digits_of(const Rational& value, std::uint32_t base, std::size_t depth) {
  std::vector<std::uint32_t> digits;
  Rational v = value;
  const Rational b(static_cast<long>(base));
  for (std::size_t k = 0; k < depth; ++k) {
    v *= b;
    const mpz_class d = v.floor();
    digits.push_back(static_cast<std::uint32_t>(d.get_ui()));
    v -= Rational(d);
  }
  return digits;
}

}  // namespace

DottedSequence decode_rect(const GoedelCoding& coding, const Rect& r, std::size_t depth_left,
                           std::size_t depth_right) {
  DottedSequence s;
  for (const auto d : digits_of(r.ix().lo(), coding.base_left(), depth_left)) {
    const auto a = coding.symbol_with_number(d);
    if (!a) throw DecodeError("x digit " + std::to_string(d) + " is not a tape symbol");
    s.left_rev.push_back(*a);
  }
  const auto right_digits = digits_of(r.iy().lo(), coding.base_right(), depth_right);
  for (std::size_t k = 0; k < right_digits.size(); ++k) {
    const auto d = right_digits[k];
    if (auto a = coding.symbol_with_number(d)) {
      s.right.emplace_back(*a);
    } else if (auto q = coding.state_with_number(d); q && k == 0) {
      s.right.emplace_back(*q);
    } else {
      throw DecodeError("y digit " + std::to_string(d) + " not admissible at position " + std::to_string(k));
    }
  }
  if (!rect_subset(r, config_to_rect(coding, s))) {
    throw DecodeError("rectangle " + r.str() + " is not inside a cylinder of depth (" + std::to_string(depth_left) +
                      ", " + std::to_string(depth_right) + ")");
  }
  return s;
}

std::optional<std::size_t> cylinder_depth(const Interval& iv, std::uint32_t base) {
  const Rational len = iv.length();
  if (len.is_zero() || len.numerator() != 1) return std::nullopt;
  mpz_class den = len.denominator();
  std::size_t n = 0;
  while (den > 1) {
    if (den % base != 0) return std::nullopt;
    den /= base;
    ++n;
  }
  return n;
}

}  // namespace tmdyn
