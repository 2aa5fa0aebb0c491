#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "tmdyn/geometry.hpp"
#include "tmdyn/gshift.hpp"

namespace tmdyn {

class CodingError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Gödel numbering psi of tape symbols and states together with the bases of
/// the two half-sequences.
///
/// Tape symbols take the numbers 0..|A|-1 with psi(blank) = 0; states take
/// |A|..|A|+|Q|-1. b_L = |A| and b_R = |A| + |Q|, since the right half carries
/// one state letter followed by tape symbols.
class GoedelCoding {
 public:
  /// Throws CodingError unless the numbering satisfies the invariants above.
  GoedelCoding(std::vector<std::string> symbol_names, std::vector<std::string> state_names,
               std::vector<std::uint32_t> symbol_numbers, std::vector<std::uint32_t> state_numbers);

  /// Symbols numbered by index, states after them in declaration order.
  static GoedelCoding standard(const TuringMachine& m);

  std::uint32_t base_left() const { return static_cast<std::uint32_t>(symbol_numbers_.size()); }
  std::uint32_t base_right() const {
    return static_cast<std::uint32_t>(symbol_numbers_.size() + state_numbers_.size());
  }

  std::uint32_t number(Symbol a) const;
  std::uint32_t number(State q) const;
  std::uint32_t number(const Letter& l) const;

  /// Inverse lookups; nullopt for numbers outside the respective block.
  std::optional<Symbol> symbol_with_number(std::uint32_t n) const;
  std::optional<State> state_with_number(std::uint32_t n) const;

  const std::vector<std::string>& symbol_names() const { return symbol_names_; }
  const std::vector<std::string>& state_names() const { return state_names_; }
  const std::vector<std::uint32_t>& symbol_numbers() const { return symbol_numbers_; }
  const std::vector<std::uint32_t>& state_numbers() const { return state_numbers_; }

  /// Same alphabet sizes and names as the machine.
  bool consistent_with(const TuringMachine& m) const;

  friend bool operator==(const GoedelCoding&, const GoedelCoding&) = default;

 private:
  std::vector<std::string> symbol_names_;
  std::vector<std::string> state_names_;
  std::vector<std::uint32_t> symbol_numbers_;
  std::vector<std::uint32_t> state_numbers_;
  std::vector<std::uint32_t> symbol_by_number_;
};

/// Sum over k = 1..n of psi(w_k) b_L^-k; the word lists cells nearest to the
/// dot first. Throws CodingError for state letters or unknown symbols.
Rational encode_left(const GoedelCoding& coding, const Word& word);
Rational encode_left(const GoedelCoding& coding, const std::vector<Symbol>& word);

/// Sum over k = 0..n-1 of psi(w_k) b_R^-(k+1). Only w_0 may be a state.
Rational encode_right(const GoedelCoding& coding, const Word& word);

enum class Side { Left, Right };

/// All sequences agreeing with `word` on one side of the dot.
struct CylinderSet {
  Side side = Side::Left;
  Word word;
};

/// [psi(w), psi(w) + b^-n): the infimum and supremum reached by blank and
/// maximal continuations.
Interval cylinder_to_interval(const GoedelCoding& coding, const CylinderSet& c);

/// Cylinder rectangle of the pair (s'_L, s_R); padding blanks narrow it.
Rect config_to_rect(const GoedelCoding& coding, const DottedSequence& s);

/// Symbologram point of the blank continuation: the inf corner of
/// config_to_rect.
Point encode_point(const GoedelCoding& coding, const DottedSequence& s);

class DecodeError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// The dotted word with |s'_L| = depth_left and |s_R| = depth_right whose
/// cylinder rectangle contains r. Throws DecodeError when r crosses a
/// cylinder boundary at that depth or a digit is not admissible there.
DottedSequence decode_rect(const GoedelCoding& coding, const Rect& r, std::size_t depth_left,
                           std::size_t depth_right);

/// n with length(iv) = base^-n, if any.
std::optional<std::size_t> cylinder_depth(const Interval& iv, std::uint32_t base);

}  // namespace tmdyn
