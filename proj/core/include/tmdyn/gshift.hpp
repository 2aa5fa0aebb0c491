#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "tmdyn/machine.hpp"

namespace tmdyn {

/// A letter of a dotted sequence: a tape symbol or a control state.
using Letter = std::variant<Symbol, State>;
using Word = std::vector<Letter>;

inline bool is_state(const Letter& l) { return std::holds_alternative<State>(l); }
inline const Letter kBlankLetter{kBlank};

/// Finite view of a bi-infinite dotted sequence s = (s'_L, s_R) with blank
/// continuation on both sides.
///
/// `left_rev` lists the cells left of the dot, nearest first; `right` starts
/// at the dot. A live sequence carries its control state at right[0]. A
/// sequence whose right word is empty or starts with a tape symbol is
/// terminated: no rule applies and it stays fixed.
///
/// Equality is word-level; padded and canonical forms differ. Padding matters
/// once words are read as cylinders.
struct DottedSequence {
  std::vector<Symbol> left_rev;
  Word right;

  bool terminated() const { return right.empty() || !is_state(right.front()); }
  std::optional<State> state() const;

  /// Only right[0] may be a state.
  bool well_formed() const;

  /// Trailing blanks stripped on both sides. A terminated sequence loses its
  /// blank control slot too, so the all-blank tape becomes ("", "").
  DottedSequence canonical() const;

  friend bool operator==(const DottedSequence&, const DottedSequence&) = default;
};

class NoConfigurationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Appends `left` blanks to the left word and `right` blanks to the right
/// word: the same sequence, read as a deeper cylinder.
DottedSequence pad_blanks(const DottedSequence& s, std::size_t left, std::size_t right);

/// left_rev = head ++ left, right = state ++ right (a blank stands in for an
/// erased state); canonical.
DottedSequence config_to_dotted(const TapeConfiguration& c);

/// Inverse of config_to_dotted on live sequences. Throws NoConfigurationError
/// for terminated sequences.
TapeConfiguration dotted_to_config(const DottedSequence& s);

/// A word around the dot, both halves in sequence order: `left` ends with
/// the letter just left of the dot, `right` starts at the dot.
struct DottedWord {
  Word left;
  Word right;

  std::size_t size() const { return left.size() + right.size(); }
  friend bool operator==(const DottedWord&, const DottedWord&) = default;
};

/// One branch of the generalized shift: if the DoD matches around the dot,
/// substitute the DoE in place, then move the dot `shift` cells to the right
/// (negative: to the left).
struct ShiftRule {
  State state;
  Symbol head;
  std::optional<Symbol> next;  // set for refined right-mover rules
  DottedWord dod;
  DottedWord doe;
  int shift = 0;

  bool is_identity() const { return shift == 0 && dod == doe; }
};

class ShiftRuleTable {
 public:
  /// Throws std::invalid_argument when a rule's DoE and DoD cover different
  /// cells or the rule misses its (state, head) key.
  explicit ShiftRuleTable(std::vector<ShiftRule> rules);

  const std::vector<ShiftRule>& rules() const { return rules_; }

  /// The rule whose DoD matches `s` under blank continuation, or nullptr.
  const ShiftRule* match(const DottedSequence& s) const;
  /// Brute-force count over all rules; a well-formed table yields exactly one
  /// match for every live sequence.
  std::size_t count_matches(const DottedSequence& s) const;

 private:
  std::vector<ShiftRule> rules_;
  std::map<std::pair<std::uint32_t, std::uint32_t>, std::vector<std::size_t>> by_key_;
};

bool dod_matches(const ShiftRule& rule, const DottedSequence& s);

/// One rule per (q, a) for left movers, stay moves and final states; one per
/// (q, a, a1) for right movers. Final states get identity rules.
ShiftRuleTable compile_rules(const TuringMachine& m);

/// Applies the generalized shift without canonicalizing: word lengths follow
/// the cylinder depths (a right move grows the left word by one and shrinks
/// the right word by one). nullopt when no rule matches (terminated input).
std::optional<DottedSequence> gshift_apply(const ShiftRuleTable& rules, const DottedSequence& s);

/// gshift_apply followed by canonicalization.
std::optional<DottedSequence> gshift_step(const ShiftRuleTable& rules, const DottedSequence& s);

std::string format_letter(const TuringMachine& m, const Letter& l);
/// Sequence order, e.g. "_ 1 . q0 1".
std::string format_dotted_word(const TuringMachine& m, const DottedWord& w);
std::string format_dotted(const TuringMachine& m, const DottedSequence& s);

/// One line per rule, `DoD -> DoE shift=<l>`, sorted by (state, symbol, a1).
std::string dump_rules(const TuringMachine& m, const ShiftRuleTable& rules);

}  // namespace tmdyn
