#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace tmdyn {

/// Index of a tape symbol in a machine's alphabet. Index 0 is always the blank.
struct Symbol {
  std::uint32_t index = 0;
  friend auto operator<=>(const Symbol&, const Symbol&) = default;
};

/// Index of a control state in a machine's state list.
struct State {
  std::uint32_t index = 0;
  friend auto operator<=>(const State&, const State&) = default;
};

inline constexpr Symbol kBlank{0};

enum class Move : char { Left = 'L', Right = 'R', Stay = 'S' };

/// Result of delta(q, a). An empty `next` erases the control state: the
/// machine stops and its tape is left for inspection.
struct Transition {
  std::optional<State> next;
  Symbol write;
  Move move = Move::Stay;

  friend bool operator==(const Transition&, const Transition&) = default;
};

/// Reserved target-state token for transitions that erase the control state.
inline constexpr std::string_view kEraseStateToken = "!";

class MachineSpecError : public std::runtime_error {
 public:
  enum class Kind {
    Syntax,
    Declaration,
    UndeclaredSymbol,
    UndeclaredState,
    MissingTransition,
    DuplicateTransition,
    FinalStateTransition,
  };

  MachineSpecError(Kind kind, const std::string& message, int line = 0, int column = 0);

  Kind kind() const { return kind_; }
  /// 1-based source position; 0 when the error is not tied to a line.
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  Kind kind_;
  int line_;
  int column_;
};

/// Name-level description of a machine, as written in a machine-spec file.
struct MachineDefinition {
  struct Rule {
    std::string state;
    std::string read;
    std::string next;  // kEraseStateToken erases the control state
    std::string write;
    Move move = Move::Stay;
    int line = 0;
    int column = 0;
  };

  std::string blank;
  std::vector<std::string> symbols;
  std::vector<std::string> states;
  std::string initial;
  std::vector<std::string> finals;
  std::vector<Rule> rules;
};

/// Deterministic single-tape Turing machine with a distinguished blank and
/// final states. Immutable once constructed.
class TuringMachine {
 public:
  /// Validates the definition; throws MachineSpecError.
  explicit TuringMachine(const MachineDefinition& definition);

  std::size_t symbol_count() const { return symbols_.size(); }
  std::size_t state_count() const { return states_.size(); }

  Symbol blank() const { return kBlank; }
  State initial() const { return initial_; }
  bool is_final(State q) const { return final_[q.index]; }

  const std::string& symbol_name(Symbol a) const { return symbols_.at(a.index); }
  const std::string& state_name(State q) const { return states_.at(q.index); }
  std::optional<Symbol> find_symbol(std::string_view name) const;
  std::optional<State> find_state(std::string_view name) const;

  /// Tape symbols in index order; the blank comes first, the remaining
  /// symbols keep their declared order.
  const std::vector<std::string>& symbol_names() const { return symbols_; }
  const std::vector<std::string>& state_names() const { return states_; }

  /// nullptr for final states.
  const Transition* transition(State q, Symbol a) const;

  /// The definition this machine was built from, normalized (blank first).
  MachineDefinition definition() const;

 private:
  std::vector<std::string> symbols_;
  std::vector<std::string> states_;
  std::vector<bool> final_;
  State initial_;
  std::vector<std::optional<Transition>> table_;  // [state * |A| + symbol]
};

/// Parses the line-oriented machine-spec format.
TuringMachine parse_tm(std::string_view text);

/// Machine-spec text that parse_tm reads back to an equal machine.
std::string format_tm(const TuringMachine& m);

/// Instantaneous description with implicit blank continuation on both sides.
struct TapeConfiguration {
  std::vector<Symbol> left;   // cells left of the head, nearest first
  Symbol head;
  std::optional<State> state; // empty once the control state was erased
  std::vector<Symbol> right;  // cells right of the head, nearest first

  /// Trailing blanks stripped from both sides.
  TapeConfiguration canonical() const;

  /// Compares canonical forms.
  friend bool operator==(const TapeConfiguration& a, const TapeConfiguration& b);
};

struct Halted {
  TapeConfiguration config;
};

using StepResult = std::variant<TapeConfiguration, Halted>;

/// True when no transition applies: the state is final or was erased.
bool is_halting(const TuringMachine& m, const TapeConfiguration& c);

/// One step of the machine; the resulting configuration is canonical.
StepResult tm_step(const TuringMachine& m, const TapeConfiguration& c);

struct Trajectory {
  std::vector<TapeConfiguration> configurations;
  bool halted = false;

  std::size_t steps() const { return configurations.size() - 1; }
};

/// c0 .. c_T with T = min(t_max, halting time).
Trajectory tm_run(const TuringMachine& m, const TapeConfiguration& c0, std::size_t t_max);

/// Splits a tape word: "_" is the empty word, commas separate symbols when
/// present, otherwise the longest declared symbol name is matched greedily.
std::vector<Symbol> parse_word(const TuringMachine& m, std::string_view text);
std::string format_word(const TuringMachine& m, const std::vector<Symbol>& word);

/// "<left-word> <state> <head-sym> <right-word>"; the left word is written in
/// tape order (the cell next to the head last).
TapeConfiguration parse_configuration(const TuringMachine& m, std::string_view text);
std::string format_configuration(const TuringMachine& m, const TapeConfiguration& c);

}  // namespace tmdyn
