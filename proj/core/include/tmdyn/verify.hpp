#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "tmdyn/gshift.hpp"
#include "tmdyn/machine.hpp"
#include "tmdyn/nda.hpp"

namespace tmdyn {

/// Seeded generator with a bounded draw of its own, so sequences are the
/// same on every standard library.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform in [0, bound); bound > 0.
  std::uint64_t below(std::uint64_t bound);
  /// True with probability num/den.
  bool chance(std::uint64_t num, std::uint64_t den) { return below(den) < num; }

 private:
  std::mt19937_64 engine_;
};

struct RandomMachineLimits {
  std::size_t max_states = 4;
  std::size_t max_symbols = 3;
  /// Per-transition odds (out of 16) of erasing the control state.
  std::uint64_t erase_odds = 1;
};

/// Symbols "_", "a", "b", ...; states "q0", "q1", ...; the initial state is
/// q0 and never final.
TuringMachine random_machine(Rng& rng, const RandomMachineLimits& limits = {});

/// Head plus at most window - 1 other cells. The state is any state of m,
/// or erased with small probability.
TapeConfiguration random_configuration(const TuringMachine& m, Rng& rng, std::size_t window = 8);

/// Raw (uncanonicalized) sequence of at most `window` letters. Usually live;
/// sometimes terminated, with a symbol or nothing in the control slot.
DottedSequence random_dotted(const TuringMachine& m, Rng& rng, std::size_t window = 6);

struct Counterexample {
  std::string machine;  // machine-spec text
  std::string input;
  std::string expected;
  std::string actual;
};

struct SuiteResult {
  std::string name;
  std::size_t passed = 0;
  std::size_t failed = 0;
  std::vector<Counterexample> counterexamples;

  bool ok() const { return failed == 0; }
};

/// config_to_dotted(tm_step(c)) against gshift_step(config_to_dotted(c)).
bool check_symbolic(const TuringMachine& m, const ShiftRuleTable& rules, const TapeConfiguration& c,
                    Counterexample* failure = nullptr);

/// encode_point(gshift_step(s)) against nda_point_step(encode_point(s)).
bool check_microstate(const TuringMachine& m, const ShiftRuleTable& rules, const NdaMachine& nda,
                      const DottedSequence& s, Counterexample* failure = nullptr);

/// The cylinder rectangle of s, padded to its DoD, under macrostep against
/// the rectangle of gshift_apply.
bool check_macrostate(const TuringMachine& m, const ShiftRuleTable& rules, const NdaMachine& nda,
                      const DottedSequence& s, Counterexample* failure = nullptr);

/// Pads s with blanks until every cell of its matching DoD is explicit. A
/// terminated sequence gets at least its control slot.
DottedSequence pad_to_dod(const ShiftRuleTable& rules, const DottedSequence& s);

struct VerifyReport {
  std::uint64_t seed = 0;
  std::size_t trials = 0;
  std::vector<SuiteResult> suites;

  bool ok() const;
  /// Deterministic text; counterexamples in full, at most `max_shown` per
  /// suite.
  std::string str(std::size_t max_shown = 10) const;
};

/// Runs the symbolic, microstate and macrostate suites on one machine with
/// `trials` random inputs each. `nda` is usually compile_nda(m); passing a
/// different one checks that artifact against the machine.
VerifyReport verify_machine(const TuringMachine& m, const NdaMachine& nda, std::size_t trials, std::uint64_t seed);

/// Same suites, drawing a fresh random machine for every trial.
VerifyReport verify_random_machines(std::size_t trials, std::uint64_t seed, const RandomMachineLimits& limits = {});

}  // namespace tmdyn
