#include "tmdyn/verify.hpp"

#include <sstream>

#include "tmdyn/goedel.hpp"

namespace tmdyn {

std::uint64_t Rng::below(std::uint64_t bound) {
  if (bound == 0) throw std::invalid_argument("Rng::below needs a positive bound");
  const std::uint64_t threshold = (0 - bound) % bound;
  for (;;) {
    const std::uint64_t r = engine_();
    if (r >= threshold) return r % bound;
  }
}

TuringMachine random_machine(Rng& rng, const RandomMachineLimits& limits) {
  const std::size_t symbols = 1 + rng.below(limits.max_symbols);
  const std::size_t states = 1 + rng.below(limits.max_states);
  MachineDefinition def;
  def.blank = "_";
  def.symbols.push_back("_");
  for (std::size_t i = 1; i < symbols; ++i) def.symbols.push_back(std::string(1, static_cast<char>('a' + i - 1)));
  for (std::size_t i = 0; i < states; ++i) def.states.push_back("q" + std::to_string(i));
  def.initial = "q0";
  std::vector<bool> final(states, false);
  for (std::size_t q = 1; q < states; ++q) {
    final[q] = rng.chance(1, 3);
    if (final[q]) def.finals.push_back(def.states[q]);
  }
  constexpr Move moves[] = {Move::Left, Move::Right, Move::Stay};
  for (std::size_t q = 0; q < states; ++q) {
    if (final[q]) continue;
    for (std::size_t a = 0; a < symbols; ++a) {
      MachineDefinition::Rule r;
      r.state = def.states[q];
      r.read = def.symbols[a];
      r.next = rng.chance(limits.erase_odds, 16) ? std::string(kEraseStateToken) : def.states[rng.below(states)];
      r.write = def.symbols[rng.below(symbols)];
      r.move = moves[rng.below(3)];
      def.rules.push_back(std::move(r));
    }
  }
  return TuringMachine(def);
}

namespace {

Symbol random_symbol(const TuringMachine& m, Rng& rng) {
  return Symbol{static_cast<std::uint32_t>(rng.below(m.symbol_count()))};
}

State random_state(const TuringMachine& m, Rng& rng) {
  return State{static_cast<std::uint32_t>(rng.below(m.state_count()))};
}

}  // namespace

TapeConfiguration random_configuration(const TuringMachine& m, Rng& rng, std::size_t window) {
  if (window == 0) throw std::invalid_argument("configuration window must hold the head");
  TapeConfiguration c;
  const std::size_t others = rng.below(window);
  const std::size_t left = rng.below(others + 1);
  for (std::size_t i = 0; i < left; ++i) c.left.push_back(random_symbol(m, rng));
  for (std::size_t i = left; i < others; ++i) c.right.push_back(random_symbol(m, rng));
  c.head = random_symbol(m, rng);
  if (!rng.chance(1, 16)) c.state = random_state(m, rng);
  return c;
}

DottedSequence random_dotted(const TuringMachine& m, Rng& rng, std::size_t window) {
  DottedSequence s;
  const std::size_t length = rng.below(window + 1);
  const std::size_t left = rng.below(length + 1);
  for (std::size_t i = 0; i < left; ++i) s.left_rev.push_back(random_symbol(m, rng));
  for (std::size_t i = left; i < length; ++i) s.right.push_back(random_symbol(m, rng));
  if (!s.right.empty() && !rng.chance(1, 8)) s.right.front() = random_state(m, rng);
  return s;
}

namespace {

TapeConfiguration step_result(const StepResult& r) {
  if (const auto* h = std::get_if<Halted>(&r)) return h->config;
  return std::get<TapeConfiguration>(r);
}

std::string format_point(const Point& p) { return "(" + p.x.str() + ", " + p.y.str() + ")"; }

}  // namespace

bool check_symbolic(const TuringMachine& m, const ShiftRuleTable& rules, const TapeConfiguration& c,
                    Counterexample* failure) {
  const DottedSequence s = config_to_dotted(c);
  const DottedSequence expected = config_to_dotted(step_result(tm_step(m, c)));
  const DottedSequence actual = gshift_step(rules, s).value_or(s.canonical());
  if (expected == actual) return true;
  if (failure) {
    *failure = {format_tm(m), format_configuration(m, c), format_dotted(m, expected), format_dotted(m, actual)};
  }
  return false;
}

bool check_microstate(const TuringMachine& m, const ShiftRuleTable& rules, const NdaMachine& nda,
                      const DottedSequence& s, Counterexample* failure) {
  const auto& coding = nda.coding();
  const Point expected = encode_point(coding, gshift_step(rules, s).value_or(s));
  std::string actual_text;
  bool same = false;
  try {
    const Point actual = nda_point_step(nda, encode_point(coding, s));
    same = actual.x == expected.x && actual.y == expected.y;
    actual_text = format_point(actual);
  } catch (const std::exception& e) {
    actual_text = std::string("error: ") + e.what();
  }
  if (same) return true;
  if (failure) {
    *failure = {format_tm(m), format_dotted(m, s) + " at " + format_point(encode_point(coding, s)),
                format_point(expected), actual_text};
  }
  return false;
}

DottedSequence pad_to_dod(const ShiftRuleTable& rules, const DottedSequence& s) {
  const ShiftRule* rule = rules.match(s);
  DottedSequence p = s;
  if (!rule) {
    // the control slot must be explicit for the cylinder to stay in the terminated region
    if (p.right.empty()) p.right.push_back(kBlankLetter);
    return p;
  }
  while (p.left_rev.size() < rule->dod.left.size()) p.left_rev.push_back(kBlank);
  while (p.right.size() < rule->dod.right.size()) p.right.push_back(kBlankLetter);
  return p;
}

bool check_macrostate(const TuringMachine& m, const ShiftRuleTable& rules, const NdaMachine& nda,
                      const DottedSequence& s, Counterexample* failure) {
  const auto& coding = nda.coding();
  const DottedSequence padded = pad_to_dod(rules, s);
  const Rect r = config_to_rect(coding, padded);
  const auto next = gshift_apply(rules, padded);
  const Rect expected = next ? config_to_rect(coding, *next) : r;
  std::string actual_text;
  bool same = false;
  try {
    const Rect actual = macrostep(nda, r);
    same = actual == expected;
    actual_text = actual.str();
  } catch (const std::exception& e) {
    actual_text = std::string("error: ") + e.what();
  }
  if (same) return true;
  if (failure) *failure = {format_tm(m), format_dotted(m, padded) + " as " + r.str(), expected.str(), actual_text};
  return false;
}

bool VerifyReport::ok() const {
  for (const auto& s : suites) {
    if (!s.ok()) return false;
  }
  return true;
}

std::string VerifyReport::str(std::size_t max_shown) const {
  std::ostringstream out;
  out << "seed " << seed << ", trials " << trials << "\n";
  for (const auto& s : suites) {
    out << s.name << ": " << s.passed << "/" << (s.passed + s.failed) << " passed";
    if (s.failed) out << ", " << s.failed << " failed";
    out << "\n";
  }
  for (const auto& s : suites) {
    for (std::size_t i = 0; i < s.counterexamples.size() && i < max_shown; ++i) {
      const auto& c = s.counterexamples[i];
      out << "counterexample " << (i + 1) << " (" << s.name << ")\n  machine:\n";
      std::istringstream lines(c.machine);
      for (std::string line; std::getline(lines, line);) out << "    " << line << "\n";
      out << "  input:    " << c.input << "\n  expected: " << c.expected << "\n  actual:   " << c.actual << "\n";
    }
    if (s.counterexamples.size() > max_shown) {
      out << "(" << (s.counterexamples.size() - max_shown) << " more " << s.name << " counterexamples)\n";
    }
  }
  out << "result: " << (ok() ? "PASS" : "FAIL") << "\n";
  return out.str();
}

namespace {

void record(SuiteResult& suite, bool passed, Counterexample&& failure) {
  if (passed) {
    ++suite.passed;
  } else {
    ++suite.failed;
    suite.counterexamples.push_back(std::move(failure));
  }
}

struct Suites {
  SuiteResult symbolic{"symbolic", 0, 0, {}};
  SuiteResult microstate{"microstate", 0, 0, {}};
  SuiteResult macrostate{"macrostate", 0, 0, {}};

  void trial(const TuringMachine& m, const ShiftRuleTable& rules, const NdaMachine& nda, Rng& rng) {
    Counterexample failure;
    const auto c = random_configuration(m, rng, 8);
    record(symbolic, check_symbolic(m, rules, c, &failure), std::move(failure));
    const auto s = random_dotted(m, rng, 6);
    record(microstate, check_microstate(m, rules, nda, s, &failure), std::move(failure));
    const auto r = random_dotted(m, rng, 6);
    record(macrostate, check_macrostate(m, rules, nda, r, &failure), std::move(failure));
  }

  VerifyReport report(std::size_t trials, std::uint64_t seed) {
    return {seed, trials, {std::move(symbolic), std::move(microstate), std::move(macrostate)}};
  }
};

}  // namespace

VerifyReport verify_machine(const TuringMachine& m, const NdaMachine& nda, std::size_t trials, std::uint64_t seed) {
  if (!nda.coding().consistent_with(m)) throw CodingError("NDA coding does not match the machine");
  const auto rules = compile_rules(m);
  Rng rng(seed);
  Suites suites;
  for (std::size_t t = 0; t < trials; ++t) suites.trial(m, rules, nda, rng);
  return suites.report(trials, seed);
}

VerifyReport verify_random_machines(std::size_t trials, std::uint64_t seed, const RandomMachineLimits& limits) {
  Rng rng(seed);
  Suites suites;
  for (std::size_t t = 0; t < trials; ++t) {
    const auto m = random_machine(rng, limits);
    const auto rules = compile_rules(m);
    const auto nda = compile_nda(m, GoedelCoding::standard(m));
    suites.trial(m, rules, nda, rng);
  }
  return suites.report(trials, seed);
}

}  // namespace tmdyn
