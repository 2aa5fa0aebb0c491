#include <gtest/gtest.h>

#include <string>

#include "support.hpp"
#include "tmdyn/machine.hpp"
#include "tmdyn/verify.hpp"

using namespace tmdyn;
using tmdyn::testing::erase;
using tmdyn::testing::kEraseSpec;

namespace {

MachineSpecError::Kind error_kind(const std::string& text) {
  try {
    parse_tm(text);
  } catch (const MachineSpecError& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no error for:\n" << text;
  return MachineSpecError::Kind::Syntax;
}

std::string replace(std::string text, const std::string& from, const std::string& to) {
  const auto at = text.find(from);
  EXPECT_NE(at, std::string::npos);
  return text.replace(at, from.size(), to);
}

}  // namespace

TEST(ParseTm, Erase) {
  const auto m = erase();
  EXPECT_EQ(m.symbol_count(), 2u);
  EXPECT_EQ(m.state_count(), 2u);
  EXPECT_EQ(m.symbol_name(m.blank()), "_");
  EXPECT_EQ(m.state_name(m.initial()), "q0");
  EXPECT_TRUE(m.is_final(*m.find_state("q1")));
  EXPECT_FALSE(m.is_final(*m.find_state("q0")));
  const auto* t = m.transition(*m.find_state("q0"), *m.find_symbol("1"));
  ASSERT_NE(t, nullptr);
  EXPECT_EQ(t->next, m.find_state("q0"));
  EXPECT_EQ(t->write, kBlank);
  EXPECT_EQ(t->move, Move::Right);
  EXPECT_EQ(m.transition(*m.find_state("q1"), kBlank), nullptr);
}

TEST(ParseTm, BlankIsAlwaysIndexZero) {
  const auto m = parse_tm("blank B\nsymbols x B y\nstates s\ninitial s\nfinal s\n");
  EXPECT_EQ(m.symbol_names(), (std::vector<std::string>{"B", "x", "y"}));
}

TEST(ParseTm, Errors) {
  using Kind = MachineSpecError::Kind;
  EXPECT_EQ(error_kind(replace(kEraseSpec, "rule q0 1 -> q0 _ R\n", "")), Kind::MissingTransition);
  EXPECT_EQ(error_kind(std::string(kEraseSpec) + "rule q1 1 -> q0 1 L\n"), Kind::FinalStateTransition);
  EXPECT_EQ(error_kind(std::string(kEraseSpec) + "rule q0 1 -> q1 1 L\n"), Kind::DuplicateTransition);
  EXPECT_EQ(error_kind(replace(kEraseSpec, "q0 _ -> q1", "q0 _ -> q9")), Kind::UndeclaredState);
  EXPECT_EQ(error_kind(replace(kEraseSpec, "q0 _ -> q1 _", "q0 _ -> q1 2")), Kind::UndeclaredSymbol);
  EXPECT_EQ(error_kind(replace(kEraseSpec, "rule q0 _ -> q1 _ S", "rule q0 _ -> q1 _ X")), Kind::Syntax);
  EXPECT_EQ(error_kind(replace(kEraseSpec, "rule q0 _ -> q1 _ S", "rule q0 _ q1 _ S")), Kind::Syntax);
  EXPECT_EQ(error_kind(replace(kEraseSpec, "blank _", "tape _")), Kind::Syntax);
  EXPECT_EQ(error_kind(replace(kEraseSpec, "blank _", "blank 0")), Kind::UndeclaredSymbol);
  EXPECT_EQ(error_kind(replace(kEraseSpec, "states q0 q1", "states q0 q1 q0")), Kind::Declaration);
  EXPECT_EQ(error_kind(replace(kEraseSpec, "states q0 q1", "states q0 q1 1")), Kind::Declaration);
  EXPECT_EQ(error_kind(replace(kEraseSpec, "initial q0", "initial q0\ninitial q1")), Kind::Declaration);
  EXPECT_EQ(error_kind(replace(kEraseSpec, "states q0 q1", "states q0 q1 !")), Kind::Declaration);
}

TEST(ParseTm, ErrorsCarryLineAndColumn) {
  try {
    parse_tm(replace(kEraseSpec, "rule q0 _ -> q1 _ S", "rule q0 _ -> q1 _ X"));
    FAIL();
  } catch (const MachineSpecError& e) {
    EXPECT_EQ(e.line(), 8);
    EXPECT_EQ(e.column(), 19);
    EXPECT_NE(std::string(e.what()).find("line 8"), std::string::npos);
  }
}

TEST(ParseTm, CommentsAndBlankLines) {
  const auto m = parse_tm("\n# header\nblank _   # the blank\nsymbols _ 1\n\nstates q\ninitial q\n"
                          "rule q _ -> q 1 S\nrule q 1 -> ! 1 S\n");
  EXPECT_EQ(m.state_count(), 1u);
  EXPECT_FALSE(m.transition(State{0}, *m.find_symbol("1"))->next.has_value());
}

TEST(FormatTm, RoundTrip) {
  for (const auto* name : {"erase.tm", "increment.tm", "erase_terminate.tm", "right_mover.tm"}) {
    const auto m = tmdyn::testing::machine_file(name);
    const auto again = parse_tm(format_tm(m));
    EXPECT_EQ(format_tm(again), format_tm(m)) << name;
  }
}

TEST(TmStep, EraseExamples) {
  const auto m = erase();
  const State q0 = *m.find_state("q0"), q1 = *m.find_state("q1");
  const Symbol one = *m.find_symbol("1");

  const auto r1 = tm_step(m, {{}, one, q0, {}});
  ASSERT_TRUE(std::holds_alternative<TapeConfiguration>(r1));
  const auto& c1 = std::get<TapeConfiguration>(r1);
  EXPECT_TRUE(c1.left.empty());
  EXPECT_EQ(c1.head, kBlank);
  EXPECT_EQ(c1.state, q0);

  const auto r2 = tm_step(m, {{}, kBlank, q0, {}});
  EXPECT_EQ(std::get<TapeConfiguration>(r2), (TapeConfiguration{{}, kBlank, q1, {}}));

  const TapeConfiguration halted{{one}, one, q1, {one}};
  const auto r3 = tm_step(m, halted);
  ASSERT_TRUE(std::holds_alternative<Halted>(r3));
  EXPECT_EQ(std::get<Halted>(r3).config, halted);
}

TEST(TmRun, EraseTwoOnes) {
  const auto m = erase();
  const auto run = tm_run(m, parse_configuration(m, "_ q0 1 1"), 10);
  EXPECT_TRUE(run.halted);
  EXPECT_EQ(run.steps(), 3u);
  const auto& last = run.configurations.back();
  EXPECT_TRUE(last.left.empty());
  EXPECT_TRUE(last.right.empty());
  EXPECT_EQ(last.head, kBlank);
  EXPECT_EQ(last.state, m.find_state("q1"));
}

TEST(TmRun, ZeroStepsAndNonHalting) {
  const auto m = erase();
  const auto c0 = parse_configuration(m, "_ q0 1 1");
  const auto zero = tm_run(m, c0, 0);
  EXPECT_EQ(zero.configurations.size(), 1u);
  EXPECT_FALSE(zero.halted);

  const auto mover = tmdyn::testing::machine_file("right_mover.tm");
  const auto run = tm_run(mover, parse_configuration(mover, "_ a _ _"), 5);
  EXPECT_EQ(run.configurations.size(), 6u);
  EXPECT_FALSE(run.halted);
}

TEST(TmRun, EraseStateHalts) {
  const auto m = tmdyn::testing::machine_file("erase_terminate.tm");
  const auto run = tm_run(m, parse_configuration(m, "_ q0 1 11"), 20);
  EXPECT_TRUE(run.halted);
  EXPECT_EQ(run.steps(), 4u);
  EXPECT_FALSE(run.configurations.back().state.has_value());
  EXPECT_TRUE(is_halting(m, run.configurations.back()));
}

TEST(TmRun, IncrementAddsOne) {
  const auto m = tmdyn::testing::machine_file("increment.tm");
  for (const auto& [in, out] : std::vector<std::pair<std::string, std::string>>{
           {"1 011", "1100"}, {"1 111", "10000"}, {"0 _", "1"}, {"1 0", "11"}}) {
    const auto head = in.substr(0, 1);
    const auto rest = in.substr(2);
    const auto run = tm_run(m, parse_configuration(m, "_ seek " + head + " " + rest), 100);
    ASSERT_TRUE(run.halted) << in;
    const auto& c = run.configurations.back().canonical();
    std::vector<Symbol> tape(c.left.rbegin(), c.left.rend());
    tape.push_back(c.head);
    tape.insert(tape.end(), c.right.begin(), c.right.end());
    while (!tape.empty() && tape.front() == kBlank) tape.erase(tape.begin());
    while (!tape.empty() && tape.back() == kBlank) tape.pop_back();
    EXPECT_EQ(format_word(m, tape), out) << in;
  }
}

TEST(TapeConfiguration, CanonicalIdempotentAndEquality) {
  const auto m = erase();
  const Symbol one = *m.find_symbol("1");
  const TapeConfiguration c{{one, kBlank, kBlank}, kBlank, State{0}, {kBlank}};
  EXPECT_EQ(c.canonical().left.size(), 1u);
  EXPECT_TRUE(c.canonical().right.empty());
  EXPECT_EQ(c.canonical().canonical().left, c.canonical().left);
  EXPECT_EQ(c, (TapeConfiguration{{one}, kBlank, State{0}, {}}));
}

TEST(Configuration, ParseAndFormat) {
  const auto m = erase();
  const auto c = parse_configuration(m, "1_ q0 1 11");
  ASSERT_EQ(c.left.size(), 2u);
  EXPECT_EQ(c.left[0], kBlank);  // nearest first
  EXPECT_EQ(format_configuration(m, c), "1_ q0 1 11");
  EXPECT_EQ(format_configuration(m, parse_configuration(m, "_ ! _ _")), "_ ! _ _");
  EXPECT_THROW(parse_configuration(m, "_ q7 1 _"), std::invalid_argument);
  EXPECT_THROW(parse_configuration(m, "_ q0 1"), std::invalid_argument);
  EXPECT_THROW(parse_configuration(m, "_ q0 2 _"), std::invalid_argument);
}

TEST(Word, MultiCharacterSymbols) {
  const auto m = parse_tm("blank B\nsymbols B one two\nstates s\ninitial s\nfinal s\n");
  const auto w = parse_word(m, "one,two,B");
  ASSERT_EQ(w.size(), 3u);
  EXPECT_EQ(format_word(m, w), "one,two,B");
  EXPECT_EQ(parse_word(m, "onetwo").size(), 2u);
  EXPECT_THROW(parse_word(m, "three"), std::invalid_argument);
}

TEST(TmProperty, TapeOutsideVisitedRangeUnchanged) {
  Rng rng(99);
  for (int trial = 0; trial < 300; ++trial) {
    const auto m = random_machine(rng);
    const auto c0 = random_configuration(m, rng, 8);
    const auto run = tm_run(m, c0, 12);
    // absolute positions: head at 0, left cells negative
    const auto cell = [](const TapeConfiguration& c, long offset, long pos) {
      const long rel = pos - offset;
      if (rel == 0) return c.head;
      if (rel < 0) return static_cast<std::size_t>(-rel - 1) < c.left.size() ? c.left[-rel - 1] : kBlank;
      return static_cast<std::size_t>(rel - 1) < c.right.size() ? c.right[rel - 1] : kBlank;
    };
    long head = 0, lo = 0, hi = 0;
    for (std::size_t t = 1; t < run.configurations.size(); ++t) {
      const auto* tr = m.transition(*run.configurations[t - 1].state, run.configurations[t - 1].head);
      head += tr->move == Move::Right ? 1 : tr->move == Move::Left ? -1 : 0;
      lo = std::min(lo, head);
      hi = std::max(hi, head);
      for (long pos = -12; pos <= 12; ++pos) {
        if (pos >= lo && pos <= hi) continue;
        ASSERT_EQ(cell(run.configurations[t], head, pos), cell(c0, 0, pos));
      }
    }
  }
}

TEST(TmProperty, Deterministic) {
  Rng a(5), b(5);
  for (int trial = 0; trial < 50; ++trial) {
    const auto ma = random_machine(a);
    const auto mb = random_machine(b);
    ASSERT_EQ(format_tm(ma), format_tm(mb));
    const auto c = random_configuration(ma, a, 8);
    ASSERT_EQ(c, random_configuration(mb, b, 8));
    const auto ra = tm_run(ma, c, 20), rb = tm_run(mb, c, 20);
    ASSERT_EQ(ra.configurations, rb.configurations);
  }
}
