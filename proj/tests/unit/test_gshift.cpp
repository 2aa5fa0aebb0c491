#include <gtest/gtest.h>

#include "support.hpp"
#include "tmdyn/gshift.hpp"
#include "tmdyn/verify.hpp"

using namespace tmdyn;
using tmdyn::testing::dotted;
using tmdyn::testing::erase;

TEST(ConfigToDotted, Examples) {
  const auto m = erase();
  const Symbol one = *m.find_symbol("1");
  const State q0 = *m.find_state("q0"), q1 = *m.find_state("q1");

  EXPECT_EQ(config_to_dotted({{}, one, q0, {}}), dotted(m, "1", "q0"));
  EXPECT_EQ(config_to_dotted({{}, kBlank, std::nullopt, {}}), (DottedSequence{}));
  EXPECT_EQ(config_to_dotted({{one}, kBlank, q1, {one, one}}), dotted(m, "_ 1", "q1 1 1"));
}

TEST(DottedToConfig, InvertsOnCanonicalForms) {
  const auto m = erase();
  const Symbol one = *m.find_symbol("1");
  const State q0 = *m.find_state("q0"), q1 = *m.find_state("q1");
  for (const TapeConfiguration& c : {TapeConfiguration{{}, one, q0, {}}, TapeConfiguration{{one}, kBlank, q1, {one, one}},
                                     TapeConfiguration{{kBlank, one}, kBlank, q0, {kBlank, one}}}) {
    EXPECT_EQ(dotted_to_config(config_to_dotted(c)), c);
  }
  EXPECT_THROW(dotted_to_config(DottedSequence{}), NoConfigurationError);
  EXPECT_THROW(dotted_to_config(dotted(m, "1", "1")), NoConfigurationError);
}

TEST(DottedSequence, TerminatedAndCanonical) {
  const auto m = erase();
  EXPECT_TRUE(DottedSequence{}.terminated());
  EXPECT_TRUE(dotted(m, "1", "_ 1").terminated());
  EXPECT_FALSE(dotted(m, "", "q0").terminated());
  EXPECT_EQ(dotted(m, "1 _ _", "q0 _").canonical(), dotted(m, "1", "q0"));
  EXPECT_EQ(dotted(m, "_ _", "_ _").canonical(), DottedSequence{});
  EXPECT_TRUE(dotted(m, "1", "q0 1").well_formed());
  EXPECT_FALSE(dotted(m, "1", "1 q0").well_formed());
}

TEST(CompileRules, Erase) {
  const auto m = erase();
  const auto table = compile_rules(m);
  EXPECT_EQ(table.rules().size(), 5u);
  EXPECT_EQ(dump_rules(m, table),
            "_ . q0 -> _ . q1 shift=0\n"
            "1 . q0 _ -> _ . _ q0 shift=1\n"
            "1 . q0 1 -> _ . 1 q0 shift=1\n"
            "_ . q1 -> _ . q1 shift=0\n"
            "1 . q1 -> 1 . q1 shift=0\n");
  for (const auto& r : table.rules()) {
    if (m.is_final(r.state)) EXPECT_TRUE(r.is_identity());
  }
}

TEST(CompileRules, RuleCountsFollowMoves) {
  const auto m = tmdyn::testing::machine_file("increment.tm");
  // seek 0/1 move right: 2 x 3 refinements; 4 other moves; 3 identities
  EXPECT_EQ(compile_rules(m).rules().size(), 13u);
}

TEST(CompileRules, LeftMoveShape) {
  const auto m = parse_tm("blank _\nsymbols _ 1\nstates a h\ninitial a\nfinal h\nrule a _ -> h 1 L\nrule a 1 -> a 1 S\n");
  const auto table = compile_rules(m);
  const auto* rule = table.match(dotted(m, "_ 1", "a"));
  ASSERT_NE(rule, nullptr);
  EXPECT_EQ(rule->shift, -1);
  EXPECT_EQ(format_dotted_word(m, rule->dod), "_ . a");
  EXPECT_EQ(format_dotted_word(m, rule->doe), "h . 1");
}

TEST(GshiftStep, Examples) {
  const auto m = erase();
  const auto table = compile_rules(m);
  EXPECT_EQ(gshift_step(table, dotted(m, "1", "q0")), dotted(m, "", "q0"));
  EXPECT_EQ(gshift_step(table, dotted(m, "", "q0")), dotted(m, "", "q1"));
  EXPECT_EQ(gshift_step(table, dotted(m, "1 1", "q1 1")), dotted(m, "1 1", "q1 1"));
  EXPECT_FALSE(gshift_step(table, DottedSequence{}).has_value());
  EXPECT_FALSE(gshift_step(table, dotted(m, "1", "_ 1")).has_value());
}

TEST(GshiftApply, KeepsCylinderDepths) {
  const auto m = erase();
  const auto table = compile_rules(m);
  const auto next = gshift_apply(table, dotted(m, "1 _", "q0 1 _"));
  ASSERT_TRUE(next);
  EXPECT_EQ(next->left_rev.size(), 3u);
  EXPECT_EQ(next->right.size(), 2u);
  EXPECT_EQ(*next, dotted(m, "1 _ _", "q0 _"));
}

TEST(GshiftStep, MoveSemantics) {
  // L: (a a-2 .., q a1 ..) -> (a-2 .., q' a' a1 ..); S replaces a by a'
  const auto m = parse_tm(
      "blank _\nsymbols _ x y\nstates p r\ninitial p\nfinal r\n"
      "rule p _ -> r y L\nrule p x -> p y S\nrule p y -> r x R\n");
  const auto table = compile_rules(m);
  EXPECT_EQ(gshift_step(table, dotted(m, "_ x y", "p x")), dotted(m, "x y", "r y x"));
  EXPECT_EQ(gshift_step(table, dotted(m, "x y", "p x")), dotted(m, "y y", "p x"));
  EXPECT_EQ(gshift_step(table, dotted(m, "y _", "p y x")), dotted(m, "y x", "r x"));
}

TEST(ShiftRuleTable, RejectsMalformedRules) {
  const auto m = erase();
  auto rules = compile_rules(m).rules();
  rules[1].doe.right.pop_back();
  EXPECT_THROW(ShiftRuleTable{rules}, std::invalid_argument);
}

TEST(GshiftProperty, EveryLiveSequenceMatchesExactlyOneRule) {
  Rng rng(8);
  for (int trial = 0; trial < 300; ++trial) {
    const auto m = random_machine(rng);
    const auto table = compile_rules(m);
    for (int k = 0; k < 10; ++k) {
      const auto s = random_dotted(m, rng, 6);
      const std::size_t expected = s.terminated() ? 0 : 1;
      ASSERT_EQ(table.count_matches(s), expected) << format_tm(m) << format_dotted(m, s);
      ASSERT_EQ(table.match(s) != nullptr, expected == 1);
    }
  }
}

TEST(GshiftProperty, SymbolicCommutation) {
  Rng rng(12);
  for (int trial = 0; trial < 1000; ++trial) {
    const auto m = random_machine(rng);
    const auto table = compile_rules(m);
    const auto c = random_configuration(m, rng, 8);
    Counterexample failure;
    ASSERT_TRUE(check_symbolic(m, table, c, &failure))
        << failure.machine << failure.input << "\n" << failure.expected << " vs " << failure.actual;
  }
}

TEST(GshiftProperty, RoundTripOnCanonicalConfigurations) {
  Rng rng(13);
  for (int trial = 0; trial < 500; ++trial) {
    const auto m = random_machine(rng);
    auto c = random_configuration(m, rng, 8).canonical();
    if (!c.state) continue;
    ASSERT_EQ(dotted_to_config(config_to_dotted(c)), c);
  }
}
