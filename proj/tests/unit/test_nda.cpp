#include <gtest/gtest.h>

#include "support.hpp"
#include "tmdyn/nda.hpp"
#include "tmdyn/verify.hpp"

using namespace tmdyn;
using tmdyn::testing::dotted;
using tmdyn::testing::erase;
using tmdyn::testing::q;
using tmdyn::testing::rect;

namespace {

const AffineBranch& branch_for(const NdaMachine& nda, const TuringMachine& m, const char* head, const char* state,
                               const char* next = nullptr) {
  for (const auto& b : nda.branches()) {
    if (b.cell.index.head != *m.find_symbol(head) || b.cell.index.state != *m.find_state(state)) continue;
    if (next ? b.cell.index.next == m.find_symbol(next) : !b.cell.index.next) return b;
  }
  throw std::logic_error("no such branch");
}

/// x_ax, a_x, lambda_y, a_y from the closed forms for left and right moves.
struct Coefficients {
  Rational lambda_x, a_x, lambda_y, a_y;
};

Coefficients closed_form(const GoedelCoding& c, const TuringMachine& m, const ShiftRule& rule) {
  const Rational bl(static_cast<long>(c.base_left())), br(static_cast<long>(c.base_right()));
  const auto* t = m.transition(rule.state, rule.head);
  const Rational a(static_cast<long>(c.number(rule.head)));
  const Rational qn(static_cast<long>(c.number(rule.state)));
  const Rational qp(static_cast<long>(c.number(*t->next)));
  const Rational ap(static_cast<long>(c.number(t->write)));
  switch (t->move) {
    case Move::Left:
      return {bl, -a, Rational(1) / br, qp / br + ap / (br * br) - qn / (br * br)};
    case Move::Right: {
      const Rational a1(static_cast<long>(c.number(*rule.next)));
      return {Rational(1) / bl, a1 / bl + ap / (bl * bl) - a / (bl * bl), br, qp / br - qn - a1 / br};
    }
    case Move::Stay:
      // the x translation accounts for the rewritten head symbol
      return {Rational(1), (ap - a) / bl, Rational(1), (qp - qn) / br};
  }
  throw std::logic_error("move");
}

}  // namespace

TEST(CompileNda, EraseBranches) {
  const auto m = erase();
  const auto nda = compile_nda(m, GoedelCoding::standard(m));
  ASSERT_EQ(nda.branches().size(), 5u);

  const auto& right = branch_for(nda, m, "1", "q0", "_");
  EXPECT_EQ(right.cell.rect, rect(q(1, 2), q(1), q(1, 2), q(9, 16)));
  EXPECT_EQ(right.scale_x, q(1, 2));
  EXPECT_EQ(right.translation_x, q(-1, 4));
  EXPECT_EQ(right.scale_y, q(4));
  EXPECT_EQ(right.translation_y, q(-3, 2));

  const auto& stay = branch_for(nda, m, "_", "q0");
  EXPECT_EQ(stay.cell.rect, rect(q(0), q(1, 2), q(1, 2), q(3, 4)));
  EXPECT_EQ(stay.scale_x, q(1));
  EXPECT_EQ(stay.translation_x, q(0));
  EXPECT_EQ(stay.scale_y, q(1));
  EXPECT_EQ(stay.translation_y, q(1, 4));

  EXPECT_TRUE(branch_for(nda, m, "_", "q1").is_identity());
  EXPECT_TRUE(branch_for(nda, m, "1", "q1").is_identity());
  EXPECT_EQ(format_cell_index(nda.coding(), right.cell.index), "(1,q0,_)");
}

TEST(CompileNda, CoefficientsMatchClosedForms) {
  Rng rng(31);
  for (int trial = 0; trial < 300; ++trial) {
    const auto m = random_machine(rng, {4, 3, 0});
    const auto coding = GoedelCoding::standard(m);
    const auto table = compile_rules(m);
    for (const auto& rule : table.rules()) {
      const auto b = derive_branch(coding, rule);
      if (m.is_final(rule.state)) {
        ASSERT_TRUE(b.is_identity());
        continue;
      }
      const auto expected = closed_form(coding, m, rule);
      ASSERT_EQ(b.scale_x, expected.lambda_x);
      ASSERT_EQ(b.translation_x, expected.a_x);
      ASSERT_EQ(b.scale_y, expected.lambda_y);
      ASSERT_EQ(b.translation_y, expected.a_y);
    }
  }
}

TEST(CompileNda, StayMoveThatRewritesShiftsX) {
  const auto m = parse_tm("blank _\nsymbols _ 1\nstates a h\ninitial a\nfinal h\nrule a _ -> h 1 S\nrule a 1 -> h 1 S\n");
  const auto nda = compile_nda(m, GoedelCoding::standard(m));
  const auto& b = branch_for(nda, m, "_", "a");
  EXPECT_EQ(b.translation_x, q(1, 2));
  EXPECT_EQ(nda_point_step(nda, {q(0), q(1, 2)}), (Point{q(1, 2), q(3, 4)}));
}

TEST(CompileNda, RejectsForeignCoding) {
  EXPECT_THROW(compile_nda(erase(), GoedelCoding::standard(tmdyn::testing::machine_file("increment.tm"))),
               CodingError);
}

TEST(CompileNda, CellsArePairwiseDisjoint) {
  Rng rng(32);
  for (int trial = 0; trial < 100; ++trial) {
    const auto m = random_machine(rng);
    const auto nda = compile_nda(m, GoedelCoding::standard(m));
    for (std::size_t i = 0; i < nda.branches().size(); ++i) {
      for (std::size_t j = i + 1; j < nda.branches().size(); ++j) {
        ASSERT_FALSE(nda.branches()[i].cell.rect.intersects(nda.branches()[j].cell.rect));
      }
    }
  }
}

TEST(NdaMachine, RejectsOverlapAndEscapingImages) {
  const auto m = erase();
  const auto nda = compile_nda(m, GoedelCoding::standard(m));
  auto branches = nda.branches();
  branches.push_back(branches.front());
  EXPECT_THROW(NdaMachine(nda.coding(), branches), std::invalid_argument);
  branches = nda.branches();
  branches[0].translation_x = q(3, 4);
  EXPECT_THROW(NdaMachine(nda.coding(), branches), OutOfUnitSquareError);
}

TEST(NdaPointStep, Examples) {
  const auto m = erase();
  const auto nda = compile_nda(m, GoedelCoding::standard(m));
  EXPECT_EQ(nda_point_step(nda, {q(0), q(0)}), (Point{q(0), q(0)}));
  EXPECT_EQ(nda_point_step(nda, {q(1, 2), q(1, 2)}), (Point{q(0), q(1, 2)}));
  EXPECT_EQ(nda_point_step(nda, {q(1, 4), q(5, 8)}), (Point{q(1, 4), q(7, 8)}));
  EXPECT_EQ(nda_point_step(nda, {q(1), q(1)}), (Point{q(1), q(1)}));  // closed last cell, identity
  EXPECT_THROW(nda_point_step(nda, {q(2), q(0)}), std::invalid_argument);
}

TEST(BranchPreimage, Examples) {
  EXPECT_EQ(branch_preimage(q(1), q(0), q(3, 10)), q(3, 10));
  EXPECT_EQ(branch_preimage(q(1, 2), q(-1, 4), q(0)), q(1, 2));
  EXPECT_EQ(branch_preimage(q(4), q(-3, 2), q(1, 2)), q(1, 2));
  EXPECT_THROW(branch_preimage(q(0), q(1), q(1, 2)), SingularBranchError);
}

TEST(BranchPreimage, InvertsPointStep) {
  const auto m = tmdyn::testing::machine_file("increment.tm");
  const auto nda = compile_nda(m, GoedelCoding::standard(m));
  Rng rng(33);
  for (int k = 0; k < 200; ++k) {
    const auto s = random_dotted(m, rng, 6);
    const Point p = encode_point(nda.coding(), s);
    const auto cell = nda.locate(p);
    if (!cell) continue;
    const auto& b = nda.branches()[*cell];
    ASSERT_EQ(branch_preimage(b, b.apply(p)), p);
  }
}

TEST(Macrostep, Examples) {
  const auto m = erase();
  const auto nda = compile_nda(m, GoedelCoding::standard(m));
  EXPECT_EQ(macrostep(nda, rect(q(1, 2), q(1), q(1, 2), q(9, 16))), rect(q(0), q(1, 4), q(1, 2), q(3, 4)));
  const Rect fixed = rect(q(1, 2), q(3, 4), q(3, 4), q(7, 8));
  EXPECT_EQ(macrostep(nda, fixed), fixed);
  const Rect terminated = rect(q(0), q(1, 2), q(0), q(1, 4));
  EXPECT_EQ(macrostep(nda, terminated), terminated);
}

TEST(Macrostep, StraddlingRectangleReportsBoundary) {
  const auto m = erase();
  const auto nda = compile_nda(m, GoedelCoding::standard(m));
  try {
    macrostep(nda, rect(q(1, 4), q(3, 4), q(1, 2), q(9, 16)));
    FAIL();
  } catch (const PartitionConsistencyError& e) {
    EXPECT_NE(std::string(e.what()).find("x=1/2"), std::string::npos) << e.what();
  }
  // half in the terminated region
  EXPECT_THROW(macrostep(nda, rect(q(0), q(1, 2), q(1, 4), q(5, 8))), PartitionConsistencyError);
}

TEST(RunMacro, EraseExample) {
  const auto m = erase();
  const auto nda = compile_nda(m, GoedelCoding::standard(m));
  const Rect r0 = config_to_rect(nda.coding(), dotted(m, "1", "q0 _ _"));
  const auto run = run_macro(nda, r0, 10);
  EXPECT_TRUE(run.halted);
  EXPECT_EQ(run.steps(), 2u);
  const auto last = decode_rect(nda.coding(), run.rects.back(), 0, 1);
  EXPECT_EQ(last, dotted(m, "", "q1"));
  EXPECT_EQ(run.cells.size(), run.rects.size());

  const auto zero = run_macro(nda, r0, 0);
  EXPECT_EQ(zero.rects, std::vector<Rect>{r0});
  EXPECT_FALSE(zero.halted);
}

TEST(RunMacro, FullSquareFailsAtStepZero) {
  const auto m = erase();
  const auto nda = compile_nda(m, GoedelCoding::standard(m));
  try {
    run_macro(nda, Rect::unit(), 5);
    FAIL();
  } catch (const PartitionConsistencyError& e) {
    EXPECT_EQ(e.step(), 0u);
    EXPECT_EQ(std::string(e.what()).rfind("step 0: ", 0), 0u);
  }
}

TEST(RunMacro, ReportsStepOfLaterViolation) {
  const auto m = erase();
  const auto nda = compile_nda(m, GoedelCoding::standard(m));
  // window too short: the third right move cannot see its next symbol
  const Rect r0 = config_to_rect(nda.coding(), dotted(m, "1", "q0 1 1"));
  try {
    run_macro(nda, r0, 10);
    FAIL();
  } catch (const PartitionConsistencyError& e) {
    EXPECT_EQ(e.step(), 2u);
  }
}

TEST(RunPoints, StaysInsideMacroRectangles) {
  const auto m = tmdyn::testing::machine_file("increment.tm");
  const auto nda = compile_nda(m, GoedelCoding::standard(m));
  const auto s0 = pad_blanks(config_to_dotted(parse_configuration(m, "_ seek 1 011")), 12, 12);
  const auto macro = run_macro(nda, config_to_rect(nda.coding(), s0), 11);
  const auto points = run_points(nda, encode_point(nda.coding(), s0), 11);
  ASSERT_EQ(points.points.size(), macro.rects.size());
  EXPECT_EQ(points.halted, macro.halted);
  for (std::size_t t = 0; t < points.points.size(); ++t) {
    EXPECT_TRUE(macro.rects[t].contains(points.points[t])) << t;
    EXPECT_EQ(points.points[t], macro.rects[t].inf_corner()) << t;
  }
}

TEST(NdaProperty, MicrostateCommutation) {
  Rng rng(34);
  for (int trial = 0; trial < 1000; ++trial) {
    const auto m = random_machine(rng);
    const auto nda = compile_nda(m, GoedelCoding::standard(m));
    const auto rules = compile_rules(m);
    Counterexample f;
    ASSERT_TRUE(check_microstate(m, rules, nda, random_dotted(m, rng, 6), &f))
        << f.machine << f.input << "\n" << f.expected << " vs " << f.actual;
  }
}

TEST(NdaProperty, MacrostateCommutationAndMeasureLaw) {
  Rng rng(35);
  for (int trial = 0; trial < 1000; ++trial) {
    const auto m = random_machine(rng);
    const auto nda = compile_nda(m, GoedelCoding::standard(m));
    const auto rules = compile_rules(m);
    const auto s = random_dotted(m, rng, 6);
    Counterexample f;
    ASSERT_TRUE(check_macrostate(m, rules, nda, s, &f)) << f.machine << f.input << "\n" << f.expected << " vs " << f.actual;
    const Rect r = config_to_rect(nda.coding(), pad_to_dod(rules, s));
    const auto cell = nda.locate(r);
    const Rect image = macrostep(nda, r);
    ASSERT_TRUE(rect_subset(image, Rect::unit()));
    if (cell) {
      const auto& b = nda.branches()[*cell];
      ASSERT_EQ(rect_measure(image), b.scale_x * b.scale_y * rect_measure(r));
    }
  }
}

TEST(NdaProperty, OriginIsFixedForEveryMachine) {
  Rng rng(36);
  for (int trial = 0; trial < 200; ++trial) {
    const auto m = random_machine(rng);
    const auto nda = compile_nda(m, GoedelCoding::standard(m));
    ASSERT_EQ(nda_point_step(nda, {q(0), q(0)}), (Point{q(0), q(0)}));
  }
}
