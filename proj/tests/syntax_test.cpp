#include <gtest/gtest.h>

#include "monolat/syntax/equation.hpp"
#include "monolat/syntax/text.hpp"
#include "monolat/syntax/translate.hpp"
#include "support/random_formulas.hpp"

using namespace monolat;

namespace {

Variable x1 = Variable::indexed(1);

}  // namespace

TEST(Parse, QuantifierPrintsInBothNotations) {
  FoFormula f = parse_fo("A x P0(x)");
  EXPECT_EQ(f, forall(P(0)));
  EXPECT_EQ(to_string(f), "∀x P0(x)");
  EXPECT_EQ(to_string(f, Notation::Ascii), "A x P0(x)");
  EXPECT_EQ(parse_fo("∀x P0(x)"), f);
}

TEST(Parse, ImplicationAssociatesRight) {
  EXPECT_EQ(parse_modal("p0 -> p1 -> p2"), imp(p(0), imp(p(1), p(2))));
  EXPECT_EQ(to_string(imp(imp(p(0), p(1)), p(2))), "(p0 → p1) → p2");
}

TEST(Parse, PrecedenceLadder) {
  EXPECT_EQ(parse_modal("p0 * p1 /\\ p2 \\/ p3 -> p4"),
            imp(disj(conj(fuse(p(0), p(1)), p(2)), p(3)), p(4)));
  EXPECT_EQ(parse_modal("box p0 * p1"), fuse(box(p(0)), p(1)));
  EXPECT_EQ(parse_modal("□(p0 · p1)"), box(fuse(p(0), p(1))));
  EXPECT_EQ(parse_modal("p0 * p1 * p2"), fuse(fuse(p(0), p(1)), p(2)));
  EXPECT_EQ(to_string(fuse(p(0), fuse(p(1), p(2)))), "p0 · (p1 · p2)");
}

TEST(Parse, ConstantsAndUnderscoreIndices) {
  EXPECT_EQ(parse_modal("e -> f"), imp(unit<ModalFormula>(), falsum<ModalFormula>()));
  EXPECT_EQ(parse_fo("P_2(x_3)"), P(2, Variable::indexed(3)));
}

TEST(Parse, QuantifierOverIndexedVariableRejected) {
  try {
    parse_fo("A x1 P0(x1)");
    FAIL() << "expected SyntaxError";
  } catch (const SyntaxError& e) {
    EXPECT_EQ(e.position(), 2u);
    EXPECT_NE(std::string(e.what()).find("quantifier over free-variable symbol"), std::string::npos);
  }
}

TEST(Parse, FreeVariableInScopeRejected) {
  EXPECT_THROW(parse_fo("A x (P0(x) * P1(x1))"), SyntaxError);
  EXPECT_THROW(forall(P(0, x1)), SyntaxError);
}

TEST(Parse, UnbalancedParentheses) {
  for (const char* text : {"(p0", "p0)", "((p0 * p1)", "box (p0"}) {
    try {
      parse_modal(text);
      FAIL() << text;
    } catch (const SyntaxError& e) {
      EXPECT_NE(std::string(e.what()).find("unbalanced"), std::string::npos) << text << ": " << e.what();
    }
  }
}

TEST(Parse, SyntaxMixingRejected) {
  EXPECT_THROW(parse_modal("A x P0(x)"), SyntaxError);
  EXPECT_THROW(parse_fo("box p0"), SyntaxError);
  EXPECT_THROW(parse_modal("p0 $ p1"), SyntaxError);
  EXPECT_THROW(parse_modal("q0"), SyntaxError);
  EXPECT_THROW(parse_modal(""), SyntaxError);
}

TEST(Print, RandomRoundTripBothNotations) {
  oracle::FormulaGenerator<FoFormula> gfo(7, 3, 2);
  oracle::FormulaGenerator<ModalFormula> gm(8, 3);
  for (int i = 0; i < 500; ++i) {
    FoFormula f = gfo(6);
    EXPECT_EQ(parse_fo(to_string(f)), f) << to_string(f);
    EXPECT_EQ(parse_fo(to_string(f, Notation::Ascii)), f) << to_string(f, Notation::Ascii);
    ModalFormula a = gm(6);
    EXPECT_EQ(parse_modal(to_string(a)), a) << to_string(a);
    EXPECT_EQ(parse_modal(to_string(a, Notation::Ascii)), a) << to_string(a, Notation::Ascii);
  }
}

TEST(Translate, StarAndCircle) {
  FoFormula phi = forall(imp(P(0), exists(P(1))));
  ModalFormula alpha = box(imp(p(0), dia(p(1))));
  EXPECT_EQ(star(phi), alpha);
  EXPECT_EQ(circle(alpha), phi);
  EXPECT_EQ(to_string(star(parse_fo("A x P0(x)"))), "□p0");
  EXPECT_THROW(star(P(0, x1)), SyntaxError);
}

TEST(Translate, RandomRoundTrips) {
  oracle::FormulaGenerator<FoFormula> gfo(11);
  oracle::FormulaGenerator<ModalFormula> gm(12);
  for (int i = 0; i < 300; ++i) {
    FoFormula f = gfo(8);
    EXPECT_EQ(circle(star(f)), f);
    ModalFormula a = gm(8);
    EXPECT_EQ(star(circle(a)), a);
  }
}

TEST(Variables, FreeAndOccurring) {
  FoFormula f = conj(P(0, x1), forall(P(1)));
  EXPECT_EQ(free_vars(f), (std::set<Variable>{x1}));
  EXPECT_EQ(occurring_vars(f), (std::set<Variable>{Variable::x(), x1}));
  EXPECT_EQ(free_vars(conj(P(0), forall(P(1)))), (std::set<Variable>{Variable::x()}));
  EXPECT_TRUE(is_sentence(forall(P(0))));
  EXPECT_FALSE(is_sentence(P(0)));
  EXPECT_TRUE(is_one_variable(P(0)));
  EXPECT_FALSE(is_one_variable(f));
}

TEST(Variables, SubstitutionTouchesOnlyFreeOccurrences) {
  FoFormula f = fuse(P(0), forall(P(0)));
  EXPECT_EQ(substitute(f, Variable::x(), x1), fuse(P(0, x1), forall(P(0))));
  EXPECT_EQ(abstract(fuse(P(0, x1), forall(P(0))), x1), f);
  EXPECT_EQ(instantiate(imp(P(0), P(1)), x1), imp(P(0, x1), P(1, x1)));
}

TEST(Equations, ParseForms) {
  EXPECT_EQ(parse_equation<ModalFormula>("dia p0 * dia p0 ≈ dia (p0*p0)"),
            (ModalEquation{fuse(dia(p(0)), dia(p(0))), dia(fuse(p(0), p(0)))}));
  EXPECT_EQ(parse_equation<ModalFormula>("p0 = p1"), (ModalEquation{p(0), p(1)}));
  EXPECT_EQ(parse_equation<ModalFormula>("p0 <= p1"), leq(p(0), p(1)));
  EXPECT_THROW(parse_equation<ModalFormula>("p0 p1"), SyntaxError);
  auto theory = parse_theory<FoFormula>("# comment\n\nP0(x) = P1(x)\n A x P0(x) ≤ P0(x)\n");
  ASSERT_EQ(theory.size(), 2u);
  EXPECT_EQ(theory[1], leq(forall(P(0)), P(0)));
}

TEST(Formula, StructuralOrderIsTotalAndConsistent) {
  oracle::FormulaGenerator<FoFormula> g(21, 2, 1);
  for (int i = 0; i < 200; ++i) {
    FoFormula a = g(3), b = g(3);
    auto ab = a <=> b, ba = b <=> a;
    EXPECT_EQ(ab == 0, a == b);
    EXPECT_EQ(ab < 0, ba > 0);
    if (a == b) {
      EXPECT_EQ(a.hash(), b.hash());
    }
  }
}
