#include <gtest/gtest.h>

#include <algorithm>
#include <set>

#include "monolat/algebra/amalgam.hpp"
#include "monolat/algebra/checks.hpp"
#include "monolat/algebra/consequence.hpp"
#include "monolat/algebra/generators.hpp"
#include "monolat/algebra/io.hpp"
#include "monolat/algebra/modal.hpp"
#include "monolat/algebra/semantics.hpp"
#include "monolat/syntax/text.hpp"
#include "support/algebra_oracle.hpp"

using namespace monolat;

namespace {

constexpr Elem kZero = 0, kHalf = 1, kOne = 2;

ModalExpansion l3_example() { return *load_algebra(std::string(MONOLAT_DATA_DIR) + "/algebras/l3.json").modal; }

FiniteAlgebra with_op(const FiniteAlgebra& A, const std::string& name, std::size_t index, Elem value) {
  std::vector<Operation> ops = A.operations();
  for (auto& op : ops)
    if (op.name == name) op.table[index] = value;
  return FiniteAlgebra(A.size(), ops, A.name());
}

}  // namespace

// --- tables ---------------------------------------------------------------

TEST(FiniteAlgebra, RejectsMalformedTables) {
  EXPECT_THROW(FiniteAlgebra(2, {make_binary("and", 2, [](Elem a, Elem b) { return a & b; })}), AlgebraError);
  EXPECT_THROW(FiniteAlgebra(2, {Operation{"and", 2, {0, 0, 0}}, Operation{"or", 2, {0, 1, 1, 1}}}), AlgebraError);
  EXPECT_THROW(FiniteAlgebra(2, {Operation{"and", 2, {0, 0, 0, 5}}, Operation{"or", 2, {0, 1, 1, 1}}}), AlgebraError);
  EXPECT_THROW(FiniteAlgebra(0, {}), AlgebraError);
}

TEST(FiniteAlgebra, LukasiewiczTablesMatchArithmetic) {
  // Independent rational model: element k stands for k/2.
  FiniteAlgebra L = gen::lukasiewicz3();
  for (Elem a = 0; a < 3; ++a)
    for (Elem b = 0; b < 3; ++b) {
      double x = a / 2.0, y = b / 2.0;
      EXPECT_DOUBLE_EQ(L.mul(a, b) / 2.0, std::max(0.0, x + y - 1));
      EXPECT_DOUBLE_EQ(L.imp(a, b) / 2.0, std::min(1.0, 1 - x + y));
    }
  EXPECT_EQ(L, l3_example().base());
}

TEST(CheckLattice, TwoChainPasses) {
  auto r = check_lattice(gen::chain(2));
  EXPECT_TRUE(r.ok());
}

TEST(CheckLattice, NonCommutativeMeetHasWitness) {
  FiniteAlgebra bad = with_op(gen::chain(2), "and", 0 * 2 + 1, 1);
  auto r = check_lattice(bad);
  ASSERT_FALSE(r.ok());
  const Violation* v = r.find("meet-commutative");
  ASSERT_NE(v, nullptr);
  EXPECT_EQ(v->witness, (std::vector<Elem>{0, 1}));
}

TEST(CheckLattice, ThreeChainOrder) {
  auto r = check_lattice(gen::lukasiewicz3());
  EXPECT_TRUE(r.ok());
  for (Elem a = 0; a < 3; ++a)
    for (Elem b = 0; b < 3; ++b) EXPECT_EQ(r.leq(a, b), a <= b);
}

TEST(CheckFle, Lukasiewicz) {
  FiniteAlgebra L = gen::lukasiewicz3();
  EXPECT_TRUE(check_fle(L, FleVariant::Plain).ok());
  EXPECT_TRUE(check_fle(L, FleVariant::W).ok());
  auto c = check_fle(L, FleVariant::C);
  ASSERT_FALSE(c.ok());
  ASSERT_NE(c.find("square-increasing"), nullptr);
  EXPECT_EQ(c.find("square-increasing")->witness, (std::vector<Elem>{kHalf}));
}

TEST(CheckFle, BooleanPassesAllVariants) {
  for (auto v : {FleVariant::Plain, FleVariant::W, FleVariant::C}) EXPECT_TRUE(check_fle(gen::boolean2(), v).ok());
}

TEST(CheckFle, CorruptedResiduum) {
  FiniteAlgebra bad = with_op(gen::lukasiewicz3(), "imp", kHalf * 3 + kZero, kZero);
  auto r = check_fle(bad);
  const Violation* v = r.find("residuation");
  ASSERT_NE(v, nullptr);
  EXPECT_EQ(v->witness, (std::vector<Elem>{kHalf, kHalf, kZero}));
}

TEST(CheckFle, MissingOperationsThrow) { EXPECT_THROW(check_fle(gen::chain(3)), AlgebraError); }

// --- modal expansions -------------------------------------------------------

TEST(MAxioms, LukasiewiczExamplePassesEverything) {
  auto r = check_m_axioms(l3_example());
  EXPECT_TRUE(r.ok());
  EXPECT_TRUE(r.fle_base);
  EXPECT_NE(r.find("L6_box"), nullptr);
  EXPECT_NE(r.find("star_box[imp]"), nullptr);
  EXPECT_NE(r.find("star_dia[f]"), nullptr);
}

TEST(MAxioms, IdentityModalitiesPass) {
  for (const auto& A : {gen::chain(4), gen::diamond_lattice(), gen::lukasiewicz3()})
    EXPECT_TRUE(check_m_axioms(identity_modalities(A)).ok());
}

TEST(MAxioms, ConstantBoxFailsWithWitness) {
  ModalExpansion M(gen::chain(3), {0, 0, 0}, {2, 2, 2});
  auto r = check_m_axioms(M);
  EXPECT_FALSE(r.primitive_ok());
  const AxiomResult* l3 = r.find("L3_box");
  ASSERT_NE(l3, nullptr);
  EXPECT_FALSE(l3->passed);
  EXPECT_EQ(l3->witness, (std::vector<Elem>{0}));
}

TEST(MAxioms, DerivedLawsFollowFromPrimitiveOnes) {
  // Every table pair on small lattices: primitive axioms imply the derived ones.
  for (const auto& A : gen::lattices(4)) {
    const std::size_t n = A.size();
    std::size_t total = 1;
    for (std::size_t i = 0; i < n; ++i) total *= n;
    std::size_t passing = 0;
    for (std::size_t bcode = 0; bcode < total; ++bcode) {
      std::vector<Elem> bx(n);
      for (std::size_t i = 0, c = bcode; i < n; ++i, c /= n) bx[i] = static_cast<Elem>(c % n);
      for (std::size_t dcode = 0; dcode < total; ++dcode) {
        std::vector<Elem> dm(n);
        for (std::size_t i = 0, c = dcode; i < n; ++i, c /= n) dm[i] = static_cast<Elem>(c % n);
        auto r = check_m_axioms(ModalExpansion(A, bx, dm));
        EXPECT_EQ(r.primitive_ok(), oracle::raw_primitive_axioms(A, bx, dm));
        if (r.primitive_ok()) {
          ++passing;
          EXPECT_TRUE(r.derived_ok()) << A.name();
        }
      }
    }
    EXPECT_GT(passing, 0u);
  }
}

TEST(MAxioms, L6HoldsOnFleExpansions) {
  for (const auto& A : gen::fle_algebras(3))
    for (const auto& M : enumerate_modal_expansions(A)) {
      auto r = check_m_axioms(M);
      EXPECT_TRUE(r.fle_base);
      EXPECT_TRUE(r.ok()) << A.name();
    }
}

TEST(BoxImage, Examples) {
  EXPECT_EQ(box_image(l3_example()), (std::vector<Elem>{kZero, kOne}));
  EXPECT_EQ(box_image(identity_modalities(gen::chain(3))), (std::vector<Elem>{0, 1, 2}));
  FullFunctional F = full_functional(gen::boolean2(), 2);
  EXPECT_EQ(box_image(F.expansion), (std::vector<Elem>{F.encode(std::vector<Elem>{0, 0}), F.encode(std::vector<Elem>{1, 1})}));
}

TEST(BoxImage, RejectsInvalidExpansion) {
  EXPECT_THROW(box_image(ModalExpansion(gen::chain(3), {0, 0, 0}, {2, 2, 2})), AlgebraError);
}

TEST(RelativeCompleteness, Examples) {
  EXPECT_TRUE(is_relatively_complete(gen::lukasiewicz3(), {kZero, kOne}));
  EXPECT_TRUE(is_relatively_complete(gen::diamond_lattice(), {0, 1, 2, 3}));
  // {a, ⊤} is a sublattice, but nothing in it lies below b.
  EXPECT_FALSE(is_relatively_complete(gen::diamond_lattice(), {1, 3}));
  EXPECT_THROW(is_relatively_complete(gen::diamond_lattice(), {1, 2}), AlgebraError);
  EXPECT_THROW(is_relatively_complete(gen::lukasiewicz3(), {kHalf}), AlgebraError);
}

TEST(AdjointModalities, Examples) {
  ModalExpansion M = adjoint_modalities(gen::lukasiewicz3(), {kZero, kOne});
  EXPECT_EQ(M, l3_example());
  EXPECT_EQ(M.box(kHalf), kZero);
  EXPECT_EQ(M.diamond(kHalf), kOne);
  EXPECT_EQ(adjoint_modalities(gen::chain(3), {0, 1, 2}), identity_modalities(gen::chain(3)));
  ModalExpansion C4 = adjoint_modalities(gen::chain(4), {0, 3});
  EXPECT_EQ(C4.box_table(), (std::vector<Elem>{0, 0, 0, 3}));
  EXPECT_EQ(C4.diamond_table(), (std::vector<Elem>{0, 3, 3, 3}));
  EXPECT_TRUE(check_m_axioms(C4).ok());
  EXPECT_THROW(adjoint_modalities(gen::diamond_lattice(), {1, 3}), AlgebraError);
}

TEST(Correspondence, RoundTrips) {
  EXPECT_TRUE(correspondence_roundtrip(l3_example()));
  EXPECT_TRUE(correspondence_roundtrip(gen::lukasiewicz3(), {kZero, kOne}));
  EXPECT_TRUE(correspondence_roundtrip(identity_modalities(gen::diamond_lattice())));
  EXPECT_TRUE(correspondence_roundtrip(gen::diamond_lattice(), {0, 1, 2, 3}));
  EXPECT_THROW(correspondence_roundtrip(ModalExpansion(gen::chain(3), {0, 0, 0}, {2, 2, 2})), AlgebraError);
}

TEST(EnumerateExpansions, SmallCases) {
  EXPECT_EQ(enumerate_modal_expansions(gen::boolean2()).size(), 1u);
  auto l3 = enumerate_modal_expansions(gen::lukasiewicz3());
  ASSERT_EQ(l3.size(), 2u);
  EXPECT_EQ(l3[0], identity_modalities(gen::lukasiewicz3()));
  EXPECT_EQ(l3[1], l3_example());
  for (std::size_t n = 1; n <= 5; ++n) {
    auto all = enumerate_modal_expansions(gen::chain(n));
    EXPECT_NE(std::find(all.begin(), all.end(), identity_modalities(gen::chain(n))), all.end());
  }
}

TEST(EnumerateExpansions, AgreesWithRawTableSearch) {
  for (const auto& A : gen::lattices(4)) {
    auto raw = oracle::raw_modal_expansions(A);
    auto ours = enumerate_modal_expansions(A);
    std::set<std::pair<std::vector<Elem>, std::vector<Elem>>> a(raw.begin(), raw.end()), b;
    for (const auto& M : ours) b.emplace(M.box_table(), M.diamond_table());
    EXPECT_EQ(a, b) << A.name();
    EXPECT_EQ(ours.size(), b.size());
    for (const auto& M : ours) EXPECT_TRUE(correspondence_roundtrip(M));
  }
}

// --- generators -------------------------------------------------------------

TEST(Generators, LatticeCounts) {
  // Unlabelled lattices: 1, 1, 1, 2, 5, 15.
  const std::size_t expected[] = {1, 1, 1, 2, 5, 15};
  for (std::size_t n = 1; n <= 6; ++n) {
    auto ls = gen::lattices_of_size(n);
    EXPECT_EQ(ls.size(), expected[n - 1]) << n;
    for (const auto& L : ls) EXPECT_TRUE(check_lattice(L).ok());
  }
}

TEST(Generators, FleAlgebrasAreValidAndDistinct) {
  auto all = gen::fle_algebras(3);
  EXPECT_GT(all.size(), 3u);
  for (std::size_t i = 0; i < all.size(); ++i) {
    EXPECT_TRUE(check_lattice(all[i]).ok());
    EXPECT_TRUE(check_fle(all[i]).ok());
    for (std::size_t j = 0; j < i; ++j) EXPECT_FALSE(gen::is_isomorphic(all[i], all[j]));
  }
  auto has_iso = [&](const FiniteAlgebra& A) {
    return std::any_of(all.begin(), all.end(), [&](const FiniteAlgebra& B) { return gen::is_isomorphic(A, B); });
  };
  EXPECT_TRUE(has_iso(gen::lukasiewicz3()));
  EXPECT_TRUE(has_iso(gen::boolean2()));
  for (const auto& A : gen::fle_algebras(3, FleVariant::W)) EXPECT_TRUE(check_fle(A, FleVariant::W).ok());
  for (const auto& A : gen::fle_algebras(3, FleVariant::C)) EXPECT_TRUE(check_fle(A, FleVariant::C).ok());
}

// --- full functional algebras and evaluation ------------------------------------

TEST(FullFunctional, BooleanSquare) {
  FullFunctional F = full_functional(gen::boolean2(), 2);
  EXPECT_EQ(F.expansion.size(), 4u);
  Elem f10 = F.encode(std::vector<Elem>{1, 0});
  EXPECT_EQ(f10, 2u);
  EXPECT_EQ(F.decode(F.expansion.box(f10)), (std::vector<Elem>{0, 0}));
  EXPECT_EQ(F.decode(F.expansion.diamond(f10)), (std::vector<Elem>{1, 1}));
  EXPECT_TRUE(check_m_axioms(F.expansion).ok());
  EXPECT_THROW(full_functional(gen::boolean2(), 0), AlgebraError);
}

TEST(FullFunctional, OneWorldIsTheBase) {
  for (const auto& A : {gen::lukasiewicz3(), gen::diamond_lattice()}) {
    FullFunctional F = full_functional(A, 1);
    EXPECT_EQ(F.expansion, identity_modalities(A));
  }
}

TEST(FullFunctional, LukasiewiczSquareDiamond) {
  FullFunctional F = full_functional(gen::lukasiewicz3(), 2);
  EXPECT_EQ(F.expansion.size(), 9u);
  Elem g = F.encode(std::vector<Elem>{kHalf, kZero});
  EXPECT_EQ(F.decode(F.expansion.diamond(g)), (std::vector<Elem>{kHalf, kHalf}));
  EXPECT_TRUE(check_m_axioms(F.expansion).ok());
}

TEST(FullFunctional, PointwiseOperations) {
  FiniteAlgebra L = gen::lukasiewicz3();
  FullFunctional F = full_functional(L, 3);
  const FiniteAlgebra& P = F.expansion.base();
  for (Elem a = 0; a < P.size(); a += 5)
    for (Elem b = 0; b < P.size(); b += 3) {
      auto fa = F.decode(a), fb = F.decode(b), fm = F.decode(P.mul(a, b)), fi = F.decode(P.imp(a, b));
      for (std::size_t w = 0; w < 3; ++w) {
        EXPECT_EQ(fm[w], L.mul(fa[w], fb[w]));
        EXPECT_EQ(fi[w], L.imp(fa[w], fb[w]));
      }
    }
}

TEST(EvalModal, Examples) {
  ModalExpansion M = l3_example();
  Assignment v = Assignment::for_algebra(M.base());
  v.set(0, kHalf);
  EXPECT_EQ(eval_modal(M, v, parse_modal("dia p0 * dia p0")), kOne);
  EXPECT_EQ(eval_modal(M, v, parse_modal("dia (p0 * p0)")), kZero);
  EXPECT_EQ(eval_modal(M, v, parse_modal("e")), M.base().e());

  FullFunctional F = full_functional(gen::boolean2(), 2);
  Assignment w = Assignment::for_algebra(F.expansion.base());
  w.set(0, F.encode(std::vector<Elem>{1, 0}));
  EXPECT_EQ(F.decode(eval_modal(F.expansion, w, parse_modal("box p0 \\/ dia p0"))), (std::vector<Elem>{1, 1}));
}

TEST(EvalModal, AssignmentDefaults) {
  EXPECT_EQ(Assignment::for_algebra(gen::lukasiewicz3()).fallback, kOne);
  EXPECT_EQ(Assignment::for_algebra(gen::diamond_lattice()).fallback, 0u);
  EXPECT_EQ(Assignment::for_algebra(gen::chain(3))(17), 0u);
}

TEST(EvalFo, BooleanTwoWorlds) {
  Structure S(gen::boolean2(), 2, {{0, {1, 0}}});
  for (std::size_t u = 0; u < 2; ++u) {
    EXPECT_EQ(eval_fo(S, u, parse_fo("A x P0(x)")), 0u);
    EXPECT_EQ(eval_fo(S, u, parse_fo("E x P0(x)")), 1u);
  }
  EXPECT_EQ(eval_fo(S, 0, P(0)), 1u);
  EXPECT_EQ(eval_fo(S, 1, P(0)), 0u);
  EXPECT_THROW(eval_fo(S, 0, P(1)), AlgebraError);
  EXPECT_THROW(eval_fo(S, 0, P(0, Variable::indexed(0))), AlgebraError);
}

TEST(Conversions, StructureToEvaluationAndBack) {
  Structure S(gen::boolean2(), 2, {{0, {1, 0}}});
  auto [F, v] = structure_to_evaluation(S);
  EXPECT_EQ(F.decode(v(0)), (std::vector<Elem>{1, 0}));
  Structure back = evaluation_to_structure(F, v);
  EXPECT_EQ(back.domain_size, S.domain_size);
  EXPECT_EQ(back.interpretation, S.interpretation);
}

TEST(Conversions, ValueAgreesAtEveryCoordinate) {
  Structure S(gen::lukasiewicz3(), 3, {{0, {0, 1, 2}}, {1, {2, 2, 1}}});
  auto [F, v] = structure_to_evaluation(S);
  for (const char* text : {"A x (P0(x) -> P1(x))", "E x P0(x) * P1(x)", "A x (E x P0(x) \\/ P1(x)) /\\ f"}) {
    FoFormula phi = parse_fo(text);
    auto value = F.decode(eval_modal(F.expansion, v, star(phi)));
    for (std::size_t u = 0; u < 3; ++u) EXPECT_EQ(value[u], eval_fo(S, u, phi)) << text;
  }
}

// --- consequence ---------------------------------------------------------------

TEST(EquationalConsequence, LukasiewiczCountermodel) {
  auto verdict = equational_consequence({l3_example()}, {}, parse_equation<ModalFormula>("dia p0 * dia p0 = dia (p0 * p0)"));
  ASSERT_EQ(verdict.verdict, Verdict::Refuted);
  ASSERT_TRUE(verdict.countermodel);
  EXPECT_EQ(verdict.countermodel->assignment(0), kHalf);
  EXPECT_EQ(verdict.countermodel->lhs, kOne);
  EXPECT_EQ(verdict.countermodel->rhs, kZero);
}

TEST(EquationalConsequence, PremiseImpliesItself) {
  auto eq = parse_equation<ModalFormula>("dia p0 * dia p0 = dia (p0 * p0)");
  EXPECT_EQ(equational_consequence({l3_example()}, {eq}, eq).verdict, Verdict::Holds);
}

TEST(EquationalConsequence, BoxIdempotentOnAllSmallExpansions) {
  std::vector<ModalExpansion> battery;
  for (const auto& L : gen::lattices(3))
    for (auto& M : enumerate_modal_expansions(L)) battery.push_back(std::move(M));
  auto verdict = equational_consequence(battery, {}, parse_equation<ModalFormula>("box box p0 = box p0"));
  EXPECT_EQ(verdict.verdict, Verdict::Holds);
  auto jobs = equational_consequence(battery, {}, parse_equation<ModalFormula>("box p0 = p0"), {1'000'000, 3});
  auto single = equational_consequence(battery, {}, parse_equation<ModalFormula>("box p0 = p0"));
  ASSERT_EQ(jobs.verdict, Verdict::Refuted);
  EXPECT_EQ(jobs.countermodel->algebra, single.countermodel->algebra);
  EXPECT_EQ(jobs.countermodel->assignment, single.countermodel->assignment);
}

TEST(EquationalConsequence, BudgetIsADistinctOutcome) {
  auto verdict = equational_consequence({l3_example()}, {}, parse_equation<ModalFormula>("p0 * p1 * p2 = p2"), {10, 1});
  EXPECT_EQ(verdict.verdict, Verdict::BudgetExceeded);
}

TEST(FoConsequence, ChainValidatesDiamondSquare) {
  auto verdict = fo_consequence({gen::lukasiewicz3()}, 2, {}, parse_equation<FoFormula>("E x P0(x) * E x P0(x) = E x (P0(x) * P0(x))"));
  EXPECT_EQ(verdict.verdict, Verdict::Holds);
}

TEST(FoConsequence, PremiseImpliesItself) {
  auto eq = parse_equation<FoFormula>("A x P0(x) = P0(x)");
  EXPECT_EQ(fo_consequence({gen::boolean2()}, 2, {eq}, eq).verdict, Verdict::Holds);
}

TEST(FoConsequence, BooleanCountermodel) {
  auto goal = parse_equation<FoFormula>("A x P0(x) = P0(x)");
  auto verdict = fo_consequence({gen::boolean2()}, 2, {}, goal);
  ASSERT_EQ(verdict.verdict, Verdict::Refuted);
  const auto& interp = verdict.countermodel->structure.interpretation.at(0);
  EXPECT_TRUE(interp == (std::vector<Elem>{0, 1}) || interp == (std::vector<Elem>{1, 0}));
  // The mirror-image structure is a countermodel too.
  Structure S(gen::boolean2(), 2, {{0, {1, 0}}});
  EXPECT_NE(eval_fo(S, 0, goal.lhs), eval_fo(S, 0, goal.rhs));
}

TEST(FoConsequence, RejectsIndexedVariablesAndBudget) {
  EXPECT_THROW(fo_consequence({gen::boolean2()}, 2, {}, FoEquation{P(0, Variable::indexed(1)), P(0)}), SyntaxError);
  auto verdict = fo_consequence({gen::lukasiewicz3()}, 3, {}, parse_equation<FoFormula>("P0(x) * P1(x) = P2(x)"), {100, 1});
  EXPECT_EQ(verdict.verdict, Verdict::BudgetExceeded);
}

// --- superamalgams and embeddings ----------------------------------------------------

TEST(Superamalgam, IdentityFormation) {
  FiniteAlgebra A = gen::diamond_lattice();
  std::vector<Elem> id{0, 1, 2, 3};
  EXPECT_TRUE(is_superamalgam({A, A, A, A, id, id, id, id}).ok());
}

TEST(Superamalgam, DiamondOverTwoChains) {
  VFormation V{gen::chain(2), gen::chain(3), gen::chain(3), gen::diamond_lattice(), {0, 2}, {0, 2}, {0, 1, 3}, {0, 2, 3}};
  auto r = is_superamalgam(V);
  EXPECT_TRUE(r.ok()) << (r.ok() ? "" : r.violations[0].law);
}

TEST(Superamalgam, BottomOnlySourceFailsCondition) {
  VFormation V{gen::chain(1), gen::chain(3), gen::chain(3), gen::diamond_lattice(), {0}, {0}, {0, 1, 3}, {0, 2, 3}};
  auto r = is_superamalgam(V);
  EXPECT_FALSE(r.ok());
  EXPECT_NE(r.find("superamalgam 1<=2"), nullptr);
}

TEST(Superamalgam, NonHomomorphismAndShapeErrors) {
  FiniteAlgebra C3 = gen::chain(3);
  VFormation bad{gen::chain(2), C3, C3, C3, {0, 1}, {0, 2}, {0, 1, 2}, {0, 1, 2}};
  auto r = is_superamalgam(bad);
  EXPECT_NE(r.find("commutes"), nullptr);
  VFormation noninjective{gen::chain(2), C3, C3, C3, {0, 0}, {0, 0}, {0, 1, 2}, {0, 1, 2}};
  EXPECT_NE(is_superamalgam(noninjective).find("f1 injective"), nullptr);
  VFormation shape{gen::chain(2), C3, C3, C3, {0}, {0, 2}, {0, 1, 2}, {0, 1, 2}};
  EXPECT_THROW(is_superamalgam(shape), AlgebraError);
  VFormation signature{gen::chain(2), gen::lukasiewicz3(), C3, C3, {0, 2}, {0, 2}, {0, 1, 2}, {0, 1, 2}};
  EXPECT_THROW(is_superamalgam(signature), AlgebraError);
}

namespace {

void expect_embedding(const ModalExpansion& M, const std::vector<FiniteAlgebra>& bases, const EmbeddingResult& r) {
  ASSERT_EQ(r.status, SearchStatus::Found);
  FullFunctional F = full_functional(bases[r.base], r.worlds);
  const ModalExpansion& T = F.expansion;
  std::set<Elem> image(r.map.begin(), r.map.end());
  EXPECT_EQ(image.size(), M.size());
  for (const auto& op : M.base().operations()) {
    const Operation& top = *T.base().find(op.name);
    for_each_tuple(M.size(), op.arity, [&](std::span<const Elem> t) {
      std::vector<Elem> img;
      for (Elem a : t) img.push_back(r.map[a]);
      EXPECT_EQ(r.map[M.base().apply(op, t)], T.base().apply(top, img));
      return true;
    });
  }
  for (Elem a = 0; a < M.size(); ++a) {
    EXPECT_EQ(r.map[M.box(a)], T.box(r.map[a]));
    EXPECT_EQ(r.map[M.diamond(a)], T.diamond(r.map[a]));
  }
}

}  // namespace

TEST(Embedding, LukasiewiczExampleHasNoSmallFunctionalEmbedding) {
  // The image g of ½ must satisfy g·g = 0 and g→0 = g coordinatewise, which
  // in Ł3^W forces g to be the constant ½; but then □g = g ≠ h(□½) = h(0).
  std::vector<FiniteAlgebra> l3{gen::lukasiewicz3()};
  EXPECT_EQ(search_functional_embedding(l3_example(), l3, 3).status, SearchStatus::NotFound);
  EXPECT_EQ(search_functional_embedding(l3_example(), gen::fle_algebras(3), 3).status, SearchStatus::NotFound);
}

TEST(Embedding, LukasiewiczExampleLatticeReductEmbeds) {
  ModalExpansion M = l3_example();
  std::vector<Operation> lattice_ops{*M.base().find("and"), *M.base().find("or")};
  ModalExpansion reduct(FiniteAlgebra(3, lattice_ops), M.box_table(), M.diamond_table());
  std::vector<FiniteAlgebra> bases{gen::chain(3)};
  auto r = search_functional_embedding(reduct, bases, 2);
  expect_embedding(reduct, bases, r);
  EXPECT_EQ(r.worlds, 2u);
}

TEST(Embedding, IdentityModalitiesNeedOneWorld) {
  std::vector<FiniteAlgebra> bases{gen::boolean2()};
  auto r = search_functional_embedding(identity_modalities(gen::boolean2()), bases, 3);
  expect_embedding(identity_modalities(gen::boolean2()), bases, r);
  EXPECT_EQ(r.worlds, 1u);
}

TEST(Embedding, TwoElementMLattices) {
  auto bases = gen::lattices(4);
  for (const auto& M : enumerate_modal_expansions(gen::chain(2))) expect_embedding(M, bases, search_functional_embedding(M, bases, 3));
}

TEST(Embedding, ModalTablesMatter) {
  // A 3-chain with A0 = {0,2} does not embed into any one-world algebra.
  ModalExpansion M = adjoint_modalities(gen::chain(3), {0, 2});
  std::vector<FiniteAlgebra> bases = gen::lattices(4);
  EXPECT_EQ(search_functional_embedding(M, bases, 1).status, SearchStatus::NotFound);
  expect_embedding(M, bases, search_functional_embedding(M, bases, 2));
}

// --- file format ------------------------------------------------------------------

TEST(AlgebraJson, RoundTrip) {
  ModalExpansion M = l3_example();
  EXPECT_EQ(M.base().name(), "Ł3");
  EXPECT_EQ(M.base().label(kHalf), "½");
  AlgebraFile again = algebra_from_json(to_json(M));
  ASSERT_TRUE(again.modal);
  EXPECT_EQ(*again.modal, M);
  EXPECT_EQ(again.algebra.labels(), M.base().labels());
}

TEST(AlgebraJson, RejectsMalformedInput) {
  EXPECT_THROW(parse_algebra("{"), AlgebraError);
  EXPECT_THROW(parse_algebra(R"({"size": 2, "ops": {"and": [[0,0],[0,1]]}})"), AlgebraError);
  EXPECT_THROW(parse_algebra(R"({"size": 2, "ops": {"and": [[0,0],[0]], "or": [[0,1],[1,1]]}})"), AlgebraError);
  EXPECT_THROW(parse_algebra(R"({"size": 2, "ops": {"and": [[0,0],[0,1]], "or": [[0,1],[1,1]]}, "box": [0,1]})"), AlgebraError);
  EXPECT_THROW(load_algebra("/nonexistent/file.json"), AlgebraError);
  AlgebraFile aliases = parse_algebra(R"({"size": 2, "ops": {"meet": [[0,0],[0,1]], "join": [[0,1],[1,1]]}})");
  EXPECT_EQ(aliases.algebra, gen::chain(2));
}
