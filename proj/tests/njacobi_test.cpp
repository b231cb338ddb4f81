#include <gtest/gtest.h>

#include "nambu/njacobi/njacobi.hpp"
#include "nambu/npoisson/npoisson.hpp"
#include "support/oracles.hpp"
#include "support/random.hpp"

using namespace nambu;
using nambu::testing::Random;
using nambu::testing::concat;
using nambu::testing::drop;
using nambu::testing::eval;
using nambu::testing::jacobiator;
using nambu::testing::random_functions;
using nambu::testing::random_op;
using nambu::testing::random_poisson;
using nambu::testing::raw_jacobi_holds;
using nambu::testing::s_eval;

namespace {

Poly P(const char* s, std::size_t m) { return parse_poly(s, m); }
Poly x(std::size_t m, std::size_t i) { return Poly::variable(m, i); }
Poly one(std::size_t m) { return Poly::constant(m, 1); }

MultiVector blade(std::size_t m, IndexTuple idx) { return MultiVector::basis(m, idx); }
MultiVector blade(std::size_t m, IndexTuple idx, const Poly& c) { return MultiVector::basis(m, idx, c); }

}  // namespace

TEST(JacobiOp, RejectsBadShapes) {
  EXPECT_THROW(JacobiOp(blade(3, {0, 1}), blade(3, {0, 1})), std::invalid_argument);
  EXPECT_THROW(JacobiOp(blade(3, {0}), MultiVector(4, 0)), std::invalid_argument);
  EXPECT_THROW(JacobiOp(MultiVector(3, 0), MultiVector(3, 0)), std::invalid_argument);
}

TEST(JacobiApply, Examples) {
  JacobiOp pure = JacobiOp::derivation(blade(3, {0, 1, 2}, x(3, 0)));
  EXPECT_EQ(apply(pure, {x(3, 1), x(3, 2), P("x1 x2", 3)}),
            pure.nabla().apply({x(3, 1), x(3, 2), P("x1 x2", 3)}));

  JacobiOp d(blade(3, {0, 1, 2}), blade(3, {0, 1}));
  EXPECT_EQ(apply(d, {x(3, 0), x(3, 1), x(3, 2)}), P("1 + x3", 3));
  EXPECT_EQ(apply(d, {one(3), x(3, 0), x(3, 1)}), one(3));
  EXPECT_TRUE(apply(d, {Poly::constant(3, 2), Poly::constant(3, -1), Poly::constant(3, 5)}).is_zero());
  EXPECT_THROW(apply(d, {x(3, 0)}), std::invalid_argument);
}

TEST(JacobiApply, SkewAndUnitySlot) {
  Random rng(61);
  for (int trial = 0; trial < 20; ++trial) {
    std::size_t n = 2 + trial % 2;
    auto d = random_op(rng, 3, n);
    auto fs = random_functions(rng, 3, n);
    auto swapped = fs;
    std::swap(swapped[0], swapped[1]);
    EXPECT_EQ(eval(d, swapped), -eval(d, fs));
    auto rest = drop(fs, 0);
    EXPECT_EQ(eval(d, concat({one(3)}, rest)), insert_unity(d).apply(std::span<const Poly>(rest)));
  }
}

TEST(CanonicalBracket, Examples) {
  std::vector<Poly> ys{x(3, 0), x(3, 1), x(3, 2)};
  EXPECT_EQ(canonical_bracket(3, 3, ys), P("1 + x3", 3));
  std::vector<Poly> ys2{x(2, 0), x(2, 1)};
  EXPECT_EQ(canonical_bracket(2, 2, ys2), P("1 - x2", 2));
  std::vector<Poly> rep{P("x1 x2", 3), x(3, 2), P("x1 x2", 3)};
  EXPECT_TRUE(canonical_bracket(3, 3, rep).is_zero());
  EXPECT_THROW(canonical_bracket(2, 3, ys), std::invalid_argument);
}

TEST(CanonicalBracket, MatchesPairRepresentation) {
  Random rng(62);
  for (int trial = 0; trial < 50; ++trial) {
    std::size_t m = 3 + trial % 2, n = 2 + trial % 3;
    if (n > m) n = m;
    JacobiOp d(MultiVector::volume(m, n), MultiVector::volume(m, n - 1));
    auto fs = random_functions(rng, m, n);
    EXPECT_EQ(canonical_bracket(m, n, fs), eval(d, fs));
  }
}

TEST(JacobiDefects, MatchTheJacobiator) {
  Random rng(63);
  for (int trial = 0; trial < 40; ++trial) {
    std::size_t m = 3 + trial % 2, n = 2 + trial % 3;
    auto d = random_op(rng, m, n, trial % 3 == 0 ? 2 : 1);
    auto fs = random_functions(rng, m, n - 1);
    auto [d1, d0] = jacobi_defects(d, std::span<const Poly>(fs));
    JacobiOp decomposed(d1, d0);
    for (int k = 0; k < 3; ++k) {
      auto gs = random_functions(rng, m, n);
      EXPECT_EQ(eval(decomposed, gs), jacobiator(d, fs, gs)) << "n=" << n << " m=" << m;
    }
  }
}

TEST(JacobiDefects, PoissonAndConstructedCasesVanish) {
  Random rng(64);
  JacobiOp poisson = JacobiOp::derivation(blade(4, {0, 1, 2}, x(4, 3)));
  JacobiOp constructed(blade(4, {0, 1, 2}), contract(x(4, 3), blade(4, {0, 1, 2})));
  for (int trial = 0; trial < 10; ++trial) {
    auto fs = random_functions(rng, 4, 2);
    for (const auto& d : {poisson, constructed}) {
      auto [d1, d0] = jacobi_defects(d, std::span<const Poly>(fs));
      EXPECT_TRUE(d1.is_zero());
      EXPECT_TRUE(d0.is_zero());
    }
  }
  EXPECT_THROW(jacobi_defects(poisson, {x(4, 0)}), std::invalid_argument);
}

TEST(JacobiDefects, UnitySlotGivesBoxTransport) {
  Random rng(65);
  for (int trial = 0; trial < 15; ++trial) {
    std::size_t n = 3;
    auto d = random_op(rng, 4, n, 1);
    Poly g = rng.poly(4, 1, 2);
    auto [d1, d0] = jacobi_defects(d, {one(4), g});
    VectorField xg = contract(g, d.box());
    EXPECT_EQ(d1, lie_derivative(xg, d.nabla()));
    EXPECT_EQ(d0, lie_derivative(xg, d.box()));
  }
}

TEST(JacobiDefects, NonPoissonBoxLeavesUnityWitness) {
  // box = x3 d1^d2 + x2 d2^d3 is not Poisson; nabla = 0.
  MultiVector box = blade(3, {0, 1}, x(3, 2)) + blade(3, {1, 2}, x(3, 1));
  ASSERT_FALSE(is_n_poisson(box));
  JacobiOp d(MultiVector(3, 3), box);
  auto r = is_n_jacobi(d);
  ASSERT_FALSE(r.holds);
  bool found = false;
  for (const auto& g : monomials_up_to(3, 1, 2)) {
    auto [d1, d0] = jacobi_defects(d, {one(3), g});
    if (!d0.is_zero()) found = true;
  }
  EXPECT_TRUE(found);
}

TEST(IsNJacobi, Examples) {
  EXPECT_TRUE(is_n_jacobi(JacobiOp(blade(3, {0, 1, 2}), blade(3, {0, 1}))));

  JacobiOp scaled(blade(4, {0, 1, 2}, x(4, 3)), blade(4, {0, 1}));
  EXPECT_EQ(is_n_jacobi(scaled).holds, raw_jacobi_holds(scaled));

  auto r = is_n_jacobi(JacobiOp(blade(6, {0, 1, 2}), blade(6, {3, 4})));
  ASSERT_FALSE(r.holds);
  ASSERT_TRUE(r.witness);
  EXPECT_FALSE(r.witness->defect1.is_zero() && r.witness->defect0.is_zero());
}

TEST(IsNJacobi, PureBoxBranch) {
  EXPECT_TRUE(is_n_jacobi(JacobiOp(MultiVector(3, 3), blade(3, {0, 1}, x(3, 2)))));
  EXPECT_TRUE(is_n_jacobi(JacobiOp(MultiVector(4, 3), blade(4, {0, 1}, P("x3 + x4^2", 4)))));
}

TEST(IsNJacobi, ContactBracketInTwoVariables) {
  JacobiOp d(blade(2, {0, 1}), blade(2, {1}));
  EXPECT_EQ(is_n_jacobi(d).holds, raw_jacobi_holds(d));
}

TEST(IsNJacobiProperties, AgreesWithRawOracle) {
  Random rng(66);
  int positives = 0;
  for (int trial = 0; trial < 24; ++trial) {
    std::size_t n = 2 + trial % 2;
    JacobiOp d;
    if (trial % 3 == 0) {
      auto nabla = random_poisson(rng, 3, n);
      d = JacobiOp(nabla, contract(rng.poly(3, 1, 2), nabla));
    } else {
      d = random_op(rng, 3, n, 1);
    }
    bool verdict = is_n_jacobi(d).holds;
    positives += verdict;
    EXPECT_EQ(verdict, raw_jacobi_holds(d)) << d.nabla().to_string() << " | " << d.box().to_string();
  }
  EXPECT_GT(positives, 0);
}

TEST(SComplex, SquareZeroAndHomotopy) {
  Random rng(67);
  for (int trial = 0; trial < 100; ++trial) {
    std::size_t m = 3 + trial % 2, n = 2 + trial % 3;
    auto d = random_op(rng, m, n, 1);
    EXPECT_TRUE(s_op(s_op(d)).is_zero());
    JacobiOp homotopy =
        JacobiOp::derivation(insert_unity(s_op(d))) + s_op(JacobiOp::derivation(insert_unity(d)));
    EXPECT_EQ(homotopy, d);
  }
}

TEST(SComplex, PairFormulaMatchesOperatorDefinition) {
  Random rng(68);
  for (int trial = 0; trial < 30; ++trial) {
    std::size_t m = 4, n = 2 + trial % 2;
    auto d = random_op(rng, m, n, 1);
    auto gs = random_functions(rng, m, n + 1);
    auto base = [&](const std::vector<Poly>& args) { return eval(d, args); };
    EXPECT_EQ(eval(s_op(d), gs), s_eval(base, gs));
    auto ss = [&](const std::vector<Poly>& args) { return eval(s_op(d), args); };
    auto gs2 = random_functions(rng, m, n + 2);
    EXPECT_TRUE(s_eval(ss, gs2).is_zero());
    auto rest = random_functions(rng, m, n - 1);
    EXPECT_EQ(eval(JacobiOp::derivation(insert_unity(d)), rest), eval(d, concat({one(m)}, rest)));
  }
}

TEST(SComplex, DegreeOverflowGivesZeroOperator) {
  JacobiOp top = JacobiOp::derivation(MultiVector::volume(3, 3));
  JacobiOp s = s_op(top);
  EXPECT_EQ(s.arity(), 4u);
  EXPECT_TRUE(s.nabla().is_zero());
  EXPECT_TRUE(s_op(s).is_zero());
}

TEST(SComplex, LieDerivativeCommutesWithS) {
  Random rng(69);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t m = 3, k = 2;
    MultiVector box = rng.multivector(m, k, 2);
    VectorField xf = rng.multivector(m, 1, trial % 2 ? 0 : 2);
    JacobiOp sbox(MultiVector(m, k + 1), box);
    auto gs = random_functions(rng, m, k + 1);
    Poly lhs = apply_field(xf, eval(sbox, gs));
    for (std::size_t i = 0; i < gs.size(); ++i) {
      auto args = gs;
      args[i] = apply_field(xf, gs[i]);
      lhs -= eval(sbox, args);
    }
    JacobiOp transported(MultiVector(m, k + 1), lie_derivative(xf, box));
    EXPECT_EQ(lhs, eval(transported, gs));
  }
}

TEST(SComplex, LieDerivativeAlongAFunction) {
  Random rng(70);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t m = 3, k = 1 + trial % 3;
    MultiVector box = rng.multivector(m, k, 2);
    Poly f = rng.poly(m, 0, 2);
    auto gs = random_functions(rng, m, k);
    auto boxed = [&](const std::vector<Poly>& args) { return box.apply(std::span<const Poly>(args)); };
    Poly lhs = f * boxed(gs);
    for (std::size_t i = 0; i < k; ++i) {
      auto args = gs;
      args[i] = f * gs[i];
      lhs -= boxed(args);
    }
    JacobiOp s_of_box_f(MultiVector(m, k), contract(f, box));
    Poly rhs = Rational(1 - static_cast<long>(k)) * f * boxed(gs) - eval(s_of_box_f, gs);
    EXPECT_EQ(lhs, rhs);
  }
}

TEST(JacobiCorollaries, ConstructedStructures) {
  Random rng(71);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t m = trial % 4 == 0 ? 3 : 4, n = 3;
    MultiVector nabla = random_poisson(rng, m, n);
    Poly h = rng.poly(m, 1, 2);
    JacobiOp d(nabla, contract(h, nabla));

    ASSERT_TRUE(is_n_jacobi(d)) << nabla.to_string();
    EXPECT_TRUE(raw_jacobi_holds(d));
    PoissonOptions full;
    full.rank_filter = false;
    EXPECT_TRUE(is_n_poisson(d.box(), full));
    EXPECT_TRUE(is_decomposable(d.nabla()));
    EXPECT_TRUE(is_n_poisson(d.nabla(), full));
    for (std::size_t a = 0; a < m; ++a) {
      VectorField w = derived_vector(d.box(), {a});
      EXPECT_TRUE(wedge(w, d.nabla()).is_zero());
      EXPECT_TRUE(wedge(w, d.box()).is_zero());
    }
    for (int k = 0; k < 3; ++k) {
      auto fs = random_functions(rng, m, n - 1);
      Poly hf = d.box().apply(std::span<const Poly>(fs));
      if ((n - 1) % 2) hf = -hf;
      EXPECT_EQ(lie_derivative(contract_all(d.nabla(), fs), d.box()), contract(hf, d.nabla()));
    }
  }
}

TEST(FromPoissonAndForm, Examples) {
  MultiVector nabla = blade(4, {0, 1, 2}, x(4, 3));
  Poly h = P("x1 x4 + x2^2", 4);
  EXPECT_EQ(from_poisson_and_form(nabla, OneForm::differential(h)), JacobiOp(nabla, contract(h, nabla)));
  EXPECT_EQ(from_poisson_and_form(nabla, OneForm::zero(4)), JacobiOp::derivation(nabla));

  MultiVector vol = MultiVector::volume(4, 4);
  OneForm omega{{Poly::constant(4, 2), Poly::constant(4, -3), Poly(4), Poly(4)}};
  JacobiOp d = from_poisson_and_form(vol, omega);
  EXPECT_TRUE(is_n_jacobi(d));

  OneForm open{{x(4, 1), Poly(4), Poly(4), Poly(4)}};
  EXPECT_THROW(from_poisson_and_form(vol, open), std::domain_error);
  EXPECT_THROW(from_poisson_and_form(blade(6, {0, 1, 2}) + blade(6, {3, 4, 5}), OneForm::zero(6)),
               std::domain_error);
}

TEST(IsNJacobi, LinearSlotsAreNotEnough) {
  JacobiOp d = JacobiOp::derivation(blade(6, {0, 1, 2}) + blade(6, {3, 4, 5}));
  EXPECT_TRUE(is_n_jacobi(d, 1).holds);
  auto r = is_n_jacobi(d);
  ASSERT_FALSE(r.holds);
  int quadratic = 0;
  for (const auto& f : r.witness->functions) quadratic += f.total_degree() == 2;
  EXPECT_GT(quadratic, 0);
}
