#include <gtest/gtest.h>

#include <cmath>

#include "nambu/nambu_dyn/nambu_dyn.hpp"
#include "support/random.hpp"

using namespace nambu;
using nambu::testing::Random;
using nambu::testing::coordinates;

namespace {

Poly x(std::size_t m, std::size_t i) { return Poly::variable(m, i); }

// mu S x B, component by component.
std::array<Poly, 3> spin_rhs(const std::array<Rational, 3>& b, const Rational& mu) {
  auto s = coordinates(3);
  return {mu * (b[2] * s[1] - b[1] * s[2]), mu * (b[0] * s[2] - b[2] * s[0]),
          mu * (b[1] * s[0] - b[0] * s[1])};
}

VectorField field_from(const std::array<Poly, 3>& comps) {
  VectorField v(3, 1);
  for (std::size_t i = 0; i < 3; ++i) v.add({i}, comps[i]);
  return v;
}

std::array<Rational, 3> e3() { return {0, 0, 1}; }

double spin_endpoint_error(double h, std::size_t steps) {
  auto field = dynamics_field(spin_system(e3(), 1));
  auto tr = rk4_integrate(field, {1, 0, 0}, h, steps);
  const double t = tr.times.back();
  const auto& s = tr.states.back();
  return std::hypot(s[0] - std::cos(t), s[1] + std::sin(t), s[2]);
}

// Random polynomial in S^2 and S3.
Poly random_first_integral(Random& rng) {
  auto s = coordinates(3);
  Poly s2 = s[0] * s[0] + s[1] * s[1] + s[2] * s[2];
  Poly out(3);
  for (int a = 0; a <= 2; ++a)
    for (int b = 0; b <= 2; ++b) {
      if (!rng.coin()) continue;
      Poly term = Poly::constant(3, rng.rational());
      for (int i = 0; i < a; ++i) term = term * s2;
      for (int i = 0; i < b; ++i) term = term * s[2];
      out += term;
    }
  return out;
}

}  // namespace

TEST(Laurent, Basics) {
  auto p = LaurentPoly::monomial(3, {1, 0, -2}, Rational(3, 2));
  EXPECT_EQ(p.partial(2), LaurentPoly::monomial(3, {1, 0, -3}, -3));
  EXPECT_TRUE(p.partial(1).is_zero());
  EXPECT_EQ(p.to_string(), "3/2 x1 x3^-2");
  std::vector<Rational> pt{2, 5, Rational(1, 2)};
  EXPECT_EQ(p.evaluate(std::span<const Rational>(pt)), 12);
  std::vector<double> pole{1, 1, 0};
  EXPECT_THROW(p.evaluate(std::span<const double>(pole)), std::domain_error);
  EXPECT_TRUE((p - p).is_zero());
  EXPECT_EQ(p * LaurentPoly::monomial(3, {0, 0, 2}), LaurentPoly::monomial(3, {1, 0, 0}, Rational(3, 2)));
}

TEST(Laurent, AgreesWithPoly) {
  Random rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    Poly a = rng.poly(3, 0, 3), b = rng.poly(3, 0, 3);
    EXPECT_EQ(LaurentPoly(a * b), LaurentPoly(a) * LaurentPoly(b));
    EXPECT_EQ(LaurentPoly(a.partial(1)), LaurentPoly(a).partial(1));
    auto pt = rng.point(3);
    EXPECT_EQ(LaurentPoly(a).evaluate(std::span<const Rational>(pt)), a.evaluate(std::span<const Rational>(pt)));
  }
}

TEST(Dynamics, HarmonicOscillator) {
  Poly h = Rational(1, 2) * (x(2, 0) * x(2, 0) + x(2, 1) * x(2, 1));
  NambuSystem sys{MultiVector::basis(2, {0, 1}), {h}};
  VectorField field = dynamics_field(sys);
  VectorField expected = MultiVector::basis(2, {0}, -x(2, 1)) + MultiVector::basis(2, {1}, x(2, 0));
  EXPECT_EQ(field, expected);
  EXPECT_TRUE(apply_field(field, h).is_zero());

  auto tr = rk4_integrate(field, {1, 0}, 1e-3, 10000, {h});
  ASSERT_TRUE(tr.ok);
  EXPECT_LT(tr.invariant_drift[0], 1e-8);
  const double t = tr.times.back();
  EXPECT_NEAR(t, 10.0, 1e-9);
  EXPECT_NEAR(tr.states.back()[0], std::cos(t), 1e-9);
  EXPECT_NEAR(tr.states.back()[1], std::sin(t), 1e-9);
}

TEST(Dynamics, SpinFieldMatchesEquationsOfMotion) {
  Random rng(7);
  for (int trial = 0; trial < 10; ++trial) {
    std::array<Rational, 3> b{rng.rational(), rng.rational(), rng.rational()};
    Rational mu = rng.nonzero_rational();
    auto sys = spin_system(b, mu);
    VectorField field = dynamics_field(sys);
    EXPECT_EQ(field, field_from(spin_rhs(b, mu)));
    for (const auto& h : sys.hamiltonians) EXPECT_TRUE(apply_field(field, h).is_zero());
    EXPECT_TRUE(apply_field(field, spin_hamiltonian(b, mu)).is_zero());
  }
}

TEST(Dynamics, HamiltoniansAreFirstIntegrals) {
  Random rng(9);
  for (int trial = 0; trial < 15; ++trial) {
    const std::size_t m = static_cast<std::size_t>(rng.integer(3, 4));
    MultiVector tensor = rng.poly(m, 0, 1) * MultiVector::volume(m, m);
    if (tensor.is_zero()) continue;
    NambuSystem sys{tensor, {}};
    for (std::size_t i = 0; i + 1 < m; ++i) sys.hamiltonians.push_back(rng.poly(m, 1, 2));
    VectorField field = dynamics_field(sys);
    for (const auto& h : sys.hamiltonians) EXPECT_TRUE(apply_field(field, h).is_zero());
  }
}

TEST(Dynamics, ConstantHamiltonianGivesZeroField) {
  NambuSystem sys{MultiVector::volume(3, 3), {Poly::constant(3, 5), x(3, 0) * x(3, 1)}};
  EXPECT_TRUE(dynamics_field(sys).is_zero());
}

TEST(Dynamics, InvalidSystems) {
  NambuSystem short_list{MultiVector::volume(3, 3), {x(3, 0)}};
  EXPECT_THROW(dynamics_field(short_list), std::invalid_argument);
  NambuSystem chart{MultiVector::volume(3, 3), {x(3, 0), x(4, 1)}};
  EXPECT_THROW(dynamics_field(chart), std::invalid_argument);
  MultiVector bad = MultiVector::basis(3, {0, 1}, x(3, 2)) + MultiVector::basis(3, {1, 2}, x(3, 1));
  NambuSystem non_poisson{bad, {x(3, 0)}};
  EXPECT_THROW(dynamics_field(non_poisson), std::domain_error);
}

TEST(Hereditary, BivectorsAreCompatibleAndGenerateTheMotion) {
  Random rng(13);
  std::vector<NambuSystem> cases{spin_system(e3(), 1), spin_system({1, 2, -1}, Rational(1, 3))};
  for (int trial = 0; trial < 6; ++trial) {
    const std::size_t m = static_cast<std::size_t>(rng.integer(3, 4));
    NambuSystem sys{rng.poly(m, 0, 1) * MultiVector::volume(m, m), {}};
    if (sys.tensor.is_zero()) continue;
    for (std::size_t i = 0; i + 1 < m; ++i) sys.hamiltonians.push_back(rng.poly(m, 1, 2));
    cases.push_back(sys);
  }
  for (const auto& sys : cases) {
    const std::size_t n = sys.tensor.degree(), m = sys.num_vars();
    VectorField field = dynamics_field(sys);
    auto pis = hereditary_bivectors(sys);
    ASSERT_EQ(pis.size(), n - 1);
    for (std::size_t i = 0; i < pis.size(); ++i) {
      for (std::size_t j = i; j < pis.size(); ++j) EXPECT_TRUE(schouten(pis[i], pis[j]).is_zero());
      for (const auto& g : coordinates(m)) {
        Poly via_bracket = pis[i].apply({g, sys.hamiltonians[i]});
        if ((n - (i + 1)) % 2) via_bracket = -via_bracket;
        EXPECT_EQ(via_bracket, apply_field(field, g));
      }
    }
  }
}

TEST(SpinTable, StandardDescription) {
  auto s = coordinates(3);
  Poly s2 = s[0] * s[0] + s[1] * s[1] + s[2] * s[2];
  auto table = hereditary_poisson_table(Poly::constant(3, Rational(1, 2)), s2);
  EXPECT_EQ(table[0][1], LaurentPoly(s[2]));
  EXPECT_EQ(table[1][2], LaurentPoly(s[0]));
  EXPECT_EQ(table[0][2], LaurentPoly(-s[1]));
  for (std::size_t j = 0; j < 3; ++j) {
    EXPECT_TRUE(table[j][j].is_zero());
    for (std::size_t k = 0; k < 3; ++k) EXPECT_EQ(table[j][k], -table[k][j]);
  }
  // The bracket bivector is Poisson and {S_i, -mu S.B} is the motion.
  MultiVector pi = contract(s2, Rational(1, 2) * MultiVector::volume(3, 3));
  EXPECT_TRUE(schouten(pi, pi).is_zero());
  std::array<Rational, 3> b{2, -1, 3};
  Rational mu(5, 2);
  Poly h = spin_hamiltonian(b, mu);
  auto rhs = spin_rhs(b, mu);
  for (std::size_t i = 0; i < 3; ++i) {
    LaurentPoly motion(3);
    for (std::size_t k = 0; k < 3; ++k) motion += table[i][k] * LaurentPoly(h.partial(k));
    EXPECT_EQ(motion, LaurentPoly(rhs[i]));
  }
}

TEST(SpinTable, MatchesTernaryTensor) {
  Random rng(17);
  auto s = coordinates(3);
  for (int trial = 0; trial < 10; ++trial) {
    Poly f = rng.poly(3, 0, 2), big_f = rng.poly(3, 1, 3);
    auto table = hereditary_poisson_table(f, big_f);
    MultiVector ternary = f * MultiVector::volume(3, 3);
    for (std::size_t j = 0; j < 3; ++j)
      for (std::size_t k = 0; k < 3; ++k) EXPECT_EQ(table[j][k], LaurentPoly(ternary.apply({big_f, s[j], s[k]})));
  }
  auto zero = hereditary_poisson_table(Poly(3), s[0] * s[1]);
  for (const auto& row : zero)
    for (const auto& entry : row) EXPECT_TRUE(entry.is_zero());
}

TEST(SpinTable, QuantumGroupLimit) {
  const Rational lambda(3);
  auto s = coordinates(3);
  Poly f = (lambda / 4) * s[2];
  LaurentPoly big_f = LaurentPoly(s[0] * s[0] + s[1] * s[1] + s[2] * s[2]) + LaurentPoly::monomial(3, {0, 0, -2});
  auto table = hereditary_poisson_table(f, big_f);
  EXPECT_EQ(table[1][2], LaurentPoly::monomial(3, {1, 0, 1}, lambda / 2));
  EXPECT_EQ(table[0][1], LaurentPoly::monomial(3, {0, 0, 2}, lambda / 2) - LaurentPoly::monomial(3, {0, 0, -2}, lambda / 2));
  EXPECT_EQ(table[0][2], LaurentPoly::monomial(3, {0, 1, 1}, -lambda / 2));

  // With H = -(2 mu B / lambda) ln S3 this table reproduces the motion.
  const double mu = 1.5, field = 0.7, l = lambda.get_d();
  Random rng(19);
  for (int trial = 0; trial < 10; ++trial) {
    std::vector<double> pt{rng.rational().get_d(), rng.rational().get_d(), 0.5 + rng.integer(1, 5)};
    const double dh = -2 * mu * field / (l * pt[2]);
    std::array<double, 3> expected{mu * field * pt[1], -mu * field * pt[0], 0};
    for (std::size_t i = 0; i < 3; ++i)
      EXPECT_NEAR(table[i][2].evaluate(std::span<const double>(pt)) * dh, expected[i], 1e-12);
  }
}

TEST(SpinTable, CoshDescriptionNumerically) {
  Random rng(23);
  for (double lambda : {0.3, 1.0, 1.7}) {
    auto big_f = cosh_spin_generator(lambda);
    for (int trial = 0; trial < 10; ++trial) {
      std::array<double, 3> s{rng.rational(1, 4).get_d(), rng.rational(1, 4).get_d(), rng.rational(1, 4).get_d()};
      auto table = numeric_spin_table(0.5, big_f, s);
      EXPECT_NEAR(table[1][2], s[0], 1e-12);
      EXPECT_NEAR(table[0][2], -s[1], 1e-12);
      EXPECT_NEAR(table[0][1], 0.5 * std::sinh(2 * lambda * s[2]) / std::sinh(lambda), 1e-12);
    }
  }
  EXPECT_THROW(cosh_spin_generator(0), std::invalid_argument);
}

TEST(Rk4, ZeroFieldAndErrors) {
  auto tr = rk4_integrate(VectorField(2, 1), {0.5, -2}, 0.1, 20, {x(2, 0) * x(2, 1)});
  ASSERT_TRUE(tr.ok);
  ASSERT_EQ(tr.states.size(), 21u);
  for (const auto& st : tr.states) EXPECT_EQ(st, (std::vector<double>{0.5, -2}));
  EXPECT_EQ(tr.invariant_drift[0], 0.0);
  EXPECT_THROW(rk4_integrate(VectorField(2, 1), {0, 0}, 0, 5), std::invalid_argument);
  EXPECT_THROW(rk4_integrate(VectorField(2, 1), {0, 0}, 0.1, 0), std::invalid_argument);
  EXPECT_THROW(rk4_integrate(VectorField(2, 1), {0, 0, 0}, 0.1, 3), std::invalid_argument);
}

TEST(Rk4, BlowUpStopsWithPartialTrajectory) {
  VectorField cubic = MultiVector::basis(1, {0}, x(1, 0) * x(1, 0) * x(1, 0));
  auto tr = rk4_integrate(cubic, {10}, 1.0, 50);
  EXPECT_FALSE(tr.ok);
  EXPECT_FALSE(tr.error.empty());
  EXPECT_LT(tr.states.size(), 51u);
  for (const auto& st : tr.states) EXPECT_TRUE(std::isfinite(st[0]));
}

TEST(Rk4, SpinRotation) {
  auto sys = spin_system(e3(), 1);
  auto field = dynamics_field(sys);
  auto s = coordinates(3);
  Poly s2 = s[0] * s[0] + s[1] * s[1] + s[2] * s[2];
  auto tr = rk4_integrate(field, {1, 0, 0}, 1e-3, 10000, {s2, s[2]});
  ASSERT_TRUE(tr.ok);
  EXPECT_LT(tr.invariant_drift[0], 1e-9);
  EXPECT_LT(tr.invariant_drift[1], 1e-9);
  EXPECT_LT(spin_endpoint_error(1e-3, 10000), 1e-6);
}

TEST(Rk4, FourthOrder) {
  const double coarse = spin_endpoint_error(0.1, 100);
  const double fine = spin_endpoint_error(0.05, 200);
  const double ratio = coarse / fine;
  EXPECT_GE(ratio, 12.0);
  EXPECT_LE(ratio, 20.0);
}

TEST(Kepler, FieldAndFrequency) {
  auto sys = kepler_action_angle(3, 2);
  std::vector<Rational> ones{1, 1, 1, 0, 0, 0};
  EXPECT_EQ(sys.nu(std::span<const Rational>(ones)), Rational(8, 9));
  VectorField unit = dynamics_field(sys.unit);
  VectorField expected = MultiVector::basis(6, {3}) + MultiVector::basis(6, {4}) + MultiVector::basis(6, {5});
  EXPECT_EQ(unit, expected);
  for (const auto& h : sys.unit.hamiltonians) EXPECT_TRUE(apply_field(unit, h).is_zero());

  auto field = kepler_field(sys);
  std::vector<double> pt{0.5, 1.25, 2, 0.1, -3, 7};
  auto v = field(std::span<const double>(pt));
  const double nu = 2 * 3 * 4 / std::pow(3.75, 3);
  for (std::size_t i = 0; i < 3; ++i) EXPECT_EQ(v[i], 0.0);
  for (std::size_t i = 3; i < 6; ++i) EXPECT_NEAR(v[i], nu, 1e-15);
  EXPECT_NEAR(sys.energy(std::span<const double>(pt)), -12 / (3.75 * 3.75), 1e-15);

  std::vector<double> singular{1, -1, 0, 0, 0, 0};
  EXPECT_THROW(sys.nu(std::span<const double>(singular)), std::domain_error);
  EXPECT_THROW(field(std::span<const double>(singular)), std::domain_error);
}

TEST(Kepler, IntegralsConserved) {
  auto sys = kepler_action_angle(1, 1);
  std::vector<double> x0{0.5, 0.75, 1, 0, 0.25, -0.5};
  auto tr = rk4_integrate(kepler_field(sys), x0, 1e-2, 1000, sys.unit.hamiltonians);
  ASSERT_TRUE(tr.ok);
  ASSERT_EQ(tr.invariant_drift.size(), 5u);
  for (double d : tr.invariant_drift) EXPECT_LT(d, 1e-8);
  const double nu = 2 / std::pow(2.25, 3), t = tr.times.back();
  for (std::size_t i = 3; i < 6; ++i) EXPECT_NEAR(tr.states.back()[i], x0[i] + nu * t, 1e-9);

  std::vector<double> singular{1, -1, 0, 0, 0, 0};
  auto bad = rk4_integrate(kepler_field(sys), singular, 1e-2, 10);
  EXPECT_FALSE(bad.ok);
  EXPECT_EQ(bad.states.size(), 1u);
}

TEST(PreservedBracket, SpinExamples) {
  auto field = dynamics_field(spin_system(e3(), 1));
  auto s = coordinates(3);
  Poly s2 = s[0] * s[0] + s[1] * s[1] + s[2] * s[2];
  MultiVector vol = MultiVector::volume(3, 3);
  EXPECT_TRUE(check_preserved_bracket(field, vol));
  EXPECT_TRUE(check_preserved_bracket(field, s2 * vol));
  EXPECT_TRUE(check_preserved_bracket(field, s[2] * vol));
  EXPECT_FALSE(check_preserved_bracket(field, s[0] * vol));
}

TEST(PreservedBracket, IffFirstIntegral) {
  Random rng(29);
  auto field = dynamics_field(spin_system(e3(), 1));
  MultiVector vol = MultiVector::volume(3, 3);
  int preserved = 0;
  for (int trial = 0; trial < 20; ++trial) {
    Poly f = trial % 2 ? random_first_integral(rng) : rng.poly(3, 0, 3);
    const bool invariant = apply_field(field, f).is_zero();
    EXPECT_EQ(check_preserved_bracket(field, f * vol), invariant) << f.to_string();
    preserved += invariant;
  }
  EXPECT_GE(preserved, 10);
  EXPECT_LT(preserved, 20);
}

TEST(PreservedBracket, KeplerScaledTensor) {
  auto sys = kepler_action_angle(1, 1);
  VectorField unit = dynamics_field(sys.unit);
  MultiVector vol = MultiVector::volume(6, 6);
  EXPECT_TRUE(check_preserved_bracket(unit, vol));
  Poly first = x(6, 0) * x(6, 1) + (x(6, 3) - x(6, 4)) * (x(6, 4) - x(6, 5)) + x(6, 2);
  EXPECT_TRUE(check_preserved_bracket(unit, first * vol));
  EXPECT_FALSE(check_preserved_bracket(unit, x(6, 3) * vol));
}
