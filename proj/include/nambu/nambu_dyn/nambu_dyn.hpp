#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "nambu/multivec/multivector.hpp"
#include "nambu/nambu_dyn/laurent.hpp"

namespace nambu {

/// n-Poisson tensor with n - 1 Hamiltonians; the motion is
/// df/dt = tensor(H_1, ..., H_{n-1}, f).
struct NambuSystem {
  MultiVector tensor;
  std::vector<Poly> hamiltonians;
  std::size_t num_vars() const { return tensor.num_vars(); }
};

/// Throws std::invalid_argument on arity or chart mismatch and
/// std::domain_error if the tensor is not n-Poisson.
void validate(const NambuSystem& sys);

VectorField dynamics_field(const NambuSystem& sys);

/// Bivectors of the brackets {f, g}_i = tensor(H_1..^H_i..H_{n-1}, f, g).
/// The motion is f' = (-1)^(n-i) {f, H_i}_i (i from 1).
std::vector<MultiVector> hereditary_bivectors(const NambuSystem& sys);

/// {S_j, S_k} = f eps_jkl dF/dS_l on three variables, i.e. the ternary
/// tensor f d1^d2^d3 with F in the first slot.
using BracketTable = std::array<std::array<LaurentPoly, 3>, 3>;
BracketTable hereditary_poisson_table(const Poly& f, const LaurentPoly& big_f);
BracketTable hereditary_poisson_table(const Poly& f, const Poly& big_f);

using NumericTable = std::array<std::array<double, 3>, 3>;
using ComplexFunction = std::function<std::complex<double>(const std::array<std::complex<double>, 3>&)>;

/// Same table at a point for an analytic F, with dF from complex-step
/// differentiation.
NumericTable numeric_spin_table(double f, const ComplexFunction& big_f, const std::array<double, 3>& s);

/// S1^2 + S2^2 + (cosh(2 lambda S3) / sinh(lambda) - 1 / lambda) / (2 lambda).
ComplexFunction cosh_spin_generator(double lambda);

/// Tensor 1/2 d1^d2^d3 with Hamiltonians (S^2, mu S.B); the motion is
/// dS_i/dt = mu eps_ijk S_j B_k.
NambuSystem spin_system(const std::array<Rational, 3>& b, const Rational& mu);

/// -mu S.B, the Hamiltonian for {S_j, S_k} = eps_jkl S_l.
Poly spin_hamiltonian(const std::array<Rational, 3>& b, const Rational& mu);

/// Kepler motion in action-angle coordinates (J1, J2, J3, phi1, phi2, phi3).
struct KeplerSystem {
  Rational mass;
  Rational k;
  /// d_J1 ^ ... ^ d_phi3 with Hamiltonians (J1, J2, J3, phi1 - phi2, phi2 - phi3).
  NambuSystem unit;

  /// 2 m k^2 / (J1 + J2 + J3)^3; throws std::domain_error on J1 + J2 + J3 = 0.
  Rational nu(std::span<const Rational> x) const;
  double nu(std::span<const double> x) const;
  /// -m k^2 / (J1 + J2 + J3)^2
  double energy(std::span<const double> x) const;
};

KeplerSystem kepler_action_angle(const Rational& mass, const Rational& k);

/// L_field(lambda) == 0.
bool check_preserved_bracket(const VectorField& field, const MultiVector& lambda);

using NumericField = std::function<std::vector<double>(std::span<const double>)>;

NumericField compile_field(const VectorField& x);
/// nu * unit field.
NumericField kepler_field(const KeplerSystem& sys);

struct Trajectory {
  std::vector<double> times;
  std::vector<std::vector<double>> states;
  /// |M_i(x(t)) - M_i(x0)| at every recorded time.
  std::vector<std::vector<double>> drift;
  /// Max of drift per monitor.
  std::vector<double> invariant_drift;
  bool ok = true;
  std::string error;
};

/// Fixed-step classical RK4. A non-finite state or a field evaluation error
/// stops the run and sets ok = false, keeping the steps done so far.
Trajectory rk4_integrate(const NumericField& field, const std::vector<double>& x0, double h,
                         std::size_t steps, const std::vector<Poly>& monitors = {});
Trajectory rk4_integrate(const VectorField& field, const std::vector<double>& x0, double h,
                         std::size_t steps, const std::vector<Poly>& monitors = {});

}  // namespace nambu
