#include "nambu/nambu_dyn/nambu_dyn.hpp"

#include <cmath>
#include <stdexcept>

#include "nambu/npoisson/npoisson.hpp"

namespace nambu {

namespace {

int eps(std::size_t j, std::size_t k, std::size_t l) {
  if (j == k || k == l || j == l) return 0;
  return ((k + 3 - j) % 3 == 1) ? 1 : -1;
}

std::vector<Poly> without(const std::vector<Poly>& fs, std::size_t i) {
  std::vector<Poly> out;
  for (std::size_t k = 0; k < fs.size(); ++k)
    if (k != i) out.push_back(fs[k]);
  return out;
}

Poly variable(std::size_t m, std::size_t i) { return Poly::variable(m, i); }

}  // namespace

void validate(const NambuSystem& sys) {
  if (sys.tensor.degree() == 0) throw std::invalid_argument("NambuSystem: tensor degree must be positive");
  if (sys.hamiltonians.size() + 1 != sys.tensor.degree())
    throw std::invalid_argument("NambuSystem: need degree - 1 Hamiltonians");
  for (const auto& h : sys.hamiltonians)
    if (h.num_vars() != sys.num_vars()) throw std::invalid_argument("NambuSystem: chart mismatch");
  if (!is_n_poisson(sys.tensor).holds) throw std::domain_error("NambuSystem: tensor is not n-Poisson");
}

VectorField dynamics_field(const NambuSystem& sys) {
  validate(sys);
  return hamiltonian_field(sys.tensor, std::span<const Poly>(sys.hamiltonians));
}

std::vector<MultiVector> hereditary_bivectors(const NambuSystem& sys) {
  validate(sys);
  if (sys.tensor.degree() < 2) throw std::invalid_argument("hereditary_bivectors: degree must be >= 2");
  std::vector<MultiVector> out;
  for (std::size_t i = 0; i < sys.hamiltonians.size(); ++i) {
    auto rest = without(sys.hamiltonians, i);
    out.push_back(contract_all(sys.tensor, std::span<const Poly>(rest)));
  }
  return out;
}

BracketTable hereditary_poisson_table(const Poly& f, const LaurentPoly& big_f) {
  if (f.num_vars() != 3 || big_f.num_vars() != 3)
    throw std::invalid_argument("hereditary_poisson_table: needs three variables");
  LaurentPoly lf(f);
  std::array<LaurentPoly, 3> grad{big_f.partial(0), big_f.partial(1), big_f.partial(2)};
  BracketTable table;
  for (std::size_t j = 0; j < 3; ++j)
    for (std::size_t k = 0; k < 3; ++k) {
      LaurentPoly entry(3);
      for (std::size_t l = 0; l < 3; ++l) {
        const int e = eps(j, k, l);
        if (e > 0) entry += grad[l];
        else if (e < 0) entry -= grad[l];
      }
      table[j][k] = lf * entry;
    }
  return table;
}

BracketTable hereditary_poisson_table(const Poly& f, const Poly& big_f) {
  return hereditary_poisson_table(f, LaurentPoly(big_f));
}

NumericTable numeric_spin_table(double f, const ComplexFunction& big_f, const std::array<double, 3>& s) {
  constexpr double step = 1e-20;
  std::array<double, 3> grad{};
  for (std::size_t l = 0; l < 3; ++l) {
    std::array<std::complex<double>, 3> z{s[0], s[1], s[2]};
    z[l] += std::complex<double>(0, step);
    grad[l] = big_f(z).imag() / step;
  }
  NumericTable table{};
  for (std::size_t j = 0; j < 3; ++j)
    for (std::size_t k = 0; k < 3; ++k)
      for (std::size_t l = 0; l < 3; ++l) table[j][k] += f * eps(j, k, l) * grad[l];
  return table;
}

ComplexFunction cosh_spin_generator(double lambda) {
  if (lambda == 0) throw std::invalid_argument("cosh_spin_generator: lambda must be nonzero");
  return [lambda](const std::array<std::complex<double>, 3>& s) {
    return s[0] * s[0] + s[1] * s[1] +
           (std::cosh(2.0 * lambda * s[2]) / std::sinh(lambda) - 1.0 / lambda) / (2.0 * lambda);
  };
}

NambuSystem spin_system(const std::array<Rational, 3>& b, const Rational& mu) {
  Poly s2(3), sb(3);
  for (std::size_t i = 0; i < 3; ++i) {
    s2 += variable(3, i) * variable(3, i);
    sb += (mu * b[i]) * variable(3, i);
  }
  return NambuSystem{Rational(1, 2) * MultiVector::volume(3, 3), {s2, sb}};
}

Poly spin_hamiltonian(const std::array<Rational, 3>& b, const Rational& mu) {
  Poly h(3);
  for (std::size_t i = 0; i < 3; ++i) h -= (mu * b[i]) * variable(3, i);
  return h;
}

Rational KeplerSystem::nu(std::span<const Rational> x) const {
  if (x.size() != 6) throw std::invalid_argument("KeplerSystem::nu: expected 6 coordinates");
  Rational total = x[0] + x[1] + x[2];
  if (total == 0) throw std::domain_error("KeplerSystem::nu: J1 + J2 + J3 = 0");
  return 2 * mass * k * k / (total * total * total);
}

double KeplerSystem::nu(std::span<const double> x) const {
  if (x.size() != 6) throw std::invalid_argument("KeplerSystem::nu: expected 6 coordinates");
  const double total = x[0] + x[1] + x[2];
  if (total == 0) throw std::domain_error("KeplerSystem::nu: J1 + J2 + J3 = 0");
  return 2 * mass.get_d() * k.get_d() * k.get_d() / (total * total * total);
}

double KeplerSystem::energy(std::span<const double> x) const {
  if (x.size() != 6) throw std::invalid_argument("KeplerSystem::energy: expected 6 coordinates");
  const double total = x[0] + x[1] + x[2];
  if (total == 0) throw std::domain_error("KeplerSystem::energy: J1 + J2 + J3 = 0");
  return -mass.get_d() * k.get_d() * k.get_d() / (total * total);
}

KeplerSystem kepler_action_angle(const Rational& mass, const Rational& k) {
  std::vector<Poly> hs{variable(6, 0), variable(6, 1), variable(6, 2), variable(6, 3) - variable(6, 4),
                       variable(6, 4) - variable(6, 5)};
  return KeplerSystem{mass, k, NambuSystem{MultiVector::volume(6, 6), std::move(hs)}};
}

bool check_preserved_bracket(const VectorField& field, const MultiVector& lambda) {
  return lie_derivative(field, lambda).is_zero();
}

NumericField compile_field(const VectorField& x) {
  if (x.degree() != 1) throw std::invalid_argument("compile_field: expected a vector field");
  std::vector<NumericPoly> comps;
  for (std::size_t i = 0; i < x.num_vars(); ++i) comps.emplace_back(x.component({i}));
  return [comps = std::move(comps)](std::span<const double> p) {
    std::vector<double> out(comps.size());
    for (std::size_t i = 0; i < comps.size(); ++i) out[i] = comps[i](p);
    return out;
  };
}

NumericField kepler_field(const KeplerSystem& sys) {
  NumericField unit = compile_field(dynamics_field(sys.unit));
  return [sys, unit](std::span<const double> p) {
    auto v = unit(p);
    const double nu = sys.nu(p);
    for (auto& c : v) c *= nu;
    return v;
  };
}

Trajectory rk4_integrate(const NumericField& field, const std::vector<double>& x0, double h,
                         std::size_t steps, const std::vector<Poly>& monitors) {
  if (!(h > 0)) throw std::invalid_argument("rk4_integrate: step must be positive");
  if (steps == 0) throw std::invalid_argument("rk4_integrate: need at least one step");
  const std::size_t m = x0.size();
  std::vector<NumericPoly> mons;
  for (const auto& p : monitors) {
    if (p.num_vars() != m) throw std::invalid_argument("rk4_integrate: monitor chart mismatch");
    mons.emplace_back(p);
  }
  std::vector<double> start;
  for (const auto& mon : mons) start.push_back(mon(x0));

  Trajectory tr;
  tr.invariant_drift.assign(mons.size(), 0.0);
  auto record = [&](double t, const std::vector<double>& x) {
    tr.times.push_back(t);
    tr.states.push_back(x);
    std::vector<double> d(mons.size());
    for (std::size_t i = 0; i < mons.size(); ++i) {
      d[i] = std::abs(mons[i](x) - start[i]);
      tr.invariant_drift[i] = std::max(tr.invariant_drift[i], d[i]);
    }
    tr.drift.push_back(std::move(d));
  };
  auto checked = [&](const std::vector<double>& x) {
    auto v = field(x);
    if (v.size() != m) throw std::invalid_argument("rk4_integrate: field dimension mismatch");
    return v;
  };
  auto shifted = [m](const std::vector<double>& x, const std::vector<double>& k, double c) {
    std::vector<double> out(m);
    for (std::size_t i = 0; i < m; ++i) out[i] = x[i] + c * k[i];
    return out;
  };

  std::vector<double> x = x0;
  record(0.0, x);
  for (std::size_t s = 1; s <= steps; ++s) {
    try {
      auto k1 = checked(x);
      auto k2 = checked(shifted(x, k1, h / 2));
      auto k3 = checked(shifted(x, k2, h / 2));
      auto k4 = checked(shifted(x, k3, h));
      for (std::size_t i = 0; i < m; ++i) x[i] += h / 6 * (k1[i] + 2 * k2[i] + 2 * k3[i] + k4[i]);
    } catch (const std::domain_error& e) {
      tr.ok = false;
      tr.error = e.what();
      return tr;
    }
    for (double c : x)
      if (!std::isfinite(c)) {
        tr.ok = false;
        tr.error = "non-finite state at step " + std::to_string(s);
        return tr;
      }
    record(static_cast<double>(s) * h, x);
  }
  return tr;
}

Trajectory rk4_integrate(const VectorField& field, const std::vector<double>& x0, double h,
                         std::size_t steps, const std::vector<Poly>& monitors) {
  if (field.num_vars() != x0.size()) throw std::invalid_argument("rk4_integrate: chart mismatch");
  return rk4_integrate(compile_field(field), x0, h, steps, monitors);
}

}  // namespace nambu
