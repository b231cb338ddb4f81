#include "nambu/njacobi/njacobi.hpp"

#include <stdexcept>

#include "nambu/npoisson/npoisson.hpp"
#include "nambu/util/parallel.hpp"

namespace nambu {

namespace {

std::vector<Poly> without(std::span<const Poly> fs, std::size_t i) {
  std::vector<Poly> out;
  for (std::size_t k = 0; k < fs.size(); ++k)
    if (k != i) out.push_back(fs[k]);
  return out;
}

Poly scaled(const Poly& p, long c) { return Rational(c) * p; }

using PolyMatrix = std::vector<std::vector<Poly>>;

Poly poly_det(const PolyMatrix& a, std::size_t num_vars) {
  const std::size_t n = a.size();
  if (n == 0) return Poly::constant(num_vars, 1);
  Poly out(num_vars);
  for (std::size_t c = 0; c < n; ++c) {
    if (a[0][c].is_zero()) continue;
    PolyMatrix minor;
    for (std::size_t r = 1; r < n; ++r) {
      std::vector<Poly> row;
      for (std::size_t k = 0; k < n; ++k)
        if (k != c) row.push_back(a[r][k]);
      minor.push_back(std::move(row));
    }
    Poly term = a[0][c] * poly_det(minor, num_vars);
    if (c % 2) out -= term;
    else out += term;
  }
  return out;
}

}  // namespace

JacobiOp::JacobiOp(MultiVector nabla, MultiVector box)
    : nabla_(std::move(nabla)), box_(std::move(box)) {
  if (nabla_.degree() == 0) throw std::invalid_argument("JacobiOp: arity must be at least 1");
  if (box_.degree() + 1 != nabla_.degree())
    throw std::invalid_argument("JacobiOp: box degree must be one less than nabla degree");
  if (box_.num_vars() != nabla_.num_vars()) throw std::invalid_argument("JacobiOp: chart mismatch");
}

JacobiOp JacobiOp::derivation(const MultiVector& v) {
  if (v.degree() == 0) throw std::invalid_argument("JacobiOp: arity must be at least 1");
  return JacobiOp(v, MultiVector(v.num_vars(), v.degree() - 1));
}

JacobiOp JacobiOp::zero(std::size_t num_vars, std::size_t arity) {
  return JacobiOp(MultiVector(num_vars, arity), MultiVector(num_vars, arity - 1));
}

JacobiOp operator+(const JacobiOp& a, const JacobiOp& b) {
  return JacobiOp(a.nabla_ + b.nabla_, a.box_ + b.box_);
}

Poly apply(const JacobiOp& d, std::span<const Poly> fs) {
  if (fs.size() != d.arity()) throw std::invalid_argument("apply: arity mismatch");
  Poly out = d.nabla().apply(fs);
  if (d.box().is_zero()) return out;
  for (std::size_t i = 0; i < fs.size(); ++i) {
    auto rest = without(fs, i);
    Poly term = fs[i] * d.box().apply(std::span<const Poly>(rest));
    if (i % 2) out -= term;
    else out += term;
  }
  return out;
}

Poly apply(const JacobiOp& d, std::initializer_list<Poly> fs) {
  return apply(d, std::span<const Poly>(fs.begin(), fs.size()));
}

JacobiOp s_op(const JacobiOp& d) {
  return JacobiOp(MultiVector(d.num_vars(), d.arity() + 1), d.nabla());
}

MultiVector insert_unity(const JacobiOp& d) { return d.box(); }

std::pair<MultiVector, MultiVector> jacobi_defects(const JacobiOp& d, std::span<const Poly> fs) {
  const std::size_t n = d.arity();
  if (fs.size() + 1 != n) throw std::invalid_argument("jacobi_defects: expected arity - 1 functions");
  const MultiVector& nabla = d.nabla();
  const MultiVector& box = d.box();

  VectorField x = contract_all(nabla, fs);
  MultiVector d1 = lie_derivative(x, nabla);
  MultiVector d0 = lie_derivative(x, box);

  Poly h = box.apply(fs);
  if ((n - 1) % 2) h = -h;

  for (std::size_t i = 0; i < fs.size(); ++i) {
    auto rest = without(fs, i);
    VectorField xi = contract_all(box, rest);
    MultiVector t1 = fs[i] * lie_derivative(xi, nabla) - wedge(xi, contract(fs[i], nabla));
    MultiVector t0 = fs[i] * lie_derivative(xi, box) - wedge(xi, contract(fs[i], box));
    if (i % 2) {
      d1 -= t1;
      d0 -= t0;
    } else {
      d1 += t1;
      d0 += t0;
    }
  }
  const Poly weight = scaled(h, 1 - static_cast<long>(n));
  d1 += weight * nabla;
  d0 += weight * box;
  d0 -= contract(h, nabla);
  return {std::move(d1), std::move(d0)};
}

std::pair<MultiVector, MultiVector> jacobi_defects(const JacobiOp& d,
                                                   std::initializer_list<Poly> fs) {
  return jacobi_defects(d, std::span<const Poly>(fs.begin(), fs.size()));
}

JacobiResult is_n_jacobi(const JacobiOp& d, unsigned slot_degree) {
  const std::size_t m = d.num_vars(), n = d.arity();
  std::vector<Poly> slots{Poly::constant(m, 1)};
  for (auto& mono : monomials_up_to(m, 1, slot_degree)) slots.push_back(std::move(mono));

  const auto tuples = increasing_tuples(slots.size(), n - 1);
  auto functions = [&](std::size_t t) {
    std::vector<Poly> fs;
    for (auto i : tuples[t]) fs.push_back(slots[i]);
    return fs;
  };
  auto bad = first_failure(tuples.size(), [&](std::size_t t) {
    auto fs = functions(t);
    auto [d1, d0] = jacobi_defects(d, std::span<const Poly>(fs));
    return d1.is_zero() && d0.is_zero();
  });

  JacobiResult result;
  if (!bad) return result;
  auto fs = functions(*bad);
  auto [d1, d0] = jacobi_defects(d, std::span<const Poly>(fs));
  result.holds = false;
  result.witness = JacobiWitness{std::move(fs), std::move(d1), std::move(d0)};
  return result;
}

JacobiOp from_poisson_and_form(const MultiVector& nabla, const OneForm& omega) {
  if (omega.num_vars() != nabla.num_vars())
    throw std::invalid_argument("from_poisson_and_form: chart mismatch");
  if (!is_closed(omega)) throw std::domain_error("from_poisson_and_form: form is not closed");
  if (nabla.degree() == 0) throw std::invalid_argument("from_poisson_and_form: degree 0 tensor");
  if (!is_decomposable(nabla))
    throw std::domain_error("from_poisson_and_form: tensor is not decomposable");
  PoissonOptions opts;
  opts.rank_filter = false;
  if (!is_n_poisson(nabla, opts))
    throw std::domain_error("from_poisson_and_form: tensor is not n-Poisson");
  return JacobiOp(nabla, contract(omega, nabla));
}

Poly canonical_bracket(std::size_t m, std::size_t n, std::span<const Poly> fs) {
  if (n == 0 || n > m) throw std::invalid_argument("canonical_bracket: need 1 <= n <= m");
  if (fs.size() != n) throw std::invalid_argument("canonical_bracket: expected n functions");
  PolyMatrix jac(n, std::vector<Poly>(n));
  for (std::size_t i = 0; i < n; ++i) {
    if (fs[i].num_vars() != m) throw std::invalid_argument("canonical_bracket: chart mismatch");
    for (std::size_t j = 0; j < n; ++j) jac[i][j] = fs[i].partial(j);
  }
  Poly out = poly_det(jac, m);
  for (std::size_t k = 0; k < n; ++k) {
    PolyMatrix minor;
    for (std::size_t i = 0; i < n; ++i) {
      if (i == k) continue;
      minor.emplace_back(jac[i].begin(), jac[i].end() - 1);
    }
    Poly term = fs[k] * poly_det(minor, m);
    if (k % 2) out -= term;
    else out += term;
  }
  return out;
}

}  // namespace nambu
