#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "nambu/multivec/multivector.hpp"

namespace nambu {

/// First-order skew n-differential operator D = nabla + s(box), stored by its
/// canonical decomposition: nabla of degree n and box = D(1, ...) of degree
/// n - 1.
class JacobiOp {
 public:
  JacobiOp() = default;
  JacobiOp(MultiVector nabla, MultiVector box);
  /// The pure multi-derivation (v, 0).
  static JacobiOp derivation(const MultiVector& v);
  static JacobiOp zero(std::size_t num_vars, std::size_t arity);

  const MultiVector& nabla() const { return nabla_; }
  const MultiVector& box() const { return box_; }
  std::size_t arity() const { return nabla_.degree(); }
  std::size_t num_vars() const { return nabla_.num_vars(); }
  bool is_zero() const { return nabla_.is_zero() && box_.is_zero(); }

  friend JacobiOp operator+(const JacobiOp& a, const JacobiOp& b);
  friend bool operator==(const JacobiOp& a, const JacobiOp& b) = default;

 private:
  MultiVector nabla_;
  MultiVector box_;
};

/// nabla(f1..fn) + sum_i (-1)^(i-1) f_i box(f1..^fi..fn)
Poly apply(const JacobiOp& d, std::span<const Poly> fs);
Poly apply(const JacobiOp& d, std::initializer_list<Poly> fs);

/// s(nabla + s(box)) = s(nabla), i.e. the pair (0, nabla).
JacobiOp s_op(const JacobiOp& d);

/// D(1, ...) = box.
MultiVector insert_unity(const JacobiOp& d);

/// Canonical decomposition (D^1, D^0) of D_{f1..f_{n-1}}(D), so that the
/// Jacobiator along fs is D^1 + s(D^0).
std::pair<MultiVector, MultiVector> jacobi_defects(const JacobiOp& d, std::span<const Poly> fs);
std::pair<MultiVector, MultiVector> jacobi_defects(const JacobiOp& d,
                                                   std::initializer_list<Poly> fs);

struct JacobiWitness {
  std::vector<Poly> functions;
  MultiVector defect1;
  MultiVector defect0;
};

struct JacobiResult {
  bool holds = true;
  std::optional<JacobiWitness> witness;
  explicit operator bool() const { return holds; }
};

/// Both defects over all increasing tuples of distinct slot functions drawn
/// from 1 and the monomials of degree 1..slot_degree.
JacobiResult is_n_jacobi(const JacobiOp& d, unsigned slot_degree = 2);

/// (nabla, omega _| nabla). Throws std::domain_error unless omega is closed
/// and nabla is n-Poisson and decomposable.
JacobiOp from_poisson_and_form(const MultiVector& nabla, const OneForm& omega);

/// det[d f_i / d y_j] + sum_k (-1)^(k-1) f_k det_k, with det_k the minor
/// without row k and column n; y_j = x_j.
Poly canonical_bracket(std::size_t m, std::size_t n, std::span<const Poly> fs);

}  // namespace nambu
