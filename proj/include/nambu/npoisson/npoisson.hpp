#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "nambu/multivec/multivector.hpp"
#include "nambu/nlie/nlie.hpp"

namespace nambu {

/// L_X(V) for X = V(df1, ..., df_{n-1}, .). Zero iff the fundamental
/// identity holds along fs.
MultiVector fi_defect(const MultiVector& v, std::span<const Poly> fs);
MultiVector fi_defect(const MultiVector& v, std::initializer_list<Poly> fs);

struct PoissonWitness {
  std::vector<Poly> functions;
  MultiVector defect;
};

struct PoissonResult {
  bool holds = true;
  /// Monomial tuple with a nonzero defect.
  std::optional<PoissonWitness> witness;
  /// Set when the verdict came from the rank pre-filter.
  std::optional<IndexTuple> rank_witness;
  explicit operator bool() const { return holds; }
};

struct PoissonOptions {
  /// For n > 2, reject non-decomposable tensors without running the oracle.
  bool rank_filter = true;
  /// Highest monomial degree per slot.
  unsigned slot_degree = 2;
};

/// Fundamental identity over all increasing tuples of distinct monomials of
/// degree 1..slot_degree. Throws for degree 0.
PoissonResult is_n_poisson(const MultiVector& v, const PoissonOptions& options = {});

/// T = sum_I [x_{i1}, ..., x_{in}] d_{i1} ^ ... ^ d_{in} on dim(P) coordinates.
MultiVector dual_nvector(const NLieStructure& p);

/// f * V. Throws std::domain_error unless V is n-Poisson and decomposable.
MultiVector scale(const Poly& f, const MultiVector& v);

struct WedgeCompat {
  /// schouten(D, N) == 0
  bool schouten_vanishes = false;
  /// L_{N_h}(D) ^ N == 0 for all monomial h
  bool nabla_moves_delta = false;
  /// L_{D_g}(N) ^ D == 0 for all monomial g
  bool delta_moves_nabla = false;
  /// is_n_poisson(D ^ N) by the oracle
  bool wedge_is_poisson = false;

  bool criterion() const { return schouten_vanishes && nabla_moves_delta && delta_moves_nabla; }
};

/// Both inputs must be multi-Poisson and decomposable (std::domain_error).
WedgeCompat wedge_compat_check(const MultiVector& delta, const MultiVector& nabla,
                               unsigned slot_degree = 2);

/// Basis of polynomial Casimirs of degree <= max_degree: the common kernel
/// of g -> V(dx_K, dg) over all coordinate tuples K.
std::vector<Poly> casimir_polynomials(const MultiVector& v, unsigned max_degree);

}  // namespace nambu
