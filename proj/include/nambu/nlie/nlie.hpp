#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <vector>

#include "nambu/exactpoly/matrix.hpp"
#include "nambu/multivec/multivector.hpp"

namespace nambu {

using Vector = std::vector<Rational>;

/// Linear operator on the algebra; column j is the image of e_j.
using LinearOperator = RationalMatrix;

/// Totally skew n-ary bracket on Q^N given by structure constants
/// [e_{i1}, ..., e_{in}] for increasing index tuples. Arity 1 structures are
/// bare linear operators.
class NLieStructure {
 public:
  NLieStructure() = default;
  NLieStructure(std::size_t dim, std::size_t arity);

  std::size_t dim() const { return dim_; }
  std::size_t arity() const { return arity_; }
  const std::map<IndexTuple, Vector>& constants() const { return constants_; }
  bool is_zero() const { return constants_.empty(); }

  /// [e_{i1}, ..., e_{in}] for any index order (skew-symmetry applied).
  Vector basis_bracket(const IndexTuple& indices) const;
  /// Sets the constants of an arbitrary tuple; the skew partner is implied.
  void set(const IndexTuple& indices, const Vector& value);

  NLieStructure& operator+=(const NLieStructure& other);
  friend NLieStructure operator+(NLieStructure a, const NLieStructure& b) { return a += b; }
  friend NLieStructure operator-(const NLieStructure& a, const NLieStructure& b);
  friend NLieStructure operator*(const Rational& c, const NLieStructure& p);
  friend bool operator==(const NLieStructure& a, const NLieStructure& b) {
    return a.dim_ == b.dim_ && a.arity_ == b.arity_ && a.constants_ == b.constants_;
  }

 private:
  std::size_t dim_ = 0;
  std::size_t arity_ = 1;
  std::map<IndexTuple, Vector> constants_;
};

/// A violating instance: the frozen basis tuple (the u's, or empty) and the
/// basis arguments at which the defect is nonzero.
struct TupleWitness {
  IndexTuple fixed;
  IndexTuple args;
  Vector defect;
};

struct CheckResult {
  bool holds = true;
  std::optional<TupleWitness> witness;
  explicit operator bool() const { return holds; }
};

Vector basis_vector(std::size_t dim, std::size_t i);

/// Multilinear skew evaluation.
Vector bracket(const NLieStructure& p, const std::vector<Vector>& vs);

/// Checks the n-ary Jacobi identity on all basis tuples.
CheckResult check_n_jacobi(const NLieStructure& p);

/// P_{u1,...,uk}: the first k slots frozen.
NLieStructure hereditary(const NLieStructure& p, const std::vector<Vector>& us);

/// Matrix of v -> [u1, ..., u_{n-1}, v].
LinearOperator inner_derivation(const NLieStructure& p, const std::vector<Vector>& us);

/// D[e_I] == sum_i [.., D e_{i_s}, ..] on all basis tuples.
CheckResult is_derivation(const LinearOperator& d, const NLieStructure& p);

/// The operator-derivative of Q along D:
///   [D(Q)](x1..xr) = D(Q(x1..xr)) - sum_i Q(.., D x_i, ..).
NLieStructure operator_derivative(const LinearOperator& d, const NLieStructure& q);

/// Comp(P, Q; u1..u_{r-1}) = P_u(Q) + Q_u(P).
NLieStructure comp_defect(const NLieStructure& p, const NLieStructure& q,
                          const std::vector<Vector>& us);

/// [P_v, P_u] == sum_i P_{u1, .., [v.., u_i], .., u_{n-1}} as matrices.
bool commutator_check(const NLieStructure& p, const std::vector<Vector>& us,
                      const std::vector<Vector>& vs);

/// Compatibility: Comp(P, Q; u) vanishes for all basis tuples u.
CheckResult compat(const NLieStructure& p, const NLieStructure& q);

/// k-th order compatibility condition C(v1..vk | w1..wk) = 0, checked on all
/// basis tuples of the remaining arguments. Requires 1 <= k <= n - 1.
CheckResult comp_condition_k(const NLieStructure& p, const std::vector<Vector>& vs,
                             const std::vector<Vector>& ws);

/// comp_condition_k over every ordered pair of basis k-tuples.
CheckResult comp_condition_k_basis(const NLieStructure& p, std::size_t k);

NLieStructure direct_product(const NLieStructure& p, const NLieStructure& q);

/// n-vector product on Q^{n+1}: [e_I] = sign(I, j) e_j, j the missing index.
NLieStructure vector_product_algebra(std::size_t n);

/// Structure in the basis given by the columns of s:
///   P'(u1..un) = s^{-1} P(s u1, .., s un).
NLieStructure change_basis(const NLieStructure& p, const RationalMatrix& s);

}  // namespace nambu
