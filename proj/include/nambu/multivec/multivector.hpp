#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "nambu/exactpoly/matrix.hpp"
#include "nambu/exactpoly/poly.hpp"

namespace nambu {

/// Strictly increasing tuple of 0-based coordinate indices.
using IndexTuple = std::vector<std::size_t>;

/// Skew-symmetric k-vector field with polynomial coefficients,
///   V = sum_I V^I d_{i1} ^ ... ^ d_{ik},
/// identified with the skew multi-derivation
///   V(f1, ..., fk) = sum_I V^I det[d f_a / d x_{i_b}].
///
/// Degrees above num_vars are allowed and always hold the zero multivector;
/// this keeps wedge and the s-operator total.
class MultiVector {
 public:
  using ComponentMap = std::map<IndexTuple, Poly>;

  MultiVector() = default;
  MultiVector(std::size_t num_vars, std::size_t degree)
      : num_vars_(num_vars), degree_(degree) {}

  /// Degree-0 multivector holding a function.
  static MultiVector scalar(const Poly& f);
  /// coef * d_{i1} ^ ... ^ d_{ik}; the indices may come in any order and
  /// repeated indices give zero.
  static MultiVector basis(std::size_t num_vars, const IndexTuple& indices,
                           const Poly& coef);
  static MultiVector basis(std::size_t num_vars, const IndexTuple& indices,
                           const Rational& coef = 1);
  /// d_1 ^ ... ^ d_k on num_vars coordinates.
  static MultiVector volume(std::size_t num_vars, std::size_t k);

  std::size_t num_vars() const { return num_vars_; }
  std::size_t degree() const { return degree_; }
  const ComponentMap& components() const { return comps_; }
  bool is_zero() const { return comps_.empty(); }

  /// Coefficient of an increasing tuple.
  Poly component(const IndexTuple& increasing) const;
  /// Coefficient with skew-symmetry applied to an arbitrary tuple.
  Poly component_any(const IndexTuple& indices) const;
  /// The single coefficient of a degree-0 multivector.
  Poly scalar_value() const;

  /// Adds coef at an arbitrary tuple (sign handled, repeats ignored).
  void add(const IndexTuple& indices, const Poly& coef);

  MultiVector& operator+=(const MultiVector& other);
  MultiVector& operator-=(const MultiVector& other);
  friend MultiVector operator+(MultiVector a, const MultiVector& b) { return a += b; }
  friend MultiVector operator-(MultiVector a, const MultiVector& b) { return a -= b; }
  friend MultiVector operator*(const Poly& f, const MultiVector& v);
  friend MultiVector operator*(const Rational& c, const MultiVector& v);
  MultiVector operator-() const;
  friend bool operator==(const MultiVector& a, const MultiVector& b) {
    return a.num_vars_ == b.num_vars_ && a.degree_ == b.degree_ && a.comps_ == b.comps_;
  }

  /// Evaluates the multi-derivation on degree() functions.
  Poly apply(std::span<const Poly> fs) const;
  Poly apply(std::initializer_list<Poly> fs) const {
    return apply(std::span<const Poly>(fs.begin(), fs.size()));
  }

  /// All coefficients evaluated at a point.
  std::map<IndexTuple, Rational> at(std::span<const Rational> point) const;

  /// Text form, e.g. "x4 d1^d2^d3 + 2 d1^d4".
  std::string to_string() const;

 private:
  void check_compatible(const MultiVector& other) const;

  std::size_t num_vars_ = 0;
  std::size_t degree_ = 0;
  ComponentMap comps_;
};

/// A multivector of degree 1.
using VectorField = MultiVector;

/// Differential 1-form sum_i alpha_i dx_i.
struct OneForm {
  std::vector<Poly> components;

  std::size_t num_vars() const { return components.size(); }
  static OneForm zero(std::size_t num_vars);
  /// df
  static OneForm differential(const Poly& f);
  friend bool operator==(const OneForm&, const OneForm&) = default;
};

/// Sign of the permutation sorting the tuple, with 0 for repeated entries.
int permutation_sign(const IndexTuple& indices);

/// All increasing k-subsets of {0, ..., n-1} in lexicographic order.
std::vector<IndexTuple> increasing_tuples(std::size_t n, std::size_t k);

MultiVector wedge(const MultiVector& a, const MultiVector& b);

/// df inserted into the first slot: (df _| V)(g2, ...) = V(f, g2, ...).
MultiVector contract(const Poly& f, const MultiVector& v);
/// alpha inserted into the first slot.
MultiVector contract(const OneForm& alpha, const MultiVector& v);

/// X = V(df1, ..., df_{n-1}, .) as a vector field.
VectorField hamiltonian_field(const MultiVector& v, std::span<const Poly> fs);
VectorField hamiltonian_field(const MultiVector& v, std::initializer_list<Poly> fs);

/// Inserts the given functions into the leading slots in order.
MultiVector contract_all(const MultiVector& v, std::span<const Poly> fs);

/// X(f) for a vector field X.
Poly apply_field(const VectorField& x, const Poly& f);

MultiVector lie_derivative(const VectorField& x, const MultiVector& v);

/// Schouten-Nijenhuis bracket, reconstructed from its action on coordinate
/// functions. Degree-0 arguments are allowed as long as the result degree
/// k + l - 1 is non-negative.
MultiVector schouten(const MultiVector& a, const MultiVector& b);

/// Dimension of the span of the derived vectors V(dx_{a1}, ..., dx_{a(k-1)}, .)
/// at a point.
std::size_t derived_rank(const MultiVector& v, std::span<const Rational> point);

/// Derived vector V(dx_{a1}, ..., dx_{a(k-1)}, .) for coordinate covectors.
VectorField derived_vector(const MultiVector& v, const IndexTuple& covectors);

/// Everywhere-decomposability: every derived vector wedges V to zero.
bool is_decomposable(const MultiVector& v);

/// Witness for a failing is_decomposable.
std::optional<IndexTuple> decomposability_witness(const MultiVector& v);

/// V_{a,c} ^ V_b + V_{b,c} ^ V_a = 0 over all coordinate covectors.
/// Throws std::invalid_argument for degree <= 2.
bool prop7_hypothesis(const MultiVector& v);

using FormMatrix = std::vector<std::vector<Poly>>;

/// (d alpha)_{ij} = d_i alpha_j - d_j alpha_i.
FormMatrix exterior_derivative_1form(const OneForm& alpha);
bool is_closed(const OneForm& alpha);
/// True iff alpha ^ d alpha vanishes identically.
bool alpha_wedge_dalpha(const OneForm& alpha);

}  // namespace nambu
