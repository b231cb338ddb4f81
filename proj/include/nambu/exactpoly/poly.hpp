#pragma once

#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "nambu/exactpoly/rational.hpp"

namespace nambu {

/// Exponent vector of a monomial; its length is the number of chart
/// coordinates.
using Exponents = std::vector<unsigned>;

/// Sparse multivariate polynomial with exact rational coefficients.
///
/// Terms are kept in a map ordered lexicographically by exponent vector, so
/// iteration and serialization are deterministic. Zero coefficients are never
/// stored. Coordinates are indexed from 0 in this API; the text and JSON
/// forms use x1, x2, ... .
class Poly {
 public:
  using TermMap = std::map<Exponents, Rational>;

  Poly() = default;
  explicit Poly(std::size_t num_vars) : num_vars_(num_vars) {}

  static Poly constant(std::size_t num_vars, const Rational& c);
  static Poly variable(std::size_t num_vars, std::size_t i);
  static Poly monomial(std::size_t num_vars, Exponents exps,
                       const Rational& c = 1);

  std::size_t num_vars() const { return num_vars_; }
  const TermMap& terms() const { return terms_; }
  std::size_t num_terms() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  /// Coefficient of the constant term.
  Rational constant_term() const;
  /// Total degree; -1 for the zero polynomial.
  int total_degree() const;
  Rational coefficient(const Exponents& exps) const;

  /// Adds c * x^exps in place.
  void add_term(const Exponents& exps, const Rational& c);

  Poly& operator+=(const Poly& other);
  Poly& operator-=(const Poly& other);
  Poly& operator*=(const Poly& other);
  Poly& operator*=(const Rational& c);

  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(const Poly& a, const Poly& b);
  friend Poly operator*(Poly a, const Rational& c) { return a *= c; }
  friend Poly operator*(const Rational& c, Poly a) { return a *= c; }
  Poly operator-() const;

  friend bool operator==(const Poly& a, const Poly& b) {
    return a.num_vars_ == b.num_vars_ && a.terms_ == b.terms_;
  }

  /// Partial derivative with respect to coordinate i.
  Poly partial(std::size_t i) const;

  Rational evaluate(std::span<const Rational> point) const;
  double evaluate(std::span<const double> point) const;

  /// Text form, e.g. "x1^2 - 1/2 x2 x3 + 3".
  std::string to_string() const;

 private:
  void check_same_vars(const Poly& other) const;

  std::size_t num_vars_ = 0;
  TermMap terms_;
};

enum class ArithOp { add, sub, mul };

/// Exact ring operation; throws std::invalid_argument when the operands live
/// on charts of different dimension.
Poly arith(const Poly& p, const Poly& q, ArithOp op);

/// Parses the text form produced by Poly::to_string. Coordinates are written
/// x1..xm; factors may be separated by spaces or '*'.
Poly parse_poly(std::string_view text, std::size_t num_vars);

/// All monomials x^e with min_degree <= |e| <= max_degree in graded
/// lexicographic order (degree first, then descending lex on exponents).
std::vector<Poly> monomials_up_to(std::size_t num_vars, unsigned min_degree,
                                  unsigned max_degree);

/// A polynomial compiled for fast floating-point evaluation.
class NumericPoly {
 public:
  NumericPoly() = default;
  explicit NumericPoly(const Poly& p);
  double operator()(std::span<const double> x) const;

 private:
  struct Term {
    double coef;
    std::vector<std::pair<std::size_t, unsigned>> powers;
  };
  std::vector<Term> terms_;
};

}  // namespace nambu
