#pragma once

#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "nambu/exactpoly/poly.hpp"

namespace nambu {

using LaurentExponents = std::vector<int>;

/// Polynomial in x_i and x_i^-1 with rational coefficients. Only used for
/// bracket tables whose generating function has negative powers.
class LaurentPoly {
 public:
  using TermMap = std::map<LaurentExponents, Rational>;

  LaurentPoly() = default;
  explicit LaurentPoly(std::size_t num_vars) : num_vars_(num_vars) {}
  explicit LaurentPoly(const Poly& p);

  static LaurentPoly monomial(std::size_t num_vars, LaurentExponents exps, const Rational& c = 1);

  std::size_t num_vars() const { return num_vars_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  void add_term(const LaurentExponents& exps, const Rational& c);

  LaurentPoly& operator+=(const LaurentPoly& other);
  LaurentPoly& operator-=(const LaurentPoly& other);
  friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
  friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }
  friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b);
  friend LaurentPoly operator*(const Rational& c, LaurentPoly a);
  LaurentPoly operator-() const;
  friend bool operator==(const LaurentPoly& a, const LaurentPoly& b) = default;

  LaurentPoly partial(std::size_t i) const;

  /// Throws std::domain_error when a negative power meets a zero coordinate.
  double evaluate(std::span<const double> point) const;
  Rational evaluate(std::span<const Rational> point) const;

  std::string to_string() const;

 private:
  std::size_t num_vars_ = 0;
  TermMap terms_;
};

}  // namespace nambu
