#pragma once

#include <cstddef>
#include <vector>

#include "nambu/exactpoly/rational.hpp"

namespace nambu {

/// Dense row-major matrix over the rationals.
class RationalMatrix {
 public:
  RationalMatrix() = default;
  RationalMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols) {}

  static RationalMatrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }

  Rational& operator()(std::size_t r, std::size_t c) {
    return data_[r * cols_ + c];
  }
  const Rational& operator()(std::size_t r, std::size_t c) const {
    return data_[r * cols_ + c];
  }

  RationalMatrix transpose() const;
  Rational trace() const;
  bool is_zero() const;
  bool is_symmetric() const;

  friend RationalMatrix operator*(const RationalMatrix& a,
                                  const RationalMatrix& b);
  friend RationalMatrix operator+(const RationalMatrix& a,
                                  const RationalMatrix& b);
  friend RationalMatrix operator-(const RationalMatrix& a,
                                  const RationalMatrix& b);
  friend RationalMatrix operator*(const Rational& c, RationalMatrix a);
  friend bool operator==(const RationalMatrix& a, const RationalMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

  std::vector<Rational> apply(const std::vector<Rational>& v) const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> data_;
};

/// Reduced row echelon form; pivot columns are appended to *pivots if given.
RationalMatrix rref(RationalMatrix m, std::vector<std::size_t>* pivots = nullptr);
std::size_t rank(const RationalMatrix& m);
Rational determinant(RationalMatrix m);
/// Throws std::domain_error for singular input.
RationalMatrix inverse(const RationalMatrix& m);
/// Basis of the right nullspace {v : m v = 0}, one vector per free column.
std::vector<std::vector<Rational>> nullspace(const RationalMatrix& m);

/// Result of congruence diagonalization P^T S P = D of a symmetric matrix.
struct CongruenceDiagonal {
  RationalMatrix transform;  // P, invertible
  std::vector<Rational> diagonal;
  std::size_t positive = 0;
  std::size_t negative = 0;
  std::size_t rank() const { return positive + negative; }
};

/// Symmetric Gaussian elimination over Q. Throws std::invalid_argument if
/// the input is not symmetric.
CongruenceDiagonal congruence_diagonalize(const RationalMatrix& s);

}  // namespace nambu
