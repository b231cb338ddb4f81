#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "nambu/exactpoly/matrix.hpp"
#include "nambu/multivec/multivector.hpp"
#include "nambu/nlie/nlie.hpp"

namespace nambu {

/// Matrix a of the linear 1-form alpha = sum a_ij x_j dx_i with
/// dual_nvector(P) = V(., ..., ., alpha), V = d_1 ^ ... ^ d_{n+1}.
/// Equivalently [e_1..^e_i..e_{n+1}] = (-1)^(n+1-i) sum_j a_ij e_j.
using GeneratingForm = RationalMatrix;

enum class BianchiKind { Unimodular, PsiLambdaPlus, PsiLambdaMinus, PsiOne, PsiZero };

struct BianchiLabel {
  BianchiKind kind = BianchiKind::Unimodular;
  /// Unimodular: rank and max(positive, negative) index of the form.
  std::size_t rank = 0;
  std::size_t max_index = 0;
  /// Psi_lambda: lambda is kept through its exact square.
  Rational lambda_squared = 0;

  static BianchiLabel unimodular(std::size_t rank, std::size_t max_index);
  static BianchiLabel psi_lambda(bool plus, const Rational& lambda);
  static BianchiLabel psi_lambda_squared(bool plus, const Rational& lambda_squared);
  static BianchiLabel psi_one();
  static BianchiLabel psi_zero();

  double lambda() const;
  /// "Unimodular{1,1}", "PsiLambdaPlus{2}", "PsiLambdaMinus{sqrt(2)}", "PsiOne", "PsiZero".
  std::string to_string() const;
  friend bool operator==(const BianchiLabel&, const BianchiLabel&) = default;
};

/// Parses the to_string form.
BianchiLabel parse_label(const std::string& text);

/// Throws std::invalid_argument unless dim == arity + 1.
GeneratingForm generating_form(const NLieStructure& p);

/// The structure whose generating form is a.
NLieStructure algebra_from_form(const GeneratingForm& a);

bool is_unimodular(const NLieStructure& p);

/// Throws std::invalid_argument for non-Jacobi input and std::domain_error if
/// the non-symmetric case is inconsistent.
BianchiLabel classify(const NLieStructure& p);

/// Canonical representative on Q^{n+1}.
NLieStructure synthesize(const BianchiLabel& label, std::size_t n);

struct DerivationAlgebra {
  std::vector<LinearOperator> basis;
  std::size_t dimension() const { return basis.size(); }
};

/// Solutions of M a + a M^T = tr(M) a, with M the matrix of a derivation
/// (column j = D e_j).
DerivationAlgebra derivation_algebra(const NLieStructure& p);

bool is_isomorphic(const NLieStructure& p, const NLieStructure& q);

/// x1 x3 - x2^2 inserted into d1^d2^d3.
MultiVector witt_bivector();

/// {x1,x2} = x1, {x1,x3} = 2 x2, {x2,x3} = x3 and [P, P] = 0.
bool witt_embedding_check();

}  // namespace nambu
