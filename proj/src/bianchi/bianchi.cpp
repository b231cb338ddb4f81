#include "nambu/bianchi/bianchi.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <stdexcept>

#include "nambu/npoisson/npoisson.hpp"

namespace nambu {

namespace {

std::optional<Rational> exact_sqrt(const Rational& q) {
  if (q < 0) return std::nullopt;
  mpz_class num = q.get_num(), den = q.get_den();
  if (!mpz_perfect_square_p(num.get_mpz_t()) || !mpz_perfect_square_p(den.get_mpz_t()))
    return std::nullopt;
  mpz_class rn, rd;
  mpz_sqrt(rn.get_mpz_t(), num.get_mpz_t());
  mpz_sqrt(rd.get_mpz_t(), den.get_mpz_t());
  return Rational(rn) / Rational(rd);
}

int sign_of_slot(std::size_t n, std::size_t i) { return (n - i) % 2 == 0 ? 1 : -1; }

IndexTuple complement(std::size_t dim, std::size_t i) {
  IndexTuple idx;
  for (std::size_t k = 0; k < dim; ++k)
    if (k != i) idx.push_back(k);
  return idx;
}

void require_square_dim(const NLieStructure& p, const char* what) {
  if (p.dim() != p.arity() + 1)
    throw std::invalid_argument(std::string(what) + ": dimension must be arity + 1");
}

const char* kind_name(BianchiKind k) {
  switch (k) {
    case BianchiKind::Unimodular: return "Unimodular";
    case BianchiKind::PsiLambdaPlus: return "PsiLambdaPlus";
    case BianchiKind::PsiLambdaMinus: return "PsiLambdaMinus";
    case BianchiKind::PsiOne: return "PsiOne";
    case BianchiKind::PsiZero: return "PsiZero";
  }
  return "";
}

BianchiLabel classify_skew(const GeneratingForm& a) {
  const std::size_t dim = a.rows();
  RationalMatrix k = Rational(1, 2) * (a - a.transpose());
  if (rank(k) != 2) throw std::domain_error("classify: skew part must have rank 2");

  auto kernel = nullspace(k);
  RationalMatrix basis(dim, dim);
  std::size_t col = 0;
  for (std::size_t e = 0; e < dim && col < 2; ++e) {
    RationalMatrix trial(dim, kernel.size() + col + 1);
    for (std::size_t c = 0; c < col; ++c)
      for (std::size_t r = 0; r < dim; ++r) trial(r, c) = basis(r, c);
    trial(e, col) = 1;
    for (std::size_t c = 0; c < kernel.size(); ++c)
      for (std::size_t r = 0; r < dim; ++r) trial(r, col + 1 + c) = kernel[c][r];
    if (rank(trial) == trial.cols()) {
      basis(e, col) = 1;
      ++col;
    }
  }
  for (std::size_t c = 0; c < kernel.size(); ++c)
    for (std::size_t r = 0; r < dim; ++r) basis(r, 2 + c) = kernel[c][r];

  RationalMatrix moved = basis.transpose() * a * basis;
  RationalMatrix sym = Rational(1, 2) * (moved + moved.transpose());
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = 0; j < dim; ++j)
      if ((i >= 2 || j >= 2) && sym(i, j) != 0)
        throw std::domain_error("classify: symmetric part leaves the skew plane");

  const Rational k12 = (moved(0, 1) - moved(1, 0)) / 2;
  const Rational det2 = sym(0, 0) * sym(1, 1) - sym(0, 1) * sym(1, 0);
  const bool zero_sym = sym(0, 0) == 0 && sym(0, 1) == 0 && sym(1, 1) == 0;
  if (zero_sym) return BianchiLabel::psi_zero();
  if (det2 == 0) return BianchiLabel::psi_one();
  Rational l2 = abs(det2) / (4 * k12 * k12);
  return BianchiLabel::psi_lambda_squared(det2 > 0, l2);
}

}  // namespace

BianchiLabel BianchiLabel::unimodular(std::size_t rank, std::size_t max_index) {
  if (max_index > rank || 2 * max_index < rank)
    throw std::invalid_argument("BianchiLabel: need r/2 <= m <= r");
  BianchiLabel l;
  l.rank = rank;
  l.max_index = max_index;
  return l;
}

BianchiLabel BianchiLabel::psi_lambda(bool plus, const Rational& lambda) {
  if (lambda <= 0) throw std::invalid_argument("BianchiLabel: lambda must be positive");
  return psi_lambda_squared(plus, lambda * lambda);
}

BianchiLabel BianchiLabel::psi_lambda_squared(bool plus, const Rational& lambda_squared) {
  if (lambda_squared <= 0) throw std::invalid_argument("BianchiLabel: lambda must be positive");
  BianchiLabel l;
  l.kind = plus ? BianchiKind::PsiLambdaPlus : BianchiKind::PsiLambdaMinus;
  l.lambda_squared = lambda_squared;
  return l;
}

BianchiLabel BianchiLabel::psi_one() {
  BianchiLabel l;
  l.kind = BianchiKind::PsiOne;
  return l;
}

BianchiLabel BianchiLabel::psi_zero() {
  BianchiLabel l;
  l.kind = BianchiKind::PsiZero;
  return l;
}

double BianchiLabel::lambda() const { return std::sqrt(lambda_squared.get_d()); }

std::string BianchiLabel::to_string() const {
  std::string out = kind_name(kind);
  switch (kind) {
    case BianchiKind::Unimodular:
      return out + "{" + std::to_string(rank) + "," + std::to_string(max_index) + "}";
    case BianchiKind::PsiLambdaPlus:
    case BianchiKind::PsiLambdaMinus:
      if (auto root = exact_sqrt(lambda_squared)) return out + "{" + nambu::to_string(*root) + "}";
      return out + "{sqrt(" + nambu::to_string(lambda_squared) + ")}";
    default:
      return out;
  }
}

BianchiLabel parse_label(const std::string& text) {
  auto open = text.find('{');
  std::string kind = text.substr(0, open);
  std::string arg;
  if (open != std::string::npos) {
    if (text.back() != '}') throw std::invalid_argument("parse_label: missing '}'");
    arg = text.substr(open + 1, text.size() - open - 2);
  }
  if (kind == "Unimodular") {
    auto comma = arg.find(',');
    if (comma == std::string::npos) throw std::invalid_argument("parse_label: expected {r,m}");
    try {
      return BianchiLabel::unimodular(std::stoul(arg.substr(0, comma)), std::stoul(arg.substr(comma + 1)));
    } catch (const std::logic_error& e) {
      throw std::invalid_argument(std::string("parse_label: ") + e.what());
    }
  }
  if (kind == "PsiLambdaPlus" || kind == "PsiLambdaMinus") {
    const bool plus = kind == "PsiLambdaPlus";
    if (arg.rfind("sqrt(", 0) == 0 && arg.back() == ')')
      return BianchiLabel::psi_lambda_squared(plus, parse_rational(arg.substr(5, arg.size() - 6)));
    return BianchiLabel::psi_lambda(plus, parse_rational(arg));
  }
  if (kind == "PsiOne" && arg.empty()) return BianchiLabel::psi_one();
  if (kind == "PsiZero" && arg.empty()) return BianchiLabel::psi_zero();
  throw std::invalid_argument("parse_label: unknown label '" + text + "'");
}

GeneratingForm generating_form(const NLieStructure& p) {
  require_square_dim(p, "generating_form");
  const std::size_t dim = p.dim(), n = p.arity();
  GeneratingForm a(dim, dim);
  for (std::size_t i = 0; i < dim; ++i) {
    Vector v = p.basis_bracket(complement(dim, i));
    for (std::size_t j = 0; j < dim; ++j) a(i, j) = sign_of_slot(n, i) * v[j];
  }
  return a;
}

NLieStructure algebra_from_form(const GeneratingForm& a) {
  if (a.rows() != a.cols() || a.rows() < 2)
    throw std::invalid_argument("algebra_from_form: need a square matrix of size >= 2");
  const std::size_t dim = a.rows(), n = dim - 1;
  NLieStructure p(dim, n);
  for (std::size_t i = 0; i < dim; ++i) {
    Vector v(dim);
    for (std::size_t j = 0; j < dim; ++j) v[j] = sign_of_slot(n, i) * a(i, j);
    p.set(complement(dim, i), v);
  }
  return p;
}

bool is_unimodular(const NLieStructure& p) { return generating_form(p).is_symmetric(); }

BianchiLabel classify(const NLieStructure& p) {
  require_square_dim(p, "classify");
  if (!check_n_jacobi(p)) throw std::invalid_argument("classify: structure fails the n-Jacobi identity");
  GeneratingForm a = generating_form(p);
  if (!a.is_symmetric()) return classify_skew(a);
  auto cd = congruence_diagonalize(a);
  return BianchiLabel::unimodular(cd.rank(), std::max(cd.positive, cd.negative));
}

NLieStructure synthesize(const BianchiLabel& label, std::size_t n) {
  const std::size_t dim = n + 1;
  if (n == 0) throw std::invalid_argument("synthesize: arity must be positive");
  GeneratingForm a(dim, dim);
  switch (label.kind) {
    case BianchiKind::Unimodular: {
      if (label.rank > dim || label.max_index > label.rank || 2 * label.max_index < label.rank)
        throw std::invalid_argument("synthesize: invalid unimodular label");
      for (std::size_t i = 0; i < label.rank; ++i) a(i, i) = i < label.max_index ? 1 : -1;
      return algebra_from_form(a);
    }
    case BianchiKind::PsiLambdaPlus:
    case BianchiKind::PsiLambdaMinus: {
      if (label.lambda_squared <= 0) throw std::invalid_argument("synthesize: lambda must be positive");
      const int sign = label.kind == BianchiKind::PsiLambdaPlus ? 1 : -1;
      if (auto root = exact_sqrt(label.lambda_squared)) {
        a(0, 0) = *root;
        a(1, 1) = sign * *root;
      } else {
        a(0, 0) = label.lambda_squared;
        a(1, 1) = sign;
      }
      break;
    }
    case BianchiKind::PsiOne:
      a(0, 0) = 1;
      break;
    case BianchiKind::PsiZero:
      break;
  }
  a(0, 1) = Rational(-1, 2);
  a(1, 0) = Rational(1, 2);
  return algebra_from_form(a);
}

DerivationAlgebra derivation_algebra(const NLieStructure& p) {
  GeneratingForm a = generating_form(p);
  const std::size_t dim = a.rows(), unknowns = dim * dim;
  auto var = [dim](std::size_t r, std::size_t c) { return r * dim + c; };
  RationalMatrix system(unknowns, unknowns);
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = 0; j < dim; ++j) {
      const std::size_t row = var(i, j);
      for (std::size_t k = 0; k < dim; ++k) {
        system(row, var(i, k)) += a(k, j);
        system(row, var(j, k)) += a(i, k);
        system(row, var(k, k)) -= a(i, j);
      }
    }
  DerivationAlgebra out;
  for (const auto& v : nullspace(system)) {
    LinearOperator m(dim, dim);
    for (std::size_t r = 0; r < dim; ++r)
      for (std::size_t c = 0; c < dim; ++c) m(r, c) = v[var(r, c)];
    out.basis.push_back(std::move(m));
  }
  return out;
}

bool is_isomorphic(const NLieStructure& p, const NLieStructure& q) {
  if (p.dim() != q.dim() || p.arity() != q.arity()) return false;
  return classify(p) == classify(q);
}

MultiVector witt_bivector() {
  Poly f = Poly::variable(3, 0) * Poly::variable(3, 2) - Poly::variable(3, 1) * Poly::variable(3, 1);
  return contract(f, MultiVector::volume(3, 3));
}

bool witt_embedding_check() {
  MultiVector p = witt_bivector();
  auto x = [](std::size_t i) { return Poly::variable(3, i); };
  return p.apply({x(0), x(1)}) == x(0) && p.apply({x(0), x(2)}) == Rational(2) * x(1) &&
         p.apply({x(1), x(2)}) == x(2) && schouten(p, p).is_zero() && is_n_poisson(p).holds;
}

}  // namespace nambu
