#include "nambu/nlie/nlie.hpp"

#include <algorithm>
#include <stdexcept>

#include "nambu/util/parallel.hpp"

namespace nambu {

namespace {

bool is_zero_vector(const Vector& v) {
  return std::all_of(v.begin(), v.end(), [](const Rational& q) { return q == 0; });
}

void axpy(Vector& y, const Rational& a, const Vector& x) {
  if (a == 0) return;
  for (std::size_t i = 0; i < y.size(); ++i) y[i] += a * x[i];
}

// If v is a multiple of a single basis vector, returns (index, scale).
std::optional<std::pair<std::size_t, Rational>> single_support(const Vector& v) {
  std::optional<std::pair<std::size_t, Rational>> out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i] == 0) continue;
    if (out) return std::nullopt;
    out.emplace(i, v[i]);
  }
  if (!out) out.emplace(0, Rational(0));
  return out;
}

std::vector<Vector> basis_vectors(std::size_t dim, const IndexTuple& idx) {
  std::vector<Vector> out;
  for (auto i : idx) out.push_back(basis_vector(dim, i));
  return out;
}

void check_vectors(const NLieStructure& p, const std::vector<Vector>& vs) {
  for (const auto& v : vs)
    if (v.size() != p.dim())
      throw std::invalid_argument("vector length " + std::to_string(v.size()) +
                                  " differs from algebra dimension " + std::to_string(p.dim()));
}

}  // namespace

NLieStructure::NLieStructure(std::size_t dim, std::size_t arity) : dim_(dim), arity_(arity) {
  if (arity == 0) throw std::invalid_argument("arity must be at least 1");
}

Vector NLieStructure::basis_bracket(const IndexTuple& indices) const {
  if (indices.size() != arity_) throw std::invalid_argument("basis_bracket: arity mismatch");
  int s = permutation_sign(indices);
  Vector out(dim_);
  if (s == 0) return out;
  IndexTuple sorted = indices;
  std::sort(sorted.begin(), sorted.end());
  auto it = constants_.find(sorted);
  if (it == constants_.end()) return out;
  if (s > 0) return it->second;
  for (std::size_t i = 0; i < dim_; ++i) out[i] = -it->second[i];
  return out;
}

void NLieStructure::set(const IndexTuple& indices, const Vector& value) {
  if (indices.size() != arity_) throw std::invalid_argument("set: arity mismatch");
  if (value.size() != dim_) throw std::invalid_argument("set: value length differs from dimension");
  for (auto i : indices)
    if (i >= dim_) throw std::out_of_range("set: basis index out of range");
  int s = permutation_sign(indices);
  if (s == 0) {
    if (!is_zero_vector(value))
      throw std::invalid_argument("set: repeated indices must carry a zero value");
    return;
  }
  IndexTuple sorted = indices;
  std::sort(sorted.begin(), sorted.end());
  if (is_zero_vector(value)) {
    constants_.erase(sorted);
    return;
  }
  Vector v = value;
  if (s < 0)
    for (auto& q : v) q = -q;
  constants_[sorted] = std::move(v);
}

NLieStructure& NLieStructure::operator+=(const NLieStructure& other) {
  if (dim_ != other.dim_ || arity_ != other.arity_)
    throw std::invalid_argument("structures differ in dimension or arity");
  for (const auto& [idx, v] : other.constants_) {
    Vector cur = basis_bracket(idx);
    axpy(cur, 1, v);
    set(idx, cur);
  }
  return *this;
}

NLieStructure operator-(const NLieStructure& a, const NLieStructure& b) {
  return a + Rational(-1) * b;
}

NLieStructure operator*(const Rational& c, const NLieStructure& p) {
  NLieStructure out(p.dim_, p.arity_);
  if (c == 0) return out;
  for (const auto& [idx, v] : p.constants_) {
    Vector w = v;
    for (auto& q : w) q *= c;
    out.constants_.emplace(idx, std::move(w));
  }
  return out;
}

Vector basis_vector(std::size_t dim, std::size_t i) {
  if (i >= dim) throw std::out_of_range("basis index out of range");
  Vector v(dim);
  v[i] = 1;
  return v;
}

Vector bracket(const NLieStructure& p, const std::vector<Vector>& vs) {
  if (vs.size() != p.arity())
    throw std::invalid_argument("bracket expects " + std::to_string(p.arity()) + " vectors, got " +
                                std::to_string(vs.size()));
  check_vectors(p, vs);

  IndexTuple idx;
  Rational scale = 1;
  bool all_single = true;
  for (const auto& v : vs) {
    auto s = single_support(v);
    if (!s) {
      all_single = false;
      break;
    }
    idx.push_back(s->first);
    scale *= s->second;
  }
  if (all_single) {
    Vector out = p.basis_bracket(idx);
    for (auto& q : out) q *= scale;
    return out;
  }

  const std::size_t n = p.arity();
  Vector out(p.dim());
  RationalMatrix m(n, n);
  for (const auto& [tuple, value] : p.constants()) {
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b) m(a, b) = vs[a][tuple[b]];
    axpy(out, determinant(m), value);
  }
  return out;
}

NLieStructure operator_derivative(const LinearOperator& d, const NLieStructure& q) {
  if (d.rows() != q.dim() || d.cols() != q.dim())
    throw std::invalid_argument("operator_derivative: dimension mismatch");
  const std::size_t dim = q.dim();
  NLieStructure out(dim, q.arity());
  for (const auto& tuple : increasing_tuples(dim, q.arity())) {
    Vector value = d.apply(q.basis_bracket(tuple));
    IndexTuple moved = tuple;
    for (std::size_t i = 0; i < tuple.size(); ++i) {
      for (std::size_t c = 0; c < dim; ++c) {
        const Rational& coef = d(c, tuple[i]);
        if (coef == 0) continue;
        moved[i] = c;
        axpy(value, -coef, q.basis_bracket(moved));
      }
      moved[i] = tuple[i];
    }
    out.set(tuple, value);
  }
  return out;
}

LinearOperator inner_derivation(const NLieStructure& p, const std::vector<Vector>& us) {
  if (us.size() + 1 != p.arity())
    throw std::invalid_argument("inner_derivation expects " + std::to_string(p.arity() - 1) +
                                " vectors, got " + std::to_string(us.size()));
  check_vectors(p, us);
  LinearOperator m(p.dim(), p.dim());
  std::vector<Vector> args = us;
  args.emplace_back();
  for (std::size_t j = 0; j < p.dim(); ++j) {
    args.back() = basis_vector(p.dim(), j);
    Vector col = bracket(p, args);
    for (std::size_t i = 0; i < p.dim(); ++i) m(i, j) = col[i];
  }
  return m;
}

namespace {

std::optional<TupleWitness> first_nonzero(const NLieStructure& defect, const IndexTuple& fixed) {
  if (defect.is_zero()) return std::nullopt;
  const auto& [args, value] = *defect.constants().begin();
  return TupleWitness{fixed, args, value};
}

// Runs check(u) over all increasing basis tuples of the given size and
// reports the lexicographically first failure.
template <class F>
CheckResult scan_tuples(std::size_t dim, std::size_t size, F defect_at) {
  auto tuples = increasing_tuples(dim, size);
  auto bad = first_failure(tuples.size(), [&](std::size_t i) { return defect_at(tuples[i]).is_zero(); });
  if (!bad) return {};
  const auto& u = tuples[*bad];
  return CheckResult{false, first_nonzero(defect_at(u), u)};
}

}  // namespace

CheckResult check_n_jacobi(const NLieStructure& p) {
  if (p.arity() <= 1 || p.is_zero()) return {};
  return scan_tuples(p.dim(), p.arity() - 1, [&](const IndexTuple& u) {
    return operator_derivative(inner_derivation(p, basis_vectors(p.dim(), u)), p);
  });
}

NLieStructure hereditary(const NLieStructure& p, const std::vector<Vector>& us) {
  if (us.size() >= p.arity())
    throw std::invalid_argument("hereditary: freezing " + std::to_string(us.size()) +
                                " arguments of an arity-" + std::to_string(p.arity()) +
                                " structure leaves nothing");
  check_vectors(p, us);
  const std::size_t r = p.arity() - us.size();
  NLieStructure out(p.dim(), r);
  std::vector<Vector> args = us;
  args.resize(p.arity());
  for (const auto& tuple : increasing_tuples(p.dim(), r)) {
    for (std::size_t i = 0; i < r; ++i) args[us.size() + i] = basis_vector(p.dim(), tuple[i]);
    out.set(tuple, bracket(p, args));
  }
  return out;
}

CheckResult is_derivation(const LinearOperator& d, const NLieStructure& p) {
  if (d.rows() != p.dim() || d.cols() != p.dim())
    throw std::invalid_argument("is_derivation: dimension mismatch");
  auto defect = operator_derivative(d, p);
  if (defect.is_zero()) return {};
  return CheckResult{false, first_nonzero(defect, {})};
}

NLieStructure comp_defect(const NLieStructure& p, const NLieStructure& q,
                          const std::vector<Vector>& us) {
  if (p.dim() != q.dim() || p.arity() != q.arity())
    throw std::invalid_argument("comp: structures differ in dimension or arity");
  return operator_derivative(inner_derivation(p, us), q) +
         operator_derivative(inner_derivation(q, us), p);
}

bool commutator_check(const NLieStructure& p, const std::vector<Vector>& us,
                      const std::vector<Vector>& vs) {
  LinearOperator pu = inner_derivation(p, us);
  LinearOperator pv = inner_derivation(p, vs);
  LinearOperator lhs = pv * pu - pu * pv;
  LinearOperator rhs(p.dim(), p.dim());
  for (std::size_t i = 0; i < us.size(); ++i) {
    std::vector<Vector> args = vs;
    args.push_back(us[i]);
    std::vector<Vector> shifted = us;
    shifted[i] = bracket(p, args);
    rhs = rhs + inner_derivation(p, shifted);
  }
  return lhs == rhs;
}

CheckResult compat(const NLieStructure& p, const NLieStructure& q) {
  if (p.dim() != q.dim() || p.arity() != q.arity())
    throw std::invalid_argument("compat: structures differ in dimension or arity");
  return scan_tuples(p.dim(), p.arity() - 1, [&](const IndexTuple& u) {
    return comp_defect(p, q, basis_vectors(p.dim(), u));
  });
}

CheckResult comp_condition_k(const NLieStructure& p, const std::vector<Vector>& vs,
                             const std::vector<Vector>& ws) {
  const std::size_t k = vs.size();
  if (ws.size() != k) throw std::invalid_argument("comp_condition_k: v and w tuples differ in length");
  if (k < 1 || k + 1 > p.arity())
    throw std::invalid_argument("comp_condition_k: order " + std::to_string(k) +
                                " out of range for arity " + std::to_string(p.arity()));
  check_vectors(p, vs);
  check_vectors(p, ws);

  // Selections I with i1 = 1: slot 0 always takes v in the first sequence.
  std::vector<std::pair<NLieStructure, NLieStructure>> pairs;
  for (std::size_t mask = 0; mask < (std::size_t{1} << (k - 1)); ++mask) {
    std::vector<Vector> a(k), b(k);
    for (std::size_t s = 0; s < k; ++s) {
      bool take_v = s == 0 || ((mask >> (s - 1)) & 1u);
      a[s] = take_v ? vs[s] : ws[s];
      b[s] = take_v ? ws[s] : vs[s];
    }
    pairs.emplace_back(hereditary(p, a), hereditary(p, b));
  }
  const std::size_t r = p.arity() - k;
  return scan_tuples(p.dim(), r - 1, [&](const IndexTuple& u) {
    auto us = basis_vectors(p.dim(), u);
    NLieStructure total(p.dim(), r);
    for (const auto& [a, b] : pairs) total += comp_defect(a, b, us);
    return total;
  });
}

CheckResult comp_condition_k_basis(const NLieStructure& p, std::size_t k) {
  const std::size_t dim = p.dim();
  if (k < 1 || k + 1 > p.arity())
    throw std::invalid_argument("comp_condition_k: order " + std::to_string(k) +
                                " out of range for arity " + std::to_string(p.arity()));
  std::size_t count = 1;
  for (std::size_t i = 0; i < 2 * k; ++i) count *= dim;
  auto decode = [&](std::size_t code) {
    IndexTuple idx(2 * k);
    for (std::size_t i = 2 * k; i-- > 0;) {
      idx[i] = code % dim;
      code /= dim;
    }
    return idx;
  };
  auto run = [&](std::size_t code) {
    IndexTuple idx = decode(code);
    std::vector<Vector> vs, ws;
    for (std::size_t i = 0; i < k; ++i) {
      vs.push_back(basis_vector(dim, idx[i]));
      ws.push_back(basis_vector(dim, idx[k + i]));
    }
    return std::make_pair(idx, comp_condition_k(p, vs, ws));
  };
  auto bad = first_failure(count, [&](std::size_t code) { return run(code).second.holds; });
  if (!bad) return {};
  auto [idx, res] = run(*bad);
  if (res.witness) {
    IndexTuple fixed = idx;
    fixed.insert(fixed.end(), res.witness->fixed.begin(), res.witness->fixed.end());
    res.witness->fixed = fixed;
  }
  return res;
}

NLieStructure direct_product(const NLieStructure& p, const NLieStructure& q) {
  if (p.arity() != q.arity()) throw std::invalid_argument("direct_product: arity mismatch");
  const std::size_t dim = p.dim() + q.dim();
  NLieStructure out(dim, p.arity());
  for (const auto& [idx, v] : p.constants()) {
    Vector w(dim);
    std::copy(v.begin(), v.end(), w.begin());
    out.set(idx, w);
  }
  for (const auto& [idx, v] : q.constants()) {
    Vector w(dim);
    std::copy(v.begin(), v.end(), w.begin() + static_cast<std::ptrdiff_t>(p.dim()));
    IndexTuple shifted = idx;
    for (auto& i : shifted) i += p.dim();
    out.set(shifted, w);
  }
  return out;
}

NLieStructure vector_product_algebra(std::size_t n) {
  if (n < 2) throw std::invalid_argument("vector_product_algebra: n must be at least 2");
  const std::size_t dim = n + 1;
  NLieStructure out(dim, n);
  for (std::size_t missing = 0; missing < dim; ++missing) {
    IndexTuple idx;
    for (std::size_t i = 0; i < dim; ++i)
      if (i != missing) idx.push_back(i);
    IndexTuple full = idx;
    full.push_back(missing);
    Vector v(dim);
    v[missing] = permutation_sign(full);
    out.set(idx, v);
  }
  return out;
}

NLieStructure change_basis(const NLieStructure& p, const RationalMatrix& s) {
  if (s.rows() != p.dim() || s.cols() != p.dim())
    throw std::invalid_argument("change_basis: matrix size differs from dimension");
  RationalMatrix inv = inverse(s);
  std::vector<Vector> cols(p.dim(), Vector(p.dim()));
  for (std::size_t j = 0; j < p.dim(); ++j)
    for (std::size_t i = 0; i < p.dim(); ++i) cols[j][i] = s(i, j);
  NLieStructure out(p.dim(), p.arity());
  for (const auto& tuple : increasing_tuples(p.dim(), p.arity())) {
    std::vector<Vector> args;
    for (auto i : tuple) args.push_back(cols[i]);
    out.set(tuple, inv.apply(bracket(p, args)));
  }
  return out;
}

}  // namespace nambu
