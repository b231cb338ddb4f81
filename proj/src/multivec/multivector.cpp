#include "nambu/multivec/multivector.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace nambu {

int permutation_sign(const IndexTuple& indices) {
  int sign = 1;
  for (std::size_t i = 0; i < indices.size(); ++i)
    for (std::size_t j = i + 1; j < indices.size(); ++j) {
      if (indices[i] == indices[j]) return 0;
      if (indices[i] > indices[j]) sign = -sign;
    }
  return sign;
}

std::vector<IndexTuple> increasing_tuples(std::size_t n, std::size_t k) {
  std::vector<IndexTuple> out;
  if (k > n) return out;
  IndexTuple t(k);
  for (std::size_t i = 0; i < k; ++i) t[i] = i;
  while (true) {
    out.push_back(t);
    std::size_t i = k;
    while (i > 0 && t[i - 1] == n - k + i - 1) --i;
    if (i == 0) break;
    ++t[i - 1];
    for (std::size_t j = i; j < k; ++j) t[j] = t[j - 1] + 1;
  }
  return out;
}

MultiVector MultiVector::scalar(const Poly& f) {
  MultiVector v(f.num_vars(), 0);
  if (!f.is_zero()) v.comps_.emplace(IndexTuple{}, f);
  return v;
}

MultiVector MultiVector::basis(std::size_t num_vars, const IndexTuple& indices,
                               const Poly& coef) {
  for (auto i : indices)
    if (i >= num_vars) throw std::out_of_range("multivector index out of range");
  MultiVector v(num_vars, indices.size());
  v.add(indices, coef);
  return v;
}

MultiVector MultiVector::basis(std::size_t num_vars, const IndexTuple& indices,
                               const Rational& coef) {
  return basis(num_vars, indices, Poly::constant(num_vars, coef));
}

MultiVector MultiVector::volume(std::size_t num_vars, std::size_t k) {
  if (k > num_vars) throw std::invalid_argument("volume degree exceeds dimension");
  IndexTuple idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  return basis(num_vars, idx, Rational(1));
}

Poly MultiVector::component(const IndexTuple& increasing) const {
  auto it = comps_.find(increasing);
  return it == comps_.end() ? Poly(num_vars_) : it->second;
}

Poly MultiVector::component_any(const IndexTuple& indices) const {
  int s = permutation_sign(indices);
  if (s == 0) return Poly(num_vars_);
  IndexTuple sorted = indices;
  std::sort(sorted.begin(), sorted.end());
  auto it = comps_.find(sorted);
  if (it == comps_.end()) return Poly(num_vars_);
  return s > 0 ? it->second : -it->second;
}

Poly MultiVector::scalar_value() const {
  if (degree_ != 0) throw std::invalid_argument("scalar_value of a positive-degree multivector");
  return component({});
}

void MultiVector::add(const IndexTuple& indices, const Poly& coef) {
  if (indices.size() != degree_) throw std::invalid_argument("index tuple length differs from degree");
  if (coef.num_vars() != num_vars_) throw std::invalid_argument("coefficient chart mismatch");
  if (coef.is_zero()) return;
  int s = permutation_sign(indices);
  if (s == 0) return;
  IndexTuple sorted = indices;
  std::sort(sorted.begin(), sorted.end());
  if (!sorted.empty() && sorted.back() >= num_vars_)
    throw std::out_of_range("multivector index out of range");
  auto [it, inserted] = comps_.try_emplace(sorted, s > 0 ? coef : -coef);
  if (!inserted) {
    if (s > 0)
      it->second += coef;
    else
      it->second -= coef;
    if (it->second.is_zero()) comps_.erase(it);
  }
}

void MultiVector::check_compatible(const MultiVector& other) const {
  if (num_vars_ != other.num_vars_)
    throw std::invalid_argument("multivectors live on charts of different dimension");
  if (degree_ != other.degree_)
    throw std::invalid_argument("multivector degree mismatch");
}

MultiVector& MultiVector::operator+=(const MultiVector& other) {
  check_compatible(other);
  for (const auto& [idx, c] : other.comps_) add(idx, c);
  return *this;
}

MultiVector& MultiVector::operator-=(const MultiVector& other) {
  check_compatible(other);
  for (const auto& [idx, c] : other.comps_) add(idx, -c);
  return *this;
}

MultiVector operator*(const Poly& f, const MultiVector& v) {
  MultiVector out(v.num_vars_, v.degree_);
  for (const auto& [idx, c] : v.comps_) out.add(idx, f * c);
  return out;
}

MultiVector operator*(const Rational& c, const MultiVector& v) {
  MultiVector out(v.num_vars_, v.degree_);
  if (c == 0) return out;
  out.comps_ = v.comps_;
  for (auto& [idx, p] : out.comps_) p *= c;
  return out;
}

MultiVector MultiVector::operator-() const { return Rational(-1) * *this; }

namespace {

using Grad = std::vector<std::vector<Poly>>;

Poly minor_det(const Grad& g, std::size_t row, std::vector<std::size_t>& cols,
               std::size_t num_vars) {
  if (row == g.size()) return Poly::constant(num_vars, 1);
  Poly sum(num_vars);
  int sign = 1;
  for (std::size_t t = 0; t < cols.size(); ++t, sign = -sign) {
    const Poly& entry = g[row][cols[t]];
    if (entry.is_zero()) continue;
    std::size_t c = cols[t];
    cols.erase(cols.begin() + static_cast<std::ptrdiff_t>(t));
    Poly sub = minor_det(g, row + 1, cols, num_vars);
    cols.insert(cols.begin() + static_cast<std::ptrdiff_t>(t), c);
    if (sub.is_zero()) continue;
    if (sign > 0)
      sum += entry * sub;
    else
      sum -= entry * sub;
  }
  return sum;
}

}  // namespace

Poly MultiVector::apply(std::span<const Poly> fs) const {
  if (fs.size() != degree_)
    throw std::invalid_argument("multi-derivation expects " + std::to_string(degree_) +
                                " arguments, got " + std::to_string(fs.size()));
  for (const auto& f : fs)
    if (f.num_vars() != num_vars_) throw std::invalid_argument("argument chart mismatch");
  if (degree_ == 0) return component({});
  Grad g(fs.size());
  for (std::size_t a = 0; a < fs.size(); ++a) {
    if (fs[a].is_constant()) return Poly(num_vars_);
    g[a].reserve(num_vars_);
    for (std::size_t i = 0; i < num_vars_; ++i) g[a].push_back(fs[a].partial(i));
  }
  Poly sum(num_vars_);
  for (const auto& [idx, c] : comps_) {
    std::vector<std::size_t> cols = idx;
    Poly d = minor_det(g, 0, cols, num_vars_);
    if (!d.is_zero()) sum += c * d;
  }
  return sum;
}

std::map<IndexTuple, Rational> MultiVector::at(std::span<const Rational> point) const {
  std::map<IndexTuple, Rational> out;
  for (const auto& [idx, c] : comps_) {
    Rational v = c.evaluate(point);
    if (v != 0) out.emplace(idx, v);
  }
  return out;
}

std::string MultiVector::to_string() const {
  if (comps_.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (const auto& [idx, c] : comps_) {
    if (!first) out << " + ";
    first = false;
    std::string coef = c.to_string();
    bool compound = c.num_terms() > 1;
    if (idx.empty()) {
      out << coef;
      continue;
    }
    if (compound)
      out << "(" << coef << ") ";
    else if (coef != "1")
      out << coef << " ";
    for (std::size_t i = 0; i < idx.size(); ++i) {
      if (i) out << "^";
      out << "d" << (idx[i] + 1);
    }
  }
  return out.str();
}

OneForm OneForm::zero(std::size_t num_vars) {
  return OneForm{std::vector<Poly>(num_vars, Poly(num_vars))};
}

OneForm OneForm::differential(const Poly& f) {
  OneForm a;
  for (std::size_t i = 0; i < f.num_vars(); ++i) a.components.push_back(f.partial(i));
  return a;
}

MultiVector wedge(const MultiVector& a, const MultiVector& b) {
  if (a.num_vars() != b.num_vars())
    throw std::invalid_argument("wedge: multivectors live on charts of different dimension");
  MultiVector out(a.num_vars(), a.degree() + b.degree());
  if (out.degree() > out.num_vars()) return out;
  IndexTuple joined;
  for (const auto& [ia, ca] : a.components()) {
    for (const auto& [ib, cb] : b.components()) {
      joined = ia;
      joined.insert(joined.end(), ib.begin(), ib.end());
      if (permutation_sign(joined) == 0) continue;
      out.add(joined, ca * cb);
    }
  }
  return out;
}

namespace {

MultiVector contract_gradient(const std::vector<Poly>& grad, const MultiVector& v) {
  if (v.degree() == 0) throw std::invalid_argument("contract: degree-0 multivector");
  if (grad.size() != v.num_vars()) throw std::invalid_argument("contract: chart mismatch");
  MultiVector out(v.num_vars(), v.degree() - 1);
  for (const auto& [idx, c] : v.components()) {
    for (std::size_t p = 0; p < idx.size(); ++p) {
      const Poly& g = grad[idx[p]];
      if (g.is_zero()) continue;
      IndexTuple rest = idx;
      rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(p));
      Poly term = g * c;
      out.add(rest, p % 2 == 0 ? term : -term);
    }
  }
  return out;
}

}  // namespace

MultiVector contract(const Poly& f, const MultiVector& v) {
  if (f.num_vars() != v.num_vars()) throw std::invalid_argument("contract: chart mismatch");
  if (v.degree() == 0) throw std::invalid_argument("contract: degree-0 multivector");
  return contract_gradient(OneForm::differential(f).components, v);
}

MultiVector contract(const OneForm& alpha, const MultiVector& v) {
  return contract_gradient(alpha.components, v);
}

MultiVector contract_all(const MultiVector& v, std::span<const Poly> fs) {
  if (fs.size() > v.degree()) throw std::invalid_argument("contract_all: too many functions");
  MultiVector out = v;
  for (const auto& f : fs) out = contract(f, out);
  return out;
}

VectorField hamiltonian_field(const MultiVector& v, std::span<const Poly> fs) {
  if (v.degree() == 0 || fs.size() + 1 != v.degree())
    throw std::invalid_argument("hamiltonian_field: a degree-" + std::to_string(v.degree()) +
                                " tensor needs " +
                                std::to_string(v.degree() == 0 ? 0 : v.degree() - 1) +
                                " functions, got " + std::to_string(fs.size()));
  return contract_all(v, fs);
}

VectorField hamiltonian_field(const MultiVector& v, std::initializer_list<Poly> fs) {
  return hamiltonian_field(v, std::span<const Poly>(fs.begin(), fs.size()));
}

Poly apply_field(const VectorField& x, const Poly& f) {
  if (x.degree() != 1) throw std::invalid_argument("apply_field: not a vector field");
  return x.apply({f});
}

MultiVector lie_derivative(const VectorField& x, const MultiVector& v) {
  if (x.degree() != 1) throw std::invalid_argument("lie_derivative: X must be a vector field");
  if (x.num_vars() != v.num_vars()) throw std::invalid_argument("lie_derivative: chart mismatch");
  const std::size_t m = v.num_vars();
  MultiVector out(m, v.degree());
  for (const auto& [idx, c] : v.components()) {
    Poly xc(m);
    for (const auto& [xi, xv] : x.components()) xc += xv * c.partial(xi[0]);
    out.add(idx, xc);
    for (std::size_t p = 0; p < idx.size(); ++p) {
      const std::size_t src = idx[p];
      for (const auto& [xj, xv] : x.components()) {
        Poly d = xv.partial(src);
        if (d.is_zero()) continue;
        IndexTuple target = idx;
        target[p] = xj[0];
        out.add(target, -(d * c));
      }
    }
  }
  return out;
}

MultiVector schouten(const MultiVector& a, const MultiVector& b) {
  if (a.num_vars() != b.num_vars()) throw std::invalid_argument("schouten: chart mismatch");
  const std::size_t k = a.degree();
  const std::size_t l = b.degree();
  if (k + l == 0) throw std::invalid_argument("schouten: both arguments have degree 0");
  const std::size_t m = a.num_vars();
  const std::size_t d = k + l - 1;
  MultiVector out(m, d);
  if (d > m || a.is_zero() || b.is_zero()) return out;

  std::vector<Poly> coords;
  for (std::size_t i = 0; i < m; ++i) coords.push_back(Poly::variable(m, i));

  auto split_sign = [](const IndexTuple& sel, std::size_t total, IndexTuple& rest) {
    rest.clear();
    std::size_t s = 0;
    for (std::size_t i = 0; i < total; ++i) {
      if (s < sel.size() && sel[s] == i)
        ++s;
      else
        rest.push_back(i);
    }
    IndexTuple joined = sel;
    joined.insert(joined.end(), rest.begin(), rest.end());
    return permutation_sign(joined);
  };

  IndexTuple rest;
  std::vector<Poly> args;
  for (const auto& j : increasing_tuples(m, d)) {
    Poly value(m);
    if (k >= 1) {
      for (const auto& sel : increasing_tuples(d, k - 1)) {
        int s = split_sign(sel, d, rest);
        args.clear();
        for (auto r : rest) args.push_back(coords[j[r]]);
        Poly inner = b.apply(args);
        if (inner.is_zero()) continue;
        args.clear();
        for (auto r : sel) args.push_back(coords[j[r]]);
        args.push_back(inner);
        Poly term = a.apply(args);
        if (s > 0)
          value += term;
        else
          value -= term;
      }
    }
    if (k <= d) {
      for (const auto& sel : increasing_tuples(d, k)) {
        int s = split_sign(sel, d, rest);
        args.clear();
        for (auto r : sel) args.push_back(coords[j[r]]);
        Poly inner = a.apply(args);
        if (inner.is_zero()) continue;
        args.clear();
        args.push_back(inner);
        for (auto r : rest) args.push_back(coords[j[r]]);
        Poly term = b.apply(args);
        if (s > 0)
          value -= term;
        else
          value += term;
      }
    }
    out.add(j, value);
  }
  return out;
}

VectorField derived_vector(const MultiVector& v, const IndexTuple& covectors) {
  if (v.degree() == 0 || covectors.size() + 1 != v.degree())
    throw std::invalid_argument("derived_vector: need degree-1 covectors");
  MultiVector out(v.num_vars(), 1);
  IndexTuple full = covectors;
  full.push_back(0);
  for (std::size_t c = 0; c < v.num_vars(); ++c) {
    full.back() = c;
    out.add({c}, v.component_any(full));
  }
  return out;
}

std::size_t derived_rank(const MultiVector& v, std::span<const Rational> point) {
  if (v.degree() == 0) throw std::invalid_argument("derived_rank: degree-0 multivector");
  const std::size_t m = v.num_vars();
  if (point.size() != m) throw std::invalid_argument("derived_rank: point length mismatch");
  if (v.degree() > m) return 0;
  auto values = v.at(point);
  if (values.empty()) return 0;
  auto tuples = increasing_tuples(m, v.degree() - 1);
  RationalMatrix mat(tuples.size(), m);
  for (std::size_t r = 0; r < tuples.size(); ++r) {
    IndexTuple full = tuples[r];
    full.push_back(0);
    for (std::size_t c = 0; c < m; ++c) {
      full.back() = c;
      int s = permutation_sign(full);
      if (s == 0) continue;
      IndexTuple sorted = full;
      std::sort(sorted.begin(), sorted.end());
      auto it = values.find(sorted);
      if (it != values.end()) mat(r, c) = s > 0 ? it->second : Rational(-it->second);
    }
  }
  return rank(mat);
}

std::optional<IndexTuple> decomposability_witness(const MultiVector& v) {
  if (v.degree() <= 1 || v.degree() >= v.num_vars() || v.is_zero()) return std::nullopt;
  for (const auto& a : increasing_tuples(v.num_vars(), v.degree() - 1)) {
    VectorField w = derived_vector(v, a);
    if (w.is_zero()) continue;
    if (!wedge(w, v).is_zero()) return a;
  }
  return std::nullopt;
}

bool is_decomposable(const MultiVector& v) { return !decomposability_witness(v).has_value(); }

namespace {

MultiVector contract_coordinate(const MultiVector& v, std::size_t b) {
  MultiVector out(v.num_vars(), v.degree() - 1);
  for (const auto& [idx, c] : v.components()) {
    auto it = std::find(idx.begin(), idx.end(), b);
    if (it == idx.end()) continue;
    auto p = static_cast<std::size_t>(it - idx.begin());
    IndexTuple rest = idx;
    rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(p));
    out.add(rest, p % 2 == 0 ? c : -c);
  }
  return out;
}

}  // namespace

bool prop7_hypothesis(const MultiVector& v) {
  if (v.degree() <= 2) throw std::invalid_argument("prop7_hypothesis: degree must exceed 2");
  if (v.is_zero()) return true;
  const std::size_t m = v.num_vars();
  std::vector<MultiVector> single;
  for (std::size_t b = 0; b < m; ++b) single.push_back(contract_coordinate(v, b));
  for (const auto& c : increasing_tuples(m, v.degree() - 2)) {
    std::vector<VectorField> derived;
    for (std::size_t a = 0; a < m; ++a) {
      IndexTuple full{a};
      full.insert(full.end(), c.begin(), c.end());
      derived.push_back(derived_vector(v, full));
    }
    for (std::size_t a = 0; a < m; ++a)
      for (std::size_t b = a; b < m; ++b) {
        MultiVector sum = wedge(derived[a], single[b]) + wedge(derived[b], single[a]);
        if (!sum.is_zero()) return false;
      }
  }
  return true;
}

FormMatrix exterior_derivative_1form(const OneForm& alpha) {
  const std::size_t m = alpha.num_vars();
  FormMatrix d(m, std::vector<Poly>(m, Poly(m)));
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i + 1; j < m; ++j) {
      d[i][j] = alpha.components[j].partial(i) - alpha.components[i].partial(j);
      d[j][i] = -d[i][j];
    }
  return d;
}

bool is_closed(const OneForm& alpha) {
  auto d = exterior_derivative_1form(alpha);
  for (const auto& row : d)
    for (const auto& p : row)
      if (!p.is_zero()) return false;
  return true;
}

bool alpha_wedge_dalpha(const OneForm& alpha) {
  const std::size_t m = alpha.num_vars();
  auto d = exterior_derivative_1form(alpha);
  const auto& a = alpha.components;
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i + 1; j < m; ++j)
      for (std::size_t k = j + 1; k < m; ++k) {
        Poly t = a[i] * d[j][k] - a[j] * d[i][k] + a[k] * d[i][j];
        if (!t.is_zero()) return false;
      }
  return true;
}

}  // namespace nambu
