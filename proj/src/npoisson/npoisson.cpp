#include "nambu/npoisson/npoisson.hpp"

#include <functional>
#include <map>
#include <stdexcept>
#include <utility>

#include "nambu/util/parallel.hpp"

namespace nambu {

namespace {

using DefectFn = std::function<MultiVector(const VectorField&)>;

// Depth-first walk over increasing tuples of distinct monomials, caching the
// partial contractions of the source tensor along each prefix.
class TupleSearch {
 public:
  TupleSearch(const MultiVector& source, std::vector<Poly> monomials, DefectFn defect)
      : source_(source), monomials_(std::move(monomials)), defect_(std::move(defect)) {
    slots_ = source.degree() - 1;
  }

  std::optional<PoissonWitness> run() const {
    if (slots_ == 0) {
      MultiVector d = defect_(source_);
      if (d.is_zero()) return std::nullopt;
      return PoissonWitness{{}, std::move(d)};
    }
    if (monomials_.size() < slots_) return std::nullopt;
    const std::size_t roots = monomials_.size() - slots_ + 1;
    auto bad = first_failure(roots, [&](std::size_t i) { return !subtree(i); });
    if (!bad) return std::nullopt;
    return subtree(*bad);
  }

 private:
  std::optional<PoissonWitness> subtree(std::size_t first) const {
    std::vector<std::size_t> chosen{first};
    return descend(contract(monomials_[first], source_), chosen);
  }

  std::optional<PoissonWitness> descend(const MultiVector& partial,
                                        std::vector<std::size_t>& chosen) const {
    if (chosen.size() == slots_) {
      if (partial.is_zero()) return std::nullopt;
      MultiVector d = defect_(partial);
      if (d.is_zero()) return std::nullopt;
      PoissonWitness w;
      for (auto i : chosen) w.functions.push_back(monomials_[i]);
      w.defect = std::move(d);
      return w;
    }
    const std::size_t remaining = slots_ - chosen.size();
    for (std::size_t j = chosen.back() + 1; j + remaining <= monomials_.size(); ++j) {
      chosen.push_back(j);
      auto w = descend(contract(monomials_[j], partial), chosen);
      chosen.pop_back();
      if (w) return w;
    }
    return std::nullopt;
  }

  const MultiVector& source_;
  std::vector<Poly> monomials_;
  DefectFn defect_;
  std::size_t slots_ = 0;
};

void require_poisson_input(const MultiVector& v, const char* what) {
  if (v.degree() == 0) throw std::invalid_argument(std::string(what) + ": degree 0 tensor");
  if (!is_decomposable(v))
    throw std::domain_error(std::string(what) + ": tensor is not decomposable");
  PoissonOptions opts;
  opts.rank_filter = false;
  if (!is_n_poisson(v, opts)) throw std::domain_error(std::string(what) + ": tensor is not n-Poisson");
}

}  // namespace

MultiVector fi_defect(const MultiVector& v, std::span<const Poly> fs) {
  if (v.degree() == 0 || fs.size() + 1 != v.degree())
    throw std::invalid_argument("fi_defect: expected degree - 1 functions");
  return lie_derivative(hamiltonian_field(v, fs), v);
}

MultiVector fi_defect(const MultiVector& v, std::initializer_list<Poly> fs) {
  return fi_defect(v, std::span<const Poly>(fs.begin(), fs.size()));
}

PoissonResult is_n_poisson(const MultiVector& v, const PoissonOptions& options) {
  if (v.degree() == 0) throw std::invalid_argument("is_n_poisson: degree 0 tensor");
  PoissonResult result;
  if (v.is_zero()) return result;
  if (options.rank_filter && v.degree() > 2) {
    if (auto w = decomposability_witness(v)) {
      result.holds = false;
      result.rank_witness = *w;
      return result;
    }
  }
  TupleSearch search(v, monomials_up_to(v.num_vars(), 1, options.slot_degree),
                     [&v](const VectorField& x) { return lie_derivative(x, v); });
  result.witness = search.run();
  result.holds = !result.witness;
  return result;
}

MultiVector dual_nvector(const NLieStructure& p) {
  const std::size_t m = p.dim();
  MultiVector t(m, p.arity());
  for (const auto& [indices, value] : p.constants()) {
    Poly coef(m);
    for (std::size_t k = 0; k < m; ++k)
      if (value[k] != 0) coef += value[k] * Poly::variable(m, k);
    t.add(indices, coef);
  }
  return t;
}

MultiVector scale(const Poly& f, const MultiVector& v) {
  if (f.num_vars() != v.num_vars()) throw std::invalid_argument("scale: chart mismatch");
  require_poisson_input(v, "scale");
  return f * v;
}

WedgeCompat wedge_compat_check(const MultiVector& delta, const MultiVector& nabla,
                               unsigned slot_degree) {
  if (delta.num_vars() != nabla.num_vars())
    throw std::invalid_argument("wedge_compat_check: chart mismatch");
  require_poisson_input(delta, "wedge_compat_check");
  require_poisson_input(nabla, "wedge_compat_check");

  const auto monos = monomials_up_to(delta.num_vars(), 1, slot_degree);
  WedgeCompat out;
  out.schouten_vanishes = schouten(delta, nabla).is_zero();
  out.nabla_moves_delta =
      !TupleSearch(nabla, monos,
                   [&](const VectorField& x) { return wedge(lie_derivative(x, delta), nabla); })
           .run();
  out.delta_moves_nabla =
      !TupleSearch(delta, monos,
                   [&](const VectorField& x) { return wedge(lie_derivative(x, nabla), delta); })
           .run();
  PoissonOptions opts;
  opts.rank_filter = false;
  opts.slot_degree = slot_degree;
  out.wedge_is_poisson = is_n_poisson(wedge(delta, nabla), opts).holds;
  return out;
}

std::vector<Poly> casimir_polynomials(const MultiVector& v, unsigned max_degree) {
  if (max_degree < 1) throw std::invalid_argument("casimir_polynomials: max_degree must be >= 1");
  if (v.degree() == 0) throw std::invalid_argument("casimir_polynomials: degree 0 tensor");
  const std::size_t m = v.num_vars();
  const auto monos = monomials_up_to(m, 0, max_degree);

  std::vector<VectorField> fields;
  for (const auto& k : increasing_tuples(m, v.degree() - 1)) {
    MultiVector x = v;
    for (auto a : k) x = contract(Poly::variable(m, a), x);
    if (!x.is_zero()) fields.push_back(std::move(x));
  }

  std::map<std::pair<std::size_t, Exponents>, std::size_t> rows;
  std::vector<std::vector<std::pair<std::size_t, Rational>>> columns(monos.size());
  for (std::size_t j = 0; j < monos.size(); ++j)
    for (std::size_t f = 0; f < fields.size(); ++f) {
      const Poly image = apply_field(fields[f], monos[j]);
      for (const auto& [exps, c] : image.terms()) {
        auto it = rows.try_emplace({f, exps}, rows.size()).first;
        columns[j].emplace_back(it->second, c);
      }
    }

  RationalMatrix a(rows.size(), monos.size());
  for (std::size_t j = 0; j < monos.size(); ++j)
    for (const auto& [r, c] : columns[j]) a(r, j) = c;

  std::vector<Poly> basis;
  for (const auto& vec : nullspace(a)) {
    Poly g(m);
    for (std::size_t j = 0; j < monos.size(); ++j)
      if (vec[j] != 0) g += vec[j] * monos[j];
    basis.push_back(std::move(g));
  }
  return basis;
}

}  // namespace nambu
