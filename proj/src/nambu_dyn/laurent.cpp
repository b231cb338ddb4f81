#include "nambu/nambu_dyn/laurent.hpp"

#include <cmath>
#include <stdexcept>

namespace nambu {

LaurentPoly::LaurentPoly(const Poly& p) : num_vars_(p.num_vars()) {
  for (const auto& [exps, c] : p.terms()) terms_[LaurentExponents(exps.begin(), exps.end())] = c;
}

LaurentPoly LaurentPoly::monomial(std::size_t num_vars, LaurentExponents exps, const Rational& c) {
  if (exps.size() != num_vars) throw std::invalid_argument("LaurentPoly: exponent length mismatch");
  LaurentPoly p(num_vars);
  p.add_term(exps, c);
  return p;
}

void LaurentPoly::add_term(const LaurentExponents& exps, const Rational& c) {
  if (c == 0) return;
  auto [it, fresh] = terms_.emplace(exps, c);
  if (fresh) return;
  it->second += c;
  if (it->second == 0) terms_.erase(it);
}

LaurentPoly& LaurentPoly::operator+=(const LaurentPoly& other) {
  if (other.num_vars_ != num_vars_) throw std::invalid_argument("LaurentPoly: chart mismatch");
  for (const auto& [e, c] : other.terms_) add_term(e, c);
  return *this;
}

LaurentPoly& LaurentPoly::operator-=(const LaurentPoly& other) {
  if (other.num_vars_ != num_vars_) throw std::invalid_argument("LaurentPoly: chart mismatch");
  for (const auto& [e, c] : other.terms_) add_term(e, -c);
  return *this;
}

LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
  if (a.num_vars_ != b.num_vars_) throw std::invalid_argument("LaurentPoly: chart mismatch");
  LaurentPoly out(a.num_vars_);
  for (const auto& [ea, ca] : a.terms_)
    for (const auto& [eb, cb] : b.terms_) {
      LaurentExponents e(ea);
      for (std::size_t i = 0; i < e.size(); ++i) e[i] += eb[i];
      out.add_term(e, ca * cb);
    }
  return out;
}

LaurentPoly operator*(const Rational& c, LaurentPoly a) {
  if (c == 0) return LaurentPoly(a.num_vars_);
  for (auto& [e, v] : a.terms_) v *= c;
  return a;
}

LaurentPoly LaurentPoly::operator-() const { return Rational(-1) * *this; }

LaurentPoly LaurentPoly::partial(std::size_t i) const {
  if (i >= num_vars_) throw std::out_of_range("LaurentPoly::partial: bad coordinate");
  LaurentPoly out(num_vars_);
  for (const auto& [e, c] : terms_) {
    if (e[i] == 0) continue;
    LaurentExponents d(e);
    d[i] -= 1;
    out.add_term(d, c * e[i]);
  }
  return out;
}

double LaurentPoly::evaluate(std::span<const double> point) const {
  if (point.size() != num_vars_) throw std::invalid_argument("LaurentPoly::evaluate: dimension mismatch");
  double out = 0;
  for (const auto& [e, c] : terms_) {
    double t = c.get_d();
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] < 0 && point[i] == 0) throw std::domain_error("LaurentPoly::evaluate: pole");
      t *= std::pow(point[i], e[i]);
    }
    out += t;
  }
  return out;
}

Rational LaurentPoly::evaluate(std::span<const Rational> point) const {
  if (point.size() != num_vars_) throw std::invalid_argument("LaurentPoly::evaluate: dimension mismatch");
  Rational out = 0;
  for (const auto& [e, c] : terms_) {
    Rational t = c;
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] < 0 && point[i] == 0) throw std::domain_error("LaurentPoly::evaluate: pole");
      for (int k = 0; k < std::abs(e[i]); ++k) {
        if (e[i] > 0) t *= point[i];
        else t /= point[i];
      }
    }
    out += t;
  }
  return out;
}

std::string LaurentPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [e, c] = *it;
    Rational mag = abs(c);
    out += out.empty() ? (c < 0 ? "-" : "") : (c < 0 ? " - " : " + ");
    std::string mono;
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (!mono.empty()) mono += " ";
      mono += "x" + std::to_string(i + 1);
      if (e[i] != 1) mono += "^" + std::to_string(e[i]);
    }
    if (mono.empty()) out += nambu::to_string(mag);
    else if (mag == 1) out += mono;
    else out += nambu::to_string(mag) + " " + mono;
  }
  return out;
}

}  // namespace nambu
