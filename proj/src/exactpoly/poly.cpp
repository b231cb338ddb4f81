#include "nambu/exactpoly/poly.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <functional>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace nambu {

Poly Poly::constant(std::size_t num_vars, const Rational& c) {
  Poly p(num_vars);
  p.add_term(Exponents(num_vars, 0), c);
  return p;
}

Poly Poly::variable(std::size_t num_vars, std::size_t i) {
  if (i >= num_vars) throw std::out_of_range("variable index out of range");
  Exponents e(num_vars, 0);
  e[i] = 1;
  return monomial(num_vars, std::move(e));
}

Poly Poly::monomial(std::size_t num_vars, Exponents exps, const Rational& c) {
  if (exps.size() != num_vars)
    throw std::invalid_argument("exponent vector length differs from num_vars");
  Poly p(num_vars);
  p.add_term(exps, c);
  return p;
}

bool Poly::is_constant() const {
  if (terms_.empty()) return true;
  if (terms_.size() > 1) return false;
  const auto& e = terms_.begin()->first;
  return std::all_of(e.begin(), e.end(), [](unsigned a) { return a == 0; });
}

Rational Poly::constant_term() const {
  return coefficient(Exponents(num_vars_, 0));
}

int Poly::total_degree() const {
  int deg = -1;
  for (const auto& [e, c] : terms_) {
    int d = static_cast<int>(std::accumulate(e.begin(), e.end(), 0u));
    deg = std::max(deg, d);
  }
  return deg;
}

Rational Poly::coefficient(const Exponents& exps) const {
  auto it = terms_.find(exps);
  return it == terms_.end() ? Rational(0) : it->second;
}

void Poly::add_term(const Exponents& exps, const Rational& c) {
  if (exps.size() != num_vars_)
    throw std::invalid_argument("exponent vector length differs from num_vars");
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(exps, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

void Poly::check_same_vars(const Poly& other) const {
  if (num_vars_ != other.num_vars_)
    throw std::invalid_argument("polynomials live on charts of different dimension (" +
                                std::to_string(num_vars_) + " vs " +
                                std::to_string(other.num_vars_) + ")");
}

Poly& Poly::operator+=(const Poly& other) {
  check_same_vars(other);
  for (const auto& [e, c] : other.terms_) add_term(e, c);
  return *this;
}

Poly& Poly::operator-=(const Poly& other) {
  check_same_vars(other);
  for (const auto& [e, c] : other.terms_) add_term(e, -c);
  return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
  a.check_same_vars(b);
  Poly out(a.num_vars_);
  Exponents e(a.num_vars_);
  for (const auto& [ea, ca] : a.terms_) {
    for (const auto& [eb, cb] : b.terms_) {
      for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
      out.add_term(e, ca * cb);
    }
  }
  return out;
}

Poly& Poly::operator*=(const Poly& other) {
  *this = *this * other;
  return *this;
}

Poly& Poly::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [e, coef] : terms_) coef *= c;
  return *this;
}

Poly Poly::operator-() const {
  Poly out = *this;
  for (auto& [e, c] : out.terms_) c = -c;
  return out;
}

Poly Poly::partial(std::size_t i) const {
  if (i >= num_vars_) throw std::out_of_range("partial: coordinate index out of range");
  Poly out(num_vars_);
  for (const auto& [e, c] : terms_) {
    if (e[i] == 0) continue;
    Exponents d = e;
    --d[i];
    out.add_term(d, c * e[i]);
  }
  return out;
}

Rational Poly::evaluate(std::span<const Rational> point) const {
  if (point.size() != num_vars_)
    throw std::invalid_argument("evaluate: point length differs from num_vars");
  Rational sum = 0;
  for (const auto& [e, c] : terms_) {
    Rational t = c;
    for (std::size_t i = 0; i < e.size(); ++i) {
      for (unsigned k = 0; k < e[i]; ++k) t *= point[i];
    }
    sum += t;
  }
  return sum;
}

double Poly::evaluate(std::span<const double> point) const {
  if (point.size() != num_vars_)
    throw std::invalid_argument("evaluate: point length differs from num_vars");
  double sum = 0.0;
  for (const auto& [e, c] : terms_) {
    double t = c.get_d();
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] != 0) t *= std::pow(point[i], static_cast<double>(e[i]));
    }
    sum += t;
  }
  return sum;
}

std::string Poly::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [e, c] = *it;
    bool is_const = std::all_of(e.begin(), e.end(), [](unsigned a) { return a == 0; });
    Rational mag = abs(c);
    if (first) {
      if (c < 0) out << "-";
    } else {
      out << (c < 0 ? " - " : " + ");
    }
    first = false;
    bool wrote = false;
    if (is_const || mag != 1) {
      out << mag.get_str();
      wrote = true;
    }
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (wrote) out << " ";
      out << "x" << (i + 1);
      if (e[i] > 1) out << "^" << e[i];
      wrote = true;
    }
  }
  return out.str();
}

Poly arith(const Poly& p, const Poly& q, ArithOp op) {
  switch (op) {
    case ArithOp::add:
      return p + q;
    case ArithOp::sub:
      return p - q;
    case ArithOp::mul:
      return p * q;
  }
  throw std::invalid_argument("unknown arithmetic operation");
}

namespace {

class PolyParser {
 public:
  PolyParser(std::string_view text, std::size_t num_vars)
      : text_(text), num_vars_(num_vars) {}

  Poly parse() {
    Poly out(num_vars_);
    skip_ws();
    if (pos_ == text_.size()) fail("empty polynomial");
    bool first = true;
    while (true) {
      skip_ws();
      if (pos_ == text_.size()) break;
      int sign = 1;
      if (peek() == '+' || peek() == '-') {
        sign = peek() == '-' ? -1 : 1;
        ++pos_;
        skip_ws();
      } else if (!first) {
        fail("expected '+' or '-'");
      }
      first = false;
      Exponents e(num_vars_, 0);
      Rational c = parse_term(e);
      out.add_term(e, sign < 0 ? Rational(-c) : c);
    }
    return out;
  }

 private:
  char peek() const { return text_[pos_]; }
  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])))
      ++pos_;
  }
  [[noreturn]] void fail(const std::string& msg) const {
    throw std::invalid_argument("polynomial parse error at offset " +
                                std::to_string(pos_) + ": " + msg);
  }

  Rational parse_term(Exponents& e) {
    Rational coef = 1;
    bool any = false;
    while (true) {
      skip_ws();
      if (pos_ == text_.size()) break;
      char ch = peek();
      if (ch == '*') {
        if (!any) fail("dangling '*'");
        ++pos_;
        continue;
      }
      if (std::isdigit(static_cast<unsigned char>(ch)) || ch == '.') {
        std::size_t start = pos_;
        while (pos_ < text_.size() &&
               (std::isdigit(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '.'))
          ++pos_;
        if (pos_ < text_.size() && text_[pos_] == '/') {
          ++pos_;
          while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
            ++pos_;
        }
        coef *= parse_rational(text_.substr(start, pos_ - start));
        any = true;
        continue;
      }
      if (ch == 'x') {
        ++pos_;
        std::size_t start = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
          ++pos_;
        if (start == pos_) fail("expected coordinate index after 'x'");
        std::size_t idx = std::stoul(std::string(text_.substr(start, pos_ - start)));
        if (idx < 1 || idx > num_vars_) fail("coordinate x" + std::to_string(idx) + " out of range");
        unsigned power = 1;
        skip_ws();
        if (pos_ < text_.size() && text_[pos_] == '^') {
          ++pos_;
          skip_ws();
          std::size_t ps = pos_;
          while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
            ++pos_;
          if (ps == pos_) fail("expected exponent after '^'");
          power = static_cast<unsigned>(std::stoul(std::string(text_.substr(ps, pos_ - ps))));
        }
        e[idx - 1] += power;
        any = true;
        continue;
      }
      if (ch == '+' || ch == '-') break;
      fail(std::string("unexpected character '") + ch + "'");
    }
    if (!any) fail("empty term");
    return coef;
  }

  std::string_view text_;
  std::size_t num_vars_;
  std::size_t pos_ = 0;
};

}  // namespace

Poly parse_poly(std::string_view text, std::size_t num_vars) {
  return PolyParser(text, num_vars).parse();
}

std::vector<Poly> monomials_up_to(std::size_t num_vars, unsigned min_degree,
                                  unsigned max_degree) {
  std::vector<Poly> out;
  Exponents e(num_vars, 0);
  for (unsigned d = min_degree; d <= max_degree; ++d) {
    std::function<void(std::size_t, unsigned)> rec = [&](std::size_t i, unsigned left) {
      if (num_vars == 0) {
        if (left == 0) out.push_back(Poly::constant(0, 1));
        return;
      }
      if (i + 1 == num_vars) {
        e[i] = left;
        out.push_back(Poly::monomial(num_vars, e));
        e[i] = 0;
        return;
      }
      for (unsigned a = left + 1; a-- > 0;) {
        e[i] = a;
        rec(i + 1, left - a);
      }
      e[i] = 0;
    };
    rec(0, d);
  }
  return out;
}

NumericPoly::NumericPoly(const Poly& p) {
  for (const auto& [e, c] : p.terms()) {
    Term t{c.get_d(), {}};
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] != 0) t.powers.emplace_back(i, e[i]);
    }
    terms_.push_back(std::move(t));
  }
}

double NumericPoly::operator()(std::span<const double> x) const {
  double sum = 0.0;
  for (const auto& t : terms_) {
    double v = t.coef;
    for (auto [i, k] : t.powers) {
      for (unsigned j = 0; j < k; ++j) v *= x[i];
    }
    sum += v;
  }
  return sum;
}

}  // namespace nambu
