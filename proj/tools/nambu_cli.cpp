#include <CLI11.hpp>

#include <cstdint>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "nambu/bianchi/bianchi.hpp"
#include "nambu/io/json_io.hpp"
#include "nambu/nambu_dyn/nambu_dyn.hpp"
#include "nambu/njacobi/njacobi.hpp"
#include "nambu/nlie/nlie.hpp"
#include "nambu/npoisson/npoisson.hpp"

using namespace nambu;
using nambu::io::json;

namespace {

constexpr int kHolds = 0;
constexpr int kFails = 1;
constexpr int kInputError = 2;

struct Globals {
  bool json_out = false;
  std::uint64_t seed = 1;
  unsigned max_degree = 2;
  double tolerance = 1e-9;
};

void emit(const Globals& g, const json& report) {
  if (g.json_out) {
    std::cout << report.dump(2) << "\n";
    return;
  }
  for (const auto& [key, value] : report.items()) {
    std::cout << key << ": ";
    if (value.is_string()) std::cout << value.get<std::string>();
    else std::cout << value.dump();
    std::cout << "\n";
  }
}

json poly_texts(const std::vector<Poly>& ps) {
  json out = json::array();
  for (const auto& p : ps) out.push_back(p.to_string());
  return out;
}

json tuple_json(const IndexTuple& idx) {
  json out = json::array();
  for (auto i : idx) out.push_back(i + 1);
  return out;
}

json vector_json(const Vector& v) {
  json out = json::array();
  for (const auto& q : v) out.push_back(nambu::to_string(q));
  return out;
}

json check_json(const CheckResult& r) {
  json out{{"verdict", r.holds}};
  if (r.witness)
    out["witness"] = {{"fixed", tuple_json(r.witness->fixed)},
                      {"args", tuple_json(r.witness->args)},
                      {"defect", vector_json(r.witness->defect)}};
  return out;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream in(s);
  std::string part;
  while (std::getline(in, part, sep)) out.push_back(part);
  return out;
}

std::vector<Rational> rationals(const std::string& s) {
  std::vector<Rational> out;
  for (const auto& part : split(s, ',')) out.push_back(parse_rational(part));
  return out;
}

std::vector<double> doubles(const std::string& s) {
  std::vector<double> out;
  for (const auto& q : rationals(s)) out.push_back(q.get_d());
  return out;
}

// Simplest rational in the closed interval [lo, hi], 0 < lo <= hi.
Rational simplest_between(const Rational& lo, const Rational& hi) {
  mpz_class a;
  mpz_fdiv_q(a.get_mpz_t(), lo.get_num_mpz_t(), lo.get_den_mpz_t());
  if (Rational(a) == lo) return lo;
  if (Rational(a + 1) <= hi) return Rational(a + 1);
  return Rational(a) + 1 / simplest_between(1 / (hi - a), 1 / (lo - a));
}

Rational snap(const Rational& q, double tolerance) {
  if (q <= 0 || tolerance <= 0) return q;
  Rational tol = rational_from_double(tolerance);
  Rational lo = q - tol;
  if (lo <= 0) lo = q / 2;
  return simplest_between(lo, q + tol);
}

BianchiLabel label_from_flags(const std::string& label, const std::string& kind, const std::string& lambda,
                              std::size_t rank, std::size_t max_index, double tolerance) {
  if (!label.empty()) return parse_label(label);
  if (kind == "Unimodular") return BianchiLabel::unimodular(rank, max_index);
  if (kind == "PsiOne") return BianchiLabel::psi_one();
  if (kind == "PsiZero") return BianchiLabel::psi_zero();
  if (kind == "PsiLambdaPlus" || kind == "PsiLambdaMinus") {
    const bool plus = kind == "PsiLambdaPlus";
    if (lambda.empty()) throw std::invalid_argument("--lambda is required for " + kind);
    if (lambda.rfind("sqrt(", 0) == 0 && lambda.back() == ')')
      return BianchiLabel::psi_lambda_squared(plus, parse_rational(lambda.substr(5, lambda.size() - 6)));
    Rational l = parse_rational(lambda);
    if (lambda.find('.') != std::string::npos) l = snap(l, tolerance);
    return BianchiLabel::psi_lambda(plus, l);
  }
  throw std::invalid_argument("unknown kind '" + kind + "'");
}

int check_nlie(const Globals& g, const std::string& file) {
  auto p = io::nlie_from_json(io::read_file(file));
  json report = check_json(check_n_jacobi(p));
  report["dim"] = p.dim();
  report["arity"] = p.arity();
  emit(g, report);
  return report["verdict"].get<bool>() ? kHolds : kFails;
}

int check_poisson(const Globals& g, const std::string& file) {
  auto v = io::multivector_from_json(io::read_file(file));
  PoissonOptions opts;
  opts.rank_filter = false;
  auto r = is_n_poisson(v, opts);
  json report{{"verdict", r.holds}};
  if (r.witness)
    report["witness"] = {{"functions", poly_texts(r.witness->functions)},
                         {"defect", r.witness->defect.to_string()}};
  report["decomposable"] = is_decomposable(v);
  std::vector<Rational> origin(v.num_vars(), Rational(0));
  report["rank_at_origin"] = derived_rank(v, origin);
  report["casimirs"] = poly_texts(casimir_polynomials(v, g.max_degree));
  emit(g, report);
  return r.holds ? kHolds : kFails;
}

int check_jacobi(const Globals& g, const std::string& file) {
  auto d = io::jacobi_from_json(io::read_file(file));
  auto r = is_n_jacobi(d);
  json report{{"verdict", r.holds}};
  if (r.witness)
    report["witness"] = {{"functions", poly_texts(r.witness->functions)},
                         {"defect1", r.witness->defect1.to_string()},
                         {"defect0", r.witness->defect0.to_string()}};
  report["box_poisson"] = d.box().degree() == 0 ? json(nullptr) : json(is_n_poisson(d.box()).holds);
  report["nabla_decomposable"] = is_decomposable(d.nabla());
  emit(g, report);
  return r.holds ? kHolds : kFails;
}

int classify_cmd(const Globals& g, const std::string& file) {
  auto p = io::nlie_from_json(io::read_file(file));
  auto label = classify(p);
  json report{{"label", label.to_string()},
              {"generating_form", io::to_json(generating_form(p))},
              {"unimodular", is_unimodular(p)}};
  if (label.kind == BianchiKind::PsiLambdaPlus || label.kind == BianchiKind::PsiLambdaMinus)
    report["lambda"] = label.lambda();
  emit(g, report);
  return kHolds;
}

int derivations_cmd(const Globals& g, const std::string& file) {
  auto der = derivation_algebra(io::nlie_from_json(io::read_file(file)));
  json basis = json::array();
  for (const auto& m : der.basis) basis.push_back(io::to_json(m));
  emit(g, {{"dimension", der.dimension()}, {"basis", basis}});
  return kHolds;
}

int synthesize_cmd(const Globals& g, const BianchiLabel& label, std::size_t n, bool random_basis) {
  auto p = synthesize(label, n);
  if (random_basis) {
    std::mt19937_64 rng(g.seed);
    std::uniform_int_distribution<int> entry(-2, 2);
    RationalMatrix s;
    do {
      s = RationalMatrix(n + 1, n + 1);
      for (std::size_t i = 0; i <= n; ++i)
        for (std::size_t j = 0; j <= n; ++j) s(i, j) = entry(rng);
    } while (determinant(s) == 0);
    p = change_basis(p, s);
  }
  std::cout << io::to_json(p).dump(2) << "\n";
  return kHolds;
}

int compat_cmd(const Globals& g, const std::string& a, const std::string& b) {
  auto p = io::nlie_from_json(io::read_file(a));
  auto q = io::nlie_from_json(io::read_file(b));
  json report = check_json(compat(p, q));
  emit(g, report);
  return report["verdict"].get<bool>() ? kHolds : kFails;
}

int hereditary_cmd(const std::string& file, const std::string& vectors) {
  auto p = io::nlie_from_json(io::read_file(file));
  std::vector<Vector> us;
  for (const auto& v : split(vectors, ';')) {
    us.push_back(rationals(v));
    if (us.back().size() != p.dim()) throw std::invalid_argument("each vector needs " + std::to_string(p.dim()) + " entries");
  }
  std::cout << io::to_json(hereditary(p, us)).dump(2) << "\n";
  return kHolds;
}

struct IntegrateFlags {
  std::string builtin;
  std::string system;
  std::string x0;
  double h = 1e-3;
  std::size_t steps = 1000;
  std::size_t every = 1;
  std::string b = "0,0,1";
  std::string mu = "1";
  std::string mass = "1";
  std::string k = "1";
};

int integrate_cmd(const Globals& g, const IntegrateFlags& f) {
  NumericField field;
  std::vector<Poly> monitors;
  if (f.builtin == "spin") {
    auto b = rationals(f.b);
    if (b.size() != 3) throw std::invalid_argument("--B needs three components");
    auto sys = spin_system({b[0], b[1], b[2]}, parse_rational(f.mu));
    field = compile_field(dynamics_field(sys));
    monitors = sys.hamiltonians;
  } else if (f.builtin == "kepler") {
    auto sys = kepler_action_angle(parse_rational(f.mass), parse_rational(f.k));
    field = kepler_field(sys);
    monitors = sys.unit.hamiltonians;
  } else if (!f.builtin.empty()) {
    throw std::invalid_argument("unknown builtin '" + f.builtin + "'");
  } else if (!f.system.empty()) {
    auto sys = io::nambu_system_from_json(io::read_file(f.system));
    field = compile_field(dynamics_field(sys));
    monitors = sys.hamiltonians;
  } else {
    throw std::invalid_argument("integrate needs --builtin or --system");
  }
  auto x0 = doubles(f.x0);
  if (!monitors.empty() && x0.size() != monitors[0].num_vars())
    throw std::invalid_argument("--x0 needs " + std::to_string(monitors[0].num_vars()) + " values");

  auto tr = rk4_integrate(field, x0, f.h, f.steps, monitors);
  double worst = 0;
  for (double d : tr.invariant_drift) worst = std::max(worst, d);
  const bool verdict = tr.ok && worst <= g.tolerance;

  if (g.json_out) {
    json report{{"verdict", verdict}, {"ok", tr.ok}, {"steps", tr.times.size() - 1},
                {"final_time", tr.times.back()}, {"final_state", tr.states.back()},
                {"invariant_drift", tr.invariant_drift}};
    if (!tr.ok) report["error"] = tr.error;
    emit(g, report);
  } else {
    std::cout << "t";
    for (std::size_t i = 0; i < x0.size(); ++i) std::cout << ",x" << i + 1;
    for (std::size_t i = 0; i < monitors.size(); ++i) std::cout << ",drift" << i + 1;
    std::cout << "\n";
    std::cout.precision(17);
    for (std::size_t s = 0; s < tr.times.size(); ++s) {
      if (s % f.every != 0 && s + 1 != tr.times.size()) continue;
      std::cout << tr.times[s];
      for (double c : tr.states[s]) std::cout << "," << c;
      for (double d : tr.drift[s]) std::cout << "," << d;
      std::cout << "\n";
    }
    if (!tr.ok) std::cerr << "integration stopped: " << tr.error << "\n";
  }
  return verdict ? kHolds : kFails;
}

int witt_cmd(const Globals& g) {
  MultiVector p = witt_bivector();
  auto x = [](std::size_t i) { return Poly::variable(3, i); };
  json report{{"bivector", p.to_string()},
              {"{x1,x2}", p.apply({x(0), x(1)}).to_string()},
              {"{x1,x3}", p.apply({x(0), x(2)}).to_string()},
              {"{x2,x3}", p.apply({x(1), x(2)}).to_string()},
              {"schouten_zero", schouten(p, p).is_zero()}};
  const bool verdict = witt_embedding_check();
  report["verdict"] = verdict;
  emit(g, report);
  return verdict ? kHolds : kFails;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact checks for n-Lie, n-Poisson and n-Jacobi structures"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_flag("--json", g.json_out, "JSON output");
  app.add_option("--seed", g.seed, "Seed for randomized operations");
  app.add_option("--max-degree", g.max_degree, "Casimir search degree");
  app.add_option("--tolerance", g.tolerance, "Numeric tolerance");

  std::string file, file2, label, kind, lambda, vectors;
  std::size_t n = 3, rank = 0, max_index = 0;
  bool random_basis = false;
  IntegrateFlags iflags;

  auto* nlie = app.add_subcommand("check-nlie", "n-ary Jacobi identity of an algebra");
  nlie->add_option("algebra", file)->required();
  auto* poisson = app.add_subcommand("check-poisson", "Fundamental identity of a multivector field");
  poisson->add_option("multivector", file)->required();
  auto* jacobi = app.add_subcommand("check-jacobi", "n-Jacobi check of a (nabla, box) pair");
  jacobi->add_option("pair", file)->required();
  auto* cls = app.add_subcommand("classify", "Label of an (n+1)-dimensional n-Lie algebra");
  cls->add_option("algebra", file)->required();
  auto* der = app.add_subcommand("derivations", "Derivation algebra of an (n+1)-dimensional n-Lie algebra");
  der->add_option("algebra", file)->required();
  auto* syn = app.add_subcommand("synthesize", "Canonical algebra for a label");
  syn->add_option("--label", label, "Full label, e.g. PsiLambdaPlus{2}");
  syn->add_option("--kind", kind, "Unimodular, PsiLambdaPlus, PsiLambdaMinus, PsiOne or PsiZero");
  syn->add_option("--lambda", lambda, "lambda as p/q, decimal or sqrt(q)");
  syn->add_option("--rank", rank);
  syn->add_option("--max-index", max_index);
  syn->add_option("--n", n, "Arity");
  syn->add_flag("--random-basis", random_basis, "Apply a seeded random basis change");
  auto* cmp = app.add_subcommand("compat", "Compatibility of two n-Lie algebras");
  cmp->add_option("first", file)->required();
  cmp->add_option("second", file2)->required();
  auto* her = app.add_subcommand("hereditary", "Hereditary structure with frozen leading vectors");
  her->add_option("algebra", file)->required();
  her->add_option("--vectors", vectors, "Semicolon-separated vectors, e.g. 1,0,0,0;0,1,0,0")->required();
  auto* integ = app.add_subcommand("integrate", "RK4 integration of Nambu dynamics");
  integ->set_help_flag("--help", "Print this help message and exit");
  integ->add_option("--builtin", iflags.builtin, "spin or kepler");
  integ->add_option("--system", iflags.system, "NambuSystem JSON");
  integ->add_option("--x0", iflags.x0, "Initial state, comma separated")->required();
  integ->add_option("--h", iflags.h);
  integ->add_option("--steps", iflags.steps);
  integ->add_option("--every", iflags.every, "Print every k-th row");
  integ->add_option("--B", iflags.b);
  integ->add_option("--mu", iflags.mu);
  integ->add_option("--mass", iflags.mass);
  integ->add_option("--k", iflags.k);
  auto* witt = app.add_subcommand("witt-demo", "Witt algebra bivector");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kInputError;
  }

  try {
    if (*nlie) return check_nlie(g, file);
    if (*poisson) return check_poisson(g, file);
    if (*jacobi) return check_jacobi(g, file);
    if (*cls) return classify_cmd(g, file);
    if (*der) return derivations_cmd(g, file);
    if (*syn) return synthesize_cmd(g, label_from_flags(label, kind, lambda, rank, max_index, g.tolerance), n, random_basis);
    if (*cmp) return compat_cmd(g, file, file2);
    if (*her) return hereditary_cmd(file, vectors);
    if (*integ) {
      if (iflags.every == 0) throw std::invalid_argument("--every must be positive");
      return integrate_cmd(g, iflags);
    }
    if (*witt) return witt_cmd(g);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  }
  return kInputError;
}
