#include "nambu/io/json_io.hpp"

#include <fstream>
#include <sstream>

namespace nambu::io {

namespace {

const json& field(const json& j, const char* key, const std::string& path) {
  if (!j.is_object()) throw FormatError(path, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) throw FormatError(path, std::string("missing key '") + key + "'");
  return *it;
}

std::size_t count(const json& j, const std::string& path) {
  if (!j.is_number_integer() || j.get<long long>() < 0) throw FormatError(path, "expected a non-negative integer");
  return j.get<std::size_t>();
}

const json& array(const json& j, const std::string& path) {
  if (!j.is_array()) throw FormatError(path, "expected an array");
  return j;
}

std::string at(const std::string& path, std::size_t i) { return path + "[" + std::to_string(i) + "]"; }

IndexTuple indices_from_json(const json& j, std::size_t num_vars, const std::string& path) {
  IndexTuple idx;
  for (std::size_t i = 0; i < array(j, path).size(); ++i) {
    std::size_t v = count(j[i], at(path, i));
    if (v == 0 || v > num_vars) throw FormatError(at(path, i), "index out of range 1.." + std::to_string(num_vars));
    idx.push_back(v - 1);
  }
  return idx;
}

json indices_to_json(const IndexTuple& idx) {
  json out = json::array();
  for (auto i : idx) out.push_back(i + 1);
  return out;
}

}  // namespace

json to_json(const Rational& q) { return nambu::to_string(q); }

Rational rational_from_json(const json& j, const std::string& path) {
  if (j.is_number_integer()) return Rational(j.get<long>());
  if (!j.is_string()) throw FormatError(path, "expected a rational string");
  try {
    return parse_rational(j.get<std::string>());
  } catch (const std::invalid_argument& e) {
    throw FormatError(path, e.what());
  }
}

json to_json(const Poly& p) {
  json out = json::array();
  for (const auto& [exps, c] : p.terms()) out.push_back({{"coef", to_json(c)}, {"exps", exps}});
  return out;
}

Poly poly_from_json(const json& j, std::size_t num_vars, const std::string& path) {
  Poly p(num_vars);
  for (std::size_t i = 0; i < array(j, path).size(); ++i) {
    const std::string here = at(path, i);
    Rational c = rational_from_json(field(j[i], "coef", here), here + ".coef");
    const json& e = array(field(j[i], "exps", here), here + ".exps");
    if (e.size() != num_vars) throw FormatError(here + ".exps", "expected " + std::to_string(num_vars) + " exponents");
    Exponents exps;
    for (std::size_t k = 0; k < e.size(); ++k) exps.push_back(static_cast<unsigned>(count(e[k], at(here + ".exps", k))));
    p.add_term(exps, c);
  }
  return p;
}

json to_json(const MultiVector& v) {
  json comps = json::array();
  for (const auto& [idx, poly] : v.components())
    comps.push_back({{"indices", indices_to_json(idx)}, {"poly", to_json(poly)}});
  return {{"num_vars", v.num_vars()}, {"degree", v.degree()}, {"components", comps}};
}

MultiVector multivector_from_json(const json& j, const std::string& path) {
  const std::size_t m = count(field(j, "num_vars", path), path + ".num_vars");
  const std::size_t k = count(field(j, "degree", path), path + ".degree");
  MultiVector v(m, k);
  const std::string cpath = path + ".components";
  const json& comps = array(field(j, "components", path), cpath);
  for (std::size_t i = 0; i < comps.size(); ++i) {
    const std::string here = at(cpath, i);
    IndexTuple idx = indices_from_json(field(comps[i], "indices", here), m, here + ".indices");
    if (idx.size() != k) throw FormatError(here + ".indices", "expected " + std::to_string(k) + " indices");
    v.add(idx, poly_from_json(field(comps[i], "poly", here), m, here + ".poly"));
  }
  return v;
}

json to_json(const OneForm& w) {
  json comps = json::array();
  for (const auto& c : w.components) comps.push_back(to_json(c));
  return {{"num_vars", w.num_vars()}, {"components", comps}};
}

OneForm oneform_from_json(const json& j, const std::string& path) {
  const std::size_t m = count(field(j, "num_vars", path), path + ".num_vars");
  const std::string cpath = path + ".components";
  const json& comps = array(field(j, "components", path), cpath);
  if (comps.size() != m) throw FormatError(cpath, "expected " + std::to_string(m) + " components");
  OneForm w = OneForm::zero(m);
  for (std::size_t i = 0; i < m; ++i) w.components[i] = poly_from_json(comps[i], m, at(cpath, i));
  return w;
}

json to_json(const NLieStructure& p) {
  json consts = json::array();
  for (const auto& [idx, value] : p.constants()) {
    json vals = json::array();
    for (const auto& q : value) vals.push_back(to_json(q));
    consts.push_back({{"indices", indices_to_json(idx)}, {"value", vals}});
  }
  return {{"dim", p.dim()}, {"arity", p.arity()}, {"constants", consts}};
}

NLieStructure nlie_from_json(const json& j, const std::string& path) {
  const std::size_t dim = count(field(j, "dim", path), path + ".dim");
  const std::size_t arity = count(field(j, "arity", path), path + ".arity");
  if (arity == 0) throw FormatError(path + ".arity", "arity must be positive");
  NLieStructure p(dim, arity);
  const std::string cpath = path + ".constants";
  const json& consts = array(field(j, "constants", path), cpath);
  for (std::size_t i = 0; i < consts.size(); ++i) {
    const std::string here = at(cpath, i);
    IndexTuple idx = indices_from_json(field(consts[i], "indices", here), dim, here + ".indices");
    if (idx.size() != arity) throw FormatError(here + ".indices", "expected " + std::to_string(arity) + " indices");
    const json& vals = array(field(consts[i], "value", here), here + ".value");
    if (vals.size() != dim) throw FormatError(here + ".value", "expected " + std::to_string(dim) + " entries");
    Vector value;
    for (std::size_t k = 0; k < dim; ++k) value.push_back(rational_from_json(vals[k], at(here + ".value", k)));
    try {
      p.set(idx, value);
    } catch (const std::invalid_argument& e) {
      throw FormatError(here, e.what());
    }
  }
  return p;
}

json to_json(const JacobiOp& d) { return {{"nabla", to_json(d.nabla())}, {"box", to_json(d.box())}}; }

JacobiOp jacobi_from_json(const json& j, const std::string& path) {
  MultiVector nabla = multivector_from_json(field(j, "nabla", path), path + ".nabla");
  MultiVector box = multivector_from_json(field(j, "box", path), path + ".box");
  try {
    return JacobiOp(std::move(nabla), std::move(box));
  } catch (const std::invalid_argument& e) {
    throw FormatError(path, e.what());
  }
}

json to_json(const RationalMatrix& m) {
  json rows = json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(to_json(m(r, c)));
    rows.push_back(row);
  }
  return rows;
}

RationalMatrix matrix_from_json(const json& j, const std::string& path) {
  const std::size_t rows = array(j, path).size();
  const std::size_t cols = rows ? array(j[0], at(path, 0)).size() : 0;
  RationalMatrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    const json& row = array(j[r], at(path, r));
    if (row.size() != cols) throw FormatError(at(path, r), "ragged matrix");
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = rational_from_json(row[c], at(at(path, r), c));
  }
  return m;
}

json to_json(const NambuSystem& sys) {
  json hs = json::array();
  for (const auto& h : sys.hamiltonians) hs.push_back(to_json(h));
  return {{"tensor", to_json(sys.tensor)}, {"hamiltonians", hs}};
}

NambuSystem nambu_system_from_json(const json& j, const std::string& path) {
  NambuSystem sys;
  sys.tensor = multivector_from_json(field(j, "tensor", path), path + ".tensor");
  const std::string hpath = path + ".hamiltonians";
  const json& hs = array(field(j, "hamiltonians", path), hpath);
  for (std::size_t i = 0; i < hs.size(); ++i)
    sys.hamiltonians.push_back(poly_from_json(hs[i], sys.tensor.num_vars(), at(hpath, i)));
  return sys;
}

json parse(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw FormatError("byte " + std::to_string(e.byte), e.what());
  }
}

json read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FormatError(path, "cannot open file");
  std::stringstream buf;
  buf << in.rdbuf();
  try {
    return parse(buf.str());
  } catch (const FormatError& e) {
    throw FormatError(path + ": " + e.path(), std::string(e.what()).substr(e.path().size() + 2));
  }
}

}  // namespace nambu::io
