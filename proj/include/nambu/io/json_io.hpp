#pragma once

#include <stdexcept>
#include <string>

#include <json.hpp>

#include "nambu/bianchi/bianchi.hpp"
#include "nambu/exactpoly/matrix.hpp"
#include "nambu/multivec/multivector.hpp"
#include "nambu/nambu_dyn/nambu_dyn.hpp"
#include "nambu/njacobi/njacobi.hpp"
#include "nambu/nlie/nlie.hpp"

namespace nambu::io {

using json = nlohmann::ordered_json;

/// Malformed document; what() starts with the JSON path of the offending
/// value, e.g. "constants[2].indices: ...".
class FormatError : public std::invalid_argument {
 public:
  FormatError(const std::string& path, const std::string& message)
      : std::invalid_argument(path + ": " + message), path_(path) {}
  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

/// Rationals are written as "p" or "p/q"; integers and decimal strings are
/// also accepted on input.
json to_json(const Rational& q);
Rational rational_from_json(const json& j, const std::string& path = "$");

/// [{coef, exps: [a1..am]}, ...]
json to_json(const Poly& p);
Poly poly_from_json(const json& j, std::size_t num_vars, const std::string& path = "$");

/// {num_vars, degree, components: [{indices (1-based), poly}]}
json to_json(const MultiVector& v);
MultiVector multivector_from_json(const json& j, const std::string& path = "$");

/// {num_vars, components: [poly, ...]}
json to_json(const OneForm& w);
OneForm oneform_from_json(const json& j, const std::string& path = "$");

/// {dim, arity, constants: [{indices (1-based), value: [rationals]}]}
json to_json(const NLieStructure& p);
NLieStructure nlie_from_json(const json& j, const std::string& path = "$");

/// {nabla, box}
json to_json(const JacobiOp& d);
JacobiOp jacobi_from_json(const json& j, const std::string& path = "$");

/// Rows of rationals.
json to_json(const RationalMatrix& m);
RationalMatrix matrix_from_json(const json& j, const std::string& path = "$");

/// {tensor, hamiltonians: [poly, ...]}
json to_json(const NambuSystem& sys);
NambuSystem nambu_system_from_json(const json& j, const std::string& path = "$");

/// Parses text; syntax errors become FormatError with the byte offset.
json parse(const std::string& text);
json read_file(const std::string& path);

}  // namespace nambu::io
