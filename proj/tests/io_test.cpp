#include <gtest/gtest.h>

#include <filesystem>

#include "nambu/io/json_io.hpp"
#include "nambu/npoisson/npoisson.hpp"
#include "support/algebras.hpp"
#include "support/random.hpp"

using namespace nambu;
using nambu::io::json;
using nambu::testing::Random;

namespace {

std::string data(const std::string& name) { return std::string(NAMBU_DATA_DIR) + "/" + name; }

std::string error_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const io::FormatError& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST(Json, PolyFormat) {
  Poly p = parse_poly("1/2 x1^2 x3 - 3 x2 + 7", 3);
  json j = io::to_json(p);
  ASSERT_TRUE(j.is_array());
  EXPECT_EQ(j.size(), 3u);
  EXPECT_EQ(j[0]["coef"], "7");
  EXPECT_EQ(j[0]["exps"], json({0, 0, 0}));
  EXPECT_EQ(io::poly_from_json(j, 3), p);
  EXPECT_EQ(io::poly_from_json(io::parse(R"([{"coef": 2, "exps": [1, 0]}, {"coef": "0.25", "exps": [0, 1]}])"), 2),
            parse_poly("2 x1 + 1/4 x2", 2));
}

TEST(Json, MultiVectorIsOneBased) {
  MultiVector v = MultiVector::basis(4, {0, 3}, Poly::variable(4, 2));
  json j = io::to_json(v);
  EXPECT_EQ(j["components"][0]["indices"], json({1, 4}));
  EXPECT_EQ(io::multivector_from_json(j), v);
}

TEST(Json, RoundTrips) {
  Random rng(2);
  for (int trial = 0; trial < 20; ++trial) {
    MultiVector v = rng.multivector(4, static_cast<std::size_t>(rng.integer(0, 4)), 2);
    EXPECT_EQ(io::multivector_from_json(io::parse(io::to_json(v).dump())), v);
    Poly p = rng.poly(3, 0, 3);
    EXPECT_EQ(io::poly_from_json(io::parse(io::to_json(p).dump()), 3), p);
    auto alg = nambu::testing::random_valid(rng, 3);
    EXPECT_EQ(io::nlie_from_json(io::parse(io::to_json(alg).dump())), alg);
    RationalMatrix m = rng.invertible_matrix(3);
    EXPECT_EQ(io::matrix_from_json(io::to_json(m)), m);
  }
  OneForm w{{Poly::variable(2, 1), Poly::constant(2, Rational(-2, 3))}};
  EXPECT_EQ(io::oneform_from_json(io::to_json(w)), w);
  JacobiOp d(MultiVector::basis(3, {0, 1}, Poly::variable(3, 2)), MultiVector::basis(3, {1}));
  EXPECT_EQ(io::jacobi_from_json(io::to_json(d)), d);
  NambuSystem sys{MultiVector::volume(3, 3), {Poly::variable(3, 0), Poly::variable(3, 1)}};
  auto back = io::nambu_system_from_json(io::to_json(sys));
  EXPECT_EQ(back.tensor, sys.tensor);
  EXPECT_EQ(back.hamiltonians, sys.hamiltonians);
  EXPECT_TRUE(io::poly_from_json(io::to_json(Poly(5)), 5).is_zero());
}

TEST(Json, ShippedFilesRoundTrip) {
  std::size_t seen = 0;
  for (const auto& entry : std::filesystem::directory_iterator(NAMBU_DATA_DIR)) {
    if (entry.path().extension() != ".json") continue;
    ++seen;
    json j = io::read_file(entry.path().string());
    SCOPED_TRACE(entry.path().filename().string());
    if (j.contains("constants")) {
      auto p = io::nlie_from_json(j);
      EXPECT_EQ(io::nlie_from_json(io::parse(io::to_json(p).dump())), p);
    } else if (j.contains("nabla")) {
      auto d = io::jacobi_from_json(j);
      EXPECT_EQ(io::jacobi_from_json(io::parse(io::to_json(d).dump())), d);
    } else if (j.contains("tensor")) {
      auto sys = io::nambu_system_from_json(j);
      auto again = io::nambu_system_from_json(io::parse(io::to_json(sys).dump()));
      EXPECT_EQ(again.tensor, sys.tensor);
      EXPECT_EQ(again.hamiltonians, sys.hamiltonians);
    } else {
      auto v = io::multivector_from_json(j);
      EXPECT_EQ(io::multivector_from_json(io::parse(io::to_json(v).dump())), v);
    }
  }
  EXPECT_GE(seen, 8u);
}

TEST(Json, ShippedFilesHaveExpectedContent) {
  EXPECT_EQ(io::nlie_from_json(io::read_file(data("atomic4.json"))), nambu::testing::atomic4());
  EXPECT_EQ(io::nlie_from_json(io::read_file(data("vector_product3.json"))), vector_product_algebra(3));
  EXPECT_FALSE(check_n_jacobi(io::nlie_from_json(io::read_file(data("broken3.json")))));
  EXPECT_EQ(io::multivector_from_json(io::read_file(data("witt_bivector.json"))), witt_bivector());
  auto spin = io::nambu_system_from_json(io::read_file(data("spin_system.json")));
  EXPECT_EQ(dynamics_field(spin), dynamics_field(spin_system({0, 0, 1}, 1)));
}

TEST(Json, ErrorsCarryLocation) {
  EXPECT_NE(error_of([] { io::parse("{\"dim\": 4,"); }).find("byte"), std::string::npos);
  EXPECT_NE(error_of([] { io::read_file(data("no_such_file.json")); }).find("cannot open"), std::string::npos);

  json bad_index = io::parse(R"({"dim": 3, "arity": 2, "constants": [{"indices": [1, 4], "value": ["0","0","1"]}]})");
  EXPECT_EQ(error_of([&] { io::nlie_from_json(bad_index); }).rfind("$.constants[0].indices[1]", 0), 0u);

  json short_value = io::parse(R"({"dim": 3, "arity": 2, "constants": [{"indices": [1, 2], "value": ["1"]}]})");
  EXPECT_EQ(error_of([&] { io::nlie_from_json(short_value); }).rfind("$.constants[0].value", 0), 0u);

  json bad_coef = io::parse(R"({"num_vars": 2, "degree": 1, "components": [{"indices": [1], "poly": [{"coef": "1/0", "exps": [0, 0]}]}]})");
  EXPECT_EQ(error_of([&] { io::multivector_from_json(bad_coef); }).rfind("$.components[0].poly[0].coef", 0), 0u);

  json missing = io::parse(R"({"num_vars": 2, "components": []})");
  EXPECT_NE(error_of([&] { io::multivector_from_json(missing); }).find("degree"), std::string::npos);

  json bad_pair = io::parse(R"({"nabla": {"num_vars": 2, "degree": 2, "components": []},
                               "box": {"num_vars": 2, "degree": 2, "components": []}})");
  EXPECT_THROW(io::jacobi_from_json(bad_pair), io::FormatError);
}
