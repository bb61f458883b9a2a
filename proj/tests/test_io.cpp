// Grid/complex parsing and deterministic float formatting.

#include <cmath>
#include <complex>

#include "doctest.h"
#include "ptscatter/io.hpp"

using namespace ptscatter;
using C = std::complex<double>;

TEST_CASE("grid parsing") {
  const auto g = parse_grid("0.5:2.5:5");
  CHECK(g.min == 0.5);
  CHECK(g.max == 2.5);
  CHECK(g.count == 5);
  const auto v = g.values();
  REQUIRE(v.size() == 5);
  CHECK(v.front() == 0.5);
  CHECK(v.back() == 2.5);
  CHECK(v[2] == doctest::Approx(1.5));

  const auto single = parse_grid("1.25:9:1").values();
  REQUIRE(single.size() == 1);
  CHECK(single[0] == 1.25);

  CHECK_THROWS_AS(parse_grid("1:2"), std::invalid_argument);
  CHECK_THROWS_AS(parse_grid("1:2:0"), std::invalid_argument);
  CHECK_THROWS_AS(parse_grid("2:1:5"), std::invalid_argument);
  CHECK_THROWS_AS(parse_grid("a:b:c"), std::invalid_argument);
  CHECK_THROWS_AS(parse_grid(""), std::invalid_argument);
  CHECK_THROWS_AS(parse_grid("1:2:3:4"), std::invalid_argument);
}

TEST_CASE("complex literal parsing") {
  CHECK(parse_complex("1.5") == C(1.5, 0.0));
  CHECK(parse_complex("-2") == C(-2.0, 0.0));
  CHECK(parse_complex("2i") == C(0.0, 2.0));
  CHECK(parse_complex("-3.2i") == C(0.0, -3.2));
  CHECK(parse_complex("i") == C(0.0, 1.0));
  CHECK(parse_complex("-i") == C(0.0, -1.0));
  CHECK(parse_complex("1+2i") == C(1.0, 2.0));
  CHECK(parse_complex("1-2i") == C(1.0, -2.0));
  CHECK(parse_complex("-0.5+0.25i") == C(-0.5, 0.25));
  CHECK(parse_complex("3+i") == C(3.0, 1.0));
  CHECK(parse_complex("3-i") == C(3.0, -1.0));
  // Exponent signs must not split the literal.
  CHECK(parse_complex("1e-3") == C(1e-3, 0.0));
  CHECK(parse_complex("1e-3+2e-4i") == C(1e-3, 2e-4));
  CHECK_THROWS_AS(parse_complex(""), std::invalid_argument);
  CHECK_THROWS_AS(parse_complex("abc"), std::invalid_argument);
  CHECK_THROWS_AS(parse_complex("1+2j"), std::invalid_argument);
}

TEST_CASE("17-significant-digit formatting is deterministic and lossless") {
  CHECK(format_g17(1.0) == "1");
  CHECK(format_g17(0.5) == "0.5");
  CHECK(format_g17(-0.0) == "-0");
  for (double x : {3.141592653589793, 1e-300, -2.2250738585072014e-308, 123456.78901234567}) {
    const std::string s = format_g17(x);
    CHECK(std::stod(s) == x);  // round trip
    CHECK(format_g17(x) == s);  // stable
  }
}
