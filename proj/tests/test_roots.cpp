#include <doctest.h>

#include <cmath>

#include "unipoly/roots.hpp"

using namespace unipoly;

TEST_CASE("bisect_root") {
  double r = bisect_root([](double x) { return x * x - 2.0; }, 0.0, 2.0);
  CHECK(r == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
  CHECK_THROWS_AS(bisect_root([](double x) { return x * x + 1.0; }, -1.0, 1.0), Error);
}

TEST_CASE("bisect_predicate") {
  double b = bisect_predicate([](double x) { return x < 0.73; }, 0.0, 1.0);
  CHECK(b == doctest::Approx(0.73).epsilon(1e-10));
}

TEST_CASE("scan_roots finds simple roots") {
  auto roots = scan_roots([](double x) { return (x - 1.0) * (x - 2.0) * (x - 3.5); }, 0.0, 5.0);
  REQUIRE(roots.size() == 3);
  CHECK(roots[0] == doctest::Approx(1.0));
  CHECK(roots[1] == doctest::Approx(2.0));
  CHECK(roots[2] == doctest::Approx(3.5));
}

TEST_CASE("scan_roots reports tangencies twice") {
  auto roots = scan_roots([](double x) { return (x - 1.5) * (x - 1.5); }, 0.0, 3.0);
  REQUIRE(roots.size() == 2);
  CHECK(roots[0] == doctest::Approx(1.5).epsilon(1e-6));
  CHECK(roots[1] == doctest::Approx(1.5).epsilon(1e-6));
}

TEST_CASE("scan_roots leaves near-misses alone") {
  auto roots = scan_roots([](double x) { return (x - 1.5) * (x - 1.5) + 1e-3; }, 0.0, 3.0);
  CHECK(roots.empty());
}
