#include <doctest.h>

#include <cmath>
#include <random>

#include "unipoly/parameter_search.hpp"
#include "unipoly/return_maps.hpp"

using namespace unipoly;

namespace {
const double kFibonacciC1 = -1.8705286321646448;  // frozen from fibonacci_parameter(2, 8)
}

TEST_CASE("nice interval validation") {
  PolynomialFamily fam(2, -1.0);
  double q = orientation_reversing_fixed_point(fam);
  CHECK_NOTHROW(make_nice_interval(fam, -q, 30));
  // An endpoint whose orbit re-enters is rejected: 0.2 maps into (-0.2, 0.2)
  // after a few steps for the Chebyshev map.
  PolynomialFamily cheb(2, -2.0);
  CHECK_THROWS_AS(make_nice_interval(cheb, 0.2, 30), Error);
}

TEST_CASE("nice point sequence") {
  SUBCASE("chebyshev starts at the fixed point") {
    auto seq = nice_point_sequence(PolynomialFamily(2, -2.0), 1);
    REQUIRE(!seq.points.empty());
    CHECK(seq.points[0] == doctest::Approx(1.0).epsilon(1e-12));
  }
  SUBCASE("strict nesting, niceness, and recorded depths") {
    PolynomialFamily fam(2, kFibonacciC1);
    auto seq = nice_point_sequence(fam, 6);
    REQUIRE(seq.points.size() == 7);
    double u0 = seq.points[0];
    for (size_t n = 1; n < seq.points.size(); ++n) {
      CHECK(seq.points[n] < seq.points[n - 1]);
      // Each point is a preimage of the fixed-point pair at its depth.
      double img = iterate(fam, seq.points[n], seq.depths[n]);
      CHECK(std::abs(std::abs(img) - u0) < 1e-7);
      // Minimality: no preimage of +-u0 strictly inside the previous
      // interval at lower depth (grid oracle).
      for (int k = 1; k < seq.depths[n]; ++k) {
        const int grid = 2000;
        bool found = false;
        double prev = seq.points[n - 1] * 0.5 / grid;
        double pf = iterate(fam, prev, k);
        for (int i = 1; i <= grid; ++i) {
          double x = seq.points[n - 1] * (i + 0.5) / grid;
          if (x >= seq.points[n - 1] * (1 - 1e-9)) break;
          double fx = iterate(fam, x, k);
          for (double t : {u0, -u0})
            if (((pf - t) > 0) != ((fx - t) > 0)) found = true;
          prev = x;
          pf = fx;
        }
        CHECK(!found);
      }
      // Niceness of each returned point.
      CHECK_NOTHROW(make_nice_interval(fam, seq.points[n], 10 * seq.depths[n]));
    }
  }
  SUBCASE("fibonacci cross-check at the shallow levels") {
    // The first two nice points are preimages of the previous one at the
    // closest-return depths S_1, S_2. (Deeper levels mix the breadth-first
    // and the chained constructions, which genuinely differ.)
    PolynomialFamily fam(2, kFibonacciC1);
    auto seq = nice_point_sequence(fam, 2);
    auto ret = closest_return_times(fam, 4);
    REQUIRE(seq.points.size() == 3);
    CHECK(std::abs(iterate(fam, seq.points[1], ret.times[1]) - seq.points[0]) < 1e-7);
    CHECK(std::abs(std::abs(iterate(fam, seq.points[2], ret.times[2])) - seq.points[1]) < 1e-7);
  }
  SUBCASE("renormalizable parameter stops the sequence") {
    auto seq = nice_point_sequence(PolynomialFamily(2, -1.0), 4);
    REQUIRE(seq.stopped_because.has_value());
    CHECK((*seq.stopped_because == errc::renormalizable ||
           *seq.stopped_because == errc::periodic_attractor));
  }
  SUBCASE("attracting cycle is reported") {
    // c1 = -0.5: attracting fixed point.
    auto seq = nice_point_sequence(PolynomialFamily(2, -0.5), 4);
    REQUIRE(seq.stopped_because.has_value());
    CHECK(*seq.stopped_because == errc::periodic_attractor);
  }
}

TEST_CASE("principal nest and return times at the fibonacci parameter") {
  PolynomialFamily fam(2, kFibonacciC1);
  auto nest = principal_nest(fam, 6);
  REQUIRE(nest.points.size() == 7);
  // Return times of the nest are the closest-return times shifted by two.
  auto seq = closest_return_times(fam, 9);
  for (size_t n = 0; n < nest.return_times.size(); ++n)
    CHECK(nest.return_times[n] == seq.times[n + 2]);
}

TEST_CASE("first return map") {
  SUBCASE("superstable period two: single full central branch") {
    PolynomialFamily fam(2, -1.0);
    double q = orientation_reversing_fixed_point(fam);
    auto W = make_nice_interval(fam, -q, 20);
    auto rms = first_return_map(fam, W, 512);
    REQUIRE(rms.central_index >= 0);
    const Branch& c = rms.central();
    CHECK(c.iterate == 2);
    CHECK(c.domain.hi == doctest::Approx(-q).epsilon(1e-9));
    auto rc = classify_return(rms);
    CHECK(rc.high);
    CHECK(rc.central);
  }
  SUBCASE("fibonacci level: branch structure") {
    PolynomialFamily fam(2, kFibonacciC1);
    auto nest = principal_nest(fam, 3);
    auto W = make_nice_interval(fam, nest.points[1], 30);
    auto rms = first_return_map(fam, W, 4096);
    REQUIRE(rms.central_index >= 0);
    CHECK(rms.central().iterate == 5);
    CHECK(rms.central().domain.hi == doctest::Approx(nest.points[2]).epsilon(1e-9));
    SUBCASE("central domain is symmetric") {
      CHECK(rms.central().domain.lo == doctest::Approx(-rms.central().domain.hi));
    }
    SUBCASE("branch domains are pairwise disjoint") {
      for (size_t i = 0; i < rms.branches.size(); ++i)
        for (size_t j = i + 1; j < rms.branches.size(); ++j) {
          double overlap = std::min(rms.branches[i].domain.hi, rms.branches[j].domain.hi) -
                           std::max(rms.branches[i].domain.lo, rms.branches[j].domain.lo);
          CHECK(overlap <= 1e-12);
        }
    }
    SUBCASE("monotone branches map onto the base") {
      for (const auto& b : rms.branches) {
        if (b.kind != BranchKind::monotone) continue;
        double a = iterate(fam, b.domain.lo, b.iterate);
        double bb = iterate(fam, b.domain.hi, b.iterate);
        CHECK(std::abs(std::abs(a) - W.endpoint) < 1e-9);
        CHECK(std::abs(std::abs(bb) - W.endpoint) < 1e-9);
        CHECK(std::abs((a < bb ? a : bb) + W.endpoint) < 1e-9);
      }
    }
    SUBCASE("return-time minimality on sampled points") {
      std::mt19937 rng(77);
      std::uniform_real_distribution<double> d(0.0, 1.0);
      for (int trial = 0; trial < 1000; ++trial) {
        const Branch& b = rms.branches[trial % rms.branches.size()];
        double x = b.domain.lo + b.domain.length() * (0.01 + 0.98 * d(rng));
        for (int j = 1; j < b.iterate; ++j)
          CHECK(std::abs(iterate(fam, x, j)) >= W.endpoint * (1 - 1e-12));
        CHECK(std::abs(iterate(fam, x, b.iterate)) <= W.endpoint * (1 + 1e-12));
      }
    }
    SUBCASE("nice endpoints stay out") {
      double w = W.endpoint;
      double x = w;
      for (int i = 1; i <= 40; ++i) {
        x = evaluate(fam, x);
        CHECK(std::abs(x) >= w * (1 - 1e-9));
      }
    }
  }
  SUBCASE("budget exhaustion") {
    PolynomialFamily fam(2, kFibonacciC1);
    auto nest = principal_nest(fam, 4);
    auto W = make_nice_interval(fam, nest.points[4], 30);
    CHECK_THROWS_AS(first_return_map(fam, W, 3), Error);
  }
}

TEST_CASE("return classification variants") {
  SUBCASE("low return exists at some quadratic parameter") {
    // Scan a deterministic grid for a level-0 low return.
    bool found_low = false;
    for (double c1 = -1.55; c1 > -1.70 && !found_low; c1 -= 0.002) {
      PolynomialFamily fam(2, c1);
      try {
        double q = orientation_reversing_fixed_point(fam);
        auto W = make_nice_interval(fam, -q, 20);
        auto rms = first_return_map(fam, W, 2048);
        auto rc = classify_return(rms);
        if (!rc.high) found_low = true;
      } catch (const Error&) {
        continue;
      }
    }
    CHECK(found_low);
  }
  SUBCASE("fibonacci levels alternate non-central returns") {
    PolynomialFamily fam(2, kFibonacciC1);
    auto nest = principal_nest(fam, 4);
    for (int n = 0; n < 3; ++n) {
      auto W = make_nice_interval(fam, nest.points[n], 20);
      auto rms = first_return_map(fam, W, 4096);
      auto rc = classify_return(rms);
      CHECK(rc.high);
      CHECK(!rc.central);
    }
  }
}

TEST_CASE("renormalization detection") {
  SUBCASE("feigenbaum cascade periods") {
    double c1 = cascade_limit(2, 6);
    auto levels = detect_renormalization(PolynomialFamily(2, c1), 32);
    REQUIRE(levels.size() == 5);
    int expect = 2;
    for (const auto& l : levels) {
      CHECK(l.period == expect);
      expect *= 2;
    }
  }
  SUBCASE("superstable period three") {
    auto levels = detect_renormalization(PolynomialFamily(2, -1.754877666), 8);
    REQUIRE(levels.size() == 1);
    CHECK(levels[0].period == 3);
    CHECK(!levels[0].half_period_renormalizable);
  }
  SUBCASE("chebyshev is not renormalizable") {
    CHECK(detect_renormalization(PolynomialFamily(2, -2.0), 16).empty());
  }
  SUBCASE("invariance of the detected intervals") {
    double c1 = cascade_limit(2, 5);
    PolynomialFamily fam(2, c1);
    for (const auto& l : detect_renormalization(fam, 16)) {
      // f^period maps [-u,u] into itself; interior iterates stay out.
      double u = l.endpoint;
      for (double x = -u; x <= u; x += u / 17) {
        double y = iterate(fam, x, l.period);
        CHECK(y >= -u * (1 + 1e-9));
        CHECK(y <= u * (1 + 1e-9));
      }
    }
  }
}

TEST_CASE("closest return times") {
  SUBCASE("fibonacci numbers at the fibonacci parameter") {
    auto seq = closest_return_times(PolynomialFamily(2, kFibonacciC1), 8);
    REQUIRE(seq.times.size() == 8);
    CHECK(seq.times == std::vector<int>{1, 2, 3, 5, 8, 13, 21, 34});
    CHECK(is_fibonacci_prefix(seq.times, 8));
    SUBCASE("strictly increasing") {
      for (size_t i = 1; i < seq.times.size(); ++i) CHECK(seq.times[i] > seq.times[i - 1]);
    }
    SUBCASE("distances decrease") {
      for (size_t i = 1; i < seq.distances.size(); ++i)
        CHECK(seq.distances[i] < seq.distances[i - 1]);
    }
    SUBCASE("recursion persists to depth once the prefix matches") {
      auto deep = closest_return_times(PolynomialFamily(2, kFibonacciC1), 10);
      REQUIRE(is_fibonacci_prefix(deep.times, 5));
      CHECK(is_fibonacci_prefix(deep.times, static_cast<int>(deep.times.size())));
    }
  }
  SUBCASE("doubling cascade gives powers of two") {
    double c1 = cascade_limit(2, 6);
    auto seq = closest_return_times(PolynomialFamily(2, c1), 6);
    REQUIRE(seq.times.size() >= 5);
    CHECK(seq.times[0] == 1);
    CHECK(seq.times[1] == 2);
    CHECK(seq.times[2] == 4);
    CHECK(seq.times[3] == 8);
    CHECK(seq.times[4] == 16);
    // Consistency with the detected renormalization periods.
    auto levels = detect_renormalization(PolynomialFamily(2, c1), 16);
    REQUIRE(levels.size() >= 3);
    CHECK(levels[0].period == 2);
    CHECK(levels[1].period == 4);
    CHECK(levels[2].period == 8);
  }
}
