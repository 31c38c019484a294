#include <doctest.h>

#include <cmath>
#include <random>

#include "unipoly/poincare.hpp"

using namespace unipoly;

TEST_CASE("boundary parametrization") {
  PoincareNeighborhood D(RealInterval(-1.0, 1.0), 0.4);
  SUBCASE("anchored at the right endpoint") {
    cplx z = boundary_point(D, 1e-9);
    CHECK(std::abs(z - cplx(1.0, 0.0)) < 1e-7);
  }
  SUBCASE("the round disc boundary is the unit circle") {
    PoincareNeighborhood R(RealInterval(-1.0, 1.0), M_PI / 2);
    for (double a : {0.3, 1.0, 2.0, 3.0}) {
      CHECK(std::abs(boundary_point(R, a)) == doctest::Approx(1.0).epsilon(1e-12));
    }
  }
  SUBCASE("external angle at the endpoint") {
    double theta = 0.4;
    cplx z0 = boundary_point(D, 1e-6);
    cplx z1 = boundary_point(D, 2e-6);
    double ang = std::arg(z1 - z0);
    // The upper arc leaves the right endpoint at angle theta with the axis.
    CHECK(std::abs(ang - theta) < 1e-4);
  }
  SUBCASE("boundary points have zero margin") {
    // The union boundary is the arc range (0, 2 pi - 2 theta).
    for (double a : {0.2, 1.0, 2.5, 2 * M_PI - 2 * 0.4 - 0.05}) {
      cplx z = boundary_point(D, a);
      CHECK(std::abs(contains_margin(D, z)) < 1e-12);
    }
  }
  SUBCASE("parameter range is validated") {
    CHECK_THROWS_AS(boundary_point(D, -0.1), Error);
    CHECK_THROWS_AS(boundary_point(D, 2 * M_PI), Error);
  }
}

TEST_CASE("containment margins") {
  PoincareNeighborhood D(RealInterval(-0.5, 1.5), 0.3);
  CHECK(contains(D, cplx(0.5, 0.0)));       // midpoint
  CHECK(!contains(D, cplx(2.0, 0.0)));      // real point outside the interval
  CHECK(!contains(D, cplx(-0.75, 0.0)));
  SUBCASE("conjugation symmetry") {
    std::mt19937 rng(5);
    std::uniform_real_distribution<double> d(-3.0, 3.0);
    for (int i = 0; i < 2000; ++i) {
      cplx z(d(rng), d(rng));
      CHECK(contains_margin(D, z) == doctest::Approx(contains_margin(D, std::conj(z))).epsilon(1e-14));
    }
  }
  SUBCASE("angle monotonicity") {
    PoincareNeighborhood small(RealInterval(-1.0, 1.0), 1.2);
    PoincareNeighborhood big(RealInterval(-1.0, 1.0), 0.4);
    for (double a = 0.05; a < 2 * M_PI - 1.25; a += 0.1) {
      cplx z = boundary_point(small, a);
      CHECK(contains_margin(big, z) > 0.0);
    }
  }
}

TEST_CASE("power image crossing") {
  SUBCASE("tends to the right endpoint as K -> 1") {
    cplx z = power_image_crossing(1.0 + 1e-9, 0.01);
    CHECK(std::abs(z - cplx(1.0, 0.0)) < 1e-6);
  }
  SUBCASE("limit K^2") {
    cplx z = power_image_crossing(1.5, 1e-3);
    CHECK(std::abs(z - cplx(2.25, 0.0)) < 1e-2);
  }
  SUBCASE("lies on both curves") {
    double K = 1.5, theta = 1e-3;
    cplx z1 = power_image_crossing(K, theta);
    // On the boundary of D((-K,1);theta):
    PoincareNeighborhood DK(RealInterval(-K, 1.0), theta);
    CHECK(std::abs(contains_margin(DK, z1)) < 1e-10);
    // And on the squared boundary of D((-1,1);theta): its square root with
    // positive imaginary part lies on that boundary.
    cplx z2 = std::sqrt(z1);
    PoincareNeighborhood D1(RealInterval(-1.0, 1.0), theta);
    CHECK(std::abs(contains_margin(D1, z2)) < 1e-10);
  }
  SUBCASE("monotone convergence to K^2") {
    for (double K : {1.2, 1.5, 2.0}) {
      double prev = 1e300;
      for (double theta : {1e-1, 1e-2, 1e-3}) {
        double err = std::abs(power_image_crossing(K, theta) - cplx(K * K, 0.0));
        CHECK(err < prev);
        prev = err;
      }
    }
  }
}

TEST_CASE("spiral arc") {
  SpiralArc arc{1.3, 0.3, 0.0, 6.0};
  CHECK(std::abs(spiral_point(arc, 0.0) - cplx(1.3, 0.0)) < 1e-15);
  SUBCASE("modulus grows strictly") {
    double prev = 0.0;
    for (double lam = 0.0; lam <= 6.0; lam += 0.1) {
      double r = std::abs(spiral_point(arc, lam));
      CHECK(r > prev);
      prev = r;
    }
  }
  SUBCASE("power image of the disc boundary approaches the spiral") {
    const int l = 512;
    const double theta = 0.3;
    PoincareNeighborhood D(RealInterval(-1.0, 1.0), theta);
    SpiralArc unit{1.0, theta, 0.0, 3.0};
    for (double lam = 0.1; lam <= 2.0 + 1e-12; lam += 0.1) {
      // Boundary point with argument lam / l, then its l-th power.
      double lo = 1e-9, hi = M_PI;
      for (int i = 0; i < 200; ++i) {
        double mid = 0.5 * (lo + hi);
        (std::arg(boundary_point(D, mid)) < lam / l ? lo : hi) = mid;
      }
      cplx z = boundary_point(D, 0.5 * (lo + hi));
      cplx sp = spiral_point(unit, lam);
      CHECK(std::abs(pow_int(z, l) - sp) / std::abs(sp) < 1e-2);
    }
  }
}

TEST_CASE("spiral avoidance amplitude") {
  CHECK(spiral_avoidance_amplitude(2.2) == doctest::Approx(1.0392).epsilon(1e-3));
  CHECK(spiral_avoidance_amplitude(2.2) < 1.1);
  CHECK(spiral_avoidance_amplitude(1.0) == doctest::Approx(1.0));
  CHECK(spiral_avoidance_amplitude(2.0) == doctest::Approx(2.0 / std::exp(2.0 / 3.0)).epsilon(1e-12));

  SUBCASE("sampled spiral misses or meets the neighborhood accordingly") {
    double K = 1.8, theta = 1e-3;
    PoincareNeighborhood DK(RealInterval(-K, 1.0), theta);
    double astar = spiral_avoidance_amplitude(K);
    auto min_margin = [&](double A) {
      SpiralArc arc{A, theta, 0.0, M_PI};
      double worst = -1e300;
      for (int i = 0; i <= 4096; ++i)
        worst = std::max(worst, contains_margin(DK, spiral_point(arc, M_PI * i / 4096.0)));
      return worst;  // positive when some sample enters
    };
    CHECK(min_margin(astar * 1.01) < 0.0);
    CHECK(min_margin(astar * 0.99) > 0.0);
  }
}

TEST_CASE("limiting crossing equation") {
  SUBCASE("double root at K-1 for the threshold amplitude") {
    for (double K : {1.5, 2.0, 3.0}) {
      auto roots = spiral_crossing_limits(spiral_avoidance_amplitude(K), K);
      REQUIRE(roots.size() == 2);
      CHECK(roots[0] == doctest::Approx(K - 1.0).epsilon(1e-6));
      CHECK(roots[1] == doctest::Approx(K - 1.0).epsilon(1e-6));
    }
  }
  SUBCASE("two roots near amplitude one, none for large amplitude") {
    CHECK(spiral_crossing_limits(1.001, 2.0).size() == 2);
    CHECK(spiral_crossing_limits(10.0, 2.0).empty());
  }
  SUBCASE("root count parity") {
    std::mt19937 rng(31);
    std::uniform_real_distribution<double> dk(1.2, 3.0);
    std::uniform_real_distribution<double> da(1.0001, 4.0);
    for (int i = 0; i < 200; ++i) {
      double K = dk(rng), A = da(rng);
      if (std::abs(A - spiral_avoidance_amplitude(K)) < 1e-6) continue;
      CHECK(spiral_crossing_limits(A, K).size() % 2 == 0);
    }
  }
}

TEST_CASE("sector crossing roots") {
  SUBCASE("no roots at the chosen constants") {
    CHECK(sector_crossing_roots(1.07, 1.52, 4).empty());
  }
  SUBCASE("threshold amplitude places a root at the interval end") {
    auto roots = sector_crossing_roots(1.05835, 1.52, 4);
    REQUIRE(!roots.empty());
    CHECK(roots.front() == doctest::Approx(1.04).epsilon(1e-3));
  }
  SUBCASE("B = 0 is a root exactly at amplitude 1") {
    auto roots = sector_crossing_roots(1.0 + 1e-13, 1.52, 4);
    bool at_zero = !roots.empty() && std::abs(roots.front()) < 1e-6;
    CHECK(at_zero);
  }
}

TEST_CASE("crossing quartic") {
  auto rep = crossing_quartic_report();
  REQUIRE(rep.inflection_roots.size() == 2);
  CHECK(rep.inflection_roots[0] == doctest::Approx(0.2000905878).epsilon(1e-6));
  CHECK(rep.inflection_roots[1] == doctest::Approx(1.201269956).epsilon(1e-6));
  for (double r : rep.roots) CHECK(r < 1.0);
  CHECK(rep.value_at_one > 0.0);
  CHECK(rep.value_at_one == doctest::Approx(0.9983).epsilon(1e-3));
  CHECK(crossing_quartic(100.0) > 0.0);  // leading coefficient
}

TEST_CASE("sector image containment") {
  SUBCASE("degree-two image covers the rescaled neighborhood") {
    // D((-3.12,1);theta) inside P_2(D((-sqrt(1.47), sqrt(1.47));theta)).
    double theta = 0.05;
    PoincareNeighborhood inner_region(RealInterval(-3.12, 1.0), theta);
    double a = std::sqrt(1.47);
    PoincareNeighborhood base(RealInterval(-a, a), theta);
    SampledCurve samples;
    for (int i = 1; i < 4096; ++i)
      samples.points.push_back(boundary_point(inner_region, (2 * M_PI - 2 * theta) * i / 4096.0));
    auto rep = sector_image_contains(2, {base}, samples);
    CHECK(rep.contained);
    CHECK(rep.min_margin > 0.0);
  }
  SUBCASE("sector images grow with the degree") {
    // Samples of the boundary of P_2(Pi_2(theta)) lie in P_4(Pi_4(theta)).
    double theta = 0.2;
    PoincareNeighborhood D1(RealInterval(-1.0, 1.0), theta);
    SampledCurve samples;
    for (int i = 1; i < 2048; ++i) {
      double a = (2 * M_PI - 2 * theta) * i / 2048.0;
      cplx z = boundary_point(D1, a);
      if (std::arg(z) < 0 || std::arg(z) > M_PI / 2) continue;
      samples.points.push_back(pow_int(z, 2) * 0.999);  // just inside the image
    }
    REQUIRE(samples.points.size() > 100);
    auto rep = sector_image_contains(4, {D1}, samples);
    CHECK(rep.contained);
  }
  SUBCASE("real segment containment") {
    double theta = 0.3;
    PoincareNeighborhood D1(RealInterval(-1.0, 1.0), theta);
    SampledCurve seg;
    for (int i = 0; i <= 100; ++i) seg.points.push_back(cplx(0.01 + 0.97 * i / 100.0, 0.0));
    auto rep = sector_image_contains(2, {D1}, seg);
    CHECK(rep.contained);
  }
}
