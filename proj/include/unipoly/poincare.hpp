#pragma once

#include <vector>

#include "unipoly/common.hpp"
#include "unipoly/core.hpp"

namespace unipoly {

// D(T; angle): union of two discs symmetric in the real axis meeting R
// exactly in T with external angle `angle`; angle = pi/2 is the round disc
// on T as a diameter.
struct PoincareNeighborhood {
  RealInterval interval;
  double angle = M_PI / 2;

  PoincareNeighborhood() = default;
  PoincareNeighborhood(const RealInterval& T, double theta) : interval(T), angle(theta) {
    if (!(theta > 0.0 && theta <= M_PI / 2))
      throw Error(errc::domain_error, "external angle must lie in (0, pi/2]");
  }
};

// Boundary parametrization of the upper arc, normalized so alpha -> 0+ gives
// the right endpoint. alpha must lie in (0, 2 pi - angle).
cplx boundary_point(const PoincareNeighborhood& D, double alpha);

// Signed Euclidean margin: positive inside, negative outside, 0 on the
// boundary (distance to the nearer bounding circle).
double contains_margin(const PoincareNeighborhood& D, cplx z);
inline bool contains(const PoincareNeighborhood& D, cplx z) { return contains_margin(D, z) > 0; }

// Intersection in the upper half plane of the squared boundary of
// D((-1,1);theta) with the boundary of D((-K,1);theta); tends to K^2 as
// theta -> 0. Throws NoIntersection when the residual check fails.
cplx power_image_crossing(double K, double theta);

// Logarithmic spiral arc z(L) = amplitude * exp(L cot(angle)) * exp(iL).
struct SpiralArc {
  double amplitude = 1.0;
  double angle = 0.1;
  double lambda_lo = 0.0;
  double lambda_hi = M_PI;
};

cplx spiral_point(const SpiralArc& arc, double lambda);

// Threshold amplitude K / exp(2(K-1)/(K+1)): above it the spiral arc over
// [0, pi] avoids D((-K,1);theta) for small theta.
double spiral_avoidance_amplitude(double K);

// Nonnegative roots x of A exp{x(1+x/(K+1))/(1+x)} = 1+x (0 or 2 of them;
// a double root is listed twice).
std::vector<double> spiral_crossing_limits(double A, double K);

// Roots B in [0, 2(K0-1)] of
//   1 + ((K0+1)/2) B = A {1 + (1/l)((K0+1)/2) B(1+B/2)/(1+((K0+1)/2)B)}^l.
std::vector<double> sector_crossing_roots(double A, double K0, int degree);

// The quartic whose lack of roots >= 1 rules out a boundary crossing of the
// degree-two cover: y^4 - (4.12/1.47)y^3 + (2.12/1.47)y^2 + (4.12/1.47)y
// - 3.12/1.47^2.
double crossing_quartic(double y);

struct QuarticReport {
  std::vector<double> roots;             // real roots of the quartic
  std::vector<double> inflection_roots;  // roots of its second derivative
  double value_at_one = 0.0;
};
QuarticReport crossing_quartic_report();

// Ordered polyline, optionally closed.
struct SampledCurve {
  std::vector<cplx> points;
  bool closed = false;
};

// Tests whether every sample lies in the power image of the sector
// 0 <= arg <= pi/degree of one of the given neighborhoods, by folding the
// degree-th root into the sector. Margins are measured in the root plane.
struct SectorContainment {
  bool contained = false;
  double min_margin = 0.0;
};
SectorContainment sector_image_contains(int degree, const std::vector<PoincareNeighborhood>& bases,
                                        const SampledCurve& inner);

}  // namespace unipoly
