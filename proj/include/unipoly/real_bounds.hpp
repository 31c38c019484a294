#pragma once

#include "unipoly/common.hpp"
#include "unipoly/core.hpp"
#include "unipoly/return_maps.hpp"

namespace unipoly {

// Pair J strictly inside T with the flanking components L, R of T \ J.
struct CrossRatioFrame {
  RealInterval whole;  // T
  RealInterval inner;  // J

  CrossRatioFrame(const RealInterval& T, const RealInterval& J) : whole(T), inner(J) {
    if (!(J.lo > T.lo && J.hi < T.hi))
      throw Error(errc::domain_error, "inner interval must be strictly interior");
  }
  double left() const { return inner.lo - whole.lo; }
  double right() const { return whole.hi - inner.hi; }
};

// C(T,J) = |J||T| / (|L||R|), expanded by monotone negative-Schwarzian maps.
double cross_ratio(const CrossRatioFrame& frame);

// B(t,j) = |t||j| / (|l+j||r+j|); <= 1 for strictly interior j.
double overlap_cross_ratio(const RealInterval& t, const RealInterval& j);

// Upper bound for the inverse-branch length ratio |b-c1|/|a-c1| of a degree-
// ell fold given the normalized return position t and extendability y:
//   t (y^{1/l} - t^{1/l}) / (t^{1/l} y (1 - y^{1/l})),  0 < t < y < 1.
double inverse_branch_ratio_bound(int degree, double t, double y);

// Supremum of the bound over t: (1-1/l)^{l-1} / (l (1 - y^{1/l})).
double inverse_branch_ratio_sup(int degree, double y);

// Large-degree limit of the supremum: 1 / (e log(1/y)).
double inverse_branch_ratio_limit(double y);

// Extendability parameter from one-sided Koebe space: y = 1/(1+space).
inline double y_from_space(double space) { return 1.0 / (1.0 + space); }

// Largest interval adjacent to the given endpoint of `next_to` on which f^s
// is monotone (no critical preimage of order < s inside). direction > 0
// extends to the right of next_to.hi, direction < 0 to the left of
// next_to.lo. Throws EmptyInterval when the endpoint itself is precritical.
RealInterval maximal_monotone_interval(const PolynomialFamily& fam, const RealInterval& next_to,
                                       int iterate, int direction);

// Interval around c1 mapped diffeomorphically onto the target by f^{s-1};
// requires the monotone extension to cover the target and throws
// ExtensionTooShort otherwise.
RealInterval monotone_preimage_of(const PolynomialFamily& fam, const RealInterval& target,
                                  int s_minus_1);

// Level description shared by the bound measurements and the domain builder:
// V is the interval whose first return map is under study, `return_time` the
// iterate of its central branch, `central_radius` the central domain radius
// (equal to V's radius in the renormalizable case).
struct LevelData {
  RealInterval V;
  int return_time = 0;
  double central_radius = 0.0;
  bool renormalizable = false;
  bool doubling = false;   // also renormalizable of half the period
  bool high_return = false;
};

LevelData level_from_renormalization(const PolynomialFamily& fam, const RenormalizationLevel& lvl);

// Levels of the principal nest W_0 = (-|q|,|q|) together with their return
// classification.
std::vector<LevelData> levels_from_nest(const PolynomialFamily& fam, int depth,
                                        int budget = 100000);

enum class SpaceBoundClass { non_doubling_06, doubling_05, high_return_13 };

struct SpaceMeasurement {
  SpaceBoundClass bound_class;
  double ratio = 0.0;   // |L| / |f(V)|
  double bound = 0.0;   // the applicable lower bound from the class
  double margin = 0.0;  // ratio - bound
};

SpaceMeasurement measure_space_ratio(const PolynomialFamily& fam, const LevelData& level);

// Expansion-point search for the round-disc construction: a point beyond the
// periodic endpoint whose image moves a controlled step outward while the
// branch expands, and its mirrored preimage under f^{s-1}.
struct ExpansionPoint {
  double u_tilde = 0.0;
  double u_star = 0.0;
  double omega_radius = 0.0;        // |f^s(u_tilde)|: radius of the round domain
  double expansion_factor = 0.0;    // |f^s(u_tilde)| / |u_tilde|
  double c0_measured = 0.0;         // scaled one-sided monotone-extension space
  double c1_used = 0.0;             // step-size constant actually used
  double c2_measured = 0.0;         // degree^2 * (expansion_factor - 1)
  double ustar_ratio = 0.0;         // |u_star - c1| / |f(u) - c1|
};

ExpansionPoint find_expansion_point(const PolynomialFamily& fam, const LevelData& level);

// The pullback-ratio measurement of a renormalization-operator cascade: the
// central branch f^m of the final map, its base interval and central interval.
struct CascadeData {
  double base_radius = 0.0;     // T^0
  double central_radius = 0.0;  // T^{k+1}
  long central_iterate = 0;     // m
};

struct PullbackRatio {
  double image_len = 0.0;       // |R'| = (central radius)^degree
  double complement_len = 0.0;  // |I'|
  double ratio = 0.0;           // |R'|/|I'|
  double comparison = 0.0;      // (|T^{k+1}|/|T^0|)^degree
};

PullbackRatio central_pullback_ratio(const PolynomialFamily& fam, const CascadeData& data);

}  // namespace unipoly
