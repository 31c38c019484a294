#pragma once

#include <vector>

#include "unipoly/common.hpp"
#include "unipoly/core.hpp"
#include "unipoly/poincare.hpp"
#include "unipoly/real_bounds.hpp"
#include "unipoly/return_maps.hpp"

namespace unipoly {

enum class OmegaVariant { round_disc, quadratic, large_degree, general, doubling };

const char* omega_variant_name(OmegaVariant v);

// Candidate range of a polynomial-like extension: a union of Poincare
// neighborhoods symmetric under conjugation and z -> -z.
struct OmegaDomain {
  std::vector<PoincareNeighborhood> components;
  OmegaVariant variant = OmegaVariant::general;
  double trace_radius = 0.0;  // real trace is (-trace_radius, trace_radius)
};

// Builds the variant's domain over the level's interval V = (-v, v):
//  - round_disc: round disc of radius |f^s(u~)| from the expansion search
//    (degree >= 4);
//  - quadratic: D(V;theta) with round discs over I = (0, 6v/5) and -I;
//  - large_degree: D(V;theta), D(I;theta), D(-I;theta), I = (0, v(1+log(1.1)/l));
//  - general: same with I = (0, 1.07^{1/l} v);
//  - doubling: same with I = (0, 1.09^{1/2} v).
OmegaDomain build_omega(const PolynomialFamily& fam, const LevelData& level, OmegaVariant variant,
                        double theta, const ExpansionPoint* expansion = nullptr);

// Signed margin into the union (positive inside).
double omega_margin(const OmegaDomain& omega, cplx z);

// Ordered closed polyline of the union boundary.
SampledCurve omega_boundary(const OmegaDomain& omega, int samples);

// Pullback f^{-1} o F of the domain boundary, where F inverts f^{s-1} along
// the critical value orbit; the result bounds the candidate central domain.
// Throws ExtensionTooShort when the real trace is not inside the monotone
// extension of F.
SampledCurve pullback_boundary(const PolynomialFamily& fam, const OmegaDomain& omega,
                               const LevelData& level, int samples);

struct ContainmentReport {
  bool contained = false;
  double min_margin = 0.0;
  double modulus_lower_bound = 0.0;
  int samples = 0;
};

ContainmentReport check_containment(const SampledCurve& curve, const OmegaDomain& omega);

// Pullback plus containment with the sampling density doubled until the
// verdict is stable across two consecutive refinements.
struct StableContainment {
  ContainmentReport report;
  int samples_used = 0;
};
StableContainment check_containment_stable(const PolynomialFamily& fam, const OmegaDomain& omega,
                                           const LevelData& level, int base_samples = 4096,
                                           int max_doublings = 4);

// A region bounded by a sampled closed curve plus its first-return iterate.
struct PolyLikeDomainPiece {
  SampledCurve boundary;
  int iterate = 0;
  RealInterval trace{-1.0, 1.0};
};

struct PolyLikeMap {
  PolynomialFamily fam;
  OmegaDomain range;
  PolyLikeDomainPiece central;  // degree-fold piece
  std::vector<PolyLikeDomainPiece> off_central;
  double fitin_ratio = 0.0;  // |u^f_hat - c1| / |v^f - c1|, must be < 1
};

// Assembles the polynomial-like map: verifies the fit-in condition for the
// central branch, pulls the range back through every off-central branch, and
// checks that the real traces are pairwise disjoint.
PolyLikeMap assemble_polylike(const PolynomialFamily& fam, const LevelData& level,
                              const OmegaDomain& omega, const ReturnMapStructure& rms,
                              int samples);

// Fit-in ratio alone (|u^f_hat - c1| / |v^f - c1|) without assembling.
double fitin_ratio(const PolynomialFamily& fam, const LevelData& level);

struct Membership {
  bool inside = false;
  int escape_step = -1;    // step at which the orbit left the domains
  bool budget_limited = false;
};

// Iterates the polynomial-like map; escape means leaving every domain piece.
Membership filled_julia_membership(const PolyLikeMap& plm, cplx z, int max_iter);

// Winding-number point-in-curve test (nonzero rule).
bool curve_contains(const SampledCurve& curve, cplx z);

}  // namespace unipoly
