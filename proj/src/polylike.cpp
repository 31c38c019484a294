#include "unipoly/polylike.hpp"

#include <algorithm>
#include <cmath>

#include "unipoly/roots.hpp"

namespace unipoly {

const char* omega_variant_name(OmegaVariant v) {
  switch (v) {
    case OmegaVariant::round_disc: return "round-disc";
    case OmegaVariant::quadratic: return "quadratic";
    case OmegaVariant::large_degree: return "large-degree";
    case OmegaVariant::general: return "general";
    case OmegaVariant::doubling: return "doubling";
  }
  return "?";
}

OmegaDomain build_omega(const PolynomialFamily& fam, const LevelData& level, OmegaVariant variant,
                        double theta, const ExpansionPoint* expansion) {
  const double v = level.V.hi;
  OmegaDomain omega;
  omega.variant = variant;
  switch (variant) {
    case OmegaVariant::round_disc: {
      if (fam.degree < 4)
        throw Error(errc::variant_mismatch, "round-disc construction needs degree >= 4");
      if (expansion == nullptr)
        throw Error(errc::variant_mismatch, "round-disc construction needs the expansion point");
      double r = expansion->omega_radius;
      omega.components.emplace_back(symmetric_interval(r), M_PI / 2);
      omega.trace_radius = r;
      return omega;
    }
    case OmegaVariant::quadratic: {
      if (fam.degree != 2)
        throw Error(errc::variant_mismatch, "the flanked-disc construction is quadratic");
      double ie = 1.2 * v;
      omega.components.emplace_back(level.V, theta);
      omega.components.emplace_back(RealInterval(0.0, ie), M_PI / 2);
      omega.components.emplace_back(RealInterval(-ie, 0.0), M_PI / 2);
      omega.trace_radius = ie;
      return omega;
    }
    case OmegaVariant::large_degree:
    case OmegaVariant::general:
    case OmegaVariant::doubling: {
      double ie;
      if (variant == OmegaVariant::large_degree)
        ie = v * (1.0 + std::log(1.1) / fam.degree);
      else if (variant == OmegaVariant::general) {
        if (fam.degree < 4)
          throw Error(errc::variant_mismatch, "the general construction needs degree >= 4");
        ie = v * std::pow(1.07, 1.0 / fam.degree);
      } else {
        if (fam.degree != 2)
          throw Error(errc::variant_mismatch, "the doubling construction is quadratic");
        ie = v * std::sqrt(1.09);
      }
      omega.components.emplace_back(level.V, theta);
      omega.components.emplace_back(RealInterval(0.0, ie), theta);
      omega.components.emplace_back(RealInterval(-ie, 0.0), theta);
      omega.trace_radius = ie;
      return omega;
    }
  }
  throw Error(errc::variant_mismatch, "unknown variant");
}

double omega_margin(const OmegaDomain& omega, cplx z) {
  double m = -1e300;
  for (const auto& D : omega.components) m = std::max(m, contains_margin(D, z));
  return m;
}

namespace {

struct Circle {
  cplx center;
  double radius;
};

std::vector<Circle> omega_circles(const OmegaDomain& omega) {
  std::vector<Circle> cs;
  for (const auto& D : omega.components) {
    double half = 0.5 * D.interval.length();
    double mid = D.interval.mid();
    double r = half / std::sin(D.angle);
    double h = half / std::tan(D.angle);
    cs.push_back({cplx(mid, h), r});
    if (h > 1e-15 * half) cs.push_back({cplx(mid, -h), r});
  }
  return cs;
}

double angle_mod(double a) {
  while (a < 0) a += 2 * M_PI;
  while (a >= 2 * M_PI) a -= 2 * M_PI;
  return a;
}

}  // namespace

SampledCurve omega_boundary(const OmegaDomain& omega, int samples) {
  auto circles = omega_circles(omega);
  const int n = static_cast<int>(circles.size());

  // Visible arcs per circle: subtract the angular windows covered by the
  // other discs.
  struct ArcPiece {
    std::vector<cplx> pts;
  };
  std::vector<ArcPiece> pieces;
  const int per_circle = std::max(64, samples / std::max(1, n));

  for (int i = 0; i < n; ++i) {
    std::vector<std::pair<double, double>> covered;  // angle windows on circle i
    bool swallowed = false;
    for (int j = 0; j < n && !swallowed; ++j) {
      if (j == i) continue;
      double d = std::abs(circles[j].center - circles[i].center);
      double ri = circles[i].radius, rj = circles[j].radius;
      if (d + ri <= rj + 1e-15 * ri) swallowed = true;   // circle i entirely inside disc j
      else if (d >= ri + rj || d + rj <= ri) continue;   // no coverage
      else {
        double beta = std::arg(circles[j].center - circles[i].center);
        double cosd = (d * d + ri * ri - rj * rj) / (2 * d * ri);
        cosd = std::clamp(cosd, -1.0, 1.0);
        double delta = std::acos(cosd);
        covered.push_back({beta - delta, beta + delta});
      }
    }
    if (swallowed) continue;

    // Sample the circle densely and keep runs of uncovered points.
    const int m = per_circle * 4;
    std::vector<bool> vis(m);
    for (int k = 0; k < m; ++k) {
      double a = 2 * M_PI * k / m;
      bool cov = false;
      for (auto [lo, hi] : covered) {
        double rel = angle_mod(a - lo);
        if (rel < angle_mod(hi - lo)) cov = true;
      }
      vis[k] = !cov;
    }
    // Find runs (circular).
    int start = -1;
    for (int k = 0; k < m; ++k)
      if (!vis[k] && vis[(k + 1) % m]) start = (k + 1) % m;
    if (start < 0) {
      // Entire circle visible: a single closed circle (round-disc domain).
      ArcPiece p;
      for (int k = 0; k <= m; ++k) {
        double a = 2 * M_PI * k / m;
        p.pts.push_back(circles[i].center + circles[i].radius * std::exp(cplx(0, a)));
      }
      pieces.push_back(p);
      continue;
    }
    int k = start;
    while (true) {
      if (vis[k]) {
        ArcPiece p;
        while (vis[k]) {
          double a = 2 * M_PI * k / m;
          p.pts.push_back(circles[i].center + circles[i].radius * std::exp(cplx(0, a)));
          k = (k + 1) % m;
          if (k == start) break;
        }
        if (p.pts.size() >= 2) pieces.push_back(p);
        if (k == start) break;
      } else {
        k = (k + 1) % m;
        if (k == start) break;
      }
    }
  }

  SampledCurve curve;
  curve.closed = true;
  if (pieces.empty()) throw Error(errc::domain_error, "domain has no visible boundary");

  // Stitch pieces into one loop by nearest-endpoint matching.
  std::vector<bool> used(pieces.size(), false);
  std::vector<cplx> loop = pieces[0].pts;
  used[0] = true;
  for (size_t cnt = 1; cnt < pieces.size(); ++cnt) {
    double best = 1e300;
    size_t bi = 0;
    bool reversed = false;
    for (size_t i = 0; i < pieces.size(); ++i) {
      if (used[i]) continue;
      double df = std::abs(pieces[i].pts.front() - loop.back());
      double dr = std::abs(pieces[i].pts.back() - loop.back());
      if (df < best) {
        best = df;
        bi = i;
        reversed = false;
      }
      if (dr < best) {
        best = dr;
        bi = i;
        reversed = true;
      }
    }
    used[bi] = true;
    auto pts = pieces[bi].pts;
    if (reversed) std::reverse(pts.begin(), pts.end());
    loop.insert(loop.end(), pts.begin(), pts.end());
  }
  // Snap grid fuzz onto the axis, then insert the exact real crossings of
  // the union (the trace endpoints) so they survive into the pullbacks.
  for (auto& z : loop)
    if (std::abs(z.imag()) <= 1e-12 * omega.trace_radius) z = cplx(z.real(), 0.0);
  for (double corner_x : {omega.trace_radius, -omega.trace_radius}) {
    cplx corner(corner_x, 0.0);
    size_t best = 0;
    double best_cost = 1e300;
    bool present = false;
    for (size_t i = 0; i < loop.size(); ++i) {
      if (std::abs(loop[i] - corner) < 1e-12 * omega.trace_radius) present = true;
      cplx a = loop[i], b = loop[(i + 1) % loop.size()];
      double cost = std::abs(a - corner) + std::abs(corner - b) - std::abs(a - b);
      if (cost < best_cost) {
        best_cost = cost;
        best = i;
      }
    }
    if (!present) loop.insert(loop.begin() + best + 1, corner);
  }
  curve.points = std::move(loop);
  return curve;
}

namespace {

// Pullback chain of a target through n inverse steps, each seeded by the
// previous chain (curve continuation). chain[k] is the preimage after k steps.
std::vector<cplx> pullback_chain_seeded(const PolynomialFamily& fam, cplx target,
                                        const std::vector<cplx>& seed_chain) {
  std::vector<cplx> chain;
  chain.reserve(seed_chain.size());
  chain.push_back(target);
  cplx w = target;
  for (size_t k = 1; k < seed_chain.size(); ++k) {
    w = inverse_step_near(fam, w, seed_chain[k], 1e-12);
    chain.push_back(w);
  }
  return chain;
}

}  // namespace

SampledCurve pullback_boundary(const PolynomialFamily& fam, const OmegaDomain& omega,
                               const LevelData& level, int samples) {
  const int s = level.return_time;
  // The real trace must sit inside the monotone extension of the pullback.
  if (s >= 2) {
    RealInterval right = maximal_monotone_interval(
        fam, RealInterval(fam.critical_value - 1e-15, fam.critical_value + 1e-15), s - 1, +1);
    RealInterval left = maximal_monotone_interval(
        fam, RealInterval(fam.critical_value - 1e-15, fam.critical_value + 1e-15), s - 1, -1);
    auto fs1 = [&](double x) { return iterate(fam, x, s - 1); };
    double a = fs1(left.lo), b = fs1(right.hi);
    double lo = std::min(a, b), hi = std::max(a, b);
    if (!(lo < -omega.trace_radius && hi > omega.trace_radius))
      throw Error(errc::extension_too_short,
                  "real trace is not inside the monotone extension of the pullback");
  }

  SampledCurve boundary = omega_boundary(omega, samples);
  const auto& pts = boundary.points;
  if (pts.empty()) throw Error(errc::domain_error, "empty boundary");

  // Rotate the loop so it starts at the sample nearest the right real
  // endpoint of the trace, where the pullback is unambiguous and real.
  size_t start = 0;
  double best = 1e300;
  for (size_t i = 0; i < pts.size(); ++i) {
    double d = std::abs(pts[i] - cplx(omega.trace_radius, 0.0));
    if (d < best) {
      best = d;
      start = i;
    }
  }
  std::vector<cplx> loop(pts.begin() + start, pts.end());
  loop.insert(loop.end(), pts.begin(), pts.begin() + start);

  // Seed chain: the real pullback of the starting point along the critical
  // value orbit c_1, ..., c_s.
  std::vector<double> ref;
  {
    double x = fam.critical_value;
    for (int k = 0; k < s; ++k) {
      ref.push_back(x);
      x = evaluate(fam, x);
    }
  }
  std::vector<cplx> seed(ref.size());
  for (size_t k = 0; k < ref.size(); ++k) seed[k] = cplx(ref[ref.size() - 1 - k], 0.0);
  // seed[k] approximates the k-step preimage of a point near c_s.

  // Pull the loop back through F = (f^{s-1})^{-1} with per-sample seeding.
  std::vector<cplx> dprime;
  dprime.reserve(loop.size());
  std::vector<cplx> prev_chain = seed;
  for (size_t i = 0; i < loop.size(); ++i) {
    auto chain = pullback_chain_seeded(fam, loop[i], prev_chain);
    dprime.push_back(chain.back());
    prev_chain = chain;
  }

  // Last inverse step: continuous root tracking around the loop, repeated
  // `degree` times to close the full preimage curve around c.
  SampledCurve result;
  result.closed = true;
  cplx zeta;
  {
    cplx w0 = dprime.front() - fam.critical_value;
    double r = std::pow(std::abs(w0), 1.0 / fam.degree);
    double a = std::arg(w0) / fam.degree;
    zeta = cplx(r * std::cos(a), r * std::sin(a));
  }
  for (int sheet = 0; sheet < fam.degree; ++sheet) {
    for (size_t i = 0; i < dprime.size(); ++i) {
      zeta = inverse_step_near(fam, dprime[i], zeta, 1e-12);
      result.points.push_back(zeta);
    }
  }
  return result;
}

bool curve_contains(const SampledCurve& curve, cplx z) {
  // Nonzero winding rule on the closed polyline.
  const auto& p = curve.points;
  int winding = 0;
  size_t n = p.size();
  for (size_t i = 0; i < n; ++i) {
    cplx a = p[i], b = p[(i + 1) % n];
    if (a.imag() <= z.imag()) {
      if (b.imag() > z.imag() &&
          (b.real() - a.real()) * (z.imag() - a.imag()) -
                  (z.real() - a.real()) * (b.imag() - a.imag()) >
              0)
        ++winding;
    } else {
      if (b.imag() <= z.imag() &&
          (b.real() - a.real()) * (z.imag() - a.imag()) -
                  (z.real() - a.real()) * (b.imag() - a.imag()) <
              0)
        --winding;
    }
  }
  return winding != 0;
}

namespace {

// Conformal chart of the slit plane C \ (R \ (-R, R)) onto the unit disc,
// sending 0 to 0 and (-R, R) to (-1, 1).
cplx slit_plane_chart(cplx z, double R) {
  cplx zh = z / R;
  cplx rho = std::sqrt((1.0 + zh) / (1.0 - zh));
  return (rho - 1.0) / (rho + 1.0);
}

}  // namespace

ContainmentReport check_containment(const SampledCurve& curve, const OmegaDomain& omega) {
  ContainmentReport rep;
  rep.samples = static_cast<int>(curve.points.size());
  rep.min_margin = 1e300;
  for (cplx z : curve.points) rep.min_margin = std::min(rep.min_margin, omega_margin(omega, z));
  rep.contained = rep.min_margin > 0.0;

  SampledCurve bdry = omega_boundary(omega, 4096);

  // Round-annulus bound in the plane.
  double r_out = 1e300, r_in = 0.0;
  for (cplx z : bdry.points) r_out = std::min(r_out, std::abs(z));
  for (cplx z : curve.points) r_in = std::max(r_in, std::abs(z));
  double mod_plane = (rep.contained && r_in < r_out) ? std::log(r_out / r_in) / (2 * M_PI) : 0.0;

  // Round-annulus bound in the conformal chart of the slit plane over the
  // real trace; sees some pinched annuli the plain bound misses.
  double mod_chart = 0.0;
  if (rep.contained) {
    double R = omega.trace_radius;
    double co = 1e300, ci = 0.0;
    bool valid = true;
    for (cplx z : bdry.points) {
      cplx w = slit_plane_chart(z, R);
      if (!std::isfinite(w.real()) || !std::isfinite(w.imag())) continue;  // trace endpoints
      co = std::min(co, std::abs(w));
    }
    for (cplx z : curve.points) {
      cplx w = slit_plane_chart(z, R);
      if (!std::isfinite(w.real()) || !std::isfinite(w.imag())) valid = false;
      else ci = std::max(ci, std::abs(w));
    }
    if (valid && ci < co && ci > 0.0) mod_chart = std::log(co / ci) / (2 * M_PI);
  }

  // Collar bound: every curve joining the two boundary components crosses
  // the tube of width min_margin around the pullback curve, so with the
  // indicator of that tube as the metric, the extremal-length estimate gives
  //   mod >= margin^2 / area(tube) >= margin / (2 len + pi margin).
  // This stays positive for the strongly pinched unions where no round
  // frame separates the annulus.
  double mod_collar = 0.0;
  if (rep.contained && curve.points.size() > 2) {
    double len = 0.0;
    for (size_t i = 0; i < curve.points.size(); ++i)
      len += std::abs(curve.points[(i + 1) % curve.points.size()] - curve.points[i]);
    mod_collar = rep.min_margin / (2.0 * len + M_PI * rep.min_margin);
  }
  rep.modulus_lower_bound = std::max({mod_plane, mod_chart, mod_collar});
  return rep;
}

StableContainment check_containment_stable(const PolynomialFamily& fam, const OmegaDomain& omega,
                                           const LevelData& level, int base_samples,
                                           int max_doublings) {
  StableContainment out;
  int samples = base_samples;
  ContainmentReport prev{};
  bool have_prev = false;
  int stable_count = 0;
  for (int k = 0; k <= max_doublings; ++k, samples *= 2) {
    SampledCurve curve = pullback_boundary(fam, omega, level, samples);
    ContainmentReport rep = check_containment(curve, omega);
    out.report = rep;
    out.samples_used = samples;
    if (have_prev && rep.contained == prev.contained) {
      if (++stable_count >= 2) return out;
    } else {
      stable_count = 0;
    }
    prev = rep;
    have_prev = true;
  }
  return out;
}

double fitin_ratio(const PolynomialFamily& fam, const LevelData& level) {
  const int s = level.return_time;
  RealInterval Uhat = monotone_preimage_of(fam, level.V, s - 1);
  const double c1 = fam.critical_value;
  double vf_len = pow_int(level.V.hi, fam.degree);  // |f(v) - c1|
  double j_len = c1 - Uhat.lo;                      // the side away from [c1, c2]
  if (!(j_len > 0.0))
    throw Error(errc::domain_error, "preimage interval does not flank the critical value");
  return j_len / vf_len;
}

PolyLikeMap assemble_polylike(const PolynomialFamily& fam, const LevelData& level,
                              const OmegaDomain& omega, const ReturnMapStructure& rms,
                              int samples) {
  PolyLikeMap plm;
  plm.fam = fam;
  plm.range = omega;

  plm.fitin_ratio = fitin_ratio(fam, level);
  if (!(plm.fitin_ratio < 1.0))
    throw Error(errc::fitin_violated,
                "fit-in ratio " + std::to_string(plm.fitin_ratio) + " is not below 1");

  // Central piece.
  plm.central.boundary = pullback_boundary(fam, omega, level, samples);
  plm.central.iterate = level.return_time;
  {
    double hi = 0.0;
    for (cplx z : plm.central.boundary.points)
      if (std::abs(z.imag()) < 1e-9 * level.V.hi) hi = std::max(hi, std::abs(z.real()));
    plm.central.trace = symmetric_interval(hi > 0 ? hi : level.central_radius);
  }

  // Off-central pieces: pull the central component of the range (whose real
  // trace is exactly the base interval) back through each monotone branch,
  // so the piece traces reproduce the branch intervals.
  OmegaDomain range_core;
  range_core.variant = omega.variant;
  range_core.components.push_back(omega.components.front());
  range_core.trace_radius = 0.5 * omega.components.front().interval.length();
  SampledCurve bdry = omega_boundary(range_core, samples);
  for (const auto& b : rms.branches) {
    if (b.kind == BranchKind::central) continue;
    std::vector<double> ref;
    double x = b.domain.mid();
    for (int k = 0; k <= b.iterate; ++k) {
      ref.push_back(x);
      x = evaluate(fam, x);
    }
    std::vector<cplx> seed(ref.size());
    for (size_t k = 0; k < ref.size(); ++k) seed[k] = cplx(ref[ref.size() - 1 - k], 0.0);
    PolyLikeDomainPiece piece;
    piece.iterate = b.iterate;
    std::vector<cplx> prev = seed;
    for (cplx z : bdry.points) {
      auto chain = pullback_chain_seeded(fam, z, prev);
      piece.boundary.points.push_back(chain.back());
      prev = chain;
    }
    piece.boundary.closed = true;
    double lo = 1e300, hi = -1e300;
    for (cplx z : piece.boundary.points)
      if (std::abs(z.imag()) < 1e-7 * level.V.hi) {
        lo = std::min(lo, z.real());
        hi = std::max(hi, z.real());
      }
    piece.trace = (lo < hi) ? RealInterval(lo, hi) : b.domain;
    plm.off_central.push_back(std::move(piece));
  }

  // Pairwise disjoint real traces.
  std::vector<RealInterval> traces{plm.central.trace};
  for (const auto& p : plm.off_central) traces.push_back(p.trace);
  for (size_t i = 0; i < traces.size(); ++i)
    for (size_t j = i + 1; j < traces.size(); ++j)
      if (traces[i].intersects(traces[j]))
        throw Error(errc::domain_overlap, "domain real traces overlap");

  return plm;
}

Membership filled_julia_membership(const PolyLikeMap& plm, cplx z, int max_iter) {
  Membership m;
  for (int k = 0; k < max_iter; ++k) {
    if (curve_contains(plm.central.boundary, z)) {
      z = iterate(plm.fam, z, plm.central.iterate);
      continue;
    }
    bool found = false;
    for (const auto& p : plm.off_central) {
      if (curve_contains(p.boundary, z)) {
        z = iterate(plm.fam, z, p.iterate);
        found = true;
        break;
      }
    }
    if (!found) {
      m.inside = false;
      m.escape_step = k;
      return m;
    }
  }
  m.inside = true;
  m.budget_limited = true;
  return m;
}

}  // namespace unipoly
