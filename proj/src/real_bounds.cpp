#include "unipoly/real_bounds.hpp"

#include <algorithm>
#include <cmath>

#include "unipoly/roots.hpp"

namespace unipoly {

double cross_ratio(const CrossRatioFrame& frame) {
  return (frame.inner.length() * frame.whole.length()) / (frame.left() * frame.right());
}

double overlap_cross_ratio(const RealInterval& t, const RealInterval& j) {
  if (!(j.lo >= t.lo && j.hi <= t.hi))
    throw Error(errc::domain_error, "inner interval must be contained in the outer one");
  double lj = j.hi - t.lo;  // |l u j|
  double rj = t.hi - j.lo;  // |r u j|
  return (t.length() * j.length()) / (lj * rj);
}

double inverse_branch_ratio_bound(int degree, double t, double y) {
  if (degree < 2 || degree % 2 != 0) throw Error(errc::domain_error, "degree must be even >= 2");
  if (!(t > 0.0 && t < y && y < 1.0))
    throw Error(errc::domain_error, "need 0 < t < y < 1");
  double tl = std::pow(t, 1.0 / degree);
  double yl = std::pow(y, 1.0 / degree);
  return t * (yl - tl) / (tl * y * (1.0 - yl));
}

double inverse_branch_ratio_sup(int degree, double y) {
  if (degree < 2 || degree % 2 != 0) throw Error(errc::domain_error, "degree must be even >= 2");
  if (!(y > 0.0 && y < 1.0)) throw Error(errc::domain_error, "need 0 < y < 1");
  double l = degree;
  return std::pow(1.0 - 1.0 / l, l - 1.0) / (l * (1.0 - std::pow(y, 1.0 / l)));
}

double inverse_branch_ratio_limit(double y) {
  if (!(y > 0.0 && y < 1.0)) throw Error(errc::domain_error, "need 0 < y < 1");
  return 1.0 / (M_E * std::log(1.0 / y));
}

RealInterval maximal_monotone_interval(const PolynomialFamily& fam, const RealInterval& next_to,
                                       int iterate_count, int direction) {
  const double cap = fam.escape_radius();
  const double anchor = direction > 0 ? next_to.hi : next_to.lo;
  const double far = direction > 0 ? cap : -cap;
  // Nearest precritical point of order < iterate_count beyond the anchor.
  double nearest = far;
  const int grid = 4096;
  for (int i = 0; i < iterate_count; ++i) {
    auto f_i = [&](double x) { return i == 0 ? x : iterate(fam, x, i); };
    double a = anchor, b = nearest;
    if (a == b) continue;
    double fa = f_i(a);
    if (std::abs(fa) <= 1e-13 * std::max(1.0, std::abs(anchor)))
      throw Error(errc::empty_interval, "anchor endpoint is a critical preimage");
    double prev_x = a, prev_f = fa;
    bool found = false;
    for (int k = 1; k <= grid && !found; ++k) {
      double x = a + (b - a) * k / grid;
      double fx = f_i(x);
      if (fx == 0.0 || (fx > 0) != (prev_f > 0)) {
        double root = bisect_root(f_i, std::min(prev_x, x), std::max(prev_x, x));
        if ((direction > 0 && root < nearest) || (direction < 0 && root > nearest))
          nearest = root;
        found = true;
      }
      prev_x = x;
      prev_f = fx;
    }
  }
  if (direction > 0) {
    if (!(nearest > anchor)) throw Error(errc::empty_interval, "no monotone room beyond anchor");
    return RealInterval(anchor, nearest);
  }
  if (!(nearest < anchor)) throw Error(errc::empty_interval, "no monotone room beyond anchor");
  return RealInterval(nearest, anchor);
}

RealInterval monotone_preimage_of(const PolynomialFamily& fam, const RealInterval& target,
                                  int s_minus_1) {
  const double c1 = fam.critical_value;
  if (s_minus_1 == 0) return target;
  // Maximal monotone interval around c1 for f^{s-1}.
  RealInterval right = maximal_monotone_interval(fam, RealInterval(c1 - 1e-15, c1 + 1e-15),
                                                 s_minus_1, +1);
  RealInterval left = maximal_monotone_interval(fam, RealInterval(c1 - 1e-15, c1 + 1e-15),
                                                s_minus_1, -1);
  RealInterval H(left.lo, right.hi);
  auto fs = [&](double x) { return iterate(fam, x, s_minus_1); };
  double img_lo = fs(H.lo), img_hi = fs(H.hi);
  double lo = std::min(img_lo, img_hi), hi = std::max(img_lo, img_hi);
  if (!(lo < target.lo && hi > target.hi))
    throw Error(errc::extension_too_short,
                "monotone extension does not cover the requested interval");
  double a = bisect_root([&](double x) { return fs(x) - target.lo; }, H.lo, H.hi);
  double b = bisect_root([&](double x) { return fs(x) - target.hi; }, H.lo, H.hi);
  return RealInterval(std::min(a, b), std::max(a, b));
}

LevelData level_from_renormalization(const PolynomialFamily& fam,
                                     const RenormalizationLevel& lvl) {
  (void)fam;
  LevelData d;
  d.V = symmetric_interval(lvl.endpoint);
  d.return_time = lvl.period;
  d.central_radius = lvl.endpoint;
  d.renormalizable = true;
  d.doubling = lvl.half_period_renormalizable;
  d.high_return = true;  // a renormalization without a high return has an attractor
  return d;
}

std::vector<LevelData> levels_from_nest(const PolynomialFamily& fam, int depth, int budget) {
  PrincipalNest nest = principal_nest(fam, depth, budget);
  std::vector<LevelData> levels;
  for (size_t n = 0; n + 1 < nest.points.size(); ++n) {
    LevelData d;
    d.V = symmetric_interval(nest.points[n]);
    d.return_time = nest.return_times[n];
    d.central_radius = nest.points[n + 1];
    d.renormalizable = false;
    d.doubling = false;
    SymmetricNiceInterval W{nest.points[n], 0};
    try {
      ReturnMapStructure rms = first_return_map(fam, W, budget);
      d.high_return = classify_return(rms).high;
    } catch (const Error&) {
      d.high_return = false;
    }
    levels.push_back(d);
  }
  return levels;
}

SpaceMeasurement measure_space_ratio(const PolynomialFamily& fam, const LevelData& level) {
  SpaceMeasurement m{};
  const double v = level.V.hi;
  const double fV_len = pow_int(v, fam.degree);  // |f(V)| with f(V) = [c1, c1+v^l]

  if (level.renormalizable) {
    const int s = level.return_time;
    // Extension of the central branch around the critical value, then the
    // maximal monotone flank outside [c1, c2] and its f^s-image.
    RealInterval Uhat = monotone_preimage_of(fam, level.V, s - 1);
    RealInterval flank = maximal_monotone_interval(fam, Uhat, s, -1);
    double a = iterate(fam, flank.lo, s);
    double b = iterate(fam, flank.hi, s);
    double L_len = std::abs(b - a);
    m.ratio = L_len / fV_len;
    m.bound_class = level.doubling ? SpaceBoundClass::doubling_05 : SpaceBoundClass::non_doubling_06;
    m.bound = level.doubling ? 0.5 : 0.6;
  } else {
    if (!level.high_return)
      throw Error(errc::domain_error, "space measurement needs a renormalizable or high-return level");
    // Forward images of V until one covers c; then the nearest disjoint image
    // interval to f(V).
    const double c1 = fam.critical_value;
    RealInterval fV(c1, c1 + fV_len);
    double lo = level.V.lo, hi = level.V.hi;
    int s2 = 0;
    std::vector<RealInterval> images;
    for (int i = 1; i <= 4 * level.return_time + 64; ++i) {
      if (lo < 0.0 && hi > 0.0) {
        if (i > 1) {
          s2 = i;  // f^{s''-1}(V) covers c
          break;
        }
        double mmax = std::max(std::abs(lo), std::abs(hi));
        lo = c1;
        hi = c1 + pow_int(mmax, fam.degree);
      } else {
        double a = evaluate(fam, lo), b = evaluate(fam, hi);
        lo = std::min(a, b);
        hi = std::max(a, b);
      }
      images.push_back(RealInterval(lo, hi));
    }
    if (s2 == 0) throw Error(errc::budget_exhausted, "orbit of V never covers c");
    double best_span = 1e300;
    for (const auto& J : images) {
      if (J.intersects(fV)) continue;
      double span = std::max(fV.hi, J.hi) - std::min(fV.lo, J.lo);
      best_span = std::min(best_span, span);
    }
    if (best_span >= 1e300)
      throw Error(errc::search_failed, "no disjoint forward image before covering c");
    m.ratio = (best_span - fV_len) / fV_len;
    m.bound_class = SpaceBoundClass::high_return_13;
    m.bound = 1.0 / 3.0;
  }
  m.margin = m.ratio - m.bound;
  return m;
}

ExpansionPoint find_expansion_point(const PolynomialFamily& fam, const LevelData& level) {
  if (!level.renormalizable)
    throw Error(errc::domain_error, "expansion point search needs a renormalization level");
  const int s = level.return_time;
  const int l = fam.degree;
  const double u = level.V.hi;

  // Fixed boundary point with positive multiplier: u or -u.
  double e = u;
  if (std::abs(iterate(fam, u, s) - u) > 1e-9 * u) e = -u;
  if (std::abs(iterate(fam, e, s) - e) > 1e-9 * u)
    throw Error(errc::domain_error, "no fixed boundary point at this level");
  double deriv = 1.0;
  {
    double x = e;
    for (int i = 0; i < s; ++i) {
      deriv *= derivative(fam, x);
      x = evaluate(fam, x);
    }
  }
  if (deriv < 0.0) e = -e;  // even map: the mirrored endpoint has the opposite sign
  {
    double x = e;
    deriv = 1.0;
    for (int i = 0; i < s; ++i) {
      deriv *= derivative(fam, x);
      x = evaluate(fam, x);
    }
    if (!(std::abs(iterate(fam, e, s) - e) <= 1e-8 * u) || !(deriv > 1.0))
      throw Error(errc::search_failed, "no repelling orientation-preserving boundary point");
  }

  // Monotone extension around the critical value and the measured one-sided
  // space of its f^{s-1} image beyond V.
  RealInterval T1_r = maximal_monotone_interval(
      fam, RealInterval(fam.critical_value - 1e-15, fam.critical_value + 1e-15), s - 1, +1);
  RealInterval T1_l = maximal_monotone_interval(
      fam, RealInterval(fam.critical_value - 1e-15, fam.critical_value + 1e-15), s - 1, -1);
  RealInterval T1(T1_l.lo, T1_r.hi);
  auto fs1 = [&](double x) { return iterate(fam, x, s - 1); };
  double ia = fs1(T1.lo), ib = fs1(T1.hi);
  double img_lo = std::min(ia, ib), img_hi = std::max(ia, ib);
  double flank = std::min(u - (-img_lo) < 0 ? -img_lo - u : -img_lo - u, img_hi - u);
  flank = std::min(std::abs(img_lo) - u, img_hi - u);
  if (!(flank > 0.0))
    throw Error(errc::search_failed, "monotone extension does not clear the interval");
  ExpansionPoint out;
  out.c0_measured = l * flank / u;

  const double dir = e > 0 ? 1.0 : -1.0;
  auto fs = [&](double x) { return iterate(fam, x, s); };

  double c1_try = std::min(out.c0_measured, 1.0);
  for (int attempt = 0; attempt < 12; ++attempt, c1_try *= 0.5) {
    double step_hi = c1_try / l * u;
    double step_lo = 0.5 * step_hi;
    // Band in image space: e + dir*[step_lo, step_hi]; pull back through the
    // monotone branch beyond e.
    auto eq_hi = [&](double x) { return dir * (fs(x) - e) - step_hi; };
    auto eq_lo = [&](double x) { return dir * (fs(x) - e) - step_lo; };
    double far = e + dir * 0.5 * (fam.escape_radius() - std::abs(e));
    // Find a bracket going outward until eq_hi changes sign.
    double t0 = e, t1 = e + dir * 1e-9 * u;
    bool ok = false;
    double reach = std::abs(far - e);
    for (double stepw = 1e-6 * u; std::abs(t1 - e) < reach; stepw *= 1.6) {
      t1 = t0 + dir * stepw;
      if (eq_hi(t1) >= 0.0) {
        ok = true;
        break;
      }
      t0 = t1;
    }
    if (!ok) continue;
    double ub = bisect_root(eq_hi, std::min(t0, t1), std::max(t0, t1));
    double ua = bisect_root(eq_lo, std::min(e, ub), std::max(e, ub));
    // Scan the band for the best expansion factor.
    double best = 0.0, best_x = 0.0;
    for (int i = 0; i <= 64; ++i) {
      double x = ua + (ub - ua) * i / 64.0;
      double factor = std::abs(fs(x)) / std::abs(x);
      if (factor > best) {
        best = factor;
        best_x = x;
      }
    }
    if (best <= 1.0) continue;  // no expansion in this band; shrink the step
    out.u_tilde = best_x;
    out.expansion_factor = best;
    out.c1_used = c1_try;
    out.c2_measured = l * l * (best - 1.0);
    out.omega_radius = std::abs(fs(best_x));

    // Mirrored preimage: f^{s-1}(u_star) = -f^s(u_tilde).
    double target = -fs(best_x);
    double ta = fs1(T1.lo) - target, tb = fs1(T1.hi) - target;
    if ((ta > 0) == (tb > 0)) continue;
    out.u_star = bisect_root([&](double x) { return fs1(x) - target; }, T1.lo, T1.hi);
    out.ustar_ratio = std::abs(out.u_star - fam.critical_value) /
                      std::abs(evaluate(fam, u) - fam.critical_value);
    return out;
  }
  throw Error(errc::search_failed, "no expansion point satisfies the step and growth conditions");
}

PullbackRatio central_pullback_ratio(const PolynomialFamily& fam, const CascadeData& data) {
  PullbackRatio out;
  const double r = data.central_radius;
  const double b = data.base_radius;
  const int m = static_cast<int>(data.central_iterate);
  out.image_len = pow_int(r, fam.degree);
  out.comparison = pow_int(r / b, fam.degree);

  RealInterval A = monotone_preimage_of(fam, symmetric_interval(b), m - 1);
  const double c1 = fam.critical_value;
  // f(T^{k+1}) = [c1, c1 + r^l]; the complement piece of A on the other side
  // of c1 maps onto T^0 minus the central image.
  double right_end = c1 + out.image_len;
  if (!(A.lo < c1 && A.hi > right_end))
    throw Error(errc::extension_too_short, "pullback interval does not flank the central image");
  // Which side of A maps to the boundary-touching end? f^{m-1}(right_end) =
  // f^m(r) lies on the base boundary; the complement is the other component.
  double img_right = iterate(fam, right_end, m - 1);
  double tol = 1e-6 * b;
  if (std::abs(std::abs(img_right) - b) > tol)
    throw Error(errc::domain_error, "central branch image does not end on the base boundary");
  out.complement_len = c1 - A.lo;
  out.ratio = out.image_len / out.complement_len;
  return out;
}

}  // namespace unipoly
