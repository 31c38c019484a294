#include "unipoly/roots.hpp"

#include <algorithm>
#include <cmath>

namespace unipoly {

const char* errc_name(errc c) {
  switch (c) {
    case errc::domain_error: return "DomainError";
    case errc::no_such_fixed_point: return "NoSuchFixedPoint";
    case errc::branch_ambiguity: return "BranchAmbiguity";
    case errc::periodic_attractor: return "PeriodicAttractor";
    case errc::renormalizable: return "Renormalizable";
    case errc::budget_exhausted: return "BudgetExhausted";
    case errc::degenerate: return "Degenerate";
    case errc::depth_exhausted: return "DepthExhausted";
    case errc::high_return: return "HighReturn";
    case errc::low_return: return "LowReturn";
    case errc::attractor_detected: return "AttractorDetected";
    case errc::search_failed: return "SearchFailed";
    case errc::variant_mismatch: return "VariantMismatch";
    case errc::extension_too_short: return "ExtensionTooShort";
    case errc::fitin_violated: return "FitinViolated";
    case errc::domain_overlap: return "DomainOverlap";
    case errc::no_root: return "NoRoot";
    case errc::wrong_minimal_period: return "WrongMinimalPeriod";
    case errc::no_parameter_in_bracket: return "NoParameterInBracket";
    case errc::empty_interval: return "EmptyInterval";
    case errc::no_intersection: return "NoIntersection";
    case errc::sampling_too_coarse: return "SamplingTooCoarse";
    case errc::io_error: return "IOError";
  }
  return "UnknownError";
}

double bisect_root(const RealFn& f, double a, double b, double tol) {
  double fa = f(a), fb = f(b);
  if (fa == 0.0) return a;
  if (fb == 0.0) return b;
  if ((fa > 0) == (fb > 0))
    throw Error(errc::no_root, "bisect_root requires a sign change on the bracket");
  while (b - a > tol) {
    double m = 0.5 * (a + b);
    if (m <= a || m >= b) break;  // bracket at floating resolution
    double fm = f(m);
    if (fm == 0.0) return m;
    if ((fm > 0) == (fa > 0)) {
      a = m;
      fa = fm;
    } else {
      b = m;
      fb = fm;
    }
  }
  // One damped Newton polish; keep the result inside the bracket.
  double x = 0.5 * (a + b);
  double h = std::max(1e-9 * (std::abs(x) + 1.0), 1e-300);
  double d = (f(x + h) - f(x - h)) / (2 * h);
  if (d != 0.0 && std::isfinite(d)) {
    double step = f(x) / d;
    double y = x - step;
    if (y > a && y < b && std::abs(f(y)) <= std::abs(f(x))) x = y;
  }
  return x;
}

double bisect_predicate(const std::function<bool(double)>& pred, double a, double b, double tol) {
  bool pa = pred(a);
  if (pred(b) == pa)
    throw Error(errc::no_root, "bisect_predicate requires a predicate flip on the bracket");
  while (b - a > tol) {
    double m = 0.5 * (a + b);
    if (m <= a || m >= b) break;
    if (pred(m) == pa)
      a = m;
    else
      b = m;
  }
  return 0.5 * (a + b);
}

std::vector<double> scan_roots(const RealFn& f, double a, double b, const RootScanOptions& opt) {
  std::vector<double> roots;
  if (!(a < b)) return roots;
  const int n = std::max(2, opt.samples);
  std::vector<double> xs(n + 1), fs(n + 1);
  for (int i = 0; i <= n; ++i) {
    xs[i] = a + (b - a) * i / n;
    fs[i] = f(xs[i]);
  }
  if (opt.endpoint_tol > 0.0 && std::abs(fs[0]) <= opt.endpoint_tol) roots.push_back(xs[0]);
  for (int i = 0; i < n; ++i) {
    if (fs[i] == 0.0) {
      if (i > 0) {
        roots.push_back(xs[i]);
        // Same-sign neighbours mean the graph touches zero without crossing.
        if (opt.count_tangent_twice && (fs[i - 1] > 0) == (fs[i + 1] > 0) && fs[i - 1] != 0.0 &&
            fs[i + 1] != 0.0)
          roots.push_back(xs[i]);
      }
      continue;
    }
    if (fs[i + 1] != 0.0 && (fs[i] > 0) != (fs[i + 1] > 0)) {
      roots.push_back(bisect_root(f, xs[i], xs[i + 1], opt.tol));
    }
  }
  if (opt.endpoint_tol > 0.0 && std::abs(fs[n]) <= opt.endpoint_tol &&
      (roots.empty() || std::abs(roots.back() - xs[n]) > (b - a) * 2.0 / n))
    roots.push_back(xs[n]);

  // Tangencies: local extrema of f that come within tangency_tol of zero
  // without a sign change.
  for (int i = 1; i < n; ++i) {
    bool local_min = fs[i] < fs[i - 1] && fs[i] <= fs[i + 1] && fs[i] > 0;
    bool local_max = fs[i] > fs[i - 1] && fs[i] >= fs[i + 1] && fs[i] < 0;
    if (!local_min && !local_max) continue;
    // Refine the extremum by ternary search.
    double lo = xs[i - 1], hi = xs[i + 1];
    for (int it = 0; it < 200 && hi - lo > opt.tol; ++it) {
      double m1 = lo + (hi - lo) / 3, m2 = hi - (hi - lo) / 3;
      double f1 = f(m1), f2 = f(m2);
      bool keep_left = local_min ? (f1 < f2) : (f1 > f2);
      if (keep_left)
        hi = m2;
      else
        lo = m1;
    }
    double x = 0.5 * (lo + hi);
    double fx = f(x);
    if (std::abs(fx) <= opt.tangency_tol * (1.0 + std::abs(x))) {
      bool dup = false;
      for (double r : roots)
        if (std::abs(r - x) <= (b - a) * 2.0 / n) dup = true;
      if (!dup) {
        roots.push_back(x);
        if (opt.count_tangent_twice) roots.push_back(x);
      }
    }
  }
  std::sort(roots.begin(), roots.end());
  return roots;
}

}  // namespace unipoly
