#include "unipoly/core.hpp"

#include <algorithm>

#include "unipoly/roots.hpp"

namespace unipoly {

OrbitSegment critical_orbit(const PolynomialFamily& fam, int n) {
  if (n < 1) throw Error(errc::domain_error, "orbit length must be >= 1");
  OrbitSegment orb;
  orb.points.reserve(n);
  const double radius = fam.escape_radius();
  double x = fam.critical_value;
  for (int k = 0; k < n; ++k) {
    orb.points.push_back(x);
    if (std::abs(x) > radius) {
      orb.escaped = true;
      orb.escape_index = k;
      break;
    }
    x = evaluate(fam, x);
  }
  return orb;
}

double orientation_reversing_fixed_point(const PolynomialFamily& fam) {
  // For even degree, x^l + c1 - x is strictly decreasing on x <= 0, so there
  // is at most one negative fixed point, and any negative fixed point has
  // Df < 0. Nonnegative fixed points have Df >= 0.
  if (!(fam.critical_value < 0.0))
    throw Error(errc::no_such_fixed_point, "every real fixed point has Df >= 0");
  const double radius = fam.escape_radius();
  auto g = [&](double x) { return evaluate(fam, x) - x; };
  double q = bisect_root(g, -radius, 0.0);
  if (!(derivative(fam, q) < 0.0))
    throw Error(errc::no_such_fixed_point, "located fixed point is not orientation reversing");
  return q;
}

double inverse_branch_real(const PolynomialFamily& fam, double w, int side) {
  const double r = w - fam.critical_value;
  if (r < 0.0) throw Error(errc::domain_error, "no real preimage: w < critical value");
  double root = std::pow(r, 1.0 / fam.degree);
  return side >= 0 ? root : -root;
}

std::vector<cplx> all_roots(cplx w, int degree) {
  std::vector<cplx> roots(degree);
  const double r = std::pow(std::abs(w), 1.0 / degree);
  const double phi = std::arg(w);
  for (int j = 0; j < degree; ++j) {
    double a = (phi + 2.0 * M_PI * j) / degree;
    roots[j] = cplx(r * std::cos(a), r * std::sin(a));
  }
  return roots;
}

cplx inverse_step_near(const PolynomialFamily& fam, cplx w, cplx seed, double ambiguity_tol) {
  const auto roots = all_roots(w - fam.critical_value, fam.degree);
  double best = 1e300, second = 1e300;
  cplx pick = roots[0];
  for (const auto& r : roots) {
    double d = std::abs(r - seed);
    if (d < best) {
      second = best;
      best = d;
      pick = r;
    } else if (d < second) {
      second = d;
    }
  }
  const double scale = std::abs(pick) + std::abs(seed) + 1e-300;
  if (fam.degree > 1 && second - best <= ambiguity_tol * scale)
    throw Error(errc::branch_ambiguity, "two root choices are equidistant from the reference");
  return pick;
}

cplx pullback_complex_along_orbit(const PolynomialFamily& fam, cplx target,
                                  const std::vector<double>& reference, double ambiguity_tol) {
  const int n = static_cast<int>(reference.size()) - 1;
  if (n < 0) throw Error(errc::domain_error, "reference orbit must contain at least one point");
  for (int k = 1; k < n; ++k) {
    if (std::abs(reference[k]) < 1e-13 * (1.0 + std::abs(fam.critical_value)))
      throw Error(errc::domain_error, "reference orbit passes through the critical point");
  }
  cplx w = target;
  for (int k = n; k >= 1; --k) {
    w = inverse_step_near(fam, w, cplx(reference[k - 1], 0.0), ambiguity_tol);
  }
  return w;
}

}  // namespace unipoly
