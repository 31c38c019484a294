#include "unipoly/poincare.hpp"

#include <algorithm>
#include <cmath>

#include "unipoly/roots.hpp"

namespace unipoly {

namespace {

struct DiscPair {
  cplx center_up;
  double radius;
  double half_len;
  double mid;
};

DiscPair discs_of(const PoincareNeighborhood& D) {
  DiscPair p;
  p.half_len = 0.5 * D.interval.length();
  p.mid = D.interval.mid();
  p.radius = p.half_len / std::sin(D.angle);
  p.center_up = cplx(p.mid, p.half_len / std::tan(D.angle));
  return p;
}

}  // namespace

cplx boundary_point(const PoincareNeighborhood& D, double alpha) {
  if (!(alpha > 0.0 && alpha < 2.0 * M_PI - D.angle))
    throw Error(errc::domain_error, "arc parameter out of range");
  const double theta = D.angle;
  cplx zeta = 1.0 + (cplx(0, 1) * std::exp(cplx(0, theta)) / std::sin(theta)) *
                        (1.0 - std::exp(cplx(0, alpha)));
  DiscPair p = discs_of(D);
  return cplx(p.mid, 0.0) + p.half_len * zeta;
}

double contains_margin(const PoincareNeighborhood& D, cplx z) {
  DiscPair p = discs_of(D);
  double du = std::abs(z - p.center_up);
  double dl = std::abs(z - std::conj(p.center_up));
  return std::max(p.radius - du, p.radius - dl);
}

cplx power_image_crossing(double K, double theta) {
  if (!(K > 1.0)) throw Error(errc::domain_error, "need K > 1");
  if (!(theta > 0.0 && theta < M_PI / 2)) throw Error(errc::domain_error, "bad angle");
  double alpha = 2.0 * std::atan(0.5 * (K - 1.0) * std::tan(theta));
  double phi = 2.0 * alpha;
  cplx i(0, 1);
  cplx z2 = 1.0 + (i * std::exp(i * theta) / std::sin(theta)) * (1.0 - std::exp(i * alpha));
  cplx z1 = 1.0 + 0.5 * (K + 1.0) * (i * std::exp(i * theta) / std::sin(theta)) *
                      (1.0 - std::exp(i * phi));
  double residual = std::abs(z2 * z2 - z1);
  if (residual > 1e-10 * (1.0 + std::abs(z1)))
    throw Error(errc::no_intersection, "boundary curves do not meet at the solved angle");
  return z1;
}

cplx spiral_point(const SpiralArc& arc, double lambda) {
  if (!(lambda >= arc.lambda_lo && lambda <= arc.lambda_hi))
    throw Error(errc::domain_error, "spiral parameter out of range");
  double cot = std::cos(arc.angle) / std::sin(arc.angle);
  double r = arc.amplitude * std::exp(lambda * cot);
  return cplx(r * std::cos(lambda), r * std::sin(lambda));
}

double spiral_avoidance_amplitude(double K) {
  if (!(K >= 1.0)) throw Error(errc::domain_error, "need K >= 1");
  return K / std::exp(2.0 * (K - 1.0) / (K + 1.0));
}

std::vector<double> spiral_crossing_limits(double A, double K) {
  if (!(A > 0.0 && K > 1.0)) throw Error(errc::domain_error, "need A > 0, K > 1");
  auto g = [&](double x) {
    return A * std::exp(x * (1.0 + x / (K + 1.0)) / (1.0 + x)) - (1.0 + x);
  };
  RootScanOptions opt;
  opt.samples = static_cast<int>(10.0 * std::max(4.0 * K, 50.0) / 1e-3);
  opt.samples = std::min(opt.samples, 2000000);
  opt.tangency_tol = 1e-8;
  return scan_roots(g, 0.0, std::max(4.0 * K, 50.0), opt);
}

std::vector<double> sector_crossing_roots(double A, double K0, int degree) {
  if (!(A > 1.0 && K0 > 1.0)) throw Error(errc::domain_error, "need A > 1, K0 > 1");
  const double kk = 0.5 * (K0 + 1.0);
  auto g = [&](double B) {
    double inner = 1.0 + (1.0 / degree) * kk * B * (1.0 + 0.5 * B) / (1.0 + kk * B);
    return A * pow_int(inner, degree) - (1.0 + kk * B);
  };
  const double hi = 2.0 * (K0 - 1.0);
  RootScanOptions opt;
  opt.samples = static_cast<int>(hi / 1e-4) + 2;
  opt.tangency_tol = 1e-8;
  opt.endpoint_tol = 1e-12 * (1.0 + A);
  return scan_roots(g, 0.0, hi, opt);
}

double crossing_quartic(double y) {
  const double a = 4.12 / 1.47;
  const double b = 2.12 / 1.47;
  const double c = 3.12 / (1.47 * 1.47);
  return ((y - a) * y + b) * y * y + a * y - c;
}

QuarticReport crossing_quartic_report() {
  QuarticReport rep;
  RootScanOptions opt;
  opt.samples = 400000;
  opt.tangency_tol = 1e-9;
  rep.roots = scan_roots(crossing_quartic, -10.0, 10.0, opt);
  const double a = 4.12 / 1.47;
  const double b = 2.12 / 1.47;
  auto h2 = [&](double y) { return 12.0 * y * y - 6.0 * a * y + 2.0 * b; };
  rep.inflection_roots = scan_roots(h2, -10.0, 10.0, opt);
  rep.value_at_one = crossing_quartic(1.0);
  return rep;
}

SectorContainment sector_image_contains(int degree,
                                        const std::vector<PoincareNeighborhood>& bases,
                                        const SampledCurve& inner) {
  if (bases.empty()) throw Error(errc::domain_error, "need at least one base neighborhood");
  SectorContainment out;
  out.min_margin = 1e300;
  std::vector<double> margins;
  margins.reserve(inner.points.size());
  std::vector<cplx> folded;
  folded.reserve(inner.points.size());
  for (cplx w : inner.points) {
    double psi = std::abs(std::arg(w));
    double r = std::pow(std::abs(w), 1.0 / degree);
    cplx zeta(r * std::cos(psi / degree), r * std::sin(psi / degree));
    folded.push_back(zeta);
    double m = -1e300;
    for (const auto& D : bases) m = std::max(m, contains_margin(D, zeta));
    margins.push_back(m);
    out.min_margin = std::min(out.min_margin, m);
  }
  // A contained verdict is only certifiable when each step is covered by the
  // margins at its ends; otherwise probe the midpoint, and give up if the
  // segment actually leaves the region between samples.
  if (out.min_margin > 0.0) {
    for (size_t i = 0; i + 1 < margins.size(); ++i) {
      double step = std::abs(folded[i + 1] - folded[i]);
      if (step <= margins[i] + margins[i + 1]) continue;
      cplx mid = 0.5 * (folded[i] + folded[i + 1]);
      double m = -1e300;
      for (const auto& D : bases) m = std::max(m, contains_margin(D, mid));
      if (m < 0.0)
        throw Error(errc::sampling_too_coarse, "adjacent samples jump across the image boundary");
    }
  }
  out.contained = out.min_margin > 0.0;
  return out;
}

}  // namespace unipoly
