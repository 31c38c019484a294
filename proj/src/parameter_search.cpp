#include "unipoly/parameter_search.hpp"

#include <algorithm>
#include <cmath>

#include "unipoly/return_maps.hpp"
#include "unipoly/roots.hpp"

namespace unipoly {

namespace {

double critical_iterate(int degree, double c1, int n) {
  PolynomialFamily fam(degree, c1);
  return iterate(fam, 0.0, n);
}

bool minimal_period_ok(int degree, double c1, int period) {
  // |f^d(0)| must stay away from 0 for every d < period.
  for (int d = 1; d < period; ++d)
    if (std::abs(critical_iterate(degree, c1, d)) < 1e-7) return false;
  return true;
}

}  // namespace

double superstable_parameter(int degree, int period, const RealInterval& bracket) {
  auto g = [&](double c1) { return critical_iterate(degree, c1, period); };
  if ((g(bracket.lo) > 0) == (g(bracket.hi) > 0))
    throw Error(errc::no_root, "no sign change of f^p(0) on the bracket");
  double c1 = bisect_root(g, bracket.lo, bracket.hi);
  if (!minimal_period_ok(degree, c1, period))
    throw Error(errc::wrong_minimal_period, "critical orbit closes up before the requested period");
  return c1;
}

double cascade_limit(int degree, int depth) {
  if (depth < 1) throw Error(errc::domain_error, "depth must be >= 1");
  // Period 2 is superstable at c1 = -1 for every even degree.
  double prev = -1.0;
  double gap = 0.6;  // search window below the previous superstable parameter
  for (int k = 2; k <= depth; ++k) {
    int period = 1 << k;
    auto g = [&](double c1) { return critical_iterate(degree, c1, period); };
    // First sign change window below prev.
    const int grid = 20000;
    double found_lo = 0, found_hi = 0;
    double x_prev = prev - gap * 1e-6;
    double g_prev = g(x_prev);
    bool found = false;
    for (int i = 1; i <= grid && !found; ++i) {
      double x = prev - gap * i / grid;
      double gx = g(x);
      if ((gx > 0) != (g_prev > 0)) {
        found_lo = x;
        found_hi = x_prev;
        found = true;
      }
      x_prev = x;
      g_prev = gx;
    }
    if (!found) throw Error(errc::no_root, "no doubling window below the previous parameter");
    double next = bisect_root(g, found_lo, found_hi);
    if (!minimal_period_ok(degree, next, period))
      throw Error(errc::wrong_minimal_period, "doubling window produced a shorter period");
    gap = std::max(2.0 * (prev - next), 1e-9);
    prev = next;
  }
  return prev;
}

namespace {

// Length of the Fibonacci prefix of the closest-return times at c1 (capped
// at `depth` terms); -1 when the sequence is not computable at all.
int fib_match_depth(int degree, double c1, int depth) {
  if (!(c1 < 0.0)) return -1;
  PolynomialFamily fam(degree, c1);
  ClosestReturnSequence seq;
  try {
    seq = closest_return_times(fam, depth);
  } catch (const Error&) {
    return -1;
  }
  long a = 1, b = 2;
  int match = 0;
  for (size_t i = 0; i < seq.times.size(); ++i) {
    if (seq.times[i] != a) break;
    ++match;
    long next = a + b;
    a = b;
    b = next;
  }
  return match;
}

}  // namespace

double fibonacci_parameter(int degree, int depth, const RealInterval& bracket) {
  if (depth < 4) throw Error(errc::domain_error, "depth must be >= 4");
  // The parameter sets with a fixed closest-return prefix are nested
  // intervals, so the bracket can be tightened one prefix length at a time.
  double lo = bracket.lo, hi = bracket.hi;
  for (int want = 2; want <= depth; ++want) {
    bool found = false;
    for (int grid = 800; grid <= 51200 && !found; grid *= 4) {
      double mlo = 0, mhi = 0;
      int count = 0;
      for (int i = 0; i <= grid; ++i) {
        double x = lo + (hi - lo) * i / grid;
        if (fib_match_depth(degree, x, want) >= want) {
          if (count == 0) mlo = x;
          mhi = x;
          ++count;
        }
      }
      if (count > 0) {
        double span = (hi - lo) / grid;
        lo = std::max(bracket.lo, mlo - span);
        hi = std::min(bracket.hi, mhi + span);
        found = true;
      }
    }
    if (!found)
      throw Error(errc::no_parameter_in_bracket,
                  "Fibonacci combinatorics not reached at prefix length " + std::to_string(want));
  }
  // Center in the deepest matching window.
  const int grid = 800;
  double mlo = 0, mhi = 0;
  int count = 0;
  for (int i = 0; i <= grid; ++i) {
    double x = lo + (hi - lo) * i / grid;
    if (fib_match_depth(degree, x, depth) >= depth) {
      if (count == 0) mlo = x;
      mhi = x;
      ++count;
    }
  }
  if (count == 0) throw Error(errc::no_parameter_in_bracket, "matching window vanished");
  return 0.5 * (mlo + mhi);
}

double fibonacci_parameter(int degree, int depth) {
  PolynomialFamily probe(degree, -1.0);
  // The full family runs from the period-2 superstable parameter down to the
  // degree's Chebyshev-like endpoint; scan a generous sub-bracket.
  double lo = -2.0;
  // Find the most negative non-escaping parameter on a coarse grid.
  for (double c1 = -2.0; c1 < -0.5; c1 += 0.004) {
    PolynomialFamily fam(degree, c1);
    OrbitSegment orb = critical_orbit(fam, 256);
    if (!orb.escaped) {
      lo = c1 - 0.004;
      break;
    }
  }
  return fibonacci_parameter(degree, depth, RealInterval(lo, -1.0));
}

}  // namespace unipoly
