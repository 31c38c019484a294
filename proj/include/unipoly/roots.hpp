#pragma once

#include <functional>
#include <vector>

#include "unipoly/common.hpp"

namespace unipoly {

using RealFn = std::function<double(double)>;

// Bracketed bisection to absolute tolerance, then one damped Newton polish
// with a finite-difference derivative. Requires f(a) and f(b) of opposite
// sign (zero counts as either sign).
double bisect_root(const RealFn& f, double a, double b, double tol = 1e-13);

// First point in [a,b] where pred flips from the value at a, located by
// bisection. Requires pred(a) != pred(b).
double bisect_predicate(const std::function<bool(double)>& pred, double a, double b,
                        double tol = 1e-13);

struct RootScanOptions {
  int samples = 10000;          // uniform scan resolution on [a,b]
  double tol = 1e-13;           // bisection tolerance
  double tangency_tol = 1e-8;   // |f| threshold at a derivative sign change
  bool count_tangent_twice = true;
  double endpoint_tol = 0.0;    // treat |f(endpoint)| <= endpoint_tol as a root
};

// All roots of f on [a,b]: simple roots from sign changes, plus double roots
// detected at local extrema where |f| dips below tangency_tol (reported twice
// when count_tangent_twice is set). Roots are returned sorted.
std::vector<double> scan_roots(const RealFn& f, double a, double b,
                               const RootScanOptions& opt = {});

}  // namespace unipoly
