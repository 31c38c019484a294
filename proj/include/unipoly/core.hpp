#pragma once

#include <vector>

#include "unipoly/common.hpp"

namespace unipoly {

// The family f(z) = z^degree + critical_value with an even degree >= 2.
// The critical point is always c = 0.
struct PolynomialFamily {
  int degree = 2;
  double critical_value = 0.0;

  PolynomialFamily() = default;
  PolynomialFamily(int ell, double c1) : degree(ell), critical_value(c1) {
    if (ell < 2 || ell % 2 != 0)
      throw Error(errc::domain_error, "degree must be an even integer >= 2");
  }

  // Any orbit point beyond this radius escapes to infinity.
  double escape_radius() const { return std::max(2.0, std::abs(critical_value)) + 1.0; }
};

// Integer power by repeated squaring. Multiplication-only, so conjugating the
// input conjugates the output exactly and (-w)^even == w^even exactly.
inline cplx pow_int(cplx z, int n) {
  cplx r{1.0, 0.0};
  while (n > 0) {
    if (n & 1) r *= z;
    z *= z;
    n >>= 1;
  }
  return r;
}

inline double pow_int(double x, int n) {
  double r = 1.0;
  while (n > 0) {
    if (n & 1) r *= x;
    x *= x;
    n >>= 1;
  }
  return r;
}

inline cplx evaluate(const PolynomialFamily& fam, cplx z) {
  return pow_int(z, fam.degree) + fam.critical_value;
}

inline double evaluate(const PolynomialFamily& fam, double x) {
  return pow_int(x, fam.degree) + fam.critical_value;
}

inline double derivative(const PolynomialFamily& fam, double x) {
  return fam.degree * pow_int(x, fam.degree - 1);
}

inline cplx derivative(const PolynomialFamily& fam, cplx z) {
  return static_cast<double>(fam.degree) * pow_int(z, fam.degree - 1);
}

inline double iterate(const PolynomialFamily& fam, double x, int n) {
  for (int i = 0; i < n; ++i) x = evaluate(fam, x);
  return x;
}

inline cplx iterate(const PolynomialFamily& fam, cplx z, int n) {
  for (int i = 0; i < n; ++i) z = evaluate(fam, z);
  return z;
}

// The symmetry tau(w) = -w satisfies f(tau(w)) = f(w).
inline double tau(double w) { return -w; }
inline cplx tau(cplx z) { return -z; }

// A forward orbit segment x, f(x), ..., with escape bookkeeping.
struct OrbitSegment {
  std::vector<double> points;
  bool escaped = false;
  int escape_index = -1;  // index into points of the first escaping point
};

// Returns (c_1, ..., c_n). Iteration stops early once the orbit leaves the
// escape radius; escaped/escape_index record that state.
OrbitSegment critical_orbit(const PolynomialFamily& fam, int n);

// The real fixed point q with f(q) = q and Df(q) < 0.
double orientation_reversing_fixed_point(const PolynomialFamily& fam);

// The real preimage of w on the requested side: side >= 0 gives the
// nonnegative root, side < 0 its mirror. Requires w >= critical_value.
double inverse_branch_real(const PolynomialFamily& fam, double w, int side);

// Pullback of `target` under f^n along the inverse branch determined by the
// real reference orbit x_0, ..., x_n (reference.points). Each single-step
// inverse picks the degree-th root closest to the corresponding reference
// preimage. Throws BranchAmbiguity when the two nearest roots are
// indistinguishable at relative tolerance ambiguity_tol.
cplx pullback_complex_along_orbit(const PolynomialFamily& fam, cplx target,
                                  const std::vector<double>& reference,
                                  double ambiguity_tol = 1e-8);

// All degree-th roots of w, ordered by argument.
std::vector<cplx> all_roots(cplx w, int degree);

// One inverse step seeded by an arbitrary (complex) previous point; used for
// curve continuation where the seed is the neighbouring sample's preimage.
cplx inverse_step_near(const PolynomialFamily& fam, cplx w, cplx seed,
                       double ambiguity_tol = 1e-8);

}  // namespace unipoly
