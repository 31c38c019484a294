#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace unipoly {

using cplx = std::complex<double>;

// Error codes for every reportable failure mode in the library.
enum class errc {
  domain_error,
  no_such_fixed_point,
  branch_ambiguity,
  periodic_attractor,
  renormalizable,
  budget_exhausted,
  degenerate,
  depth_exhausted,
  high_return,
  low_return,
  attractor_detected,
  search_failed,
  variant_mismatch,
  extension_too_short,
  fitin_violated,
  domain_overlap,
  no_root,
  wrong_minimal_period,
  no_parameter_in_bracket,
  empty_interval,
  no_intersection,
  sampling_too_coarse,
  io_error,
};

const char* errc_name(errc c);

class Error : public std::runtime_error {
 public:
  Error(errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}
  errc code() const { return code_; }

 private:
  errc code_;
};

// Closed-by-convention interval on the real line, lo < hi.
struct RealInterval {
  double lo = 0.0;
  double hi = 0.0;

  RealInterval() = default;
  RealInterval(double a, double b) : lo(a), hi(b) {
    if (!(a < b)) throw Error(errc::domain_error, "interval endpoints must satisfy lo < hi");
  }

  double length() const { return hi - lo; }
  double mid() const { return 0.5 * (lo + hi); }
  bool contains(double x, double margin = 0.0) const { return x > lo + margin && x < hi - margin; }
  bool contains(const RealInterval& j, double margin = 0.0) const {
    return j.lo > lo + margin && j.hi < hi - margin;
  }
  bool intersects(const RealInterval& o) const { return lo < o.hi && o.lo < hi; }
};

inline RealInterval symmetric_interval(double radius) {
  return RealInterval(-radius, radius);
}

}  // namespace unipoly
