#pragma once

#include "unipoly/common.hpp"
#include "unipoly/core.hpp"

namespace unipoly {

// Parameter c1 with a superstable orbit of minimal period `period` inside the
// bracket (requires a sign change of c1 -> f^period(0) there).
double superstable_parameter(int degree, int period, const RealInterval& bracket);

// Superstable period-2^depth parameter of the doubling cascade (a proxy for
// the cascade limit; the error decreases geometrically in depth).
double cascade_limit(int degree, int depth);

// Parameter whose closest-return times match the Fibonacci numbers up to
// `depth` terms.
double fibonacci_parameter(int degree, int depth, const RealInterval& bracket);
double fibonacci_parameter(int degree, int depth);

}  // namespace unipoly
