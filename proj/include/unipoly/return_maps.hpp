#pragma once

#include <optional>
#include <vector>

#include "unipoly/common.hpp"
#include "unipoly/core.hpp"

namespace unipoly {

// Symmetric interval (-endpoint, endpoint) whose boundary orbit never
// re-enters the interior, sampled up to niceness_horizon iterates.
struct SymmetricNiceInterval {
  double endpoint = 0.0;
  int niceness_horizon = 0;
  RealInterval interval() const { return symmetric_interval(endpoint); }
};

// Validates the niceness condition with margin >= 1e-12 and returns the
// wrapped interval. Throws Degenerate if a boundary iterate lands inside.
SymmetricNiceInterval make_nice_interval(const PolynomialFamily& fam, double endpoint,
                                         int horizon);

enum class BranchKind { monotone, central };
enum class BranchOrientation { preserving, reversing, folding };

struct Branch {
  RealInterval domain;
  int iterate = 0;
  BranchKind kind = BranchKind::monotone;
  BranchOrientation orientation = BranchOrientation::preserving;
};

struct ReturnMapStructure {
  PolynomialFamily fam;
  SymmetricNiceInterval base;
  std::vector<Branch> branches;  // sorted by domain.lo; exactly one central
  int central_index = -1;

  const Branch& central() const { return branches.at(central_index); }
};

// Smallest k in [1, budget] with f^k(x) inside (-w, w); 0 when there is none
// within the budget (including escape).
int first_entry_time(const PolynomialFamily& fam, double x, double w, int budget);

// Central component of the first-return domain to (-w, w): returns the
// positive endpoint and the return time. Throws BudgetExhausted when the
// critical orbit does not enter within the budget.
struct CentralDomain {
  double endpoint;
  int return_time;
};
CentralDomain central_domain(const PolynomialFamily& fam, double w, int budget);

// First return map to W restricted to the branches meeting the forward
// critical orbit.
ReturnMapStructure first_return_map(const PolynomialFamily& fam, const SymmetricNiceInterval& W,
                                    int orbit_budget);

struct ReturnClassification {
  bool high = false;      // central image contains c strictly
  bool central = false;   // f^s(c) lands back in the central domain
  double high_margin = 0; // distance from c to the central image boundary
};
ReturnClassification classify_return(const ReturnMapStructure& rms);

struct RenormalizationLevel {
  int period = 0;
  double endpoint = 0.0;   // interval is (-endpoint, endpoint)
  double multiplier = 0.0; // Df^period at the fixed boundary point
  bool half_period_renormalizable = false;
};

// Periodic symmetric intervals ordered by period; empty when none exist up
// to max_period.
std::vector<RenormalizationLevel> detect_renormalization(const PolynomialFamily& fam,
                                                         int max_period);

// Closest-return (cutting) times S_0=1 < S_1 < ... with the distances of the
// corresponding closest precritical points. truncated is set when the
// sequence cannot be continued (superstable parameter or escape).
struct ClosestReturnSequence {
  std::vector<int> times;
  std::vector<double> distances;
  bool truncated = false;
};
ClosestReturnSequence closest_return_times(const PolynomialFamily& fam, int depth,
                                           int step_budget = 200000);

bool is_fibonacci_prefix(const std::vector<int>& times, int count);

struct NicePointSequence {
  std::vector<double> points;
  std::vector<int> depths;  // iterate depth of u_{n+1} over u_n (empty slot 0)
  std::optional<errc> stopped_because;
};

// Nested nice points u_0 = |q| > u_1 > ...: u_{n+1} is the preimage of the
// fixed-point boundary orbit inside (-u_n, u_n) closest to c, searched
// breadth-first by iterate depth. stopped_because reports why the sequence
// ended early (renormalizable / periodic_attractor).
NicePointSequence nice_point_sequence(const PolynomialFamily& fam, int n_max,
                                      int depth_budget = 4096);

// Principal nest N_0 = (-|q|, |q|), N_{n+1} = central component of the first
// return domain to N_n; return_times[n] is the central return time of N_n.
// The nest endpoints bound the central domains themselves, which below level
// two can be strictly smaller than the breadth-first nice points above.
struct PrincipalNest {
  std::vector<double> points;
  std::vector<int> return_times;
  std::optional<errc> stopped_because;
};
PrincipalNest principal_nest(const PolynomialFamily& fam, int n_max, int depth_budget = 100000);

// ---------------------------------------------------------------------------
// Generalized first return maps (the class used by the renormalization
// operators on low/high returns) and the two operators acting on them.

struct GBranch {
  RealInterval domain;
  long iterate = 0;       // total f-iterate applied on this branch
  bool central = false;
  bool onto_base = true;  // monotone branches map onto the base interval
};

struct GeneralizedFirstReturn {
  PolynomialFamily fam;
  RealInterval outer;  // extension interval, strictly contains base
  RealInterval base;   // symmetric interval around c
  std::vector<GBranch> branches;  // sorted by domain.lo
  int central_index = -1;

  const GBranch& central() const { return branches.at(central_index); }
  // Branch containing x, or -1.
  int locate(double x) const;
  // One application; throws DomainError when x is in no recorded branch.
  double apply(double x) const;
};

// Builds the first return map to (-base_radius, base_radius) as a
// GeneralizedFirstReturn with the given extension interval.
GeneralizedFirstReturn make_generalized_return(const PolynomialFamily& fam, double base_radius,
                                               double outer_radius, int orbit_budget);

// Image of the central branch (an interval; the branch folds at c).
RealInterval central_image(const GeneralizedFirstReturn& g);

// The renormalization operator for maps with a low return: new central domain
// plus redispatched branches on the old central domain. Throws HighReturn when
// the central image contains c, AttractorDetected when the central orbit never
// exits.
struct LowReturnRenorm {
  GeneralizedFirstReturn result;
  int first_exit;     // s0: first exit time of the central orbit from T^1
  int reentry;        // s: first re-entry time into T^1
};
LowReturnRenorm low_return_renormalize(const GeneralizedFirstReturn& g, int budget = 4096);

// Escape interval of a map with a high return: the preimage chain of the base
// boundary along the central branch, stopped at the first interval the central
// image covers; plus the first return map of the staged map to it.
struct EscapeIntervalResult {
  RealInterval escape_interval;       // W^1
  std::vector<double> preimage_chain; // z_0 > z_1 > ... > z_k (positive side)
  double branch_fixed_point;          // orientation preserving fixed point x
  GeneralizedFirstReturn staged;      // W g, member of E(W^1, T^0)
};
EscapeIntervalResult compute_escape_interval(const GeneralizedFirstReturn& g, int budget = 4096);

// Nested symmetric intervals of the saddle cascade of a central low return;
// empty for a non-central return.
std::vector<RealInterval> central_cascade_intervals(const GeneralizedFirstReturn& g,
                                                    int budget = 4096);

}  // namespace unipoly
