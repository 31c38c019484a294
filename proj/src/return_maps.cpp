#include "unipoly/return_maps.hpp"

#include <algorithm>
#include <cmath>

#include "unipoly/roots.hpp"

namespace unipoly {

namespace {

constexpr double kNiceMargin = 1e-12;

// Expands outward from `from` toward `cap` until pred fails, then localizes
// the FIRST failure point by repeated linear subdivision (plain bisection can
// converge to a later flip when the bracket straddles several branches).
// Returns `cap` when pred holds all the way there.
double expand_to_predicate_boundary(const std::function<bool(double)>& pred, double from,
                                    double cap, double scale) {
  const int substeps = 64;
  const double tol = 1e-15 * scale;
  double dir = (cap > from) ? 1.0 : -1.0;
  double step = 1e-6 * scale;
  double t_ok = from;
  double t_fail = cap;
  bool found = false;
  while (!found) {
    double t_next = t_ok + dir * step;
    if ((dir > 0 && t_next >= cap) || (dir < 0 && t_next <= cap)) t_next = cap;
    if (pred(t_next)) {
      t_ok = t_next;
      if (t_next == cap) return cap;
      step *= 1.5;
    } else {
      t_fail = t_next;
      found = true;
    }
  }
  while (std::abs(t_fail - t_ok) > tol) {
    double lo = t_ok, hi = t_fail;
    bool advanced = false;
    for (int i = 1; i <= substeps; ++i) {
      double t = lo + (hi - lo) * i / substeps;
      if (!pred(t)) {
        t_fail = t;
        advanced = true;
        break;
      }
      t_ok = t;
    }
    if (!advanced) break;  // at floating resolution
    if (std::abs(t_fail - t_ok) <= std::abs(hi - lo) / substeps + tol &&
        std::abs(t_fail - t_ok) <= tol)
      break;
  }
  return t_ok;
}

}  // namespace

SymmetricNiceInterval make_nice_interval(const PolynomialFamily& fam, double endpoint,
                                         int horizon) {
  if (!(endpoint > 0.0)) throw Error(errc::domain_error, "nice endpoint must be positive");
  // Boundary orbits land on repelling periodic orbits, so round-off grows by
  // the accumulated multiplier. The admissible margin widens accordingly and
  // the check stops once iterates carry no information in double precision.
  double x = endpoint;
  double lambda = 1.0;
  for (int i = 1; i <= horizon; ++i) {
    lambda *= std::max(1.0, std::abs(derivative(fam, x)));
    x = evaluate(fam, x);
    if (std::abs(x) > fam.escape_radius()) break;
    double fuzz = kNiceMargin * std::max(1.0, endpoint) + 1e-15 * lambda;
    if (fuzz > 0.05 * endpoint) break;  // no information left at this depth
    if (std::abs(x) < endpoint - fuzz)
      throw Error(errc::degenerate, "boundary iterate re-enters the interval at step " +
                                        std::to_string(i));
  }
  return SymmetricNiceInterval{endpoint, horizon};
}

int first_entry_time(const PolynomialFamily& fam, double x, double w, int budget) {
  const double radius = fam.escape_radius();
  for (int k = 1; k <= budget; ++k) {
    x = evaluate(fam, x);
    if (std::abs(x) < w) return k;
    if (std::abs(x) > radius) return 0;
  }
  return 0;
}

CentralDomain central_domain(const PolynomialFamily& fam, double w, int budget) {
  int s = first_entry_time(fam, 0.0, w, budget);
  if (s == 0)
    throw Error(errc::budget_exhausted, "critical orbit does not enter the interval in budget");
  // Points of the central domain stay outside (-w,w) for s-1 steps and land
  // inside at step s.
  auto inside = [&](double t) {
    double x = t;
    for (int m = 1; m < s; ++m) {
      x = evaluate(fam, x);
      if (std::abs(x) < w) return false;
    }
    x = evaluate(fam, x);
    return std::abs(x) <= w;
  };
  double a = expand_to_predicate_boundary(inside, 0.0, w, w);
  return CentralDomain{a, s};
}

namespace {

// Maximal interval around x on which the first-entry itinerary (out for
// m < j, in at j) is constant. x must have entry time j.
RealInterval branch_domain_around(const PolynomialFamily& fam, double w, double x, int j) {
  auto same_branch = [&](double t) {
    double y = t;
    for (int m = 1; m < j; ++m) {
      y = evaluate(fam, y);
      if (std::abs(y) < w) return false;
    }
    y = evaluate(fam, y);
    return std::abs(y) <= w;
  };
  double hi = expand_to_predicate_boundary(same_branch, x, w, w);
  double lo = expand_to_predicate_boundary(same_branch, x, -w, w);
  return RealInterval(lo, hi);
}

BranchOrientation monotone_orientation(const PolynomialFamily& fam, const RealInterval& dom,
                                       int j) {
  double a = iterate(fam, dom.lo, j);
  double b = iterate(fam, dom.hi, j);
  return a < b ? BranchOrientation::preserving : BranchOrientation::reversing;
}

}  // namespace

ReturnMapStructure first_return_map(const PolynomialFamily& fam, const SymmetricNiceInterval& W,
                                    int orbit_budget) {
  const double w = W.endpoint;
  ReturnMapStructure rms;
  rms.fam = fam;
  rms.base = W;

  CentralDomain cd = central_domain(fam, w, orbit_budget);
  Branch central;
  central.domain = symmetric_interval(cd.endpoint);
  central.iterate = cd.return_time;
  central.kind = BranchKind::central;
  central.orientation = BranchOrientation::folding;
  rms.branches.push_back(central);

  // Branches that meet the forward critical orbit.
  double x = fam.critical_value;
  for (int k = 1; k <= orbit_budget; ++k) {
    if (std::abs(x) > fam.escape_radius()) break;
    if (std::abs(x) < w && std::abs(x) > cd.endpoint) {
      bool known = false;
      for (const auto& b : rms.branches)
        if (b.domain.contains(x)) known = true;
      if (!known) {
        int j = first_entry_time(fam, x, w, orbit_budget);
        if (j > 0) {
          Branch b;
          b.domain = branch_domain_around(fam, w, x, j);
          b.iterate = j;
          b.kind = BranchKind::monotone;
          b.orientation = monotone_orientation(fam, b.domain, j);
          rms.branches.push_back(b);
        }
      }
    }
    x = evaluate(fam, x);
  }

  std::sort(rms.branches.begin(), rms.branches.end(),
            [](const Branch& a, const Branch& b) { return a.domain.lo < b.domain.lo; });
  for (size_t i = 0; i < rms.branches.size(); ++i)
    if (rms.branches[i].kind == BranchKind::central) rms.central_index = static_cast<int>(i);
  return rms;
}

ReturnClassification classify_return(const ReturnMapStructure& rms) {
  const Branch& u = rms.central();
  const PolynomialFamily& fam = rms.fam;
  const int s = u.iterate;
  const double a = u.domain.hi;
  const double tie_tol = 1e-10 * std::max(1.0, rms.base.endpoint);

  double at_center = iterate(fam, 0.0, s);
  double at_edge = iterate(fam, a, s);
  double img_lo = std::min(at_center, at_edge);
  double img_hi = std::max(at_center, at_edge);

  ReturnClassification rc;
  double margin = std::min(-img_lo, img_hi);  // distance from c=0 into the image
  // The superstable case has f^s(c) = c exactly on the image boundary;
  // boundary containment within the tie tolerance counts as high (it is the
  // degenerate member of the central-high family).
  rc.high = margin > -tie_tol;
  rc.high_margin = margin;
  if (std::abs(std::abs(at_center) - a) <= tie_tol)
    throw Error(errc::degenerate, "f^s(c) coincides with the central domain boundary");
  rc.central = std::abs(at_center) < a;
  return rc;
}

std::vector<RenormalizationLevel> detect_renormalization(const PolynomialFamily& fam,
                                                         int max_period) {
  std::vector<RenormalizationLevel> out;
  const double radius = fam.escape_radius();
  const int grid = 16384;

  for (int s = 2; s <= max_period; ++s) {
    std::vector<double> candidates;
    for (int variant = 0; variant < 2; ++variant) {
      // f^s(u) = u (variant 0) or f^s(u) = -u (variant 1), u > 0.
      auto g = [&](double u) {
        double y = iterate(fam, u, s);
        return variant == 0 ? y - u : y + u;
      };
      RootScanOptions opt;
      opt.samples = grid;
      opt.count_tangent_twice = false;
      opt.tangency_tol = 0.0;
      auto roots = scan_roots(g, 1e-9, radius, opt);
      candidates.insert(candidates.end(), roots.begin(), roots.end());
    }
    std::sort(candidates.begin(), candidates.end());

    for (double u : candidates) {
      // Validate: the symmetric interval is invariant, the fold only happens
      // on the interval itself, and the first s-1 images stay disjoint.
      bool ok = true;
      double lo = -u, hi = u;
      for (int i = 1; i <= s && ok; ++i) {
        if (lo < 0.0 && hi > 0.0) {
          double m = std::max(std::abs(lo), std::abs(hi));
          lo = fam.critical_value;
          hi = fam.critical_value + pow_int(m, fam.degree);
        } else {
          double a = evaluate(fam, lo), b = evaluate(fam, hi);
          lo = std::min(a, b);
          hi = std::max(a, b);
        }
        if (!std::isfinite(lo) || !std::isfinite(hi) || hi > 1e300 || lo < -1e300) ok = false;
        // Interiors must be disjoint; cascade intervals legitimately touch at
        // periodic boundary points, so allow round-off at the contact.
        double touch = 1e-9 * std::max(1.0, u);
        if (ok && i < s && lo < u - touch && hi > -u + touch) ok = false;
      }
      if (ok) {
        double tol = 1e-9 * std::max(1.0, u);
        if (lo < -u - tol || hi > u + tol) ok = false;  // not invariant
      }
      if (!ok) continue;
      // The fixed boundary point must not be attracting.
      double fixed_pt = (std::abs(iterate(fam, u, s) - u) < std::abs(iterate(fam, u, s) + u))
                            ? u
                            : -u;
      double mult = 1.0;
      double y = fixed_pt;
      for (int i = 0; i < s; ++i) {
        mult *= derivative(fam, y);
        y = evaluate(fam, y);
      }
      if (std::abs(mult) < 1.0 - 1e-9) continue;
      out.push_back(RenormalizationLevel{s, u, mult, false});
      break;  // smallest valid endpoint for this period
    }
  }

  for (auto& lvl : out)
    for (const auto& other : out)
      if (other.period == 2 * lvl.period) lvl.half_period_renormalizable = true;
  return out;
}

ClosestReturnSequence closest_return_times(const PolynomialFamily& fam, int depth,
                                           int step_budget) {
  ClosestReturnSequence seq;
  if (depth < 1) return seq;
  if (!(fam.critical_value < 0.0))
    throw Error(errc::domain_error, "closest returns need a negative critical value");

  double d = std::pow(-fam.critical_value, 1.0 / fam.degree);  // closest 1-preimage of c
  seq.times.push_back(1);
  seq.distances.push_back(d);

  const double radius = fam.escape_radius();
  while (static_cast<int>(seq.times.size()) < depth) {
    int prev = seq.times.back();
    // Iterate the exact image of (0, d) until it properly contains c.
    double lo = 0.0, hi = d;
    int k = 0;
    int found = 0;
    while (k - 0 < step_budget) {
      // one application of f
      double span = hi - lo;
      double ztol = 1e-9 * span;
      if (lo < -ztol && hi > ztol) {
        double m = std::max(std::abs(lo), std::abs(hi));
        double nlo = fam.critical_value;
        double nhi = fam.critical_value + pow_int(m, fam.degree);
        lo = nlo;
        hi = nhi;
      } else if (lo >= -ztol && hi >= lo) {
        double a = evaluate(fam, std::max(lo, 0.0));
        double b = evaluate(fam, hi);
        lo = std::min(a, b);
        hi = std::max(a, b);
      } else {
        double a = evaluate(fam, lo);
        double b = evaluate(fam, std::min(hi, 0.0));
        lo = std::min(a, b);
        hi = std::max(a, b);
      }
      ++k;
      if (lo > radius || hi < -radius) {
        seq.truncated = true;
        return seq;  // the whole interval escaped; no further returns
      }
      double span2 = hi - lo;
      double ztol2 = 1e-9 * span2;
      if (k > prev && lo < -ztol2 && hi > ztol2) {
        found = k;
        break;
      }
      if (k > prev && lo <= 0.0 && hi >= 0.0) {
        // c sits on the boundary at iterate k: superstable-like degeneracy.
        seq.truncated = true;
        return seq;
      }
    }
    if (found == 0)
      throw Error(errc::depth_exhausted, "no further closest return within the step budget");
    // f^found is monotone on (0, d); its image contains c, so there is a
    // unique zero: the next closest precritical point.
    double z = bisect_root([&](double x) { return iterate(fam, x, found); }, 0.0, d);
    seq.times.push_back(found);
    seq.distances.push_back(z);
    d = z;
  }
  return seq;
}

bool is_fibonacci_prefix(const std::vector<int>& times, int count) {
  if (static_cast<int>(times.size()) < count) return false;
  long a = 1, b = 2;
  for (int i = 0; i < count; ++i) {
    if (times[i] != a) return false;
    long next = a + b;
    a = b;
    b = next;
  }
  return true;
}

namespace {

// True when the critical orbit converges to an attracting cycle, in whose
// basin preimage and return searches stall.
bool has_periodic_attractor(const PolynomialFamily& fam) {
  OrbitSegment orb = critical_orbit(fam, 2048);
  if (orb.escaped || orb.points.size() <= 256) return false;
  const auto& p = orb.points;
  size_t n = p.size();
  for (int per = 1; per <= 64; ++per) {
    if (std::abs(p[n - 1] - p[n - 1 - per]) < 1e-12) {
      double mult = 1.0;
      double x = p[n - 1];
      for (int i = 0; i < per; ++i) {
        mult *= derivative(fam, x);
        x = evaluate(fam, x);
      }
      return std::abs(mult) < 1.0 - 1e-9;
    }
  }
  return false;
}

}  // namespace

NicePointSequence nice_point_sequence(const PolynomialFamily& fam, int n_max, int depth_budget) {
  NicePointSequence out;
  double q = orientation_reversing_fixed_point(fam);
  double u0 = std::abs(q);
  out.points.push_back(u0);
  out.depths.push_back(0);

  if (has_periodic_attractor(fam)) {
    out.stopped_because = errc::periodic_attractor;
    return out;
  }

  const double radius = fam.escape_radius();
  while (static_cast<int>(out.points.size()) <= n_max) {
    const double w = out.points.back();
    // Exact interval images of (0, w): the minimal depth at which a preimage
    // of the boundary orbit enters is the first k with +-u0 interior to J_k.
    double lo = 0.0, hi = w;
    int found = 0;
    for (int k = 1; k <= depth_budget; ++k) {
      double span = hi - lo;
      double ztol = 1e-9 * span;
      if (lo < -ztol && hi > ztol) {
        double m = std::max(std::abs(lo), std::abs(hi));
        lo = fam.critical_value;
        hi = fam.critical_value + pow_int(m, fam.degree);
      } else {
        double a = evaluate(fam, std::clamp(lo, -radius * 2, radius * 2));
        double b = evaluate(fam, std::clamp(hi, -radius * 2, radius * 2));
        lo = std::min(a, b);
        hi = std::max(a, b);
      }
      if (lo > radius || hi < -radius) break;  // the whole interval escaped
      double span2 = hi - lo;
      double btol = 1e-9 * span2;
      if ((lo < u0 - btol && hi > u0 + btol) || (lo < -u0 - btol && hi > -u0 + btol)) {
        found = k;
        break;
      }
    }
    if (found == 0) {
      out.stopped_because =
          has_periodic_attractor(fam) ? errc::periodic_attractor : errc::renormalizable;
      return out;
    }
    // All depth-`found` preimages of the boundary pair in (0, w); keep the
    // one nearest to c. f^found may fold, so scan densely before bisecting.
    auto fk = [&](double x) { return iterate(fam, x, found); };
    double best = w;
    const int grid = 8192;
    double prev_x = w * 0.5 / grid, prev_f = fk(prev_x);
    for (int i = 1; i <= grid; ++i) {
      double x = w * (i + 0.5) / grid;
      if (x >= w) break;
      double fx = fk(x);
      for (double target : {u0, -u0}) {
        if ((prev_f - target) == 0.0 || ((prev_f - target) > 0) != ((fx - target) > 0)) {
          double r = bisect_root([&](double t) { return fk(t) - target; }, prev_x, x);
          best = std::min(best, r);
        }
      }
      prev_x = x;
      prev_f = fx;
    }
    if (!(best < w * (1.0 - 1e-12))) {
      out.stopped_because = errc::renormalizable;
      return out;
    }
    make_nice_interval(fam, best, 10 * found);
    out.points.push_back(best);
    out.depths.push_back(found);
  }
  return out;
}

PrincipalNest principal_nest(const PolynomialFamily& fam, int n_max, int depth_budget) {
  PrincipalNest out;
  double q = orientation_reversing_fixed_point(fam);
  out.points.push_back(std::abs(q));

  if (has_periodic_attractor(fam)) {
    out.stopped_because = errc::periodic_attractor;
    return out;
  }

  while (static_cast<int>(out.points.size()) <= n_max) {
    double w = out.points.back();
    int s = first_entry_time(fam, 0.0, w, depth_budget);
    if (s == 0) {
      out.stopped_because = errc::renormalizable;
      return out;
    }
    CentralDomain cd = central_domain(fam, w, depth_budget);
    if (cd.endpoint >= w * (1.0 - 1e-12)) {
      // The central domain is the whole interval: periodic interval reached.
      out.stopped_because = errc::renormalizable;
      return out;
    }
    make_nice_interval(fam, cd.endpoint, 10 * cd.return_time);
    out.points.push_back(cd.endpoint);
    out.return_times.push_back(cd.return_time);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Generalized first return maps.

int GeneralizedFirstReturn::locate(double x) const {
  for (size_t i = 0; i < branches.size(); ++i)
    if (x >= branches[i].domain.lo && x <= branches[i].domain.hi) return static_cast<int>(i);
  return -1;
}

double GeneralizedFirstReturn::apply(double x) const {
  int i = locate(x);
  if (i < 0) throw Error(errc::domain_error, "point is not in any recorded branch");
  return iterate(fam, x, static_cast<int>(branches[i].iterate));
}

GeneralizedFirstReturn make_generalized_return(const PolynomialFamily& fam, double base_radius,
                                               double outer_radius, int orbit_budget) {
  if (!(outer_radius > base_radius))
    throw Error(errc::domain_error, "outer interval must strictly contain the base");
  SymmetricNiceInterval W{base_radius, 0};
  ReturnMapStructure rms = first_return_map(fam, W, orbit_budget);
  GeneralizedFirstReturn g;
  g.fam = fam;
  g.outer = symmetric_interval(outer_radius);
  g.base = symmetric_interval(base_radius);
  for (const auto& b : rms.branches) {
    GBranch gb;
    gb.domain = b.domain;
    gb.iterate = b.iterate;
    gb.central = b.kind == BranchKind::central;
    gb.onto_base = !gb.central;
    g.branches.push_back(gb);
  }
  g.central_index = rms.central_index;
  return g;
}

RealInterval central_image(const GeneralizedFirstReturn& g) {
  const GBranch& c = g.central();
  double at_center = iterate(g.fam, 0.0, static_cast<int>(c.iterate));
  double at_edge = iterate(g.fam, c.domain.hi, static_cast<int>(c.iterate));
  return RealInterval(std::min(at_center, at_edge), std::max(at_center, at_edge));
}

namespace {

// Locates the branch containing x, building it on demand (the construction
// budget only records branches met by a finite piece of the critical orbit).
// Appends without sorting so existing branch indices stay stable.
int locate_or_build(GeneralizedFirstReturn& g, double x, int entry_budget) {
  int i = g.locate(x);
  if (i >= 0) return i;
  if (!(x > g.base.lo && x < g.base.hi)) return -1;
  int j = first_entry_time(g.fam, x, g.base.hi, entry_budget);
  if (j == 0) return -1;
  GBranch nb;
  nb.domain = branch_domain_around(g.fam, g.base.hi, x, j);
  nb.iterate = j;
  nb.central = false;
  nb.onto_base = true;
  g.branches.push_back(nb);
  return static_cast<int>(g.branches.size()) - 1;
}

}  // namespace

LowReturnRenorm low_return_renormalize(const GeneralizedFirstReturn& g_in, int budget) {
  GeneralizedFirstReturn g = g_in;  // working copy; branches are added on demand
  RealInterval cimg = central_image(g);
  if (cimg.lo < 0.0 && cimg.hi > 0.0)
    throw Error(errc::high_return, "central image contains the critical point");

  const double a1 = g.central().domain.hi;

  // Orbit of c under g.
  std::vector<double> y{0.0};
  std::vector<int> branch_of;  // branch index used at each step
  int s0 = 0, s = 0;
  for (int m = 1; m <= budget; ++m) {
    int bi = locate_or_build(g, y.back(), budget);
    if (bi < 0)
      throw Error(errc::attractor_detected, "critical orbit stalls outside the recorded branches");
    branch_of.push_back(bi);
    y.push_back(iterate(g.fam, y.back(), static_cast<int>(g.branches[bi].iterate)));
    double v = y.back();
    if (s0 == 0 && m >= 1 && !(std::abs(v) < a1)) s0 = m + 1;  // g^{s0-1}(c) outside T^1
    if (s0 != 0 && m >= s0 && std::abs(v) < a1) {
      s = m;
      break;
    }
  }
  if (s0 == 0) throw Error(errc::attractor_detected, "central orbit never exits the central domain");
  if (s == 0) throw Error(errc::attractor_detected, "central orbit never re-enters in budget");

  // T^2: component of the domain of g^s containing c, located by itinerary
  // bisection on the positive side. Orbit values must stay strictly inside
  // the base: the endpoint of T^1 maps onto the nice base boundary, which is
  // not in the domain of g.
  const double wbase = g.base.hi;
  auto follows_c = [&](double t) {
    double x = t;
    for (int m = 0; m < s; ++m) {
      int bi = g.locate(x);
      if (bi != branch_of[m]) return false;
      x = iterate(g.fam, x, static_cast<int>(g.branches[bi].iterate));
      if (!(std::abs(x) < wbase * (1.0 - 1e-14))) return false;
    }
    return true;
  };
  double a2 = expand_to_predicate_boundary(follows_c, 0.0, a1, a1);
  if (!(a2 < a1 * (1.0 - 1e-12)))
    throw Error(errc::degenerate, "new central domain is not strictly nested");

  long central_iterate_total = 0;
  for (int m = 0; m < s; ++m) central_iterate_total += g.branches[branch_of[m]].iterate;

  GeneralizedFirstReturn rg;
  rg.fam = g.fam;
  rg.outer = g.outer;
  rg.base = g.base;
  for (size_t i = 0; i < g.branches.size(); ++i)
    if (static_cast<int>(i) != g.central_index) rg.branches.push_back(g.branches[i]);

  GBranch c2;
  c2.domain = symmetric_interval(a2);
  c2.iterate = central_iterate_total;
  c2.central = true;
  c2.onto_base = false;
  rg.branches.push_back(c2);

  // Redispatch on the old central domain minus the new one: dispatch at the
  // first time the orbits of x and c land in different components (central
  // included), then apply g once more.
  auto dispatch_signature = [&](double t, bool build) -> std::vector<int> {
    std::vector<int> sig;
    double x = t;
    for (int m = 1; m <= s; ++m) {
      int bcur = g.locate(x);
      if (bcur < 0) {
        sig.push_back(-1000 - m);  // orbit leaves the recorded branches
        return sig;
      }
      x = iterate(g.fam, x, static_cast<int>(g.branches[bcur].iterate));
      int bx = build ? locate_or_build(g, x, budget) : g.locate(x);
      sig.push_back(bx);
      if (bx < 0) return sig;
      if (bx != branch_of[m]) return sig;  // diverged from c at time m: s(x) = m
    }
    return sig;
  };

  const int probe = 512;
  std::vector<double> ts;
  for (int i = 1; i < probe; ++i) ts.push_back(a2 + (a1 - a2) * i / probe);
  // First pass grows the branch set; the partition below then works against
  // a frozen set, so signatures are a stable function of t.
  for (double t : ts) dispatch_signature(t, true);
  std::vector<std::pair<double, double>> runs;  // [lo, hi] of constant signature
  double run_lo = a2;
  std::vector<int> run_sig = dispatch_signature(0.5 * (a2 + ts.front()), false);
  for (size_t i = 0; i + 1 < ts.size(); ++i) {
    auto sig = dispatch_signature(ts[i + 1], false);
    if (sig != run_sig) {
      auto same = [&](double t) { return dispatch_signature(t, false) == run_sig; };
      double b = same(ts[i]) ? bisect_predicate(same, ts[i], ts[i + 1], 1e-13 * a1) : ts[i];
      runs.push_back({run_lo, b});
      run_lo = b;
      run_sig = sig;
    }
  }
  runs.push_back({run_lo, a1});

  for (const auto& [lo, hi] : runs) {
    if (hi - lo < 1e-12 * a1) continue;
    double mid = 0.5 * (lo + hi);
    // Total f-iterate of Rg on this piece: s(x)+1 applications of g.
    double x = mid;
    long total = 0;
    int diverged_at = 0;
    for (int m = 1; m <= s; ++m) {
      int bx0 = g.locate(x);
      if (bx0 < 0) break;
      total += g.branches[bx0].iterate;
      x = iterate(g.fam, x, static_cast<int>(g.branches[bx0].iterate));
      int bx = locate_or_build(g, x, budget);
      if (bx != branch_of[m] || bx < 0) {
        diverged_at = m;
        break;
      }
    }
    if (diverged_at == 0) continue;  // adjacent sliver of T^2 itinerary; skip
    int land = g.locate(x);
    if (land < 0) continue;
    total += g.branches[land].iterate;
    GBranch nb;
    nb.domain = RealInterval(lo, hi);
    nb.iterate = total;
    nb.central = false;
    nb.onto_base = !g.branches[land].central;
    rg.branches.push_back(nb);
    // Mirror on the negative side (the first step is even in x).
    GBranch mb = nb;
    mb.domain = RealInterval(-hi, -lo);
    rg.branches.push_back(mb);
  }

  std::sort(rg.branches.begin(), rg.branches.end(),
            [](const GBranch& a, const GBranch& b) { return a.domain.lo < b.domain.lo; });
  for (size_t i = 0; i < rg.branches.size(); ++i)
    if (rg.branches[i].central) rg.central_index = static_cast<int>(i);

  return LowReturnRenorm{rg, s0, s};
}

EscapeIntervalResult compute_escape_interval(const GeneralizedFirstReturn& g_in, int budget) {
  GeneralizedFirstReturn g = g_in;  // working copy; branches are added on demand
  RealInterval cimg = central_image(g);
  if (!(cimg.lo < 0.0 && cimg.hi > 0.0))
    throw Error(errc::low_return, "escape interval requires a high return");

  const GBranch& cb = g.central();
  const int j = static_cast<int>(cb.iterate);
  const double a1 = cb.domain.hi;

  // Orientation preserving fixed point of the central branch. The fold is
  // even, so work on the positive side and accept a fixed point of either
  // +f^j or the mirrored branch -f^j.
  auto h = [&](double x) { return iterate(g.fam, x, j); };
  double x_fix = 0.0;
  {
    RootScanOptions opt;
    opt.samples = 4096;
    opt.count_tangent_twice = false;
    opt.tangency_tol = 0.0;
    auto r1 = scan_roots([&](double x) { return h(x) - x; }, 1e-9 * a1, a1, opt);
    for (double r : r1) {
      double d = (h(r + 1e-9 * a1) - h(r - 1e-9 * a1)) / (2e-9 * a1);
      if (d > 0.0) {
        x_fix = r;
        break;
      }
    }
    if (x_fix == 0.0) {
      auto r2 = scan_roots([&](double x) { return h(x) + x; }, 1e-9 * a1, a1, opt);
      if (!r2.empty()) x_fix = -r2.front();  // fixed point on the negative side
    }
  }
  if (x_fix == 0.0)
    throw Error(errc::search_failed, "no orientation preserving fixed point in the central branch");

  const double side = x_fix > 0.0 ? 1.0 : -1.0;
  const double xs = std::abs(x_fix);
  // Preimage chain of the base boundary point on the side of x, pulled back
  // along the central branch: |f^j(z_{k+1})| crosses z_k.
  double z = g.base.hi;  // z_0 (positive representative; the chain is symmetric)
  std::vector<double> chain{z};
  int kmin = -1;
  for (int k = 1; k <= budget; ++k) {
    // Solve |f^j(t)| = z_{k-1} on (x, previous z); f^j is even so the
    // positive representative suffices.
    double prev = chain.back();
    auto eq = [&](double t) { return std::abs(h(t * side)) - prev; };
    if ((eq(xs * (1 + 1e-12)) > 0) == (eq(prev * (1 - 1e-12)) > 0))
      throw Error(errc::search_failed, "preimage chain lost its bracket");
    double znew = bisect_root(eq, xs * (1 + 1e-12), prev * (1 - 1e-12));
    chain.push_back(znew);
    // Does the central image of U_k = (-z_k, z_k) cover U_k?
    double at_center = iterate(g.fam, 0.0, j);
    double at_edge = h(znew * side);
    double lo = std::min(at_center, at_edge), hi2 = std::max(at_center, at_edge);
    if (lo <= -znew && hi2 >= znew) {
      kmin = k;
      break;
    }
    if (std::abs(at_center) < xs) {
      // The central value is trapped inside the fixed-point interval: the
      // expansion condition can never be met.
      throw Error(errc::renormalizable, "central image never covers the escape candidate");
    }
  }
  if (kmin < 0) throw Error(errc::renormalizable, "no escape interval within budget");

  EscapeIntervalResult res;
  res.preimage_chain = chain;
  res.branch_fixed_point = x_fix;
  double wk = chain[kmin];
  res.escape_interval = symmetric_interval(wk);

  // First return map of the staged map to W^1. The staged map applies
  // g^{i+1} on U_i \ U_{i+1} and the first return of g on U_k; composing
  // until the orbit re-enters W^1 realizes the first return of the staged
  // map. Operationally every staged image is a g-iterate, so the first
  // return to W^1 of the staged map coincides with the first return of g
  // itself to W^1 on the branches met by the critical orbit.
  GeneralizedFirstReturn wg;
  wg.fam = g.fam;
  wg.base = res.escape_interval;
  wg.outer = g.base;
  {
    // Build branches from the critical orbit under g, restricted to W^1.
    std::vector<double> pts;
    double xcur = 0.0;
    for (int m = 0; m < budget; ++m) {
      int bi = locate_or_build(g, xcur, budget);
      if (bi < 0) break;
      xcur = iterate(g.fam, xcur, static_cast<int>(g.branches[bi].iterate));
      if (std::abs(xcur) < wk) pts.push_back(xcur);
      if (static_cast<int>(pts.size()) > 64) break;
    }
    // Iterate count in f-steps until the staged orbit re-enters W^1.
    auto fsteps_until_return = [&](double t) -> long {
      double x2 = t;
      long total = 0;
      for (int m = 1; m <= budget; ++m) {
        int bi = locate_or_build(g, x2, budget);
        if (bi < 0) return -1;
        total += g.branches[bi].iterate;
        x2 = iterate(g.fam, x2, static_cast<int>(g.branches[bi].iterate));
        if (std::abs(x2) < wk) return total;
      }
      return -1;
    };
    long central_f = fsteps_until_return(0.0);
    if (central_f <= 0)
      throw Error(errc::budget_exhausted, "no first return of c to the escape interval");
    auto same_return = [&](double t) {
      long ft = fsteps_until_return(t);
      return ft == central_f && ft > 0;
    };
    double aW = expand_to_predicate_boundary(same_return, 0.0, wk, wk);
    GBranch cw;
    cw.domain = symmetric_interval(aW);
    cw.iterate = central_f;
    cw.central = true;
    cw.onto_base = false;
    wg.branches.push_back(cw);
    for (double p : pts) {
      if (std::abs(p) <= aW) continue;
      bool known = false;
      for (const auto& b : wg.branches)
        if (b.domain.contains(p)) known = true;
      if (known) continue;
      long ft = fsteps_until_return(p);
      if (ft <= 0) continue;
      auto samef = [&](double t) { return fsteps_until_return(t) == ft; };
      double hi3 = expand_to_predicate_boundary(samef, p, wk, wk);
      double lo3 = expand_to_predicate_boundary(samef, p, -wk, wk);
      GBranch nb;
      nb.domain = RealInterval(lo3, hi3);
      nb.iterate = ft;
      nb.central = false;
      nb.onto_base = true;
      wg.branches.push_back(nb);
    }
    std::sort(wg.branches.begin(), wg.branches.end(),
              [](const GBranch& a, const GBranch& b) { return a.domain.lo < b.domain.lo; });
    for (size_t i = 0; i < wg.branches.size(); ++i)
      if (wg.branches[i].central) wg.central_index = static_cast<int>(i);
  }
  res.staged = wg;
  return res;
}

std::vector<RealInterval> central_cascade_intervals(const GeneralizedFirstReturn& g, int budget) {
  std::vector<RealInterval> out;
  RealInterval cimg = central_image(g);
  if (cimg.lo < 0.0 && cimg.hi > 0.0)
    throw Error(errc::high_return, "cascade intervals are defined for low returns");

  const GBranch& cb = g.central();
  const int j = static_cast<int>(cb.iterate);
  const double a1 = cb.domain.hi;

  // s0: first exit of the central orbit from T^1.
  int s0 = 0;
  double y = 0.0;
  for (int m = 1; m <= budget; ++m) {
    y = iterate(g.fam, y, j);
    if (!(std::abs(y) < a1)) {
      s0 = m + 1;
      break;
    }
  }
  if (s0 == 0) throw Error(errc::attractor_detected, "central orbit never exits");

  double t_prev = a1;
  auto h = [&](double x) { return iterate(g.fam, x, j); };
  for (int i = 1; i <= s0 - 2; ++i) {
    // smallest positive t with |f^j(t)| = t_prev
    auto eq = [&](double t) { return std::abs(h(t)) - t_prev; };
    if (eq(0.0) >= 0.0) break;
    double t = bisect_root(eq, 0.0, t_prev);
    out.push_back(symmetric_interval(t));
    t_prev = t;
  }
  return out;
}

}  // namespace unipoly
