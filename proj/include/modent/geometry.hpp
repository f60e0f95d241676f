#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "modent/errors.hpp"
#include "modent/rng.hpp"

// Lorentzian chart geometry: wedges, deformed wedges, and strips under Killing
// flows on the Minkowski and Kruskal-Szekeres charts.  Membership predicates
// are strict-inequality based (all regions are open); Monte-Carlo sweeps use a
// counter-based RNG keyed by (seed, sample index) so parallel and serial runs
// produce identical reports.
namespace modent::geometry {

// ---------------------------------------------------------------------------
// Points and flows
// ---------------------------------------------------------------------------

// Event in 4d Minkowski spacetime, metric signature (- + + +).
struct MinkowskiPoint {
  double x0 = 0.0;
  double x1 = 0.0;
  double x2 = 0.0;
  double x3 = 0.0;
};

// Hyperbolic rotation of rapidity s in the (x0, x_axis) plane; axis in {1,2,3}.
MinkowskiPoint boost_flow(double s, const MinkowskiPoint& p, int axis = 1);

// Translation flow p + s * direction.
MinkowskiPoint translation_flow(double s, const std::array<double, 4>& direction,
                                const MinkowskiPoint& p);

// Squared interval  -(dx0)^2 + (dx1)^2 + (dx2)^2 + (dx3)^2  from p to q.
double minkowski_interval(const MinkowskiPoint& p, const MinkowskiPoint& q);

// Event in the Kruskal-Szekeres chart: (t, x) with x^2 - t^2 > -1, a point
// omega on the unit 2-sphere, and the derived Schwarzschild radius r (set by
// make_kruskal_point for a given mass; flows preserve it since x^2 - t^2 is
// invariant).  Raw aggregates used internally by samplers may carry r = NaN.
struct KruskalPoint {
  double t = 0.0;
  double x = 0.0;
  Eigen::Vector3d omega = Eigen::Vector3d::UnitZ();
  double r = 0.0;
};

// Unique r > 0 with  x^2 - t^2 = e^{r/2M} (r/2M - 1), found by monotone
// bisection plus Newton polish; residual at the returned root is <= 1e-12
// for chart values of moderate size.  Throws OutsideChart when
// x^2 - t^2 <= -1 and NonPositiveParameters when mass <= 0.
double schwarzschild_radius(double t, double x, double mass);

// Validates the chart constraint, normalises omega, and fills in r.
KruskalPoint make_kruskal_point(double t, double x, const Eigen::Vector3d& omega,
                                double mass);

// Killing time flow: hyperbolic rotation of rapidity s/(4M) on (t, x), acting
// trivially on the sphere component.  x^2 - t^2 is exactly invariant; the
// chart constraint is re-checked to guard against rounding (LeavesChart).
KruskalPoint kruskal_flow(double s, double mass, const KruskalPoint& p);

// Chart-tagged Killing flow description (used by the batch front end).
struct KillingFlowChart {
  enum class Tag { minkowski_boost, minkowski_translation, kruskal_time };
  Tag tag = Tag::minkowski_boost;
  int boost_axis = 1;                              // minkowski_boost
  double mass = 1.0;                               // kruskal_time
  std::array<double, 4> direction{0.0, 0.0, 0.0, 0.0};  // minkowski_translation
};

// Applies the chart's flow; throws SchemaError when the point type does not
// match the chart tag.
MinkowskiPoint apply_flow(const KillingFlowChart& chart, double s,
                          const MinkowskiPoint& p);
KruskalPoint apply_flow(const KillingFlowChart& chart, double s,
                        const KruskalPoint& p);

// ---------------------------------------------------------------------------
// Causal relations
// ---------------------------------------------------------------------------

enum class CausalRelation {
  timelike_past,
  null_past,
  spacelike,
  null_future,
  timelike_future,
};

// Relation of q with respect to p (q in the future of p gives *_future).
// Coincident points report null_future (a degenerate causal curve); the
// relation is otherwise antisymmetric under swapping the arguments.
CausalRelation causal_relation(const MinkowskiPoint& p, const MinkowskiPoint& q);

// Radial causal relation at a common sphere point: the (t, x) half-plane is
// conformal to 2d Minkowski, so |dt| vs |dx| decides.  Points on different
// sphere fibres are refused (DifferentSpheres): deciding causality across the
// sphere would require geodesic integration, which this module does not
// approximate.
CausalRelation kruskal_causal_relation(const KruskalPoint& p, const KruskalPoint& q,
                                       double omega_tol = 1e-12);

CausalRelation swapped(CausalRelation rel);

// ---------------------------------------------------------------------------
// Transverse profiles (smooth, non-negative deformation functions)
// ---------------------------------------------------------------------------

// Profile over the transverse plane (x2, x3).
using TransverseProfile = std::function<double(double, double)>;

TransverseProfile zero_profile();
TransverseProfile constant_profile(double value);  // value >= 0
// Compactly supported mollifier bump of the given height centred at
// (center2, center3): h * exp(1 - 1/(1 - rho^2)) for rho = |y - c|/width < 1.
TransverseProfile bump_profile(double height, double center2, double center3,
                               double width);

// Profile over the unit sphere.
using SphereProfile = std::function<double(const Eigen::Vector3d&)>;

SphereProfile zero_sphere_profile();
// h * ((1 + omega . axis)/2)^power, smooth and non-negative on the sphere.
SphereProfile sphere_bump_profile(double height, const Eigen::Vector3d& axis,
                                  int power = 2);

// ---------------------------------------------------------------------------
// Region membership (all predicates strict; regions are open)
// ---------------------------------------------------------------------------

// Right wedge W0 = { x1 > |x0| }.
bool wedge_membership(const MinkowskiPoint& p);
// Translate of W0 by tau: p - tau in W0.
bool translated_wedge_membership(const std::array<double, 4>& tau,
                                 const MinkowskiPoint& p);
// Deformed wedge W_f = { |x0 - f(y)| < x1 - f(y) }.
bool deformed_wedge_membership(const TransverseProfile& f, const MinkowskiPoint& p);

// Null surface A_{f+lambda}: x0 = -x1 + 2(f(y) + lambda) with x1 > f(y) + lambda.
// Equality holds within `band`; the inequality is strict.
bool strip_surface_membership(const TransverseProfile& f, double lambda,
                              const MinkowskiPoint& p, double band = 1e-10);

// Membership in the positive boost half-orbit of A_{f+lambda}: decided by
// bracketed bisection on the monotone defect g(s) = (x0+x1) e^{-s} - 2(f(y)+lambda)
// followed by a surface check at the root.  Points not reached by the forward
// orbit return false.  Throws NonPositiveParameters when lambda <= 0 and
// AmbiguousRoot if the sampled defect fails to decrease monotonically.
bool strip_membership(const TransverseProfile& f, double lambda,
                      const MinkowskiPoint& p);

// Diagnostic variant: returns the orbit parameter s > 0 with boost_flow(-s, p)
// on the surface; throws RootNotBracketed when p is not in the strip.
double strip_orbit_parameter(const TransverseProfile& f, double lambda,
                             const MinkowskiPoint& p);

// Kruskal right exterior wedge W+ = { x > |t| } and its relatives.
bool kruskal_wedge_membership(const KruskalPoint& p);
// W+ + (lambda, lambda) on the (t, x) component.
bool kruskal_translated_wedge_membership(double lambda, const KruskalPoint& p);
// { |t - f(omega)| < x - f(omega) }.
bool kruskal_deformed_wedge_membership(const SphereProfile& f, const KruskalPoint& p);
// Deformed horizon h_{f+lambda}: t = -x + 2(f(omega)+lambda), x > f(omega)+lambda.
bool kruskal_strip_surface_membership(const SphereProfile& f, double lambda,
                                      double mass, const KruskalPoint& p,
                                      double band = 1e-10);
// Positive Killing half-orbit of h_{f+lambda} (rapidity scale 1/(4M)).
bool kruskal_strip_membership(const SphereProfile& f, double lambda, double mass,
                              const KruskalPoint& p);
double kruskal_strip_orbit_parameter(const SphereProfile& f, double lambda,
                                     double mass, const KruskalPoint& p);

// ---------------------------------------------------------------------------
// Sampled regions and Monte-Carlo sweeps
// ---------------------------------------------------------------------------

// Axis-aligned sampling box for Minkowski points.
struct Box4 {
  std::array<double, 4> lo{-1.0, -1.0, -1.0, -1.0};
  std::array<double, 4> hi{1.0, 1.0, 1.0, 1.0};
};

MinkowskiPoint draw_in_box(const Box4& box, CounterRng& rng);

// Sampling box for the (t, x) component of Kruskal points; the sphere
// component is drawn uniformly.
struct KruskalBox {
  double t_lo = -1.0;
  double t_hi = 1.0;
  double x_lo = 0.0;
  double x_hi = 2.0;
};

KruskalPoint draw_in_box(const KruskalBox& box, CounterRng& rng);

// A region bundles a strict membership predicate with a raw bounding-box
// sampler; sweeps rejection-sample by drawing from `draw` until `member`.
template <class Point>
struct Region {
  std::string name;
  std::function<bool(const Point&)> member;
  std::function<Point(CounterRng&)> draw;
};

using MinkowskiRegion = Region<MinkowskiPoint>;
using KruskalRegion = Region<KruskalPoint>;

MinkowskiRegion minkowski_wedge_region(const Box4& box);
MinkowskiRegion minkowski_translated_wedge_region(const std::array<double, 4>& tau,
                                                  const Box4& box);
MinkowskiRegion minkowski_deformed_wedge_region(TransverseProfile f, const Box4& box);
MinkowskiRegion minkowski_strip_region(TransverseProfile f, double lambda,
                                       const Box4& box);
// Forward light cone { x0 > |vec x| } (half-invariant under future time
// translations).
MinkowskiRegion minkowski_forward_cone_region(const Box4& box);

KruskalRegion kruskal_wedge_region(const KruskalBox& box);
KruskalRegion kruskal_translated_wedge_region(double lambda, const KruskalBox& box);
KruskalRegion kruskal_deformed_wedge_region(SphereProfile f, const KruskalBox& box);
KruskalRegion kruskal_strip_region(SphereProfile f, double lambda, double mass,
                                   const KruskalBox& box);

using MinkowskiFlow = std::function<MinkowskiPoint(double, const MinkowskiPoint&)>;
using KruskalFlow = std::function<KruskalPoint(double, const KruskalPoint&)>;

enum class ExecutionPolicy { serial, parallel };

struct SweepViolation {
  std::size_t sample_index = 0;
  // Flow parameter for invariance sweeps; squared interval for achronality
  // sweeps; unused (0) for convexity sweeps.
  double s = 0.0;
  // Chart coordinates of the offending point: Minkowski (x0,x1,x2,x3,0,0) or
  // Kruskal (t,x,omega,...) truncated to six slots.
  std::array<double, 6> point{};
  // Companion point (pre-flow base, diamond endpoint, or the other element of
  // an achronality pair).
  std::array<double, 6> partner{};
};

struct SweepReport {
  std::string check;
  std::string region;
  std::uint64_t seed = 0;
  std::size_t samples_requested = 0;
  std::size_t samples_checked = 0;
  std::size_t violations_total = 0;
  // First violations in sample-index order (capped; violations_total counts all).
  std::vector<SweepViolation> violations;
};

inline constexpr std::size_t kMaxRecordedViolations = 256;

// Checks Lambda_s(region) within region for every s in s_grid over rejection
// samples of the region.  Every accepted sample is checked at every grid
// value; violations list the escaped point and its base.  Throws EmptySample
// when no sample is accepted (or the inputs are empty).
SweepReport half_invariance_check(const MinkowskiRegion& region,
                                  const MinkowskiFlow& flow, std::size_t n_samples,
                                  const std::vector<double>& s_grid,
                                  std::uint64_t seed,
                                  ExecutionPolicy policy = ExecutionPolicy::parallel);
SweepReport half_invariance_check(const KruskalRegion& region,
                                  const KruskalFlow& flow, std::size_t n_samples,
                                  const std::vector<double>& s_grid,
                                  std::uint64_t seed,
                                  ExecutionPolicy policy = ExecutionPolicy::parallel);

// Samples triples a, b in the region with b in I+(a) and q in J+(a) & J-(b);
// q must lie in the region, otherwise the triple is a violation (q reported,
// a as partner).  Throws EmptySample when no complete triple is assembled.
SweepReport causal_convexity_check(const MinkowskiRegion& region,
                                   std::size_t n_triples, std::uint64_t seed,
                                   ExecutionPolicy policy = ExecutionPolicy::parallel);

struct HullReport {
  SweepReport interior;  // wedge points failing the two-sided orbit cone test
  SweepReport exterior;  // exterior points wrongly passing it
};

// Samples x in W0 (interior sweep) and outside the closed wedge (exterior
// sweep) within `box` and searches an s-grid on [s_lo, s_hi] for s1 < s2 with
// x in I+(Lambda_{s1} p) and x in I-(Lambda_{s2} p).  Interior points must
// admit such a pair, exterior points must not.  The base point p must lie in
// W0 (SchemaError otherwise).
HullReport wedge_hull_check(const MinkowskiPoint& p, std::size_t n_interior,
                            std::size_t n_exterior, std::uint64_t seed,
                            const Box4& box, double s_lo = -40.0, double s_hi = 40.0,
                            std::size_t n_s = 161,
                            ExecutionPolicy policy = ExecutionPolicy::parallel);

// Samples pairs on the surface A_{f+lambda} (x1 up to x1_max, transverse
// coordinates up to |y| <= y_max, equal transverse point when equal_y) and
// reports timelike-separated pairs as violations (s holds the squared
// interval).  Constant profiles give null planes, which are achronal; for
// non-constant profiles the surface acquires timelike tangent directions
// wherever the transverse gradient is non-zero, and this sweep exhibits
// explicit violating pairs.
SweepReport achronality_check(const TransverseProfile& f, double lambda,
                              std::size_t n_pairs, std::uint64_t seed,
                              double x1_max, double y_max, bool equal_y = false,
                              ExecutionPolicy policy = ExecutionPolicy::parallel);

}  // namespace modent::geometry
