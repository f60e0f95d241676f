#include "modent/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <utility>

namespace modent::geometry {

namespace {

constexpr int kMaxRejectionAttempts = 1000;
constexpr double kSurfaceBand = 1e-10;

double sq(double v) { return v * v; }

}  // namespace

// ---------------------------------------------------------------------------
// Flows
// ---------------------------------------------------------------------------

MinkowskiPoint boost_flow(double s, const MinkowskiPoint& p, int axis) {
  if (axis < 1 || axis > 3) {
    throw SchemaError("boost_flow: axis must be 1, 2, or 3");
  }
  const double ch = std::cosh(s);
  const double sh = std::sinh(s);
  std::array<double, 4> c{p.x0, p.x1, p.x2, p.x3};
  const double t = c[0];
  const double z = c[static_cast<std::size_t>(axis)];
  c[0] = ch * t + sh * z;
  c[static_cast<std::size_t>(axis)] = sh * t + ch * z;
  return MinkowskiPoint{c[0], c[1], c[2], c[3]};
}

MinkowskiPoint translation_flow(double s, const std::array<double, 4>& direction,
                                const MinkowskiPoint& p) {
  return MinkowskiPoint{p.x0 + s * direction[0], p.x1 + s * direction[1],
                        p.x2 + s * direction[2], p.x3 + s * direction[3]};
}

double minkowski_interval(const MinkowskiPoint& p, const MinkowskiPoint& q) {
  const double d0 = q.x0 - p.x0;
  const double d1 = q.x1 - p.x1;
  const double d2 = q.x2 - p.x2;
  const double d3 = q.x3 - p.x3;
  return -d0 * d0 + d1 * d1 + d2 * d2 + d3 * d3;
}

double schwarzschild_radius(double t, double x, double mass) {
  if (!(mass > 0.0)) {
    throw NonPositiveParameters("schwarzschild_radius: mass must be positive");
  }
  const double c = x * x - t * t;
  if (!(c > -1.0)) {
    throw OutsideChart("schwarzschild_radius: x^2 - t^2 must exceed -1");
  }
  // Solve e^u (u - 1) = c for u = r/2M.  The left side increases strictly from
  // -1 (u -> 0+) onto (-1, inf), so the root is unique.
  const auto defect = [c](double u) { return std::exp(u) * (u - 1.0) - c; };
  double lo = 0.0;
  double hi = (c <= 0.0) ? 1.0 : 1.0 + std::log1p(c);
  // e^{1+log(1+c)} log(1+c) = e (1+c) log(1+c) >= c, so the bracket is valid.
  for (int it = 0; it < 200 && (hi - lo) > 1e-16 * (1.0 + hi); ++it) {
    const double mid = 0.5 * (lo + hi);
    (defect(mid) <= 0.0 ? lo : hi) = mid;
  }
  double u = 0.5 * (lo + hi);
  for (int it = 0; it < 4; ++it) {  // Newton polish; derivative e^u u > 0
    const double f = defect(u);
    const double df = std::exp(u) * u;
    if (!(df > 0.0)) break;
    const double step = f / df;
    const double next = u - step;
    if (next > 0.0) u = next;
    if (std::abs(step) < 1e-17 * (1.0 + u)) break;
  }
  return 2.0 * mass * u;
}

KruskalPoint make_kruskal_point(double t, double x, const Eigen::Vector3d& omega,
                                double mass) {
  const double n = omega.norm();
  if (!(n > 1e-12)) {
    throw SchemaError("make_kruskal_point: sphere direction must be non-zero");
  }
  KruskalPoint p;
  p.t = t;
  p.x = x;
  p.omega = omega / n;
  p.r = schwarzschild_radius(t, x, mass);  // throws OutsideChart if needed
  return p;
}

KruskalPoint kruskal_flow(double s, double mass, const KruskalPoint& p) {
  if (!(mass > 0.0)) {
    throw NonPositiveParameters("kruskal_flow: mass must be positive");
  }
  const double rap = s / (4.0 * mass);
  const double ch = std::cosh(rap);
  const double sh = std::sinh(rap);
  KruskalPoint out = p;
  out.t = ch * p.t + sh * p.x;
  out.x = sh * p.t + ch * p.x;
  if (!(out.x * out.x - out.t * out.t > -1.0)) {
    throw LeavesChart("kruskal_flow: flowed point left the chart");
  }
  return out;
}

MinkowskiPoint apply_flow(const KillingFlowChart& chart, double s,
                          const MinkowskiPoint& p) {
  switch (chart.tag) {
    case KillingFlowChart::Tag::minkowski_boost:
      return boost_flow(s, p, chart.boost_axis);
    case KillingFlowChart::Tag::minkowski_translation:
      return translation_flow(s, chart.direction, p);
    default:
      throw SchemaError("apply_flow: kruskal_time flow needs Kruskal points");
  }
}

KruskalPoint apply_flow(const KillingFlowChart& chart, double s,
                        const KruskalPoint& p) {
  if (chart.tag != KillingFlowChart::Tag::kruskal_time) {
    throw SchemaError("apply_flow: Minkowski flows need Minkowski points");
  }
  return kruskal_flow(s, chart.mass, p);
}

// ---------------------------------------------------------------------------
// Causal relations
// ---------------------------------------------------------------------------

CausalRelation causal_relation(const MinkowskiPoint& p, const MinkowskiPoint& q) {
  const double interval = minkowski_interval(p, q);
  const double d0 = q.x0 - p.x0;
  if (interval < 0.0) {
    return d0 > 0.0 ? CausalRelation::timelike_future : CausalRelation::timelike_past;
  }
  if (interval == 0.0) {
    return d0 < 0.0 ? CausalRelation::null_past : CausalRelation::null_future;
  }
  return CausalRelation::spacelike;
}

CausalRelation kruskal_causal_relation(const KruskalPoint& p, const KruskalPoint& q,
                                       double omega_tol) {
  if ((p.omega - q.omega).norm() > omega_tol) {
    throw DifferentSpheres(
        "kruskal_causal_relation: points lie on different sphere fibres");
  }
  const double dt = q.t - p.t;
  const double dx = q.x - p.x;
  const double a = std::abs(dt);
  const double b = std::abs(dx);
  if (a > b) {
    return dt > 0.0 ? CausalRelation::timelike_future : CausalRelation::timelike_past;
  }
  if (a == b) {
    return dt < 0.0 ? CausalRelation::null_past : CausalRelation::null_future;
  }
  return CausalRelation::spacelike;
}

CausalRelation swapped(CausalRelation rel) {
  switch (rel) {
    case CausalRelation::timelike_future:
      return CausalRelation::timelike_past;
    case CausalRelation::timelike_past:
      return CausalRelation::timelike_future;
    case CausalRelation::null_future:
      return CausalRelation::null_past;
    case CausalRelation::null_past:
      return CausalRelation::null_future;
    default:
      return CausalRelation::spacelike;
  }
}

// ---------------------------------------------------------------------------
// Profiles
// ---------------------------------------------------------------------------

TransverseProfile zero_profile() {
  return [](double, double) { return 0.0; };
}

TransverseProfile constant_profile(double value) {
  if (value < 0.0) {
    throw SchemaError("constant_profile: deformation must be non-negative");
  }
  return [value](double, double) { return value; };
}

TransverseProfile bump_profile(double height, double center2, double center3,
                               double width) {
  if (height < 0.0) {
    throw SchemaError("bump_profile: height must be non-negative");
  }
  if (!(width > 0.0)) {
    throw NonPositiveParameters("bump_profile: width must be positive");
  }
  return [height, center2, center3, width](double y2, double y3) {
    const double rho2 = (sq(y2 - center2) + sq(y3 - center3)) / sq(width);
    if (rho2 >= 1.0) return 0.0;
    return height * std::exp(1.0 - 1.0 / (1.0 - rho2));
  };
}

SphereProfile zero_sphere_profile() {
  return [](const Eigen::Vector3d&) { return 0.0; };
}

SphereProfile sphere_bump_profile(double height, const Eigen::Vector3d& axis,
                                  int power) {
  if (height < 0.0) {
    throw SchemaError("sphere_bump_profile: height must be non-negative");
  }
  if (power < 1) {
    throw SchemaError("sphere_bump_profile: power must be at least 1");
  }
  const double n = axis.norm();
  if (!(n > 1e-12)) {
    throw SchemaError("sphere_bump_profile: axis must be non-zero");
  }
  const Eigen::Vector3d unit = axis / n;
  return [height, unit, power](const Eigen::Vector3d& omega) {
    const double c = 0.5 * (1.0 + unit.dot(omega));
    return height * std::pow(std::max(c, 0.0), power);
  };
}

// ---------------------------------------------------------------------------
// Membership predicates
// ---------------------------------------------------------------------------

bool wedge_membership(const MinkowskiPoint& p) { return p.x1 > std::abs(p.x0); }

bool translated_wedge_membership(const std::array<double, 4>& tau,
                                 const MinkowskiPoint& p) {
  return wedge_membership(MinkowskiPoint{p.x0 - tau[0], p.x1 - tau[1],
                                         p.x2 - tau[2], p.x3 - tau[3]});
}

bool deformed_wedge_membership(const TransverseProfile& f, const MinkowskiPoint& p) {
  const double fv = f(p.x2, p.x3);
  return std::abs(p.x0 - fv) < p.x1 - fv;
}

bool strip_surface_membership(const TransverseProfile& f, double lambda,
                              const MinkowskiPoint& p, double band) {
  const double shift = f(p.x2, p.x3) + lambda;
  return std::abs(p.x0 + p.x1 - 2.0 * shift) <= band && p.x1 > shift;
}

namespace {

// Root of the defect g(s) = v e^{-rate s} - 2 shift over s > 0.  The defect is
// strictly decreasing whenever v > 0, so the root (when bracketed) is unique;
// a coarse scan rejects non-monotone defects as AmbiguousRoot.
std::optional<double> monotone_strip_root(double v, double shift, double rate) {
  if (!(shift > 0.0)) {
    throw SchemaError("strip membership: profile plus lambda must be positive");
  }
  const auto defect = [v, shift, rate](double s) {
    return v * std::exp(-rate * s) - 2.0 * shift;
  };
  if (!(v > 0.0)) return std::nullopt;        // orbit never reaches the surface
  const double g0 = v - 2.0 * shift;
  if (!(g0 > 0.0)) return std::nullopt;       // root would sit at s <= 0
  double hi = 1.0;
  int doublings = 0;
  while (defect(hi) > 0.0) {
    hi *= 2.0;
    if (++doublings > 80) {
      throw RootNotBracketed("strip membership: defect never changes sign");
    }
  }
  double prev = g0;
  for (int k = 1; k <= 8; ++k) {
    const double g = defect(hi * static_cast<double>(k) / 8.0);
    if (g > prev + 1e-12 * (std::abs(prev) + 1.0)) {
      throw AmbiguousRoot("strip membership: defect is not monotone");
    }
    prev = g;
  }
  double lo = 0.0;
  for (int it = 0; it < 200 && (hi - lo) > 1e-16 * (1.0 + hi); ++it) {
    const double mid = 0.5 * (lo + hi);
    (defect(mid) > 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

std::optional<double> minkowski_strip_root(const TransverseProfile& f, double lambda,
                                           const MinkowskiPoint& p) {
  if (!(lambda > 0.0)) {
    throw NonPositiveParameters("strip membership: lambda must be positive");
  }
  const double shift = f(p.x2, p.x3) + lambda;
  const auto root = monotone_strip_root(p.x0 + p.x1, shift, 1.0);
  if (!root) return std::nullopt;
  if (!strip_surface_membership(f, lambda, boost_flow(-*root, p), kSurfaceBand)) {
    return std::nullopt;  // root exists but the orbit foot misses the surface
  }
  return root;
}

std::optional<double> kruskal_strip_root(const SphereProfile& f, double lambda,
                                         double mass, const KruskalPoint& p) {
  if (!(lambda > 0.0)) {
    throw NonPositiveParameters("strip membership: lambda must be positive");
  }
  if (!(mass > 0.0)) {
    throw NonPositiveParameters("strip membership: mass must be positive");
  }
  const double shift = f(p.omega) + lambda;
  const auto root = monotone_strip_root(p.t + p.x, shift, 1.0 / (4.0 * mass));
  if (!root) return std::nullopt;
  KruskalPoint foot = p;
  const double rap = *root / (4.0 * mass);
  foot.t = std::cosh(rap) * p.t - std::sinh(rap) * p.x;
  foot.x = -std::sinh(rap) * p.t + std::cosh(rap) * p.x;
  if (!kruskal_strip_surface_membership(f, lambda, mass, foot, kSurfaceBand)) {
    return std::nullopt;
  }
  return root;
}

}  // namespace

bool strip_membership(const TransverseProfile& f, double lambda,
                      const MinkowskiPoint& p) {
  return minkowski_strip_root(f, lambda, p).has_value();
}

double strip_orbit_parameter(const TransverseProfile& f, double lambda,
                             const MinkowskiPoint& p) {
  const auto root = minkowski_strip_root(f, lambda, p);
  if (!root) {
    throw RootNotBracketed(
        "strip_orbit_parameter: the backward orbit does not meet the surface");
  }
  return *root;
}

bool kruskal_wedge_membership(const KruskalPoint& p) { return p.x > std::abs(p.t); }

bool kruskal_translated_wedge_membership(double lambda, const KruskalPoint& p) {
  return p.x - lambda > std::abs(p.t - lambda);
}

bool kruskal_deformed_wedge_membership(const SphereProfile& f, const KruskalPoint& p) {
  const double fv = f(p.omega);
  return std::abs(p.t - fv) < p.x - fv;
}

bool kruskal_strip_surface_membership(const SphereProfile& f, double lambda,
                                      double mass, const KruskalPoint& p,
                                      double band) {
  (void)mass;
  const double shift = f(p.omega) + lambda;
  return std::abs(p.t + p.x - 2.0 * shift) <= band && p.x > shift;
}

bool kruskal_strip_membership(const SphereProfile& f, double lambda, double mass,
                              const KruskalPoint& p) {
  return kruskal_strip_root(f, lambda, mass, p).has_value();
}

double kruskal_strip_orbit_parameter(const SphereProfile& f, double lambda,
                                     double mass, const KruskalPoint& p) {
  const auto root = kruskal_strip_root(f, lambda, mass, p);
  if (!root) {
    throw RootNotBracketed(
        "kruskal_strip_orbit_parameter: the backward orbit does not meet the "
        "surface");
  }
  return *root;
}

// ---------------------------------------------------------------------------
// Sampling
// ---------------------------------------------------------------------------

MinkowskiPoint draw_in_box(const Box4& box, CounterRng& rng) {
  MinkowskiPoint p;
  p.x0 = rng.uniform(box.lo[0], box.hi[0]);
  p.x1 = rng.uniform(box.lo[1], box.hi[1]);
  p.x2 = rng.uniform(box.lo[2], box.hi[2]);
  p.x3 = rng.uniform(box.lo[3], box.hi[3]);
  return p;
}

KruskalPoint draw_in_box(const KruskalBox& box, CounterRng& rng) {
  KruskalPoint p;
  p.t = rng.uniform(box.t_lo, box.t_hi);
  p.x = rng.uniform(box.x_lo, box.x_hi);
  double n = 0.0;
  do {
    p.omega = Eigen::Vector3d(rng.normal(), rng.normal(), rng.normal());
    n = p.omega.norm();
  } while (!(n > 1e-3));
  p.omega /= n;
  p.r = std::numeric_limits<double>::quiet_NaN();  // raw draw; see header
  return p;
}

namespace {

bool kruskal_chart_ok(const KruskalPoint& p) {
  return p.x * p.x - p.t * p.t > -1.0;
}

}  // namespace

MinkowskiRegion minkowski_wedge_region(const Box4& box) {
  return MinkowskiRegion{
      "wedge", [](const MinkowskiPoint& p) { return wedge_membership(p); },
      [box](CounterRng& rng) { return draw_in_box(box, rng); }};
}

MinkowskiRegion minkowski_translated_wedge_region(const std::array<double, 4>& tau,
                                                  const Box4& box) {
  return MinkowskiRegion{
      "translated_wedge",
      [tau](const MinkowskiPoint& p) { return translated_wedge_membership(tau, p); },
      [box](CounterRng& rng) { return draw_in_box(box, rng); }};
}

MinkowskiRegion minkowski_deformed_wedge_region(TransverseProfile f, const Box4& box) {
  return MinkowskiRegion{
      "deformed_wedge",
      [f = std::move(f)](const MinkowskiPoint& p) {
        return deformed_wedge_membership(f, p);
      },
      [box](CounterRng& rng) { return draw_in_box(box, rng); }};
}

MinkowskiRegion minkowski_strip_region(TransverseProfile f, double lambda,
                                       const Box4& box) {
  if (!(lambda > 0.0)) {
    throw NonPositiveParameters("minkowski_strip_region: lambda must be positive");
  }
  return MinkowskiRegion{
      "strip",
      [f = std::move(f), lambda](const MinkowskiPoint& p) {
        return strip_membership(f, lambda, p);
      },
      [box](CounterRng& rng) { return draw_in_box(box, rng); }};
}

MinkowskiRegion minkowski_forward_cone_region(const Box4& box) {
  return MinkowskiRegion{
      "forward_cone",
      [](const MinkowskiPoint& p) {
        return p.x0 > std::sqrt(sq(p.x1) + sq(p.x2) + sq(p.x3));
      },
      [box](CounterRng& rng) { return draw_in_box(box, rng); }};
}

KruskalRegion kruskal_wedge_region(const KruskalBox& box) {
  return KruskalRegion{
      "wedge",
      [](const KruskalPoint& p) {
        return kruskal_chart_ok(p) && kruskal_wedge_membership(p);
      },
      [box](CounterRng& rng) { return draw_in_box(box, rng); }};
}

KruskalRegion kruskal_translated_wedge_region(double lambda, const KruskalBox& box) {
  return KruskalRegion{
      "translated_wedge",
      [lambda](const KruskalPoint& p) {
        return kruskal_chart_ok(p) && kruskal_translated_wedge_membership(lambda, p);
      },
      [box](CounterRng& rng) { return draw_in_box(box, rng); }};
}

KruskalRegion kruskal_deformed_wedge_region(SphereProfile f, const KruskalBox& box) {
  return KruskalRegion{
      "deformed_wedge",
      [f = std::move(f)](const KruskalPoint& p) {
        return kruskal_chart_ok(p) && kruskal_deformed_wedge_membership(f, p);
      },
      [box](CounterRng& rng) { return draw_in_box(box, rng); }};
}

KruskalRegion kruskal_strip_region(SphereProfile f, double lambda, double mass,
                                   const KruskalBox& box) {
  if (!(lambda > 0.0)) {
    throw NonPositiveParameters("kruskal_strip_region: lambda must be positive");
  }
  if (!(mass > 0.0)) {
    throw NonPositiveParameters("kruskal_strip_region: mass must be positive");
  }
  return KruskalRegion{
      "strip",
      [f = std::move(f), lambda, mass](const KruskalPoint& p) {
        return kruskal_chart_ok(p) && kruskal_strip_membership(f, lambda, mass, p);
      },
      [box](CounterRng& rng) { return draw_in_box(box, rng); }};
}

// ---------------------------------------------------------------------------
// Monte-Carlo sweeps
// ---------------------------------------------------------------------------

namespace {

std::array<double, 6> coords(const MinkowskiPoint& p) {
  return {p.x0, p.x1, p.x2, p.x3, 0.0, 0.0};
}

std::array<double, 6> coords(const KruskalPoint& p) {
  return {p.t, p.x, p.omega.x(), p.omega.y(), p.omega.z(), 0.0};
}

template <class Point>
bool rejection_sample(const Region<Point>& region, CounterRng& rng, Point& out) {
  for (int attempt = 0; attempt < kMaxRejectionAttempts; ++attempt) {
    const Point candidate = region.draw(rng);
    if (region.member(candidate)) {
      out = candidate;
      return true;
    }
  }
  return false;
}

// Merges per-sample violation lists in index order; the result is independent
// of thread count because slot i depends only on (seed, i).
SweepReport merge_report(std::string check, std::string region, std::uint64_t seed,
                         std::size_t n_samples,
                         const std::vector<std::uint8_t>& used,
                         std::vector<std::vector<SweepViolation>>& local) {
  SweepReport report;
  report.check = std::move(check);
  report.region = std::move(region);
  report.seed = seed;
  report.samples_requested = n_samples;
  report.samples_checked =
      static_cast<std::size_t>(std::count(used.begin(), used.end(), 1));
  for (auto& list : local) {
    for (auto& violation : list) {
      ++report.violations_total;
      if (report.violations.size() < kMaxRecordedViolations) {
        report.violations.push_back(violation);
      }
    }
  }
  if (report.samples_checked == 0) {
    throw EmptySample(report.check + ": no sample was accepted by the region");
  }
  return report;
}

template <class Point>
SweepReport half_invariance_core(const Region<Point>& region,
                                 const std::function<Point(double, const Point&)>& flow,
                                 std::size_t n_samples,
                                 const std::vector<double>& s_grid, std::uint64_t seed,
                                 ExecutionPolicy policy) {
  if (n_samples == 0) {
    throw EmptySample("half_invariance_check: no samples requested");
  }
  if (s_grid.empty()) {
    throw EmptySample("half_invariance_check: empty flow-parameter grid");
  }
  std::vector<std::uint8_t> used(n_samples, 0);
  std::vector<std::vector<SweepViolation>> local(n_samples);
  const auto n = static_cast<std::int64_t>(n_samples);
  const bool parallel = policy == ExecutionPolicy::parallel;
#pragma omp parallel for schedule(static) if (parallel)
  for (std::int64_t i = 0; i < n; ++i) {
    CounterRng rng(seed, static_cast<std::uint64_t>(i));
    Point base{};
    if (!rejection_sample(region, rng, base)) continue;
    used[static_cast<std::size_t>(i)] = 1;
    for (const double s : s_grid) {
      const Point moved = flow(s, base);
      if (!region.member(moved)) {
        local[static_cast<std::size_t>(i)].push_back(SweepViolation{
            static_cast<std::size_t>(i), s, coords(moved), coords(base)});
      }
    }
  }
  return merge_report("half_invariance", region.name, seed, n_samples, used, local);
}

bool causal_or_lightlike_future(CausalRelation rel) {
  return rel == CausalRelation::timelike_future || rel == CausalRelation::null_future;
}

}  // namespace

SweepReport half_invariance_check(const MinkowskiRegion& region,
                                  const MinkowskiFlow& flow, std::size_t n_samples,
                                  const std::vector<double>& s_grid,
                                  std::uint64_t seed, ExecutionPolicy policy) {
  return half_invariance_core<MinkowskiPoint>(region, flow, n_samples, s_grid, seed,
                                              policy);
}

SweepReport half_invariance_check(const KruskalRegion& region, const KruskalFlow& flow,
                                  std::size_t n_samples,
                                  const std::vector<double>& s_grid,
                                  std::uint64_t seed, ExecutionPolicy policy) {
  return half_invariance_core<KruskalPoint>(region, flow, n_samples, s_grid, seed,
                                            policy);
}

SweepReport causal_convexity_check(const MinkowskiRegion& region,
                                   std::size_t n_triples, std::uint64_t seed,
                                   ExecutionPolicy policy) {
  if (n_triples == 0) {
    throw EmptySample("causal_convexity_check: no samples requested");
  }
  std::vector<std::uint8_t> used(n_triples, 0);
  std::vector<std::vector<SweepViolation>> local(n_triples);
  const auto n = static_cast<std::int64_t>(n_triples);
  const bool parallel = policy == ExecutionPolicy::parallel;
#pragma omp parallel for schedule(static) if (parallel)
  for (std::int64_t i = 0; i < n; ++i) {
    CounterRng rng(seed, static_cast<std::uint64_t>(i));
    MinkowskiPoint a{};
    if (!rejection_sample(region, rng, a)) continue;
    MinkowskiPoint b{};
    bool have_b = false;
    for (int attempt = 0; attempt < kMaxRejectionAttempts && !have_b; ++attempt) {
      const MinkowskiPoint candidate = region.draw(rng);
      have_b = region.member(candidate) &&
               causal_relation(a, candidate) == CausalRelation::timelike_future;
      if (have_b) b = candidate;
    }
    if (!have_b) continue;
    MinkowskiPoint q{};
    bool have_q = false;
    for (int attempt = 0; attempt < kMaxRejectionAttempts && !have_q; ++attempt) {
      const MinkowskiPoint candidate = region.draw(rng);
      have_q = causal_or_lightlike_future(causal_relation(a, candidate)) &&
               causal_or_lightlike_future(causal_relation(candidate, b));
      if (have_q) q = candidate;
    }
    if (!have_q) continue;
    used[static_cast<std::size_t>(i)] = 1;
    if (!region.member(q)) {
      local[static_cast<std::size_t>(i)].push_back(
          SweepViolation{static_cast<std::size_t>(i), 0.0, coords(q), coords(a)});
    }
  }
  return merge_report("causal_convexity", region.name, seed, n_triples, used, local);
}

namespace {

// True when some grid pair s1 < s2 has x in I+(Lambda_{s1} p) and
// x in I-(Lambda_{s2} p).  Both s-sets are half-lines for wedge points, so
// scanning from each end finds the witnesses when they exist.
bool hull_pair_exists(const MinkowskiPoint& x, const MinkowskiPoint& p,
                      const std::vector<double>& s_grid) {
  double s_plus = std::numeric_limits<double>::quiet_NaN();
  for (const double s : s_grid) {
    if (causal_relation(boost_flow(s, p), x) == CausalRelation::timelike_future) {
      s_plus = s;
      break;
    }
  }
  if (std::isnan(s_plus)) return false;
  for (auto it = s_grid.rbegin(); it != s_grid.rend(); ++it) {
    if (causal_relation(x, boost_flow(*it, p)) == CausalRelation::timelike_future) {
      return s_plus < *it;
    }
  }
  return false;
}

}  // namespace

HullReport wedge_hull_check(const MinkowskiPoint& p, std::size_t n_interior,
                            std::size_t n_exterior, std::uint64_t seed,
                            const Box4& box, double s_lo, double s_hi,
                            std::size_t n_s, ExecutionPolicy policy) {
  if (!wedge_membership(p)) {
    throw SchemaError("wedge_hull_check: base point must lie in the wedge");
  }
  if (n_interior == 0 || n_exterior == 0 || n_s < 2 || !(s_lo < s_hi)) {
    throw EmptySample("wedge_hull_check: empty sample or flow grid");
  }
  std::vector<double> s_grid(n_s);
  for (std::size_t k = 0; k < n_s; ++k) {
    s_grid[k] = s_lo + (s_hi - s_lo) * static_cast<double>(k) /
                           static_cast<double>(n_s - 1);
  }
  constexpr double kMargin = 1e-6;  // strict side distance for sampled points
  const auto run = [&](std::size_t count, bool interior,
                       std::uint64_t stream_base) -> SweepReport {
    std::vector<std::uint8_t> used(count, 0);
    std::vector<std::vector<SweepViolation>> local(count);
    const auto n = static_cast<std::int64_t>(count);
    const bool parallel = policy == ExecutionPolicy::parallel;
#pragma omp parallel for schedule(static) if (parallel)
    for (std::int64_t i = 0; i < n; ++i) {
      CounterRng rng(seed, stream_base + static_cast<std::uint64_t>(i));
      MinkowskiPoint x{};
      bool found = false;
      for (int attempt = 0; attempt < kMaxRejectionAttempts && !found; ++attempt) {
        const MinkowskiPoint candidate = draw_in_box(box, rng);
        const double side = candidate.x1 - std::abs(candidate.x0);
        found = interior ? side > kMargin : side < -kMargin;
        if (found) x = candidate;
      }
      if (!found) continue;
      used[static_cast<std::size_t>(i)] = 1;
      const bool pass = hull_pair_exists(x, p, s_grid);
      if (pass != interior) {
        local[static_cast<std::size_t>(i)].push_back(
            SweepViolation{static_cast<std::size_t>(i), 0.0, coords(x), coords(p)});
      }
    }
    return merge_report(interior ? "wedge_hull_interior" : "wedge_hull_exterior",
                        "wedge", seed, count, used, local);
  };
  HullReport report;
  report.interior = run(n_interior, true, 0);
  report.exterior = run(n_exterior, false, std::uint64_t{1} << 32);
  return report;
}

SweepReport achronality_check(const TransverseProfile& f, double lambda,
                              std::size_t n_pairs, std::uint64_t seed, double x1_max,
                              double y_max, bool equal_y, ExecutionPolicy policy) {
  if (!(lambda > 0.0)) {
    throw NonPositiveParameters("achronality_check: lambda must be positive");
  }
  if (n_pairs == 0) {
    throw EmptySample("achronality_check: no samples requested");
  }
  std::vector<std::uint8_t> used(n_pairs, 0);
  std::vector<std::vector<SweepViolation>> local(n_pairs);
  const auto n = static_cast<std::int64_t>(n_pairs);
  const bool parallel = policy == ExecutionPolicy::parallel;
#pragma omp parallel for schedule(static) if (parallel)
  for (std::int64_t i = 0; i < n; ++i) {
    CounterRng rng(seed, static_cast<std::uint64_t>(i));
    const double y2 = rng.uniform(-y_max, y_max);
    const double y3 = rng.uniform(-y_max, y_max);
    const double w2 = equal_y ? y2 : rng.uniform(-y_max, y_max);
    const double w3 = equal_y ? y3 : rng.uniform(-y_max, y_max);
    const double shift_a = f(y2, y3) + lambda;
    const double shift_b = f(w2, w3) + lambda;
    if (!(x1_max > shift_a + 1e-6) || !(x1_max > shift_b + 1e-6)) continue;
    const double x1_a = rng.uniform(shift_a + 1e-9, x1_max);
    const double x1_b = rng.uniform(shift_b + 1e-9, x1_max);
    const MinkowskiPoint a{2.0 * shift_a - x1_a, x1_a, y2, y3};
    const MinkowskiPoint b{2.0 * shift_b - x1_b, x1_b, w2, w3};
    used[static_cast<std::size_t>(i)] = 1;
    const CausalRelation rel = causal_relation(a, b);
    if (rel == CausalRelation::timelike_future ||
        rel == CausalRelation::timelike_past) {
      local[static_cast<std::size_t>(i)].push_back(
          SweepViolation{static_cast<std::size_t>(i), minkowski_interval(a, b),
                         coords(b), coords(a)});
    }
  }
  return merge_report("achronality", "strip_surface", seed, n_pairs, used, local);
}

}  // namespace modent::geometry
