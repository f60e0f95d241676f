#include "modent/jobs.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "modent/acceptance.hpp"
#include "modent/errors.hpp"
#include "modent/fock.hpp"
#include "modent/geometry.hpp"
#include "modent/linalg.hpp"
#include "modent/one_particle.hpp"
#include "modent/schrodinger_ray.hpp"
#include "modent/standard_subspace.hpp"
#include "modent/wave_packet.hpp"

namespace modent::jobs {

namespace {

namespace geo = geometry;
namespace ss = standard_subspace;
namespace sr = schrodinger_ray;
using json = nlohmann::json;
using wave_packet::WavePacket;

void require(bool condition, const std::string& message) {
  if (!condition) throw SchemaError(message);
}

double require_number(const json& doc, const std::string& key) {
  require(doc.contains(key) && doc.at(key).is_number(),
          "missing numeric field '" + key + "'");
  return doc.at(key).get<double>();
}

double number_or(const json& doc, const std::string& key, double fallback) {
  if (!doc.contains(key)) return fallback;
  require(doc.at(key).is_number(), "field '" + key + "' must be a number");
  return doc.at(key).get<double>();
}

int int_or(const json& doc, const std::string& key, int fallback) {
  if (!doc.contains(key)) return fallback;
  require(doc.at(key).is_number_integer(),
          "field '" + key + "' must be an integer");
  return doc.at(key).get<int>();
}

std::vector<double> parse_double_array(const json& node,
                                       const std::string& what) {
  require(node.is_array() && !node.empty(),
          what + " must be a non-empty array of numbers");
  std::vector<double> out;
  out.reserve(node.size());
  for (const auto& entry : node) {
    require(entry.is_number(), what + " must contain only numbers");
    out.push_back(entry.get<double>());
  }
  return out;
}

Eigen::VectorXcd parse_cvec(const json& node, const std::string& what) {
  require(node.is_array() && !node.empty(),
          what + " must be a non-empty array of [re, im] pairs");
  Eigen::VectorXcd v(static_cast<int>(node.size()));
  for (int k = 0; k < v.size(); ++k) {
    const auto& pair = node.at(k);
    require(pair.is_array() && pair.size() == 2 && pair.at(0).is_number() &&
                pair.at(1).is_number(),
            what + " entries must be [re, im] pairs");
    v(k) = std::complex<double>(pair.at(0).get<double>(),
                                pair.at(1).get<double>());
  }
  return v;
}

Eigen::MatrixXd parse_matrix(const json& node, const std::string& what) {
  require(node.is_array() && !node.empty(), what + " must be a matrix");
  const std::size_t cols = node.at(0).size();
  Eigen::MatrixXd m(static_cast<int>(node.size()), static_cast<int>(cols));
  for (std::size_t r = 0; r < node.size(); ++r) {
    const auto& row = node.at(r);
    require(row.is_array() && row.size() == cols,
            what + " rows must have equal length");
    for (std::size_t c = 0; c < cols; ++c) {
      require(row.at(c).is_number(), what + " must contain only numbers");
      m(static_cast<int>(r), static_cast<int>(c)) = row.at(c).get<double>();
    }
  }
  return m;
}

json to_json(const Eigen::VectorXd& v) {
  json out = json::array();
  for (int k = 0; k < v.size(); ++k) out.push_back(v(k));
  return out;
}

json verdict(const std::string& name, bool pass, double margin) {
  return json{{"name", name}, {"pass", pass}, {"margin", margin}};
}

json envelope(const std::string& command, json config, json results,
              json verdicts) {
  return json{{"command", command},
              {"config", std::move(config)},
              {"results", std::move(results)},
              {"verdicts", std::move(verdicts)}};
}

// ---------------------------------------------------------------------------
// entropy-profile
// ---------------------------------------------------------------------------

WavePacket parse_packet(const json& in) {
  if (in.contains("type")) {
    const std::string type = in.at("type").get<std::string>();
    if (type == "tent") {
      return WavePacket::tent(number_or(in, "lo", 0.0),
                              number_or(in, "peak", 1.0),
                              number_or(in, "hi", 2.0),
                              number_or(in, "height", 1.0));
    }
    if (type == "bump") {
      return WavePacket::bump(number_or(in, "lo", 0.0),
                              number_or(in, "hi", 2.0),
                              number_or(in, "height", 1.0));
    }
    if (type == "linear") {
      return WavePacket::from_linear(
          parse_double_array(in.at("knots"), "knots"),
          parse_double_array(in.at("values"), "values"));
    }
    throw SchemaError("unknown packet type '" + type + "'");
  }
  require(in.contains("knots") && in.contains("values") &&
              in.contains("derivs"),
          "packet needs either a 'type' or Hermite data "
          "(knots/values/derivs)");
  return WavePacket::from_hermite(parse_double_array(in.at("knots"), "knots"),
                                  parse_double_array(in.at("values"), "values"),
                                  parse_double_array(in.at("derivs"), "derivs"));
}

json run_entropy_profile(const json& in, const JobOptions& options) {
  const WavePacket phi = parse_packet(in);
  const double tol = options.tol.value_or(number_or(in, "tol", 1e-8));
  require(tol > 0.0, "tolerance must be positive");

  std::vector<double> grid;
  if (in.contains("lambda_grid")) {
    grid = parse_double_array(in.at("lambda_grid"), "lambda_grid");
  } else {
    const double lo = number_or(in, "lambda_min", phi.support_lo());
    const double hi = number_or(in, "lambda_max", phi.support_hi() + 0.5);
    const int points =
        options.grid.value_or(int_or(in, "points", 200));
    require(points >= 2, "grid needs at least two points");
    require(hi > lo, "lambda_max must exceed lambda_min");
    grid.resize(points);
    for (int j = 0; j < points; ++j)
      grid[j] = lo + (hi - lo) * j / (points - 1.0);
  }

  json config = in;
  config["lambda_grid"] = grid;
  config["tol"] = tol;
  config.erase("lambda_min");
  config.erase("lambda_max");
  config.erase("points");

  const auto profile = sr::entropy_profile(phi, grid, true, tol);
  json rows = json::array();
  double min_margin = 0.0;
  for (int j = 0; j < profile.lambda_grid.size(); ++j) {
    rows.push_back({profile.lambda_grid(j), profile.S(j), profile.dS(j),
                    profile.d2S(j), profile.convexity_margin(j)});
    min_margin = std::min(min_margin, profile.convexity_margin(j));
  }
  json violations = json::array();
  for (const auto& v : profile.convexity_report)
    violations.push_back(
        {{"lambda", v.lambda}, {"second_difference", v.second_difference}});

  json results{{"rows", rows},
               {"convexity_violations", violations},
               {"min_convexity_margin", min_margin}};
  json verdicts = json::array();
  verdicts.push_back(verdict("convexity", profile.convexity_report.empty(),
                             (min_margin + tol) / tol));
  return envelope("entropy-profile", std::move(config), std::move(results),
                  std::move(verdicts));
}

// ---------------------------------------------------------------------------
// modular
// ---------------------------------------------------------------------------

json run_modular(const json& in, const JobOptions& options) {
  const int n = int_or(in, "ambient_dim", 0);
  require(n >= 1, "ambient_dim must be a positive integer");
  require(in.contains("span"), "missing 'span'");
  const auto& span_node = in.at("span");
  require(span_node.is_array() && !span_node.empty(),
          "'span' must be a non-empty array of vectors");
  Eigen::MatrixXcd span(n, static_cast<int>(span_node.size()));
  for (int c = 0; c < span.cols(); ++c) {
    const Eigen::VectorXcd v = parse_cvec(span_node.at(c), "span vector");
    require(v.size() == n, "span vectors must have ambient_dim entries");
    span.col(c) = v;
  }
  const double tol = options.tol.value_or(number_or(in, "tol", 1e-10));
  require(tol > 0.0, "tolerance must be positive");
  json config = in;
  config["tol"] = tol;

  const auto h = ss::RealSubspace::from_complex_span(span);
  const auto standardness = ss::is_standard(h);
  json results{{"ambient_dim", n},
               {"real_dim", h.real_dim()},
               {"separating", standardness.separating},
               {"generating", standardness.generating},
               {"standard", standardness.standard()},
               {"separating_margin", standardness.separating_margin},
               {"abelian", ss::is_abelian(h)},
               {"factorial", ss::is_factorial(h)}};
  json verdicts = json::array();
  verdicts.push_back(verdict("standard", standardness.standard(),
                             standardness.standard() ? 1.0 : -1.0));
  if (standardness.standard()) {
    const auto md = ss::modular_data(h);
    results["modular_spectrum"] = to_json(md.delta_eigenvalues);
    results["condition"] = md.condition;
    const double jdj = la::operator_norm(
        md.j_real * md.delta_real * md.j_real - md.delta_real.inverse());
    const double fix =
        la::operator_norm(md.s_real * h.basis() - h.basis());
    results["identity_residuals"] = {{"jdj_vs_inverse", jdj},
                                     {"fixed_points", fix}};
    const double worst = std::max(jdj, fix);
    verdicts.push_back(
        verdict("modular-identities", worst <= tol, 1.0 - worst / tol));
    if (in.contains("phi")) {
      const Eigen::VectorXcd phi = parse_cvec(in.at("phi"), "phi");
      require(phi.size() == n, "phi must have ambient_dim entries");
      results["entropy"] = ss::entropy(h, phi);
      results["finiteness_functional"] = ss::finiteness_functional(h, phi);
    }
  }
  return envelope("modular", std::move(config), std::move(results),
                  std::move(verdicts));
}

// ---------------------------------------------------------------------------
// one-particle
// ---------------------------------------------------------------------------

json run_one_particle(const json& in, const JobOptions& options) {
  const double tol = options.tol.value_or(number_or(in, "tol", 1e-10));
  require(tol > 0.0, "tolerance must be positive");
  json config = in;
  config["tol"] = tol;

  const bool thermal = in.contains("omega") || in.contains("beta");
  one_particle::SymplecticData data;
  double omega = 0.0, beta = 0.0;
  if (thermal) {
    omega = require_number(in, "omega");
    beta = require_number(in, "beta");
    data = one_particle::thermal_mode(omega, beta).data;
  } else {
    require(in.contains("sigma") && in.contains("mu"),
            "need either sigma/mu matrices or omega/beta");
    data.sigma = parse_matrix(in.at("sigma"), "sigma");
    data.mu = parse_matrix(in.at("mu"), "mu");
    one_particle::validate(data);
  }

  const auto structure = one_particle::build_one_particle(data);
  const Eigen::MatrixXcd gram = structure.gram();
  const double re_err = la::operator_norm(gram.real() - data.mu);
  const double im_err = la::operator_norm(gram.imag() - data.sigma);
  json results{{"dim", data.dim()},
               {"rank", structure.rank()},
               {"dropped_dimensions", structure.dropped_dimensions()},
               {"kernel_spectrum", to_json(structure.kernel_spectrum())},
               {"gram_residual_re", re_err},
               {"gram_residual_im", im_err}};
  json verdicts = json::array();
  const double worst = std::max(re_err, im_err);
  verdicts.push_back(
      verdict("gram-conditions", worst <= tol, 1.0 - worst / tol));

  if (thermal) {
    const auto h = one_particle::local_subspace(structure, {0, 1});
    const auto md = ss::modular_data(h);
    results["modular_spectrum"] = to_json(md.delta_eigenvalues);
    const double bw = beta * omega;
    results["expected_spectrum"] = {std::exp(-bw), std::exp(bw)};
    const double err =
        std::max(std::abs(md.delta_eigenvalues(0) - std::exp(-bw)),
                 std::abs(md.delta_eigenvalues(1) - std::exp(bw)));
    verdicts.push_back(
        verdict("thermal-spectrum", err <= 1e-8, 1.0 - err / 1e-8));
  }
  return envelope("one-particle", std::move(config), std::move(results),
                  std::move(verdicts));
}

// ---------------------------------------------------------------------------
// fock-verify
// ---------------------------------------------------------------------------

json run_fock_verify(const json& in, const JobOptions& options) {
  const double theta = require_number(in, "theta");
  require(theta > 0.0, "theta must be positive");
  const Eigen::VectorXcd phi = parse_cvec(in.at("phi"), "phi");
  require(phi.size() == 2, "phi must have two components");
  const int cutoff = options.cutoff.value_or(int_or(in, "cutoff", 60));
  require(cutoff >= 2, "cutoff must be at least 2");
  const double tol = options.tol.value_or(number_or(in, "tol", 1e-3));
  require(tol > 0.0, "tolerance must be positive");
  json config = in;
  config["cutoff"] = cutoff;
  config["tol"] = tol;

  const auto h = ss::thermal_pair_subspace(std::exp(-theta));
  const double first_quantized = ss::entropy(h, phi);
  const auto oracle = fock::araki_relative_entropy_oracle(h, phi, cutoff);
  const double rel = std::abs(oracle.relative_entropy - first_quantized) /
                     std::max(first_quantized, 1e-6);

  json results{{"first_quantized_entropy", first_quantized},
               {"oracle_entropy", oracle.relative_entropy},
               {"relative_deviation", rel},
               {"theta", oracle.theta},
               {"displacement_abs", oracle.displacement_abs},
               {"thermal_tail", oracle.thermal_tail},
               {"displacement_tail", oracle.displacement_tail},
               {"gamma_ratio_defect", oracle.gamma_ratio_defect}};
  json verdicts = json::array();
  verdicts.push_back(verdict("oracle-agreement", rel <= tol, 1.0 - rel / tol));
  return envelope("fock-verify", std::move(config), std::move(results),
                  std::move(verdicts));
}

// ---------------------------------------------------------------------------
// geometry-sweep
// ---------------------------------------------------------------------------

geo::TransverseProfile parse_transverse_profile(const json& region) {
  if (!region.contains("f")) return geo::zero_profile();
  const auto& f = region.at("f");
  const std::string type = f.value("type", "zero");
  if (type == "zero") return geo::zero_profile();
  if (type == "constant")
    return geo::constant_profile(require_number(f, "value"));
  if (type == "bump") {
    std::array<double, 2> center{0.0, 0.0};
    if (f.contains("center")) {
      const auto c = parse_double_array(f.at("center"), "center");
      require(c.size() == 2, "bump center must have two entries");
      center = {c[0], c[1]};
    }
    return geo::bump_profile(require_number(f, "height"), center[0], center[1],
                             number_or(f, "width", 1.0));
  }
  throw SchemaError("unknown transverse profile type '" + type + "'");
}

geo::SphereProfile parse_sphere_profile(const json& region) {
  if (!region.contains("f")) return geo::zero_sphere_profile();
  const auto& f = region.at("f");
  const std::string type = f.value("type", "zero");
  if (type == "zero") return geo::zero_sphere_profile();
  if (type == "constant") {
    const double value = require_number(f, "value");
    require(value >= 0.0, "constant sphere profile must be non-negative");
    return [value](const Eigen::Vector3d&) { return value; };
  }
  if (type == "bump" || type == "sphere_bump") {
    Eigen::Vector3d axis = Eigen::Vector3d::UnitZ();
    if (f.contains("axis")) {
      const auto a = parse_double_array(f.at("axis"), "axis");
      require(a.size() == 3, "sphere profile axis must have three entries");
      axis = Eigen::Vector3d(a[0], a[1], a[2]);
    }
    return geo::sphere_bump_profile(require_number(f, "height"), axis,
                                    int_or(f, "power", 2));
  }
  throw SchemaError("unknown sphere profile type '" + type + "'");
}

geo::Box4 parse_box4(const json& in) {
  geo::Box4 box{{-6.0, 0.0, -2.0, -2.0}, {6.0, 8.0, 2.0, 2.0}};
  if (in.contains("box")) {
    const auto& b = in.at("box");
    const auto lo = parse_double_array(b.at("lo"), "box lo");
    const auto hi = parse_double_array(b.at("hi"), "box hi");
    require(lo.size() == 4 && hi.size() == 4,
            "minkowski box bounds must have four entries");
    for (int k = 0; k < 4; ++k) {
      require(hi[k] > lo[k], "box bounds must satisfy hi > lo");
      box.lo[k] = lo[k];
      box.hi[k] = hi[k];
    }
  }
  return box;
}

geo::KruskalBox parse_kruskal_box(const json& in) {
  geo::KruskalBox box{-4.0, 4.0, 0.0, 6.0};
  if (in.contains("box")) {
    const auto& b = in.at("box");
    box.t_lo = number_or(b, "t_lo", box.t_lo);
    box.t_hi = number_or(b, "t_hi", box.t_hi);
    box.x_lo = number_or(b, "x_lo", box.x_lo);
    box.x_hi = number_or(b, "x_hi", box.x_hi);
    require(box.t_hi > box.t_lo && box.x_hi > box.x_lo,
            "kruskal box bounds must satisfy hi > lo");
  }
  return box;
}

std::array<double, 4> parse_point4(const json& node, const std::string& what) {
  const auto v = parse_double_array(node, what);
  require(v.size() == 4, what + " must have four entries");
  return {v[0], v[1], v[2], v[3]};
}

geo::MinkowskiRegion build_minkowski_region(const json& region,
                                            const geo::Box4& box) {
  const std::string type = region.value("type", "");
  const double lambda = number_or(region, "lambda", 0.0);
  if (type == "wedge") return geo::minkowski_wedge_region(box);
  if (type == "translated_wedge") {
    require(region.contains("tau"), "translated_wedge needs 'tau'");
    return geo::minkowski_translated_wedge_region(
        parse_point4(region.at("tau"), "tau"), box);
  }
  if (type == "deformed_wedge") {
    require(lambda >= 0.0, "lambda must be non-negative");
    const auto f = parse_transverse_profile(region);
    if (lambda == 0.0) return geo::minkowski_deformed_wedge_region(f, box);
    return geo::minkowski_deformed_wedge_region(
        [f, lambda](double a, double b) { return f(a, b) + lambda; }, box);
  }
  if (type == "strip") {
    return geo::minkowski_strip_region(parse_transverse_profile(region),
                                       lambda, box);
  }
  if (type == "forward_cone") return geo::minkowski_forward_cone_region(box);
  throw SchemaError("unknown minkowski region type '" + type + "'");
}

geo::KruskalRegion build_kruskal_region(const json& region, double mass,
                                        const geo::KruskalBox& box) {
  const std::string type = region.value("type", "");
  const double lambda = number_or(region, "lambda", 0.0);
  if (type == "wedge") return geo::kruskal_wedge_region(box);
  if (type == "translated_wedge")
    return geo::kruskal_translated_wedge_region(lambda, box);
  if (type == "deformed_wedge") {
    require(lambda >= 0.0, "lambda must be non-negative");
    const auto f = parse_sphere_profile(region);
    if (lambda == 0.0) return geo::kruskal_deformed_wedge_region(f, box);
    return geo::kruskal_deformed_wedge_region(
        [f, lambda](const Eigen::Vector3d& omega) { return f(omega) + lambda; },
        box);
  }
  if (type == "strip") {
    return geo::kruskal_strip_region(parse_sphere_profile(region), lambda,
                                     mass, box);
  }
  throw SchemaError("unknown kruskal region type '" + type + "'");
}

geo::MinkowskiFlow parse_minkowski_flow(const json& in) {
  const json flow = in.value("flow", json{{"type", "boost"}});
  const std::string type = flow.value("type", "boost");
  if (type == "boost") {
    const int axis = int_or(flow, "axis", 1);
    return [axis](double s, const geo::MinkowskiPoint& p) {
      return geo::boost_flow(s, p, axis);
    };
  }
  if (type == "translation") {
    require(flow.contains("direction"), "translation flow needs 'direction'");
    const auto dir = parse_point4(flow.at("direction"), "direction");
    return [dir](double s, const geo::MinkowskiPoint& p) {
      return geo::translation_flow(s, dir, p);
    };
  }
  throw SchemaError("unknown minkowski flow type '" + type + "'");
}

json report_to_json(const geo::SweepReport& report) {
  json violations = json::array();
  for (const auto& v : report.violations) {
    violations.push_back({{"sample_index", v.sample_index},
                          {"s", v.s},
                          {"point", v.point},
                          {"partner", v.partner}});
  }
  return json{{"check", report.check},
              {"region", report.region},
              {"seed", report.seed},
              {"samples_requested", report.samples_requested},
              {"samples_checked", report.samples_checked},
              {"violations_total", report.violations_total},
              {"violations", std::move(violations)}};
}

std::array<double, 6> coords_of(const geo::MinkowskiPoint& p) {
  return {p.x0, p.x1, p.x2, p.x3, 0.0, 0.0};
}

std::array<double, 6> coords_of(const geo::KruskalPoint& p) {
  return {p.t, p.x, p.omega.x(), p.omega.y(), p.omega.z(), 0.0};
}

json run_geometry_sweep(const json& in, const JobOptions& options) {
  std::uint64_t seed = 0;
  if (options.seed) {
    seed = *options.seed;
  } else if (in.contains("seed")) {
    require(in.at("seed").is_number(), "seed must be a number");
    seed = in.at("seed").get<std::uint64_t>();
  } else {
    throw SchemaError(
        "geometry-sweep is a Monte-Carlo command and needs a seed "
        "(--seed or input field)");
  }
  const std::size_t samples = options.samples.value_or(
      static_cast<std::size_t>(int_or(in, "samples", 10000)));
  require(samples > 0, "samples must be positive");
  const std::string chart = in.value("chart", "minkowski");
  const std::string check = in.value("check", "half_invariance");
  const bool expect_violations = in.value("expect_violations", false);
  require(in.contains("region") && in.at("region").is_object(),
          "missing 'region' object");
  const json& region_spec = in.at("region");
  const double mass = number_or(in, "mass", 1.0);
  require(mass > 0.0, "mass must be positive");

  json config = in;
  config["seed"] = seed;
  config["samples"] = samples;

  std::vector<geo::SweepReport> reports;
  if (chart == "minkowski") {
    const geo::Box4 box = parse_box4(in);
    if (check == "half_invariance") {
      const auto region = build_minkowski_region(region_spec, box);
      const auto flow = parse_minkowski_flow(in);
      const auto s_grid = in.contains("s_grid")
                              ? parse_double_array(in.at("s_grid"), "s_grid")
                              : std::vector<double>{0.1, 1.0, 5.0};
      reports.push_back(
          geo::half_invariance_check(region, flow, samples, s_grid, seed));
    } else if (check == "convexity") {
      const auto region = build_minkowski_region(region_spec, box);
      reports.push_back(geo::causal_convexity_check(region, samples, seed));
    } else if (check == "equivalence") {
      require(region_spec.value("type", "") == "strip",
              "equivalence check expects a strip region");
      const auto f = parse_transverse_profile(region_spec);
      const double lambda = number_or(region_spec, "lambda", 1.0);
      require(lambda > 0.0, "lambda must be positive");
      const geo::TransverseProfile shifted = [f, lambda](double a, double b) {
        return f(a, b) + lambda;
      };
      geo::SweepReport rep;
      rep.check = "equivalence";
      rep.region = "strip_vs_deformed_wedge";
      rep.seed = seed;
      rep.samples_requested = samples;
      for (std::size_t i = 0; i < samples; ++i) {
        CounterRng rng(seed, i);
        const auto p = geo::draw_in_box(box, rng);
        ++rep.samples_checked;
        if (geo::strip_membership(f, lambda, p) !=
            geo::deformed_wedge_membership(shifted, p)) {
          ++rep.violations_total;
          if (rep.violations.size() < geo::kMaxRecordedViolations)
            rep.violations.push_back({i, 0.0, coords_of(p), coords_of(p)});
        }
      }
      reports.push_back(std::move(rep));
    } else if (check == "hull") {
      geo::MinkowskiPoint base{0.0, 1.0, 0.0, 0.0};
      if (in.contains("base_point")) {
        const auto b = parse_point4(in.at("base_point"), "base_point");
        base = {b[0], b[1], b[2], b[3]};
      }
      const auto hull =
          geo::wedge_hull_check(base, samples, samples, seed, box);
      reports.push_back(hull.interior);
      reports.push_back(hull.exterior);
    } else if (check == "achronality") {
      const auto f = parse_transverse_profile(region_spec);
      const double lambda = number_or(region_spec, "lambda", 1.0);
      reports.push_back(geo::achronality_check(
          f, lambda, samples, seed, number_or(in, "x1_max", 6.0),
          number_or(in, "y_max", 2.0), in.value("equal_y", false)));
    } else {
      throw SchemaError("unknown check '" + check + "'");
    }
  } else if (chart == "kruskal") {
    const geo::KruskalBox box = parse_kruskal_box(in);
    const geo::KruskalFlow flow = [mass](double s, const geo::KruskalPoint& p) {
      return geo::kruskal_flow(s, mass, p);
    };
    if (check == "half_invariance") {
      const auto region = build_kruskal_region(region_spec, mass, box);
      const auto s_grid = in.contains("s_grid")
                              ? parse_double_array(in.at("s_grid"), "s_grid")
                              : std::vector<double>{0.1, 1.0, 5.0};
      reports.push_back(
          geo::half_invariance_check(region, flow, samples, s_grid, seed));
    } else if (check == "equivalence") {
      require(region_spec.value("type", "") == "strip",
              "equivalence check expects a strip region");
      const auto f = parse_sphere_profile(region_spec);
      const double lambda = number_or(region_spec, "lambda", 1.0);
      require(lambda > 0.0, "lambda must be positive");
      const geo::SphereProfile shifted =
          [f, lambda](const Eigen::Vector3d& omega) {
            return f(omega) + lambda;
          };
      geo::SweepReport rep;
      rep.check = "equivalence";
      rep.region = "strip_vs_deformed_wedge";
      rep.seed = seed;
      rep.samples_requested = samples;
      for (std::size_t i = 0; i < samples; ++i) {
        CounterRng rng(seed, i);
        const auto p = geo::draw_in_box(box, rng);
        if (!(p.x * p.x - p.t * p.t > -1.0)) continue;
        ++rep.samples_checked;
        if (geo::kruskal_strip_membership(f, lambda, mass, p) !=
            geo::kruskal_deformed_wedge_membership(shifted, p)) {
          ++rep.violations_total;
          if (rep.violations.size() < geo::kMaxRecordedViolations)
            rep.violations.push_back({i, 0.0, coords_of(p), coords_of(p)});
        }
      }
      require(rep.samples_checked > 0, "no kruskal sample landed in the chart");
      reports.push_back(std::move(rep));
    } else {
      throw SchemaError("check '" + check + "' is not available on the "
                        "kruskal chart");
    }
  } else {
    throw SchemaError("unknown chart '" + chart + "'");
  }

  std::size_t total = 0;
  json report_list = json::array();
  for (const auto& rep : reports) {
    total += rep.violations_total;
    report_list.push_back(report_to_json(rep));
  }
  json results{{"reports", std::move(report_list)},
               {"violations_total", total}};
  const bool pass =
      expect_violations ? total > 0 : total == 0;
  const double margin =
      expect_violations ? (total > 0 ? 1.0 : -1.0)
                        : (total == 0 ? 1.0 : -static_cast<double>(total));
  json verdicts = json::array();
  verdicts.push_back(verdict(check, pass, margin));
  return envelope("geometry-sweep", std::move(config), std::move(results),
                  std::move(verdicts));
}

// ---------------------------------------------------------------------------
// acceptance
// ---------------------------------------------------------------------------

json run_acceptance(const json& in, const JobOptions& options) {
  acceptance::SuiteOptions suite;
  if (options.seed) {
    suite.seed = *options.seed;
  } else if (in.contains("seed")) {
    require(in.at("seed").is_number(), "seed must be a number");
    suite.seed = in.at("seed").get<std::uint64_t>();
  }
  json config{{"seed", suite.seed}};
  const auto verdict_list = acceptance::run_suite(suite, nullptr);
  json verdicts = json::array();
  json details = json::array();
  int passed = 0;
  for (const auto& v : verdict_list) {
    verdicts.push_back(verdict(v.name, v.pass, v.margin));
    details.push_back({{"name", v.name}, {"detail", v.detail}});
    passed += v.pass ? 1 : 0;
  }
  json results{{"criteria_passed", passed},
               {"criteria_total", static_cast<int>(verdict_list.size())},
               {"details", std::move(details)}};
  return envelope("acceptance", std::move(config), std::move(results),
                  std::move(verdicts));
}

}  // namespace

json run_command(const std::string& command, const json& input,
                 const JobOptions& options) {
  require(input.is_object(), "input document must be a JSON object");
  if (command == "entropy-profile") return run_entropy_profile(input, options);
  if (command == "modular") return run_modular(input, options);
  if (command == "one-particle") return run_one_particle(input, options);
  if (command == "fock-verify") return run_fock_verify(input, options);
  if (command == "geometry-sweep") return run_geometry_sweep(input, options);
  if (command == "acceptance") return run_acceptance(input, options);
  throw SchemaError("unknown command '" + command + "'");
}

std::string profile_csv(const json& report) {
  require(report.is_object() && report.value("command", "") == "entropy-profile",
          "profile_csv expects an entropy-profile report");
  require(report.contains("results") && report.at("results").contains("rows"),
          "entropy-profile report carries no rows");
  std::string out = "lambda,S,dS,d2S,convexity_margin\n";
  char buf[192];
  for (const auto& row : report.at("results").at("rows")) {
    require(row.is_array() && row.size() == 5,
            "profile rows must have five columns");
    std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g,%.17g\n",
                  row.at(0).get<double>(), row.at(1).get<double>(),
                  row.at(2).get<double>(), row.at(3).get<double>(),
                  row.at(4).get<double>());
    out += buf;
  }
  return out;
}

bool report_passes(const json& report) {
  if (!report.is_object() || !report.contains("verdicts")) return false;
  for (const auto& v : report.at("verdicts"))
    if (!v.value("pass", false)) return false;
  return true;
}

void write_atomic(const std::string& path, const std::string& content) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  std::error_code ec;
  if (target.has_parent_path()) fs::create_directories(target.parent_path(), ec);
  const fs::path tmp = target.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open '" + tmp.string() + "' for writing");
    out << content;
    out.flush();
    if (!out) throw IoError("write to '" + tmp.string() + "' failed");
  }
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp, ec);
    throw IoError("cannot move report into '" + path + "'");
  }
}

int cli_main(const std::vector<std::string>& args) {
  CLI::App app{"modular entropy toolkit batch front end", "modent"};
  app.require_subcommand(1);

  std::string input_path, output_path;
  std::uint64_t seed_value = 0;
  double tol_value = 0.0;
  int grid_value = 0, cutoff_value = 0;
  std::size_t samples_value = 0;

  const std::pair<const char*, const char*> commands[] = {
      {"entropy-profile", "half-line entropy profile of a wave packet (CSV)"},
      {"modular", "modular data and flags of a subspace descriptor"},
      {"one-particle", "one-particle structure of a covariance pair"},
      {"fock-verify", "second-quantized entropy oracle cross-check"},
      {"geometry-sweep", "Monte-Carlo sweeps over wedge and strip regions"},
      {"acceptance", "full verification suite"}};
  for (const auto& [name, description] : commands) {
    CLI::App* sub = app.add_subcommand(name, description);
    sub->add_option("--input,-i", input_path, "input JSON document");
    sub->add_option("--output,-o", output_path,
                    "report path (JSON, or CSV for entropy-profile outputs "
                    "ending in .csv); stdout when omitted");
    sub->add_option("--seed", seed_value, "Monte-Carlo seed override");
    sub->add_option("--tol", tol_value, "tolerance override");
    sub->add_option("--grid", grid_value, "grid point count override");
    sub->add_option("--cutoff", cutoff_value, "Fock cutoff override");
    sub->add_option("--samples", samples_value, "sample count override");
  }

  std::vector<const char*> argv;
  argv.reserve(args.size() + 1);
  argv.push_back("modent");
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  CLI::App* active = app.get_subcommands().at(0);
  const std::string command = active->get_name();
  JobOptions options;
  if (active->count("--seed")) options.seed = seed_value;
  if (active->count("--tol")) options.tol = tol_value;
  if (active->count("--grid")) options.grid = grid_value;
  if (active->count("--cutoff")) options.cutoff = cutoff_value;
  if (active->count("--samples")) options.samples = samples_value;

  try {
    json input_doc = json::object();
    if (!input_path.empty()) {
      std::ifstream in(input_path);
      if (!in) throw IoError("cannot read input '" + input_path + "'");
      try {
        input_doc = json::parse(in);
      } catch (const json::parse_error& e) {
        throw SchemaError(std::string("malformed JSON input: ") + e.what());
      }
    } else {
      require(command == "acceptance",
              "--input is required for this command");
    }

    const json report = run_command(command, input_doc, options);
    std::string payload;
    if (command == "entropy-profile" && output_path.size() >= 4 &&
        output_path.substr(output_path.size() - 4) == ".csv") {
      payload = profile_csv(report);
    } else {
      payload = report.dump(2) + "\n";
    }
    if (!output_path.empty()) {
      write_atomic(output_path, payload);
    } else {
      std::cout << payload;
    }
    return report_passes(report) ? 0 : 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace modent::jobs
