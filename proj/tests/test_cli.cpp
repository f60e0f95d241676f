#include <cmath>
#include <complex>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "modent/errors.hpp"
#include "modent/jobs.hpp"
#include "modent/schrodinger_ray.hpp"
#include "modent/standard_subspace.hpp"
#include "modent/wave_packet.hpp"

namespace jobs = modent::jobs;
namespace ss = modent::standard_subspace;
namespace sr = modent::schrodinger_ray;
namespace fs = std::filesystem;
using json = nlohmann::json;
using modent::wave_packet::WavePacket;

namespace {

constexpr double kPi = std::numbers::pi;

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(static_cast<bool>(in));
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  REQUIRE(static_cast<bool>(out));
  out << content;
}

struct TempDir {
  fs::path path;
  TempDir() : path(fs::temp_directory_path() / "modent_cli_test") {
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

json tent_profile_doc() {
  return json{{"type", "tent"},
              {"lo", 0.0},
              {"peak", 1.0},
              {"hi", 2.0},
              {"lambda_grid", {0.0, 0.5, 1.0, 1.5, 2.0, 2.5}}};
}

json thermal_modular_doc() {
  const auto h = ss::thermal_pair_subspace(0.5);
  const Eigen::MatrixXcd span = h.span();
  json span_node = json::array();
  for (int c = 0; c < span.cols(); ++c) {
    json col = json::array();
    for (int r = 0; r < span.rows(); ++r)
      col.push_back({span(r, c).real(), span(r, c).imag()});
    span_node.push_back(col);
  }
  return json{{"ambient_dim", 2},
              {"span", span_node},
              {"phi", {{0.3, 0.1}, {-0.2, 0.05}}}};
}

json deformed_wedge_sweep_doc(std::vector<double> s_grid) {
  return json{{"chart", "minkowski"},
              {"check", "half_invariance"},
              {"region",
               {{"type", "deformed_wedge"},
                {"lambda", 1.0},
                {"f",
                 {{"type", "bump"},
                  {"height", 1.0},
                  {"center", {0.0, 0.0}},
                  {"width", 1.0}}}}},
              {"flow", {{"type", "boost"}, {"axis", 1}}},
              {"s_grid", s_grid},
              {"samples", 2000},
              {"seed", 14}};
}

}  // namespace

TEST_CASE("entropy-profile command reproduces the half-line entropy oracle") {
  const json report = jobs::run_command("entropy-profile", tent_profile_doc());
  CHECK(report.at("command") == "entropy-profile");
  CHECK(jobs::report_passes(report));

  const auto& rows = report.at("results").at("rows");
  REQUIRE(rows.size() == 6);
  const double expected_S[] = {2.0 * kPi,      9.0 * kPi / 8.0, kPi / 2.0,
                               kPi / 8.0,      0.0,             0.0};
  const auto tent = WavePacket::tent(0.0, 1.0, 2.0);
  for (int j = 0; j < 6; ++j) {
    const auto& row = rows.at(j);
    const double lambda = row.at(0).get<double>();
    CHECK(std::abs(lambda - 0.5 * j) <= 1e-15);
    CHECK(std::abs(row.at(1).get<double>() - expected_S[j]) <= 1e-12);
    CHECK(std::abs(row.at(1).get<double>() - sr::entropy_at(tent, lambda)) <=
          1e-14);
    CHECK(std::abs(row.at(2).get<double>() -
                   sr::entropy_derivative_at(tent, lambda)) <= 1e-14);
  }
  CHECK(std::abs(rows.at(0).at(2).get<double>() + 2.0 * kPi) <= 1e-12);

  // CSV rendering carries the same numbers at full precision.
  const std::string csv = jobs::profile_csv(report);
  CHECK(csv.rfind("lambda,S,dS,d2S,convexity_margin\n", 0) == 0);
  std::istringstream lines(csv);
  std::string line;
  std::getline(lines, line);  // header
  int parsed = 0;
  while (std::getline(lines, line)) {
    double lam = 0.0, S = 0.0;
    REQUIRE(std::sscanf(line.c_str(), "%lf,%lf", &lam, &S) == 2);
    CHECK(std::abs(S - expected_S[parsed]) <= 1e-12);
    ++parsed;
  }
  CHECK(parsed == 6);

  // The echoed configuration reproduces the identical report.
  const json again =
      jobs::run_command("entropy-profile", report.at("config"));
  CHECK(again.dump() == report.dump());
}

TEST_CASE("entropy-profile command resolves implicit grids and rejects bad input") {
  json doc{{"type", "bump"}, {"lo", 0.0}, {"hi", 2.0}, {"points", 41}};
  const json report = jobs::run_command("entropy-profile", doc);
  CHECK(report.at("config").at("lambda_grid").size() == 41);
  CHECK(jobs::report_passes(report));

  jobs::JobOptions grid_override;
  grid_override.grid = 11;
  const json coarse = jobs::run_command("entropy-profile", doc, grid_override);
  CHECK(coarse.at("config").at("lambda_grid").size() == 11);

  CHECK_THROWS_AS((void)jobs::run_command(
                      "entropy-profile", json{{"type", "staircase"}}),
                  modent::SchemaError);
  CHECK_THROWS_AS((void)jobs::run_command("entropy-profile", json::array()),
                  modent::SchemaError);
  jobs::JobOptions bad_tol;
  bad_tol.tol = -1.0;
  CHECK_THROWS_AS(
      (void)jobs::run_command("entropy-profile", tent_profile_doc(), bad_tol),
      modent::SchemaError);
  CHECK_THROWS_AS((void)jobs::run_command("frobnicate", json::object()),
                  modent::SchemaError);
}

TEST_CASE("modular command reports spectrum, flags, and vector entropy") {
  const json doc = thermal_modular_doc();
  const json report = jobs::run_command("modular", doc);
  const auto& results = report.at("results");
  CHECK(results.at("standard") == true);
  CHECK(results.at("abelian") == false);
  CHECK(results.at("factorial") == true);
  const auto& spectrum = results.at("modular_spectrum");
  REQUIRE(spectrum.size() == 2);
  CHECK(std::abs(spectrum.at(0).get<double>() - 0.5) <= 1e-10);
  CHECK(std::abs(spectrum.at(1).get<double>() - 2.0) <= 1e-10);

  const auto h = ss::thermal_pair_subspace(0.5);
  Eigen::VectorXcd phi(2);
  phi << std::complex<double>(0.3, 0.1), std::complex<double>(-0.2, 0.05);
  CHECK(std::abs(results.at("entropy").get<double>() - ss::entropy(h, phi)) <=
        1e-12);
  CHECK(jobs::report_passes(report));

  const json again = jobs::run_command("modular", report.at("config"));
  CHECK(again.dump() == report.dump());

  CHECK_THROWS_AS(
      (void)jobs::run_command("modular", json{{"ambient_dim", 2}}),
      modent::SchemaError);
}

TEST_CASE("one-particle command handles thermal and explicit covariance input") {
  const json thermal = jobs::run_command(
      "one-particle", json{{"omega", 1.0}, {"beta", 2.0}});
  CHECK(jobs::report_passes(thermal));
  const auto& expected = thermal.at("results").at("expected_spectrum");
  CHECK(std::abs(expected.at(0).get<double>() - std::exp(-2.0)) <= 1e-15);
  const auto& spectrum = thermal.at("results").at("modular_spectrum");
  REQUIRE(spectrum.size() == 2);
  CHECK(std::abs(spectrum.at(0).get<double>() - std::exp(-2.0)) <= 1e-8);
  CHECK(std::abs(spectrum.at(1).get<double>() - std::exp(2.0)) <= 1e-8);

  const json explicit_doc{
      {"sigma", {{0.0, 1.0}, {-1.0, 0.0}}},
      {"mu", {{2.0, 0.0}, {0.0, 2.0}}}};
  const json pair = jobs::run_command("one-particle", explicit_doc);
  CHECK(jobs::report_passes(pair));
  CHECK(pair.at("results").at("rank") == 2);

  // A covariance that fails to dominate the symplectic form is rejected by
  // the module, and the front end surfaces that error unchanged.
  const json shallow{{"sigma", {{0.0, 1.0}, {-1.0, 0.0}}},
                     {"mu", {{0.5, 0.0}, {0.0, 0.5}}}};
  CHECK_THROWS_AS((void)jobs::run_command("one-particle", shallow),
                  modent::DominationViolated);
}

TEST_CASE("fock-verify command matches the first-quantized entropy") {
  const json doc{{"theta", 1.0},
                 {"phi", {{0.3, 0.1}, {-0.2, 0.05}}},
                 {"cutoff", 60}};
  const json report = jobs::run_command("fock-verify", doc);
  CHECK(jobs::report_passes(report));
  CHECK(report.at("results").at("relative_deviation").get<double>() <= 1e-3);
  const double oracle = report.at("results").at("oracle_entropy").get<double>();
  const double firstq =
      report.at("results").at("first_quantized_entropy").get<double>();
  CHECK(oracle > 0.0);
  CHECK(std::abs(oracle - firstq) <= 1e-3 * firstq);

  CHECK_THROWS_AS(
      (void)jobs::run_command("fock-verify",
                              json{{"theta", -1.0}, {"phi", doc.at("phi")}}),
      modent::SchemaError);
}

TEST_CASE("geometry-sweep command drives sweeps and surfaces negative controls") {
  const json clean =
      jobs::run_command("geometry-sweep", deformed_wedge_sweep_doc({0.1, 1.0}));
  CHECK(jobs::report_passes(clean));
  CHECK(clean.at("results").at("violations_total") == 0);
  const auto& rep = clean.at("results").at("reports").at(0);
  CHECK(rep.at("check") == "half_invariance");
  CHECK(rep.at("samples_checked").get<std::size_t>() > 0);

  // Backward flow escapes the region: fails by default, passes when the
  // violations are declared expected.
  json backward = deformed_wedge_sweep_doc({-0.5});
  const json failing = jobs::run_command("geometry-sweep", backward);
  CHECK(!jobs::report_passes(failing));
  CHECK(failing.at("results").at("violations_total").get<std::size_t>() > 0);
  backward["expect_violations"] = true;
  const json expected = jobs::run_command("geometry-sweep", backward);
  CHECK(jobs::report_passes(expected));

  // Strip and shifted deformed wedge agree pointwise.
  const json equivalence{
      {"chart", "minkowski"},
      {"check", "equivalence"},
      {"region",
       {{"type", "strip"},
        {"lambda", 1.0},
        {"f", {{"type", "bump"}, {"height", 1.0}}}}},
      {"samples", 2000},
      {"seed", 15}};
  const json equal = jobs::run_command("geometry-sweep", equivalence);
  CHECK(jobs::report_passes(equal));
  CHECK(equal.at("results").at("violations_total") == 0);

  // Monte-Carlo commands refuse to run without a seed.
  json seedless = deformed_wedge_sweep_doc({0.1});
  seedless.erase("seed");
  CHECK_THROWS_AS((void)jobs::run_command("geometry-sweep", seedless),
                  modent::SchemaError);

  const json round_trip =
      jobs::run_command("geometry-sweep", clean.at("config"));
  CHECK(round_trip.dump() == clean.dump());
}

TEST_CASE("acceptance command wraps the verification suite") {
  const json report =
      jobs::run_command("acceptance", json{{"seed", 2026}});
  CHECK(report.at("verdicts").size() == 10);
  CHECK(report.at("results").at("criteria_passed") == 10);
  CHECK(jobs::report_passes(report));
  CHECK(report.at("config").at("seed") == 2026);
}

TEST_CASE("command line front end: exit codes, files, and determinism") {
  TempDir tmp;
  const fs::path input = tmp.path / "profile.json";
  write_file(input, tent_profile_doc().dump());

  SUBCASE("csv output matches the in-process renderer and leaves no temp file") {
    const fs::path out = tmp.path / "profile.csv";
    CHECK(jobs::cli_main({"entropy-profile", "--input", input.string(),
                          "--output", out.string()}) == 0);
    REQUIRE(fs::exists(out));
    CHECK(!fs::exists(tmp.path / "profile.csv.tmp"));
    const json report = jobs::run_command("entropy-profile", tent_profile_doc());
    CHECK(read_file(out) == jobs::profile_csv(report));
  }

  SUBCASE("json reports are byte-identical across repeated runs") {
    const fs::path out1 = tmp.path / "run1.json";
    const fs::path out2 = tmp.path / "run2.json";
    for (const auto& out : {out1, out2})
      CHECK(jobs::cli_main({"entropy-profile", "-i", input.string(), "-o",
                            out.string()}) == 0);
    const std::string first = read_file(out1);
    CHECK(first == read_file(out2));
    CHECK(json::parse(first).at("command") == "entropy-profile");
  }

  SUBCASE("geometry sweeps take the seed from the command line") {
    json doc = deformed_wedge_sweep_doc({0.1});
    doc.erase("seed");
    const fs::path sweep = tmp.path / "sweep.json";
    const fs::path out = tmp.path / "sweep_report.json";
    write_file(sweep, doc.dump());
    CHECK(jobs::cli_main({"geometry-sweep", "-i", sweep.string(), "-o",
                          out.string(), "--seed", "14"}) == 0);
    CHECK(json::parse(read_file(out)).at("config").at("seed") == 14);
    // ... and fail fast when no seed is available at all.
    CHECK(jobs::cli_main({"geometry-sweep", "-i", sweep.string()}) == 2);
  }

  SUBCASE("failing verdicts map to exit status 1") {
    const fs::path sweep = tmp.path / "backward.json";
    write_file(sweep, deformed_wedge_sweep_doc({-0.5}).dump());
    const fs::path out = tmp.path / "backward_report.json";
    CHECK(jobs::cli_main({"geometry-sweep", "-i", sweep.string(), "-o",
                          out.string()}) == 1);
    CHECK(!jobs::report_passes(json::parse(read_file(out))));
  }

  SUBCASE("usage and schema errors map to exit status 2") {
    const fs::path broken = tmp.path / "broken.json";
    write_file(broken, "{ this is not json");
    CHECK(jobs::cli_main({"entropy-profile", "-i", broken.string()}) == 2);
    CHECK(jobs::cli_main({"entropy-profile", "-i",
                          (tmp.path / "missing.json").string()}) == 2);
    CHECK(jobs::cli_main({"frobnicate"}) == 2);
    CHECK(jobs::cli_main({}) == 2);
    CHECK(jobs::cli_main({"modular"}) == 2);  // --input required
    CHECK(jobs::cli_main({"entropy-profile", "-i", input.string(), "--tol",
                          "-1.0"}) == 2);
  }
}
