// Benchmark comparing the OpenMP-parallel sweep kernels against their serial
// reference implementations.  The two must agree bit-for-bit (checked here on
// top of the unit tests); the table reports wall times and speedup.
//
//   usage: modent_bench [scale]
//
// `scale` multiplies the sample counts (default 1).
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <string>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "modent/geometry.hpp"
#include "modent/schrodinger_ray.hpp"
#include "modent/wave_packet.hpp"

namespace geo = modent::geometry;
namespace sr = modent::schrodinger_ray;
using modent::wave_packet::WavePacket;

namespace {

double seconds_of(const std::function<void()>& fn) {
  const auto t0 = std::chrono::steady_clock::now();
  fn();
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
      .count();
}

bool reports_equal(const geo::SweepReport& a, const geo::SweepReport& b) {
  if (a.samples_checked != b.samples_checked ||
      a.violations_total != b.violations_total ||
      a.violations.size() != b.violations.size())
    return false;
  for (std::size_t i = 0; i < a.violations.size(); ++i) {
    if (a.violations[i].sample_index != b.violations[i].sample_index ||
        a.violations[i].s != b.violations[i].s ||
        a.violations[i].point != b.violations[i].point ||
        a.violations[i].partner != b.violations[i].partner)
      return false;
  }
  return true;
}

struct Row {
  std::string name;
  double serial = 0.0;
  double parallel = 0.0;
  bool identical = false;
};

}  // namespace

int main(int argc, char** argv) {
  const std::size_t scale =
      argc > 1 ? std::strtoull(argv[1], nullptr, 10) : 1;
  const std::size_t n_sweep = 200000 * scale;
  const std::size_t n_triples = 20000 * scale;
  const std::size_t n_hull = 20000 * scale;
  const int n_grid = static_cast<int>(2000 * scale);

#ifdef _OPENMP
  std::printf("threads: %d\n", omp_get_max_threads());
#else
  std::printf("threads: 1 (OpenMP disabled)\n");
#endif

  std::vector<Row> rows;

  {
    const geo::Box4 box{{-6.0, 0.0, -2.0, -2.0}, {6.0, 8.0, 2.0, 2.0}};
    const auto region = geo::minkowski_deformed_wedge_region(
        [](double a, double b) {
          const auto f = geo::bump_profile(1.0, 0.0, 0.0, 1.0);
          return f(a, b) + 1.0;
        },
        box);
    const geo::MinkowskiFlow flow = [](double s, const geo::MinkowskiPoint& p) {
      return geo::boost_flow(s, p, 1);
    };
    const std::vector<double> s_grid{0.1, 1.0, 5.0};
    geo::SweepReport serial, parallel;
    Row row{"half-invariance sweep"};
    row.serial = seconds_of([&] {
      serial = geo::half_invariance_check(region, flow, n_sweep, s_grid, 7,
                                          geo::ExecutionPolicy::serial);
    });
    row.parallel = seconds_of([&] {
      parallel = geo::half_invariance_check(region, flow, n_sweep, s_grid, 7,
                                            geo::ExecutionPolicy::parallel);
    });
    row.identical = reports_equal(serial, parallel);
    rows.push_back(row);
  }

  {
    const geo::Box4 box{{-3.0, 0.0, -2.0, -2.0}, {3.0, 6.0, 2.0, 2.0}};
    const auto region = geo::minkowski_wedge_region(box);
    geo::SweepReport serial, parallel;
    Row row{"causal convexity sweep"};
    row.serial = seconds_of([&] {
      serial = geo::causal_convexity_check(region, n_triples, 7,
                                           geo::ExecutionPolicy::serial);
    });
    row.parallel = seconds_of([&] {
      parallel = geo::causal_convexity_check(region, n_triples, 7,
                                             geo::ExecutionPolicy::parallel);
    });
    row.identical = reports_equal(serial, parallel);
    rows.push_back(row);
  }

  {
    const geo::MinkowskiPoint base{0.0, 1.0, 0.0, 0.0};
    const geo::Box4 box{{-3.0, 0.0, -2.0, -2.0}, {3.0, 6.0, 2.0, 2.0}};
    geo::HullReport serial, parallel;
    Row row{"wedge hull sweep"};
    row.serial = seconds_of([&] {
      serial = geo::wedge_hull_check(base, n_hull, n_hull, 7, box, -40.0, 40.0,
                                     161, geo::ExecutionPolicy::serial);
    });
    row.parallel = seconds_of([&] {
      parallel = geo::wedge_hull_check(base, n_hull, n_hull, 7, box, -40.0,
                                       40.0, 161, geo::ExecutionPolicy::parallel);
    });
    row.identical = reports_equal(serial.interior, parallel.interior) &&
                    reports_equal(serial.exterior, parallel.exterior);
    rows.push_back(row);
  }

  {
    const auto tent = WavePacket::tent(0.0, 1.0, 2.0);
    std::vector<double> grid(n_grid);
    for (int j = 0; j < n_grid; ++j)
      grid[j] = -0.3 + 2.8 * j / (n_grid - 1.0);
    sr::EntropyProfile serial, parallel;
    Row row{"entropy profile"};
    row.serial =
        seconds_of([&] { serial = sr::entropy_profile(tent, grid, false); });
    row.parallel =
        seconds_of([&] { parallel = sr::entropy_profile(tent, grid, true); });
    row.identical = serial.S == parallel.S && serial.dS == parallel.dS &&
                    serial.d2S == parallel.d2S;
    rows.push_back(row);
  }

  std::printf("%-26s %10s %10s %8s %s\n", "kernel", "serial", "parallel",
              "speedup", "identical");
  bool all_identical = true;
  for (const auto& row : rows) {
    std::printf("%-26s %9.3fs %9.3fs %7.2fx %s\n", row.name.c_str(),
                row.serial, row.parallel,
                row.parallel > 0.0 ? row.serial / row.parallel : 0.0,
                row.identical ? "yes" : "NO");
    all_identical = all_identical && row.identical;
  }
  return all_identical ? 0 : 1;
}
