#include "modent/schrodinger_ray.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "modent/errors.hpp"
#include "modent/standard_subspace.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace modent::schrodinger_ray {

namespace {
constexpr double kPi = 3.1415926535897932384626433832795;
constexpr double kTwoPi = 2.0 * kPi;
}  // namespace

double entropy_at(const WavePacket& phi, double lambda) {
  return kPi * WavePacket::integral_product(phi, phi, 1, 1, 1, lambda, true);
}

double entropy_derivative_at(const WavePacket& phi, double lambda) {
  return -kPi * WavePacket::integral_product(phi, phi, 1, 1, 0, lambda, true);
}

OneSidedSecond entropy_second_derivative_one_sided(const WavePacket& phi,
                                                   double lambda) {
  OneSidedSecond out;
  const double dl = phi.derivative_left(lambda);
  const double dr = phi.derivative_right(lambda);
  out.left = kPi * dl * dl;
  out.right = kPi * dr * dr;
  return out;
}

double entropy_second_derivative_at(const WavePacket& phi, double lambda) {
  const OneSidedSecond s = entropy_second_derivative_one_sided(phi, lambda);
  const double scale = std::max(1.0, std::abs(s.left) + std::abs(s.right));
  if (std::abs(s.left - s.right) > 1e-12 * scale)
    throw KinkPoint("one-sided QNEC densities disagree at lambda = " +
                    std::to_string(lambda) + ": left " +
                    std::to_string(s.left) + ", right " +
                    std::to_string(s.right));
  return 0.5 * (s.left + s.right);
}

double modular_generator_form(const WavePacket& phi, const WavePacket& psi,
                              double lambda) {
  return kPi * WavePacket::integral_product(phi, psi, 1, 1, 1, lambda, true);
}

EntropyProfile entropy_profile(const WavePacket& phi,
                               const std::vector<double>& lambda_grid,
                               bool parallel, double tol) {
  const int n = static_cast<int>(lambda_grid.size());
  if (n == 0) throw InvalidKnots("lambda grid must be non-empty");
  for (int i = 1; i < n; ++i)
    if (!(lambda_grid[i] > lambda_grid[i - 1]))
      throw InvalidKnots("lambda grid must be strictly increasing");

  EntropyProfile out;
  out.lambda_grid = Eigen::Map<const Eigen::VectorXd>(lambda_grid.data(), n);
  out.S.resize(n);
  out.dS.resize(n);
  out.d2S.resize(n);
  out.convexity_margin = Eigen::VectorXd::Zero(n);

#ifdef _OPENMP
#pragma omp parallel for schedule(static) if (parallel)
#endif
  for (int i = 0; i < n; ++i) {
    const double lam = lambda_grid[i];
    out.S(i) = entropy_at(phi, lam);
    out.dS(i) = entropy_derivative_at(phi, lam);
    out.d2S(i) = entropy_second_derivative_one_sided(phi, lam).right;
  }
  (void)parallel;

  for (int i = 1; i + 1 < n; ++i) {
    const double hm = lambda_grid[i] - lambda_grid[i - 1];
    const double hp = lambda_grid[i + 1] - lambda_grid[i];
    out.convexity_margin(i) =
        2.0 *
        ((out.S(i + 1) - out.S(i)) / hp - (out.S(i) - out.S(i - 1)) / hm) /
        (hp + hm);
  }
  out.convexity_report = convexity_check(out, tol);
  return out;
}

std::vector<EntropyProfile::Violation> convexity_check(
    const EntropyProfile& profile, double tol) {
  std::vector<EntropyProfile::Violation> out;
  for (Eigen::Index i = 1; i + 1 < profile.lambda_grid.size(); ++i) {
    if (profile.convexity_margin(i) < -tol)
      out.push_back({profile.lambda_grid(i), profile.convexity_margin(i)});
  }
  return out;
}

TranslationCheckReport translation_generator_check(
    const WavePacket& phi, double s, double t,
    const spectral::GridSpec& grid) {
  TranslationCheckReport rep;
  const auto samples = spectral::spectral_embed(phi, grid);
  rep.generator_expectation =
      spectral::translation_generator_expectation(samples);
  rep.generator_nonnegative = rep.generator_expectation >= 0.0;

  const WavePacket lhs =
      phi.dilated(kTwoPi * s).translated(t).dilated(-kTwoPi * s);
  const WavePacket rhs = phi.translated(std::exp(kTwoPi * s) * t);
  rep.commutation_sup_error = WavePacket::sup_distance(lhs, rhs);

  double knot_err = 0.0;
  if (lhs.knots().size() == rhs.knots().size()) {
    for (std::size_t k = 0; k < lhs.knots().size(); ++k)
      knot_err = std::max(knot_err,
                          std::abs(lhs.knots()[k] - rhs.knots()[k]));
  } else {
    knot_err = std::numeric_limits<double>::infinity();
  }
  rep.commutation_knot_error = knot_err;
  return rep;
}

CrossCheckReport discretized_cross_check(
    const WavePacket& phi, double lambda,
    const std::vector<WavePacket>& family, const spectral::GridSpec& grid) {
  namespace ss = modent::standard_subspace;
  CrossCheckReport rep;
  rep.entropy_exact = entropy_at(phi, lambda);
  rep.family_size = static_cast<int>(family.size());
  if (family.empty()) return rep;

  for (const auto& f : family) {
    if (f.support_lo() < lambda - 1e-12)
      throw InvalidKnots(
          "cross-check family members must be supported in [lambda, inf)");
  }

  spectral::GridSpec g = grid;
  if (g.p_max == 0.0) {
    // shared grid: the narrowest packet sets the bandwidth requirement
    double width = phi.support_hi() - phi.support_lo();
    for (const auto& f : family)
      width = std::min(width, f.support_hi() - f.support_lo());
    g.p_max = 256.0 / width;
  }

  const auto phi_s = spectral::spectral_embed(phi, g);
  const int n = static_cast<int>(phi_s.p.size());
  Eigen::VectorXd root_wp(n);
  for (int i = 0; i < n; ++i)
    root_wp(i) = std::sqrt(phi_s.w(i) * phi_s.p(i));

  Eigen::MatrixXcd vecs(n, static_cast<int>(family.size()));
  for (std::size_t k = 0; k < family.size(); ++k) {
    const auto fs = spectral::spectral_embed(family[k], g);
    vecs.col(static_cast<int>(k)) = root_wp.asDiagonal() * fs.fhat;
  }
  const Eigen::VectorXcd vphi = root_wp.asDiagonal() * phi_s.fhat;

  // orthonormal basis of the complex span; coordinates of family and phi
  const Eigen::MatrixXcd q = la::orth_basis_complex(vecs, 1e-10);
  if (q.cols() == 0) return rep;
  const Eigen::MatrixXcd coords = q.adjoint() * vecs;
  const Eigen::VectorXcd phi_coords = q.adjoint() * vphi;

  const auto k_sub = ss::RealSubspace::from_complex_span(coords);
  rep.lower_bound = ss::entropy(k_sub, phi_coords);
  const double total = vphi.squaredNorm();
  rep.captured_norm_fraction =
      total > 0.0 ? phi_coords.squaredNorm() / total : 0.0;
  return rep;
}

}  // namespace modent::schrodinger_ray
