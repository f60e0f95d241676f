#pragma once

#include <Eigen/Dense>
#include <vector>

#include "modent/spectral.hpp"
#include "modent/wave_packet.hpp"

namespace modent::schrodinger_ray {

using wave_packet::DilationConvention;
using wave_packet::WavePacket;

// half-line entropy S(lambda) = pi int_lambda^inf (x - lambda) phi'(x)^2 dx,
// exact per polynomial piece
double entropy_at(const WavePacket& phi, double lambda);

// S'(lambda) = -pi int_lambda^inf phi'(x)^2 dx <= 0, exact
double entropy_derivative_at(const WavePacket& phi, double lambda);

// S''(lambda) = pi phi'(lambda)^2 >= 0 (the QNEC density); throws KinkPoint
// when the one-sided values disagree at a kink knot
double entropy_second_derivative_at(const WavePacket& phi, double lambda);

struct OneSidedSecond {
  double left = 0.0;
  double right = 0.0;
};
OneSidedSecond entropy_second_derivative_one_sided(const WavePacket& phi,
                                                   double lambda);

// pi int_lambda^inf (x - lambda) phi'(x) psi'(x) dx: the modular generator
// pairing Im<psi, P i log Delta phi>; symmetric, diagonal = entropy_at
double modular_generator_form(const WavePacket& phi, const WavePacket& psi,
                              double lambda);

// U(s), V(t), J wrappers on the packet representation
inline WavePacket translate(const WavePacket& phi, double s) {
  return phi.translated(s);
}
inline WavePacket dilate(const WavePacket& phi, double t,
                         DilationConvention convention =
                             DilationConvention::unitary) {
  return phi.dilated(t, convention);
}
inline WavePacket reflect(const WavePacket& phi) { return phi.reflected(); }

// modular flow of the ray algebra: Delta^{is} = V(2 pi s)
inline WavePacket modular_flow(const WavePacket& phi, double s) {
  constexpr double two_pi = 6.283185307179586476925286766559;
  return phi.dilated(two_pi * s);
}

struct EntropyProfile {
  Eigen::VectorXd lambda_grid;
  Eigen::VectorXd S;
  Eigen::VectorXd dS;
  Eigen::VectorXd d2S;               // right-sided at kink knots
  Eigen::VectorXd convexity_margin;  // discrete second difference, 0 at ends
  struct Violation {
    double lambda;
    double second_difference;
  };
  std::vector<Violation> convexity_report;  // margins below -tol
};

// fill the profile with the closed-form evaluators; the grid sweep runs under
// OpenMP when parallel is set and is bitwise identical to the serial path
EntropyProfile entropy_profile(const WavePacket& phi,
                               const std::vector<double>& lambda_grid,
                               bool parallel = true, double tol = 1e-8);

std::vector<EntropyProfile::Violation> convexity_check(
    const EntropyProfile& profile, double tol = 1e-8);

struct TranslationCheckReport {
  double generator_expectation = 0.0;  // sum w p^2 |fhat|^2 >= 0
  double commutation_sup_error = 0.0;  // sup |lhs - rhs| as packets
  double commutation_knot_error = 0.0; // max knot coordinate difference
  bool generator_nonnegative = false;
};

// verifies X = multiplication by p (positive) on the samples and the packet
// relation Delta^{-is} U(t) Delta^{is} = U(e^{2 pi s} t)
TranslationCheckReport translation_generator_check(
    const WavePacket& phi, double s, double t,
    const spectral::GridSpec& grid = spectral::GridSpec{});

struct CrossCheckReport {
  double lower_bound = 0.0;    // subspace entropy of the projected embedding
  double entropy_exact = 0.0;  // entropy_at(phi, lambda)
  int family_size = 0;
  double captured_norm_fraction = 0.0;  // |proj phi|^2 / |phi|^2 on the grid
};

// embeds the family and phi on the grid, builds the real span K of the family
// inside its complex span, and evaluates standard_subspace entropy of the
// projected vector: a certified lower bound for entropy_at(phi, lambda)
CrossCheckReport discretized_cross_check(
    const WavePacket& phi, double lambda,
    const std::vector<WavePacket>& family,
    const spectral::GridSpec& grid = spectral::GridSpec{});

}  // namespace modent::schrodinger_ray
