#pragma once

#include <Eigen/Dense>
#include <complex>

#include "modent/wave_packet.hpp"

namespace modent::spectral {

// Geometric momentum grid: `panels` geometric subintervals of [p_min, p_max],
// each carrying an 8-point Gauss-Legendre rule. p_max = 0 resolves to
// 256 / support-width of the packet being embedded.
struct GridSpec {
  double p_min = 1e-4;
  double p_max = 0.0;
  int panels = 512;
};

// Samples of the momentum representation restricted to p > 0; the physical
// norm is sum_i w_i p_i |fhat_i|^2 (measure p dp carried explicitly).
struct SpectralSamples {
  Eigen::VectorXd p;
  Eigen::VectorXd w;       // plain dp quadrature weights
  Eigen::VectorXcd fhat;   // phi_hat(p) = (2 pi)^{-1/2} int phi(x) e^{+ipx} dx
  double norm_sq = 0.0;    // sum w p |fhat|^2
  double tail_bound = 0.0; // analytic bound on the p-mass outside the grid
};

// Exact Fourier transform of a piecewise cubic at the given momenta
// (closed-form oscillatory moments per piece; no sampling error in x).
Eigen::VectorXcd fourier_at(const wave_packet::WavePacket& phi,
                            const Eigen::VectorXd& p);

// Embed a packet on the grid; throws GridTooCoarse when the grid is invalid
// or the analytic tail bound exceeds 1% of the captured norm.
SpectralSamples spectral_embed(const wave_packet::WavePacket& phi,
                               const GridSpec& grid = GridSpec{});

// <a, b> = sum w p a conj(b); both samples must share the grid
std::complex<double> spectral_inner(const SpectralSamples& a,
                                    const SpectralSamples& b);

// Im<a, b> in the spectral representation
double symplectic_form(const SpectralSamples& a, const SpectralSamples& b);

// <phi, X phi> = sum w p^2 |fhat|^2 for the translation generator X = p
double translation_generator_expectation(const SpectralSamples& a);

}  // namespace modent::spectral
