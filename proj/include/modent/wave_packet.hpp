#pragma once

#include <array>
#include <vector>

#include "modent/rng.hpp"

namespace modent::wave_packet {

// Dilation (V(t) phi)(x) = phi(e^t x): the unitary convention carries no
// prefactor; weight_one multiplies by e^{-t} (scaling weight one — not
// unitary for this norm, kept for comparison runs).
enum class DilationConvention { unitary, weight_one };

// Real compactly supported piecewise cubic. Pieces live on [knot_k, knot_{k+1}]
// in local coordinates t = x - knot_k; the function vanishes identically
// outside [knots.front(), knots.back()] and is continuous everywhere. First
// derivatives may jump at knots (kinks), e.g. for piecewise-linear packets.
class WavePacket {
 public:
  WavePacket() = default;  // the zero packet

  // C1 cubic Hermite interpolant through (knots, values, derivs);
  // endpoint values must vanish so the extension by zero stays continuous.
  static WavePacket from_hermite(const std::vector<double>& knots,
                                 const std::vector<double>& values,
                                 const std::vector<double>& derivs);
  // piecewise linear through (knots, values); kinks at every interior knot
  static WavePacket from_linear(const std::vector<double>& knots,
                                const std::vector<double>& values);
  // linear ramp 0 -> height -> 0 over [lo, peak, hi]
  static WavePacket tent(double lo, double peak, double hi,
                         double height = 1.0);
  // C1 cubic bump: 0 at lo/hi with zero slope, height at the midpoint
  static WavePacket bump(double lo, double hi, double height = 1.0);

  bool is_zero() const { return knots_.empty(); }
  const std::vector<double>& knots() const { return knots_; }
  double support_lo() const { return knots_.empty() ? 0.0 : knots_.front(); }
  double support_hi() const { return knots_.empty() ? 0.0 : knots_.back(); }

  double operator()(double x) const;
  // right-continuous derivative (left limit at the support's right edge)
  double derivative(double x) const;
  double derivative_left(double x) const;
  double derivative_right(double x) const;

  // knots where the one-sided derivatives differ by more than tol
  std::vector<double> kink_points(double tol = 1e-12) const;
  bool is_c1(double tol = 1e-12) const { return kink_points(tol).empty(); }

  // exact transforms of the representation
  WavePacket translated(double s) const;  // x -> phi(x - s)
  WavePacket dilated(double t, DilationConvention convention =
                                   DilationConvention::unitary) const;
  WavePacket reflected() const;  // x -> phi(-x)
  static WavePacket combine(double a, const WavePacket& f, double b,
                            const WavePacket& g);

  // exact integral of (x - lambda)^weight_power * f^(df)(x) * g^(dg)(x)
  // over the support intersection, clipped to x > lambda when requested;
  // df, dg in {0, 1}, weight_power in {0, 1}.
  static double integral_product(const WavePacket& f, const WavePacket& g,
                                 int df, int dg, int weight_power,
                                 double lambda, bool clip_at_lambda);

  static double l2_inner(const WavePacket& f, const WavePacket& g) {
    return integral_product(f, g, 0, 0, 0, 0.0, false);
  }
  // Im<f, g> = (1/2) int f'(x) g(x) dx in the position representation
  static double symplectic_position(const WavePacket& f, const WavePacket& g) {
    return 0.5 * integral_product(f, g, 1, 0, 0, 0.0, false);
  }
  // exact sup norm of f - g
  static double sup_distance(const WavePacket& f, const WavePacket& g);

  // piece view for exact downstream transforms (Fourier integrals)
  struct Piece {
    double x0 = 0.0;
    double x1 = 0.0;
    std::array<double, 4> c{};  // c0 + c1 t + c2 t^2 + c3 t^3, t = x - x0
  };
  int piece_count() const { return static_cast<int>(pieces_.size()); }
  Piece piece(int k) const {
    return Piece{knots_[k], knots_[k + 1], pieces_[k]};
  }

 private:
  std::vector<double> knots_;
  std::vector<std::array<double, 4>> pieces_;  // c0 + c1 t + c2 t^2 + c3 t^3

  // index of the piece whose half-open interval contains x, or -1
  int piece_index(double x) const;
};

// random C1 packet (zero value and slope at both support ends)
WavePacket random_c1_packet(CounterRng& rng, double lo, double hi, int pieces);
// random piecewise-linear packet (kinked at every knot)
WavePacket random_linear_packet(CounterRng& rng, double lo, double hi,
                                int pieces);

}  // namespace modent::wave_packet
