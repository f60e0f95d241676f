#include "modent/spectral.hpp"

#include <array>
#include <cmath>

#include "modent/errors.hpp"

namespace modent::spectral {

namespace {

using std::complex;
using wave_packet::WavePacket;

constexpr double kTwoPi = 6.283185307179586476925286766559;

// 8-point Gauss-Legendre rule on [-1, 1]
constexpr std::array<double, 8> kGlNodes = {
    -0.9602898564975362316835609, -0.7966664774136267395915539,
    -0.5255324099163289858177390, -0.1834346424956498049394761,
    0.1834346424956498049394761,  0.5255324099163289858177390,
    0.7966664774136267395915539,  0.9602898564975362316835609};
constexpr std::array<double, 8> kGlWeights = {
    0.1012285362903762591525314, 0.2223810344533744705443560,
    0.3137066458778872873379622, 0.3626837833783619829651504,
    0.3626837833783619829651504, 0.3137066458778872873379622,
    0.2223810344533744705443560, 0.1012285362903762591525314};

// oscillatory moments M_j = int_0^L t^j e^{ipt} dt for j = 0..3
std::array<complex<double>, 4> moments(double p, double length) {
  std::array<complex<double>, 4> m;
  const double pl = p * length;
  if (std::abs(pl) >= 0.5) {
    const complex<double> ip(0.0, p);
    const complex<double> eipl = std::exp(complex<double>(0.0, pl));
    m[0] = (eipl - 1.0) / ip;
    double lj = 1.0;
    for (int j = 1; j < 4; ++j) {
      lj *= length;
      m[j] = (lj * eipl - static_cast<double>(j) * m[j - 1]) / ip;
    }
  } else {
    // series in z = ipL: M_j = L^{j+1} sum_m z^m / (m! (j+m+1))
    const complex<double> z(0.0, pl);
    for (int j = 0; j < 4; ++j) {
      complex<double> term(1.0, 0.0);  // z^m / m!
      complex<double> acc = term / static_cast<double>(j + 1);
      for (int mm = 1; mm < 24; ++mm) {
        term *= z / static_cast<double>(mm);
        acc += term / static_cast<double>(j + mm + 1);
      }
      m[j] = acc * std::pow(length, j + 1);
    }
  }
  return m;
}

// total variation of phi' (piecewise linear): interior/boundary jumps plus
// the exact integral of |phi''| on each piece
double derivative_total_variation(const WavePacket& phi) {
  double tv = 0.0;
  for (double k : phi.knots())
    tv += std::abs(phi.derivative_right(k) - phi.derivative_left(k));
  for (int k = 0; k < phi.piece_count(); ++k) {
    const auto pc = phi.piece(k);
    const double h = pc.x1 - pc.x0;
    const double a = 2.0 * pc.c[2];        // phi'' = a + b t
    const double b = 6.0 * pc.c[3];
    if (b == 0.0) {
      tv += std::abs(a) * h;
    } else {
      const double root = -a / b;
      if (root > 0.0 && root < h) {
        tv += 0.5 * std::abs(a) * root +
              0.5 * std::abs(a + b * h) * (h - root);
      } else {
        tv += 0.5 * std::abs(a + (a + b * h)) * h;
      }
    }
  }
  return tv;
}

}  // namespace

Eigen::VectorXcd fourier_at(const WavePacket& phi, const Eigen::VectorXd& p) {
  Eigen::VectorXcd out = Eigen::VectorXcd::Zero(p.size());
  const double scale = 1.0 / std::sqrt(kTwoPi);
  for (Eigen::Index i = 0; i < p.size(); ++i) {
    complex<double> acc(0.0, 0.0);
    for (int k = 0; k < phi.piece_count(); ++k) {
      const auto pc = phi.piece(k);
      const auto m = moments(p(i), pc.x1 - pc.x0);
      complex<double> piece_sum(0.0, 0.0);
      for (int j = 0; j < 4; ++j) piece_sum += pc.c[j] * m[j];
      acc += std::exp(complex<double>(0.0, p(i) * pc.x0)) * piece_sum;
    }
    out(i) = scale * acc;
  }
  return out;
}

SpectralSamples spectral_embed(const WavePacket& phi, const GridSpec& grid) {
  GridSpec g = grid;
  if (g.p_max == 0.0) {
    const double width =
        phi.is_zero() ? 1.0 : phi.support_hi() - phi.support_lo();
    g.p_max = 256.0 / width;
  }
  if (!(g.p_min > 0.0) || !(g.p_max > g.p_min) || g.panels < 1)
    throw GridTooCoarse("spectral grid must satisfy 0 < p_min < p_max");

  SpectralSamples s;
  const int n = 8 * g.panels;
  s.p.resize(n);
  s.w.resize(n);
  const double ratio = std::pow(g.p_max / g.p_min, 1.0 / g.panels);
  double lo = g.p_min;
  for (int panel = 0; panel < g.panels; ++panel) {
    const double hi = (panel + 1 == g.panels) ? g.p_max : lo * ratio;
    const double mid = 0.5 * (lo + hi);
    const double half = 0.5 * (hi - lo);
    for (int j = 0; j < 8; ++j) {
      s.p(8 * panel + j) = mid + half * kGlNodes[j];
      s.w(8 * panel + j) = half * kGlWeights[j];
    }
    lo = hi;
  }

  s.fhat = fourier_at(phi, s.p);
  s.norm_sq = 0.0;
  for (int i = 0; i < n; ++i)
    s.norm_sq += s.w(i) * s.p(i) * std::norm(s.fhat(i));

  if (!phi.is_zero()) {
    const double scale = 1.0 / std::sqrt(kTwoPi);
    // |fhat(p)| <= C2 / p^2 with C2 = TV(phi') / sqrt(2 pi)
    const double c2 = scale * derivative_total_variation(phi);
    // |fhat(p)| <= C0 = width * sup|phi| / sqrt(2 pi)
    const double c0 = scale * (phi.support_hi() - phi.support_lo()) *
                      WavePacket::sup_distance(phi, WavePacket());
    s.tail_bound = 0.5 * c2 * c2 / (g.p_max * g.p_max) +
                   0.5 * c0 * c0 * g.p_min * g.p_min;
    if (s.tail_bound > 1e-2 * (s.norm_sq + s.tail_bound) && s.norm_sq > 0.0)
      throw GridTooCoarse(
          "spectral tail bound exceeds 1% of the captured norm; raise p_max "
          "or lower p_min");
  }
  return s;
}

std::complex<double> spectral_inner(const SpectralSamples& a,
                                    const SpectralSamples& b) {
  if (a.p.size() != b.p.size())
    throw DimensionMismatch("spectral samples live on different grids");
  complex<double> acc(0.0, 0.0);
  for (Eigen::Index i = 0; i < a.p.size(); ++i)
    acc += a.w(i) * a.p(i) * a.fhat(i) * std::conj(b.fhat(i));
  return acc;
}

double symplectic_form(const SpectralSamples& a, const SpectralSamples& b) {
  return spectral_inner(a, b).imag();
}

double translation_generator_expectation(const SpectralSamples& a) {
  double acc = 0.0;
  for (Eigen::Index i = 0; i < a.p.size(); ++i)
    acc += a.w(i) * a.p(i) * a.p(i) * std::norm(a.fhat(i));
  return acc;
}

}  // namespace modent::spectral
