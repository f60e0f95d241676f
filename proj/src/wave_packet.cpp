#include "modent/wave_packet.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "modent/errors.hpp"

namespace modent::wave_packet {

namespace {

// small dense polynomials, ascending coefficients
using Poly = std::vector<double>;

Poly poly_from(const std::array<double, 4>& c) {
  return Poly(c.begin(), c.end());
}

Poly poly_derivative(const Poly& p) {
  if (p.size() <= 1) return Poly{0.0};
  Poly d(p.size() - 1);
  for (std::size_t k = 1; k < p.size(); ++k)
    d[k - 1] = static_cast<double>(k) * p[k];
  return d;
}

Poly poly_multiply(const Poly& a, const Poly& b) {
  Poly out(a.size() + b.size() - 1, 0.0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  return out;
}

double poly_eval(const Poly& p, double t) {
  double acc = 0.0;
  for (std::size_t k = p.size(); k-- > 0;) acc = acc * t + p[k];
  return acc;
}

// integral of p over [a, b], exact antiderivative evaluation
double poly_integrate(const Poly& p, double a, double b) {
  double hi = 0.0, lo = 0.0;
  for (std::size_t k = p.size(); k-- > 0;) {
    const double c = p[k] / static_cast<double>(k + 1);
    hi = hi * b + c;
    lo = lo * a + c;
  }
  return hi * b - lo * a;
}

// q(u) = p(s + u)
Poly poly_shift(const Poly& p, double s) {
  Poly q(p.size(), 0.0);
  for (std::size_t j = 0; j < p.size(); ++j) {
    double binom = 1.0;  // C(j, k) * s^{j-k}, built incrementally
    double spow = 1.0;
    // iterate k from j down to 0 accumulating p_j * C(j,k) s^{j-k}
    for (std::size_t k = j + 1; k-- > 0;) {
      const double weight = binom * spow * p[j];
      q[k] += weight;
      if (k > 0) {
        binom = binom * static_cast<double>(k) /
                static_cast<double>(j - k + 1);
        spow *= s;
      }
    }
  }
  return q;
}

void validate_knots(const std::vector<double>& knots) {
  if (knots.size() < 2) throw InvalidKnots("need at least two knots");
  for (double k : knots)
    if (!std::isfinite(k)) throw InvalidKnots("knots must be finite");
  for (std::size_t k = 1; k < knots.size(); ++k)
    if (!(knots[k] > knots[k - 1]))
      throw InvalidKnots("knots must be strictly increasing");
}

}  // namespace

WavePacket WavePacket::from_hermite(const std::vector<double>& knots,
                                    const std::vector<double>& values,
                                    const std::vector<double>& derivs) {
  validate_knots(knots);
  if (values.size() != knots.size() || derivs.size() != knots.size())
    throw InvalidKnots("values/derivs must match the knot count");
  for (std::size_t k = 0; k < values.size(); ++k)
    if (!std::isfinite(values[k]) || !std::isfinite(derivs[k]))
      throw InvalidKnots("values and derivatives must be finite");
  if (values.front() != 0.0 || values.back() != 0.0)
    throw InvalidKnots("packet must vanish at the support boundary");

  WavePacket p;
  p.knots_ = knots;
  p.pieces_.resize(knots.size() - 1);
  for (std::size_t k = 0; k + 1 < knots.size(); ++k) {
    const double h = knots[k + 1] - knots[k];
    const double v0 = values[k], v1 = values[k + 1];
    const double d0 = derivs[k], d1 = derivs[k + 1];
    p.pieces_[k] = {v0, d0, 3.0 * (v1 - v0) / (h * h) - (2.0 * d0 + d1) / h,
                    2.0 * (v0 - v1) / (h * h * h) + (d0 + d1) / (h * h)};
  }
  return p;
}

WavePacket WavePacket::from_linear(const std::vector<double>& knots,
                                   const std::vector<double>& values) {
  validate_knots(knots);
  if (values.size() != knots.size())
    throw InvalidKnots("values must match the knot count");
  for (double v : values)
    if (!std::isfinite(v)) throw InvalidKnots("values must be finite");
  if (values.front() != 0.0 || values.back() != 0.0)
    throw InvalidKnots("packet must vanish at the support boundary");

  WavePacket p;
  p.knots_ = knots;
  p.pieces_.resize(knots.size() - 1);
  for (std::size_t k = 0; k + 1 < knots.size(); ++k) {
    const double h = knots[k + 1] - knots[k];
    p.pieces_[k] = {values[k], (values[k + 1] - values[k]) / h, 0.0, 0.0};
  }
  return p;
}

WavePacket WavePacket::tent(double lo, double peak, double hi, double height) {
  return from_linear({lo, peak, hi}, {0.0, height, 0.0});
}

WavePacket WavePacket::bump(double lo, double hi, double height) {
  const double mid = 0.5 * (lo + hi);
  return from_hermite({lo, mid, hi}, {0.0, height, 0.0}, {0.0, 0.0, 0.0});
}

int WavePacket::piece_index(double x) const {
  if (knots_.empty() || x < knots_.front() || x >= knots_.back()) return -1;
  const auto it = std::upper_bound(knots_.begin(), knots_.end(), x);
  return static_cast<int>(it - knots_.begin()) - 1;
}

double WavePacket::operator()(double x) const {
  const int k = piece_index(x);
  if (k < 0) return 0.0;
  const auto& c = pieces_[k];
  const double t = x - knots_[k];
  return ((c[3] * t + c[2]) * t + c[1]) * t + c[0];
}

double WavePacket::derivative_right(double x) const {
  const int k = piece_index(x);
  if (k < 0) return 0.0;
  const auto& c = pieces_[k];
  const double t = x - knots_[k];
  return (3.0 * c[3] * t + 2.0 * c[2]) * t + c[1];
}

double WavePacket::derivative_left(double x) const {
  if (knots_.empty() || x <= knots_.front() || x > knots_.back()) return 0.0;
  const auto it = std::lower_bound(knots_.begin(), knots_.end(), x);
  int k;
  if (it != knots_.end() && *it == x)
    k = static_cast<int>(it - knots_.begin()) - 1;  // left piece at a knot
  else
    k = piece_index(x);
  if (k < 0) return 0.0;
  const auto& c = pieces_[k];
  const double t = x - knots_[k];
  return (3.0 * c[3] * t + 2.0 * c[2]) * t + c[1];
}

double WavePacket::derivative(double x) const {
  if (!knots_.empty() && x == knots_.back()) return derivative_left(x);
  return derivative_right(x);
}

std::vector<double> WavePacket::kink_points(double tol) const {
  std::vector<double> out;
  for (double k : knots_) {
    if (std::abs(derivative_left(k) - derivative_right(k)) > tol)
      out.push_back(k);
  }
  return out;
}

WavePacket WavePacket::translated(double s) const {
  WavePacket p = *this;
  for (double& k : p.knots_) k += s;
  return p;
}

WavePacket WavePacket::dilated(double t, DilationConvention convention) const {
  WavePacket p = *this;
  const double scale = std::exp(-t);  // knots contract for t > 0
  const double prefactor =
      convention == DilationConvention::weight_one ? scale : 1.0;
  for (double& k : p.knots_) k *= scale;
  // piece coefficients pick up e^{jt} from the argument substitution
  const double et = std::exp(t);
  for (auto& c : p.pieces_) {
    double powj = prefactor;
    for (int j = 0; j < 4; ++j) {
      c[j] *= powj;
      powj *= et;
    }
  }
  return p;
}

WavePacket WavePacket::reflected() const {
  WavePacket p;
  if (knots_.empty()) return p;
  const std::size_t m = pieces_.size();
  p.knots_.resize(knots_.size());
  p.pieces_.resize(m);
  for (std::size_t k = 0; k < knots_.size(); ++k)
    p.knots_[k] = -knots_[knots_.size() - 1 - k];
  for (std::size_t k = 0; k < m; ++k) {
    // reflected piece k comes from original piece m-1-k with u -> h - u
    const std::size_t src = m - 1 - k;
    const double h = knots_[src + 1] - knots_[src];
    Poly q = poly_shift(poly_from(pieces_[src]), h);  // p(h + u)
    // substitute u -> -u: negate odd coefficients
    for (std::size_t j = 1; j < q.size(); j += 2) q[j] = -q[j];
    for (int j = 0; j < 4; ++j)
      p.pieces_[k][j] = j < static_cast<int>(q.size()) ? q[j] : 0.0;
  }
  return p;
}

WavePacket WavePacket::combine(double a, const WavePacket& f, double b,
                               const WavePacket& g) {
  if (f.is_zero() && g.is_zero()) return WavePacket();
  // merged knot list over the union of supports
  std::vector<double> merged;
  merged.reserve(f.knots_.size() + g.knots_.size());
  std::merge(f.knots_.begin(), f.knots_.end(), g.knots_.begin(),
             g.knots_.end(), std::back_inserter(merged));
  merged.erase(std::unique(merged.begin(), merged.end()), merged.end());

  WavePacket out;
  out.knots_ = merged;
  out.pieces_.resize(merged.size() - 1);
  for (std::size_t k = 0; k + 1 < merged.size(); ++k) {
    const double x0 = merged[k];
    Poly acc{0.0, 0.0, 0.0, 0.0};
    const double probe = 0.5 * (merged[k] + merged[k + 1]);
    for (const auto* src : {&f, &g}) {
      const double w = (src == &f) ? a : b;
      const int idx = src->piece_index(probe);
      if (idx < 0 || w == 0.0) continue;
      const Poly shifted = poly_shift(poly_from(src->pieces_[idx]),
                                      x0 - src->knots_[idx]);
      for (std::size_t j = 0; j < shifted.size() && j < 4; ++j)
        acc[j] += w * shifted[j];
    }
    for (int j = 0; j < 4; ++j) out.pieces_[k][j] = acc[j];
  }
  return out;
}

double WavePacket::integral_product(const WavePacket& f, const WavePacket& g,
                                    int df, int dg, int weight_power,
                                    double lambda, bool clip_at_lambda) {
  if (f.is_zero() || g.is_zero()) return 0.0;
  double lo = std::max(f.support_lo(), g.support_lo());
  const double hi = std::min(f.support_hi(), g.support_hi());
  if (clip_at_lambda) lo = std::max(lo, lambda);
  if (lo >= hi) return 0.0;

  std::vector<double> merged;
  merged.push_back(lo);
  for (double k : f.knots_)
    if (k > lo && k < hi) merged.push_back(k);
  for (double k : g.knots_)
    if (k > lo && k < hi) merged.push_back(k);
  merged.push_back(hi);
  std::sort(merged.begin(), merged.end());
  merged.erase(std::unique(merged.begin(), merged.end()), merged.end());

  double total = 0.0;
  for (std::size_t k = 0; k + 1 < merged.size(); ++k) {
    const double x0 = merged[k];
    const double probe = 0.5 * (merged[k] + merged[k + 1]);
    const int fi = f.piece_index(probe);
    const int gi = g.piece_index(probe);
    if (fi < 0 || gi < 0) continue;
    Poly fp = poly_shift(poly_from(f.pieces_[fi]), x0 - f.knots_[fi]);
    Poly gp = poly_shift(poly_from(g.pieces_[gi]), x0 - g.knots_[gi]);
    if (df) fp = poly_derivative(fp);
    if (dg) gp = poly_derivative(gp);
    Poly prod = poly_multiply(fp, gp);
    if (weight_power == 1) prod = poly_multiply(prod, Poly{x0 - lambda, 1.0});
    total += poly_integrate(prod, 0.0, merged[k + 1] - x0);
  }
  return total;
}

double WavePacket::sup_distance(const WavePacket& f, const WavePacket& g) {
  const WavePacket d = combine(1.0, f, -1.0, g);
  if (d.is_zero()) return 0.0;
  double best = 0.0;
  for (std::size_t k = 0; k + 1 < d.knots_.size(); ++k) {
    const Poly p = poly_from(d.pieces_[k]);
    const double h = d.knots_[k + 1] - d.knots_[k];
    best = std::max(best, std::abs(poly_eval(p, 0.0)));
    best = std::max(best, std::abs(poly_eval(p, h)));
    // stationary points of the cubic: roots of 3 c3 t^2 + 2 c2 t + c1
    const double a = 3.0 * p[3], b = 2.0 * p[2], c = p[1];
    if (std::abs(a) > 0.0) {
      const double disc = b * b - 4.0 * a * c;
      if (disc >= 0.0) {
        const double r = std::sqrt(disc);
        for (double t : {(-b + r) / (2.0 * a), (-b - r) / (2.0 * a)})
          if (t > 0.0 && t < h)
            best = std::max(best, std::abs(poly_eval(p, t)));
      }
    } else if (std::abs(b) > 0.0) {
      const double t = -c / b;
      if (t > 0.0 && t < h) best = std::max(best, std::abs(poly_eval(p, t)));
    }
  }
  return best;
}

WavePacket random_c1_packet(CounterRng& rng, double lo, double hi,
                            int pieces) {
  if (pieces < 2 || !(hi > lo)) throw InvalidKnots("bad random packet shape");
  const int m = pieces + 1;
  std::vector<double> gaps(pieces);
  double total = 0.0;
  for (int k = 0; k < pieces; ++k) {
    gaps[k] = 0.2 + rng.next_double();  // bounded away from zero
    total += gaps[k];
  }
  std::vector<double> knots(m), values(m), derivs(m);
  knots[0] = lo;
  for (int k = 1; k < m; ++k)
    knots[k] = knots[k - 1] + gaps[k - 1] * (hi - lo) / total;
  knots[m - 1] = hi;
  values.front() = values.back() = 0.0;
  derivs.front() = derivs.back() = 0.0;
  for (int k = 1; k + 1 < m; ++k) {
    values[k] = rng.uniform(-1.0, 1.0);
    derivs[k] = rng.uniform(-2.0, 2.0);
  }
  return WavePacket::from_hermite(knots, values, derivs);
}

WavePacket random_linear_packet(CounterRng& rng, double lo, double hi,
                                int pieces) {
  if (pieces < 2 || !(hi > lo)) throw InvalidKnots("bad random packet shape");
  const int m = pieces + 1;
  std::vector<double> gaps(pieces);
  double total = 0.0;
  for (int k = 0; k < pieces; ++k) {
    gaps[k] = 0.2 + rng.next_double();
    total += gaps[k];
  }
  std::vector<double> knots(m), values(m);
  knots[0] = lo;
  for (int k = 1; k < m; ++k)
    knots[k] = knots[k - 1] + gaps[k - 1] * (hi - lo) / total;
  knots[m - 1] = hi;
  values.front() = values.back() = 0.0;
  for (int k = 1; k + 1 < m; ++k) values[k] = rng.uniform(-1.0, 1.0);
  return WavePacket::from_linear(knots, values);
}

}  // namespace modent::wave_packet
