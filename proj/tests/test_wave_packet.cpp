#include "modent/wave_packet.hpp"

#include <cmath>
#include <vector>

#include "doctest.h"
#include "modent/errors.hpp"
#include "modent/rng.hpp"

using namespace modent;
using wave_packet::DilationConvention;
using wave_packet::WavePacket;

TEST_CASE("hermite construction interpolates values and derivatives") {
  const std::vector<double> knots = {0.0, 0.7, 1.5, 2.2};
  const std::vector<double> values = {0.0, 0.9, -0.4, 0.0};
  const std::vector<double> derivs = {0.5, -1.0, 2.0, -0.3};
  const auto p = WavePacket::from_hermite(knots, values, derivs);

  for (std::size_t k = 0; k < knots.size(); ++k) {
    CHECK(p(knots[k]) == doctest::Approx(values[k]).epsilon(1e-14));
    if (k > 0)
      CHECK(p.derivative_left(knots[k]) ==
            doctest::Approx(derivs[k]).epsilon(1e-12));
    if (k + 1 < knots.size())
      CHECK(p.derivative_right(knots[k]) ==
            doctest::Approx(derivs[k]).epsilon(1e-12));
  }
  // C1 in the interior, kinked at the boundary (nonzero edge slopes)
  const auto kinks = p.kink_points();
  REQUIRE(kinks.size() == 2);
  CHECK(kinks[0] == 0.0);
  CHECK(kinks[1] == 2.2);
  CHECK(p(-1.0) == 0.0);
  CHECK(p(3.0) == 0.0);
}

TEST_CASE("tent and bump shapes") {
  const auto tent = WavePacket::tent(0.0, 1.0, 2.0);
  CHECK(tent(0.5) == doctest::Approx(0.5));
  CHECK(tent(1.0) == doctest::Approx(1.0));
  CHECK(tent(1.5) == doctest::Approx(0.5));
  CHECK(tent.derivative(0.5) == doctest::Approx(1.0));
  CHECK(tent.derivative(1.5) == doctest::Approx(-1.0));
  CHECK(tent.kink_points().size() == 3);

  const auto bump = WavePacket::bump(0.0, 2.0);
  CHECK(bump(1.0) == doctest::Approx(1.0));
  CHECK(bump.derivative(1.0) == doctest::Approx(0.0).epsilon(1e-14));
  CHECK(bump.is_c1());
  CHECK(bump(0.0) == 0.0);
  // max slope of the cubic step occurs at the quarter points: 3/2
  CHECK(bump.derivative(0.5) == doctest::Approx(1.5));
}

TEST_CASE("construction rejects malformed data") {
  CHECK_THROWS_AS(WavePacket::from_linear({0.0, 0.0, 1.0}, {0.0, 1.0, 0.0}),
                  InvalidKnots);
  CHECK_THROWS_AS(WavePacket::from_linear({0.0, 1.0}, {0.0, 1.0}),
                  InvalidKnots);  // nonzero boundary value
  CHECK_THROWS_AS(WavePacket::from_linear({0.0, 1.0, 2.0}, {0.0, 1.0}),
                  InvalidKnots);  // size mismatch
  CHECK_THROWS_AS(WavePacket::from_hermite({0.0}, {0.0}, {0.0}), InvalidKnots);
}

TEST_CASE("transforms act pointwise as claimed") {
  CounterRng rng(21, 0);
  const auto p = wave_packet::random_c1_packet(rng, 0.0, 2.5, 5);

  const auto shifted = p.translated(1.3);
  const auto scaled = p.dilated(0.4);           // phi(e^{0.4} x)
  const auto literal = p.dilated(0.4, DilationConvention::weight_one);
  const auto mirror = p.reflected();
  const double et = std::exp(0.4);

  for (double x : {0.1, 0.45, 0.8, 1.21, 1.9, 2.3}) {
    CHECK(shifted(x + 1.3) == doctest::Approx(p(x)).epsilon(1e-13));
    CHECK(scaled(x / et) == doctest::Approx(p(x)).epsilon(1e-12));
    CHECK(literal(x / et) ==
          doctest::Approx(std::exp(-0.4) * p(x)).epsilon(1e-12));
    CHECK(mirror(-x) == doctest::Approx(p(x)).epsilon(1e-12));
  }

  // support transforms
  const auto tent = WavePacket::tent(0.0, 1.0, 2.0);
  const auto half = tent.dilated(std::log(2.0));
  CHECK(half.support_lo() == doctest::Approx(0.0));
  CHECK(half.support_hi() == doctest::Approx(1.0));
  CHECK(tent.translated(1.0).support_lo() == doctest::Approx(1.0));
  CHECK(tent.translated(1.0).support_hi() == doctest::Approx(3.0));

  // double reflection is the identity
  CHECK(WavePacket::sup_distance(mirror.reflected(), p) < 1e-13);
}

TEST_CASE("combine is exact linear combination on merged knots") {
  const auto f = WavePacket::tent(0.0, 1.0, 2.0);
  const auto g = WavePacket::bump(0.5, 3.0);
  const auto c = WavePacket::combine(2.0, f, -3.0, g);
  for (double x : {-0.1, 0.2, 0.5, 0.9, 1.7, 2.4, 2.9, 3.1}) {
    CHECK(c(x) == doctest::Approx(2.0 * f(x) - 3.0 * g(x)).epsilon(1e-13));
  }
  CHECK(c.support_lo() == doctest::Approx(0.0));
  CHECK(c.support_hi() == doctest::Approx(3.0));
}

TEST_CASE("exact integrals against hand-computed oracles") {
  const auto tent = WavePacket::tent(0.0, 1.0, 2.0);
  // int tent^2 = 2/3, int tent'^2 = 2
  CHECK(WavePacket::l2_inner(tent, tent) ==
        doctest::Approx(2.0 / 3.0).epsilon(1e-14));
  CHECK(WavePacket::integral_product(tent, tent, 1, 1, 0, 0.0, false) ==
        doctest::Approx(2.0).epsilon(1e-14));
  // int_0^2 x tent'^2 = 2
  CHECK(WavePacket::integral_product(tent, tent, 1, 1, 1, 0.0, true) ==
        doctest::Approx(2.0).epsilon(1e-14));
  // clip inside the support: int_0.5^2 (x - 0.5) dx = 9/8
  CHECK(WavePacket::integral_product(tent, tent, 1, 1, 1, 0.5, true) ==
        doctest::Approx(9.0 / 8.0).epsilon(1e-14));

  // symplectic pairing with the shifted tent: (1/2) int_1^2 -(x-1) = -1/4
  const auto tent2 = tent.translated(1.0);
  CHECK(WavePacket::symplectic_position(tent, tent2) ==
        doctest::Approx(-0.25).epsilon(1e-14));
  // antisymmetry including the self-pairing
  CHECK(WavePacket::symplectic_position(tent, tent) ==
        doctest::Approx(0.0));
  CHECK(WavePacket::symplectic_position(tent2, tent) ==
        doctest::Approx(0.25).epsilon(1e-14));

  // disjoint supports
  const auto far = tent.translated(10.0);
  CHECK(WavePacket::l2_inner(tent, far) == 0.0);
  CHECK(WavePacket::symplectic_position(tent, far) == 0.0);
}

TEST_CASE("sup_distance finds interior extrema exactly") {
  const auto tent = WavePacket::tent(0.0, 1.0, 2.0);
  CHECK(WavePacket::sup_distance(tent, WavePacket()) == doctest::Approx(1.0));
  const auto small = WavePacket::tent(0.0, 1.0, 2.0, 0.25);
  CHECK(WavePacket::sup_distance(tent, small) == doctest::Approx(0.75));
  const auto b = WavePacket::bump(0.0, 4.0, 2.0);
  CHECK(WavePacket::sup_distance(b, WavePacket()) == doctest::Approx(2.0));
  // interior stationary point of a cubic difference, away from all knots
  const auto hump = WavePacket::from_hermite({0.0, 1.0}, {0.0, 0.0},
                                             {1.0, 0.0});
  // p(t) = t - 2t^2 + t^3 on [0,1]: max at t = 1/3, value 4/27
  CHECK(WavePacket::sup_distance(hump, WavePacket()) ==
        doctest::Approx(4.0 / 27.0).epsilon(1e-14));
}

TEST_CASE("random packet generators honor their contracts") {
  CounterRng rng(22, 0);
  for (int rep = 0; rep < 5; ++rep) {
    const auto c1 = wave_packet::random_c1_packet(rng, -1.0, 2.0, 6);
    CHECK(c1.is_c1());
    CHECK(c1.support_lo() == doctest::Approx(-1.0));
    CHECK(c1.support_hi() == doctest::Approx(2.0));
    CHECK(c1(-1.0) == 0.0);
    CHECK(c1.derivative_right(-1.0) == doctest::Approx(0.0));

    const auto lin = wave_packet::random_linear_packet(rng, 0.0, 3.0, 5);
    CHECK(lin.support_hi() == doctest::Approx(3.0));
    CHECK(lin.kink_points().size() >= 4);
  }
}
