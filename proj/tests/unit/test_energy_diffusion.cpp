#include <cmath>

#include "doctest.h"
#include "scwig/energy_diffusion.hpp"

using namespace scwig;

TEST_SUITE("energy_diffusion") {

TEST_CASE("bracket rate for L = q on the harmonic shell is <p^2> = E") {
  const LindbladChannel q = LindbladChannel::position();
  CHECK(bracket_rate(0.5, Channels(&q, 1), HamiltonianSystem::harmonic()) == doctest::Approx(0.5).epsilon(1e-10));
  CHECK(bracket_rate(1.3, Channels(&q, 1), HamiltonianSystem::harmonic()) == doctest::Approx(1.3).epsilon(1e-10));
}

TEST_CASE("bracket rate for L = H vanishes") {
  const auto h = LindbladChannel::real_field("H", [](const PhasePoint& x) { return 0.5 * (x.p * x.p + x.q * x.q); });
  CHECK(std::abs(bracket_rate(0.5, Channels(&h, 1), HamiltonianSystem::harmonic())) < 1e-12);
}

TEST_CASE("window width grows diffusively") {
  const LindbladChannel q = LindbladChannel::position();
  const auto w = window_width(0.1, 2.0, 0.5, Channels(&q, 1), HamiltonianSystem::harmonic(), 0.05);
  CHECK(w.epsilon * w.epsilon == doctest::Approx(0.01 + 0.5 * 0.05 * 2.0 * 0.5).epsilon(1e-10));
  CHECK(window_width(0.1, 0.0, 0.5, Channels(&q, 1), HamiltonianSystem::harmonic(), 0.05).epsilon == doctest::Approx(0.1));
}

TEST_CASE("short chord is tau J grad H") {
  const PhasePoint x{0.3, 0.4};
  const PhasePoint c = short_chord(x, 0.01, HamiltonianSystem::harmonic());
  CHECK(c.p == doctest::Approx(-0.01 * 0.4));
  CHECK(c.q == doctest::Approx(0.01 * 0.3));
}

}
