#include <cmath>
#include <random>

#include "doctest.h"
#include "scwig/chord_geometry.hpp"

using namespace scwig;

namespace {
const ShellSpec& unit_circle() {
  static const ShellSpec s = build_shell(HamiltonianSystem::harmonic(), 0.5);
  return s;
}
}  // namespace

TEST_SUITE("chord_geometry") {

TEST_CASE("chord of the unit circle centred at (0, 0.5)") {
  const auto chords = find_chords({0.0, 0.5}, unit_circle());
  REQUIRE(chords.size() == 1);
  const Chord& c = chords.front();
  CHECK(std::abs(c.xi.p) == doctest::Approx(std::sqrt(3.0)).epsilon(1e-9));
  CHECK(c.xi.q == doctest::Approx(0.0).epsilon(1e-9));
  // Circular segment with central angle 2 pi / 3.
  const double alpha = 2.0 * M_PI / 3.0;
  CHECK(c.action == doctest::Approx(0.5 * (alpha - std::sin(alpha))).epsilon(1e-9));
  CHECK(c.tau == doctest::Approx(alpha).epsilon(1e-9));
  CHECK(std::abs(c.wedge) == doctest::Approx(std::sin(alpha)).epsilon(1e-9));
  ChordOptions with_hbar;
  with_hbar.hbar = 0.05;
  CHECK(find_chords({0.0, 0.5}, unit_circle(), with_hbar).at(0).amplitude ==
        doctest::Approx(chord_amplitude(c, 0.05)).epsilon(1e-12));
  CHECK(chord_amplitude(c, 0.05) ==
        doctest::Approx(2.0 / (M_PI * std::sqrt(2.0 * M_PI * 0.05)) / std::sqrt(std::sin(alpha))).epsilon(1e-9));
}

TEST_CASE("segment area and traversal time at random centres") {
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> u(0.05, 0.95), ang(0.0, 2.0 * M_PI);
  for (int k = 0; k < 20; ++k) {
    const double r = u(rng), phi = ang(rng);
    const PhasePoint x{r * std::cos(phi), r * std::sin(phi)};
    const auto chords = find_chords(x, unit_circle());
    REQUIRE(chords.size() == 1);
    const double alpha = 2.0 * std::acos(r);
    CHECK(chords[0].action == doctest::Approx(0.5 * (alpha - std::sin(alpha))).epsilon(1e-8));
    CHECK(chords[0].tau == doctest::Approx(alpha).epsilon(1e-8));
    CHECK(norm(chords[0].centre - x) < 1e-9);
  }
}

TEST_CASE("action gradient equals J xi") {
  const PhasePoint x{0.2, 0.35};
  const double h = 1e-5;
  auto s = [&](const PhasePoint& y) { return find_chords(y, unit_circle()).at(0).action; };
  const Chord c = find_chords(x, unit_circle()).at(0);
  const PhasePoint grad{(s(x + PhasePoint{h, 0}) - s(x - PhasePoint{h, 0})) / (2 * h),
                        (s(x + PhasePoint{0, h}) - s(x - PhasePoint{0, h})) / (2 * h)};
  const PhasePoint jxi = apply_j(c.xi);
  CHECK(grad.p == doctest::Approx(jxi.p).epsilon(1e-6));
  CHECK(grad.q == doctest::Approx(jxi.q).epsilon(1e-6));
}

TEST_CASE("caustic indicator") {
  CHECK(caustic_indicator({0.0, 1.0}, unit_circle()) == 0.0);  // on the shell
  CHECK(caustic_indicator({0.0, 1.3}, unit_circle()) == 0.0);  // outside, no chords
  CHECK(caustic_indicator({0.0, 0.5}, unit_circle()) == doctest::Approx(std::sin(2 * M_PI / 3)).epsilon(1e-8));
  // Near the shell the wedge shrinks.
  CHECK(caustic_indicator({0.0, 0.99}, unit_circle()) < 0.3);
}

TEST_CASE("angle Jacobian and chord_from_angles agree with the circle") {
  const Chord c = chord_from_angles(0.3, 2.0, unit_circle());
  CHECK(c.tau == doctest::Approx(1.7).epsilon(1e-9));
  const AngleChart a = angle_jacobian(0.3, 2.0, unit_circle());
  CHECK(a.jacobian == doctest::Approx(0.25 * std::abs(std::sin(1.7))).epsilon(1e-8));
  CHECK(traversal_time(0.3, 2.0, unit_circle()) == doctest::Approx(1.7).epsilon(1e-9));
}

TEST_CASE("quartic shell chords close on the shell") {
  const auto sys = HamiltonianSystem::quartic();
  const ShellSpec shell = build_shell(sys, 0.5);
  for (const PhasePoint& x : {PhasePoint{0.1, 0.2}, PhasePoint{-0.3, 0.4}, PhasePoint{0.5, -0.1}}) {
    for (const Chord& c : find_chords(x, shell)) {
      CHECK(sys.energy(c.x_plus) == doctest::Approx(0.5).epsilon(1e-8));
      CHECK(sys.energy(c.x_minus) == doctest::Approx(0.5).epsilon(1e-8));
      CHECK(norm((c.x_plus + c.x_minus) * 0.5 - x) < 1e-9);
    }
  }
}

}
