#include <cmath>

#include "doctest.h"
#include "scwig/errors.hpp"
#include "scwig/lindblad_semiclassics.hpp"

using namespace scwig;

namespace {
const LindbladChannel q_channel = LindbladChannel::position();
const Channels q_only(&q_channel, 1);

// int_0^t (a cos s + b sin s)^2 ds
double rotating_gap(double a, double b, double t) {
  return 0.5 * (a * a + b * b) * t + 0.25 * (a * a - b * b) * std::sin(2 * t) +
         0.5 * a * b * (1 - std::cos(2 * t));
}
}  // namespace

TEST_SUITE("lindblad_semiclassics") {

TEST_CASE("cat-state decay rate (dq)^2 / 2 hbar") {
  CHECK(hermitian_decay_rate({0, 1}, {0, -1}, q_only, 0.05) == doctest::Approx(40.0).epsilon(1e-14));
}

TEST_CASE("lindblad rate reduces to the hermitian damping of the chord term") {
  const ShellSpec shell = build_shell(HamiltonianSystem::harmonic(), 0.5);
  ChordOptions o;
  o.hbar = 0.05;
  const Chord c = find_chords({0.1, 0.4}, shell, o).at(0);
  const double term = c.amplitude * std::cos(c.action / 0.05);
  CHECK(lindblad_rate(c, q_only, 0.05) ==
        doctest::Approx(-hermitian_decay_rate(c, q_only, 0.05) * term).epsilon(1e-12));
}

TEST_CASE("non-hermitian channels are rejected by the hermitian rate") {
  PolynomialSymbol a = PolynomialSymbol::q() * std::sqrt(0.5) + PolynomialSymbol::p() * std::complex<double>(0, std::sqrt(0.5));
  const LindbladChannel ch = LindbladChannel::from_symbol(a, "a");
  CHECK_FALSE(ch.hermitian);
  CHECK_THROWS_AS(hermitian_decay_rate({0, 1}, {0, -1}, Channels(&ch, 1), 0.05), UnsupportedOperation);
}

TEST_CASE("decoherence distance without dynamics grows linearly") {
  const auto rec = decoherence_distance({0, 1}, {0, -1}, HamiltonianSystem::zero(), q_only, 0.7);
  CHECK(rec.distance_squared() == doctest::Approx(4.0 * 0.7).epsilon(1e-12));
}

TEST_CASE("decoherence distance along harmonic trajectories") {
  const PhasePoint a{0.3, 0.9}, b{-0.2, 0.1};
  for (double t : {0.4, 1.0, 3.0}) {
    const auto rec = decoherence_distance(a, b, HamiltonianSystem::harmonic(), q_only, t);
    CHECK(rec.distance_squared() ==
          doctest::Approx(rotating_gap(a.q - b.q, a.p - b.p, t)).epsilon(1e-8));
    for (size_t i = 1; i < rec.cumulative.size(); ++i) CHECK(rec.cumulative[i] >= rec.cumulative[i - 1]);
  }
}

TEST_CASE("distance is additive over concatenated intervals") {
  const auto sys = HamiltonianSystem::quartic();
  const PhasePoint a{0.5, 0.2}, b{-0.1, -0.6};
  const auto whole = decoherence_distance(a, b, sys, q_only, 1.6);
  const auto first = decoherence_distance(a, b, sys, q_only, 0.6);
  const auto second = decoherence_distance(first.plus.final_point(), first.minus.final_point(), sys, q_only, 1.0);
  CHECK(std::abs(whole.distance_squared() - first.distance_squared() - second.distance_squared()) < 1e-8);
}

TEST_CASE("evolved chord: damping, tips and action") {
  const double hbar = 0.05;
  const auto sys = HamiltonianSystem::harmonic();
  const ShellSpec shell = build_shell(sys, 0.5);
  const Chord c = find_chords({0.0, 0.5}, shell).at(0);
  const EvolvedChord e = evolve_contribution(c, sys, q_only, 1.0, hbar);
  CHECK(e.damping == doctest::Approx(std::exp(-e.record.distance_squared() / (2 * hbar))).epsilon(1e-12));
  CHECK(e.log_damping == doctest::Approx(-e.record.distance_squared() / (2 * hbar)).epsilon(1e-12));
  // Tips on the same shell: Hamilton-Jacobi leaves the action unchanged.
  CHECK(e.chord.action == doctest::Approx(c.action).epsilon(1e-10));
  CHECK(sys.energy(e.chord.x_plus) == doctest::Approx(0.5).epsilon(1e-10));
}

TEST_CASE("Hamilton-Jacobi residual vanishes for tips on different shells") {
  const auto sys = HamiltonianSystem::pendulum();
  Chord c;
  c.x_plus = {0.4, 0.3};
  c.x_minus = {-0.2, -0.5};
  c.centre = (c.x_plus + c.x_minus) * 0.5;
  c.xi = c.x_plus - c.x_minus;
  const std::vector<LindbladChannel> none;
  const auto base = evolve_contribution(c, sys, none, 0.5, 0.05);
  double last = 1e9;
  for (double d : {1e-2, 1e-3}) {
    const auto next = evolve_contribution(c, sys, none, 0.5 + d, 0.05);
    const double r = std::abs((next.chord.action - base.chord.action) / d + sys.energy(base.chord.x_plus) -
                              sys.energy(base.chord.x_minus));
    CHECK(r <= last + 1e-12);
    last = r;
  }
  CHECK(last < 1e-6);
}

TEST_CASE("Trotter splitting converges at first order") {
  const auto sys = HamiltonianSystem::harmonic();
  const Chord c = find_chords({0.0, 0.5}, build_shell(sys, 0.5)).at(0);
  const double exact = evolve_contribution(c, sys, q_only, 1.0, 0.05).log_damping;
  const double e16 = std::abs(trotter_evolve(c, sys, q_only, 1.0, 16, 0.05).log_damping - exact);
  const double e32 = std::abs(trotter_evolve(c, sys, q_only, 1.0, 32, 0.05).log_damping - exact);
  CHECK(e16 / e32 == doctest::Approx(2.0).epsilon(0.1));
}

}
