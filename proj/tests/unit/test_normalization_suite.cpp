#include <cmath>

#include "doctest.h"
#include "scwig/normalization_suite.hpp"

using namespace scwig;

TEST_SUITE("normalization_suite") {

TEST_CASE("t = 0 purity identity on three shells") {
  CHECK(std::abs(purity_t0(build_shell(HamiltonianSystem::harmonic(), 0.5), 0.05) - 1.0) < 1e-9);
  CHECK(std::abs(purity_t0(build_shell(HamiltonianSystem::quartic(), 0.5), 0.05) - 1.0) < 1e-9);
  CHECK(std::abs(purity_t0(build_shell(HamiltonianSystem::pendulum(), 0.0), 0.05) - 1.0) < 1e-9);
}

TEST_CASE("purity identity scales with the amplitude squared") {
  const ShellSpec s = build_shell(HamiltonianSystem::harmonic(), 0.5);
  CHECK(purity_t0(s, 0.05, 128, 1.1) == doctest::Approx(1.21).epsilon(1e-9));
}

TEST_CASE("purity decay starts at one and falls monotonically") {
  const auto sys = HamiltonianSystem::harmonic();
  const ShellSpec s = build_shell(sys, 0.5);
  const LindbladChannel q = LindbladChannel::position();
  CHECK(purity_decay(s, sys, Channels(&q, 1), 0.0, 0.05).value == doctest::Approx(1.0).epsilon(1e-12));
  double last = 1.0;
  for (double t : {0.02, 0.05, 0.1, 0.2}) {
    const double v = purity_decay(s, sys, Channels(&q, 1), t, 0.05).value;
    CHECK(v < last);
    last = v;
  }
}

TEST_CASE("small-t purity slope is twice the mean chord decay rate") {
  // d/dt P = -(1/hbar) <(dL)^2> averaged over angle pairs; for L = q on the unit
  // circle the uniform pair average of (q+ - q-)^2 is 2 <q^2> = 1.
  const auto sys = HamiltonianSystem::harmonic();
  const ShellSpec s = build_shell(sys, 0.5);
  const LindbladChannel q = LindbladChannel::position();
  const double t = 1e-4, hbar = 0.05;
  const double slope = (1.0 - purity_decay(s, sys, Channels(&q, 1), t, hbar).value) / t;
  CHECK(slope == doctest::Approx(1.0 / hbar).epsilon(1e-2));
}

TEST_CASE("exponent conventions differ by the hbar placement") {
  const auto sys = HamiltonianSystem::harmonic();
  const ShellSpec s = build_shell(sys, 0.5);
  const LindbladChannel q = LindbladChannel::position();
  PurityDecayOptions bare;
  bare.exponent = PurityExponent::bare;
  const double a = purity_decay(s, sys, Channels(&q, 1), 0.1, 0.05).value;
  const double b = purity_decay(s, sys, Channels(&q, 1), 0.1, 0.05, bare).value;
  CHECK(b > a);
}

TEST_CASE("direct trace is hbar independent on quantized harmonic shells") {
  const auto sys = HamiltonianSystem::harmonic();
  const double a = direct_trace(build_shell(sys, 0.05 * 10.5), 0.05).value;
  const double b = direct_trace(build_shell(sys, 0.025 * 20.5), 0.025).value;
  CHECK(std::abs(a - b) / a < 0.05);
  CHECK(direct_trace(build_shell(sys, 0.05 * 10.5), 0.05).error_estimate < 1e-6);
}

TEST_CASE("Hessian limit matches half the wedge") {
  for (const auto& [sys, e] : {std::pair{HamiltonianSystem::harmonic(), 0.5}, std::pair{HamiltonianSystem::quartic(), 0.5}}) {
    const auto [fd, closed] = hessian_limit(build_shell(sys, e), 0.7);
    CHECK(fd == doctest::Approx(closed).epsilon(1e-4));
  }
}

TEST_CASE("serial and parallel angle integrals are bit-identical") {
  const auto sys = HamiltonianSystem::quartic();
  const ShellSpec s = build_shell(sys, 0.5);
  const LindbladChannel q = LindbladChannel::position();
  PurityDecayOptions a, b;
  a.exec = Exec::serial;
  a.grid = b.grid = 64;
  CHECK(purity_decay(s, sys, Channels(&q, 1), 0.1, 0.05, a).value ==
        purity_decay(s, sys, Channels(&q, 1), 0.1, 0.05, b).value);
  DirectTraceOptions c, d;
  c.exec = Exec::serial;
  CHECK(direct_trace(s, 0.05, c).value == direct_trace(s, 0.05, d).value);
}

}
