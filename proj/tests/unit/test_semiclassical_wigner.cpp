#include <cmath>

#include "doctest.h"
#include "scwig/semiclassical_wigner.hpp"

using namespace scwig;

namespace {
// Exact harmonic eigenstate Wigner function (Laguerre form).
double exact_wigner(int n, double hbar, const PhasePoint& x) {
  const double h = 0.5 * (x.p * x.p + x.q * x.q);
  return (n % 2 ? -1.0 : 1.0) / (M_PI * hbar) * std::exp(-2.0 * h / hbar) *
         std::laguerre(n, 4.0 * h / hbar);
}
}  // namespace

TEST_SUITE("semiclassical_wigner") {

TEST_CASE("harmonic quantization is exact") {
  for (int n : {0, 3, 10})
    CHECK(quantized_energy(HamiltonianSystem::harmonic(), 0.05, n) == doctest::Approx(0.05 * (n + 0.5)).epsilon(1e-9));
}

TEST_CASE("quartic quantization encloses 2 pi hbar (n + 1/2)") {
  const double hbar = 0.05;
  const auto sys = HamiltonianSystem::quartic();
  const double e = quantized_energy(sys, hbar, 7);
  CHECK(build_shell(sys, e).enclosed_area() == doctest::Approx(2 * M_PI * hbar * 7.5).epsilon(1e-9));
}

TEST_CASE("pure-state W matches the exact eigenstate away from caustics") {
  const double hbar = 1.0;
  const int n = 10;
  const auto sys = HamiltonianSystem::harmonic();
  const auto state = SemiclassicalState::pure(build_shell(sys, quantized_energy(sys, hbar, n)), hbar);
  const double peak = 1.0 / (M_PI * hbar);
  for (double r = 1.2; r < 3.6; r += 0.15) {
    const PhasePoint x{0.6 * r, 0.8 * r};
    const double err = std::abs(eval_pure(x, state).value - exact_wigner(n, hbar, x)) / peak;
    CHECK(err < 0.1);
  }
}

TEST_CASE("single chord term is A cos(S / hbar - pi / 4)") {
  const auto state = SemiclassicalState::pure(build_shell(HamiltonianSystem::harmonic(), 0.5), 0.05);
  const WignerSample s = eval_pure({0.0, 0.5}, state);
  REQUIRE(s.contributions.size() == 1);
  const auto& c = s.contributions[0];
  CHECK(s.value == doctest::Approx(c.amplitude * std::cos(c.action / 0.05 - M_PI / 4)).epsilon(1e-12));
}

TEST_CASE("window factors") {
  CHECK(window_factor(2.0, 0.1, 0.05, WindowShape::gaussian) ==
        doctest::Approx(std::exp(-0.01 * 4.0 / (2 * 0.0025))).epsilon(1e-12));
  CHECK(window_factor(2.0, 0.1, 0.05, WindowShape::lorentzian) ==
        doctest::Approx(std::exp(-0.1 * 2.0 / 0.05)).epsilon(1e-12));
  CHECK(window_factor(0.0, 0.3, 0.05, WindowShape::gaussian) == 1.0);
}

TEST_CASE("spectral window damps long chords") {
  const ShellSpec shell = build_shell(HamiltonianSystem::harmonic(), 0.5);
  const auto pure = SemiclassicalState::pure(shell, 0.05);
  const auto mixed = SemiclassicalState::spectral_window(shell, 0.05, 0.05);
  const PhasePoint x{0.0, 0.1};  // long chord, tau close to pi
  CHECK(std::abs(eval_state(x, mixed).value) < std::abs(eval_state(x, pure).value));
}

TEST_CASE("mixing states weights values") {
  const ShellSpec shell = build_shell(HamiltonianSystem::harmonic(), 0.5);
  const auto st = SemiclassicalState::pure(shell, 0.05);
  const WignerSample a = eval_pure({0.0, 0.5}, st);
  const std::vector<double> w{0.25, 0.75};
  const std::vector<WignerSample> s{a, a};
  CHECK(mix_states(w, s).value == doctest::Approx(a.value).epsilon(1e-14));
}

TEST_CASE("serial and parallel grid evaluation are bit-identical") {
  const auto st = SemiclassicalState::pure(build_shell(HamiltonianSystem::quartic(), 0.5), 0.05);
  std::vector<PhasePoint> pts;
  for (int i = 0; i < 15; ++i)
    for (int j = 0; j < 15; ++j) pts.push_back({-0.9 + 0.13 * j, -0.9 + 0.13 * i});
  const auto a = eval_points(pts, st, Exec::serial);
  const auto b = eval_points(pts, st, Exec::parallel);
  for (size_t i = 0; i < pts.size(); ++i) CHECK(a[i].value == b[i].value);
}

}
