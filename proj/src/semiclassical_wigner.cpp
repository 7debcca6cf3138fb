#include "scwig/semiclassical_wigner.hpp"

#include <cmath>

#include "scwig/errors.hpp"

namespace scwig {

SemiclassicalState SemiclassicalState::pure(ShellSpec shell, double hbar, double maslov) {
  if (!(hbar > 0.0)) throw ConfigError("hbar must be positive");
  SemiclassicalState s{std::move(shell)};
  s.hbar = hbar;
  s.maslov = maslov;
  return s;
}

SemiclassicalState SemiclassicalState::spectral_window(ShellSpec shell, double hbar, double epsilon,
                                                       WindowShape window) {
  if (!(hbar > 0.0)) throw ConfigError("hbar must be positive");
  if (!(epsilon >= 0.0)) throw ConfigError("window width must be nonnegative");
  SemiclassicalState s{std::move(shell)};
  s.hbar = hbar;
  s.spectral = true;
  s.epsilon = epsilon;
  s.window = window;
  return s;
}

ChordOptions SemiclassicalState::chord_options() const {
  ChordOptions o;
  o.hbar = hbar;
  o.maslov = maslov;
  o.caustic_tolerance = caustic_tolerance;
  return o;
}

double quantized_energy(const HamiltonianSystem& system, double hbar, int n, int samples) {
  if (n < 0) throw ConfigError("quantum number must be nonnegative");
  const double target = 2.0 * M_PI * hbar * (n + 0.5);
  const double e0 = system.energy(system.equilibrium());
  auto g = [&](double e) { return build_shell(system, e, samples).enclosed_area() - target; };
  double width = hbar;
  double lo = e0, glo = -target;
  double hi = e0 + width, ghi = g(hi);
  while (ghi < 0.0) {
    lo = hi, glo = ghi;
    width *= 2.0;
    hi = e0 + width;
    ghi = g(hi);
  }
  // Illinois variant of regula falsi.
  int side = 0;
  for (int it = 0; it < 100; ++it) {
    const double mid = (lo * ghi - hi * glo) / (ghi - glo);
    const double gm = g(mid);
    if (std::abs(gm) <= 1e-13 * target || hi - lo <= 1e-14 * std::abs(hi)) return mid;
    if ((gm < 0.0) == (glo < 0.0)) {
      lo = mid, glo = gm;
      if (side == -1) ghi *= 0.5;
      side = -1;
    } else {
      hi = mid, ghi = gm;
      if (side == 1) glo *= 0.5;
      side = 1;
    }
  }
  return (lo * ghi - hi * glo) / (ghi - glo);
}

double window_factor(double tau, double epsilon, double hbar, WindowShape window) {
  if (window == WindowShape::gaussian)
    return std::exp(-epsilon * epsilon * tau * tau / (2.0 * hbar * hbar));
  return std::exp(-epsilon * std::abs(tau) / hbar);
}

namespace {

WignerSample evaluate(const PhasePoint& x, const SemiclassicalState& state, bool spectral) {
  WignerSample s;
  s.x = x;
  for (const Chord& c : find_chords(x, state.shell, state.chord_options())) {
    ChordContribution k;
    k.xi = c.xi;
    k.action = c.action;
    k.tau = c.tau;
    k.caustic = c.caustic;
    k.phase = c.action / state.hbar - state.maslov;
    if (spectral) k.damping = window_factor(c.tau, state.epsilon, state.hbar, state.window);
    if (c.caustic) {
      s.caustic_flag = true;
    } else {
      k.amplitude = c.amplitude * (spectral ? state.amplitude_calibration : 1.0);
      k.value = k.amplitude * k.damping * std::cos(k.phase);
      s.value += k.value;
    }
    s.contributions.push_back(k);
  }
  return s;
}

}  // namespace

WignerSample eval_pure(const PhasePoint& x, const SemiclassicalState& state) {
  return evaluate(x, state, false);
}

WignerSample eval_spectral(const PhasePoint& x, const SemiclassicalState& state) {
  return evaluate(x, state, true);
}

WignerSample eval_state(const PhasePoint& x, const SemiclassicalState& state) {
  return evaluate(x, state, state.spectral);
}

std::vector<WignerSample> eval_points(std::span<const PhasePoint> points,
                                      const SemiclassicalState& state, Exec exec) {
  std::vector<WignerSample> out(points.size());
  for_each_index(points.size(), exec, [&](std::size_t i) { out[i] = eval_state(points[i], state); });
  return out;
}

WignerSample mix_states(std::span<const double> weights, std::span<const WignerSample> samples) {
  if (weights.size() != samples.size()) throw DimensionMismatch("mix_states: length mismatch");
  WignerSample out;
  if (samples.empty()) return out;
  out.x = samples.front().x;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    out.value += weights[i] * samples[i].value;
    out.caustic_flag = out.caustic_flag || samples[i].caustic_flag;
    for (ChordContribution k : samples[i].contributions) {
      k.amplitude *= weights[i];
      k.value *= weights[i];
      out.contributions.push_back(k);
    }
  }
  return out;
}

}  // namespace scwig
