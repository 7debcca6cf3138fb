#include "scwig/energy_diffusion.hpp"

#include <cmath>

#include "scwig/errors.hpp"

namespace scwig {

PhasePoint short_chord(const PhasePoint& x, double tau, const HamiltonianSystem& system) {
  return system.velocity(x) * tau;
}

double bracket_rate(double energy, Channels channels, const HamiltonianSystem& system, int samples) {
  if (!all_hermitian(channels)) throw UnsupportedOperation("bracket_rate: hermitian channels only");
  if (channels.empty()) return 0.0;
  const SmoothField h = system.field();
  double total = 0.0;
  for (const auto& ch : channels) {
    const SmoothField l = ch.field();
    total += shell_average(
        [&](const PhasePoint& x) {
          const double b = poisson_bracket(h, l, x);
          return b * b;
        },
        energy, system, samples);
  }
  return total;
}

EnergyWindow window_width(double epsilon0, double t, double energy, Channels channels,
                          const HamiltonianSystem& system, double hbar) {
  if (!(epsilon0 >= 0.0)) throw ConfigError("window_width: epsilon0 must be nonnegative");
  const double rate = t == 0.0 ? 0.0 : bracket_rate(energy, channels, system);
  return {energy, std::sqrt(epsilon0 * epsilon0 + 0.5 * hbar * t * rate), t};
}

}  // namespace scwig
