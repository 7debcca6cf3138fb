#pragma once

#include "scwig/lindblad_semiclassics.hpp"

namespace scwig {

struct EnergyWindow {
  double energy = 0.0;
  double epsilon = 0.0;
  double t = 0.0;
};

/// First-order short chord tau J grad H(x).
PhasePoint short_chord(const PhasePoint& x, double tau, const HamiltonianSystem& system);

/// sum_j <|{H, L_j}|^2> over the shell H = E.
double bracket_rate(double energy, Channels channels, const HamiltonianSystem& system,
                    int samples = 512);

/// eps(t)^2 = eps0^2 + (hbar t / 2) bracket_rate(E).
EnergyWindow window_width(double epsilon0, double t, double energy, Channels channels,
                          const HamiltonianSystem& system, double hbar);

}  // namespace scwig
