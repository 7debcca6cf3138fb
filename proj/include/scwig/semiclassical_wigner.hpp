#pragma once

#include <span>
#include <vector>

#include "scwig/chord_geometry.hpp"
#include "scwig/kernels.hpp"

namespace scwig {

enum class WindowShape { gaussian, lorentzian };

struct SemiclassicalState {
  ShellSpec shell;
  double hbar = 0.05;
  double maslov = M_PI / 4.0;
  bool spectral = false;
  double epsilon = 0.0;
  WindowShape window = WindowShape::gaussian;
  /// Multiplies the pure-chord amplitude in the spectral sum.
  double amplitude_calibration = 1.0;
  double caustic_tolerance = 1e-3;

  static SemiclassicalState pure(ShellSpec shell, double hbar, double maslov = M_PI / 4.0);
  static SemiclassicalState spectral_window(ShellSpec shell, double hbar, double epsilon,
                                            WindowShape window = WindowShape::gaussian);

  ChordOptions chord_options() const;
};

/// Energy of the shell with enclosed area 2 pi hbar (n + 1/2).
double quantized_energy(const HamiltonianSystem& system, double hbar, int n, int samples = 1024);

/// exp(-eps^2 tau^2 / 2 hbar^2) or exp(-eps |tau| / hbar).
double window_factor(double tau, double epsilon, double hbar, WindowShape window);

struct ChordContribution {
  PhasePoint xi;
  double action = 0.0;
  double amplitude = 0.0;
  double tau = 0.0;
  double damping = 1.0;
  double phase = 0.0;  // S / hbar - maslov
  double value = 0.0;
  bool caustic = false;
};

struct WignerSample {
  PhasePoint x;
  double value = 0.0;
  std::vector<ChordContribution> contributions;
  bool caustic_flag = false;
};

WignerSample eval_pure(const PhasePoint& x, const SemiclassicalState& state);
WignerSample eval_spectral(const PhasePoint& x, const SemiclassicalState& state);
/// Dispatches on state.spectral.
WignerSample eval_state(const PhasePoint& x, const SemiclassicalState& state);

/// Pointwise weighted sum of samples taken at the same x.
/// eval_state over a list of points; results in input order.
std::vector<WignerSample> eval_points(std::span<const PhasePoint> points,
                                      const SemiclassicalState& state, Exec exec = Exec::parallel);

WignerSample mix_states(std::span<const double> weights, std::span<const WignerSample> samples);

}  // namespace scwig
