#pragma once

#include <utility>

#include "scwig/kernels.hpp"
#include "scwig/lindblad_semiclassics.hpp"

namespace scwig {

struct AngleIntegralReport {
  double value = 0.0;
  int grid = 0;
  double error_estimate = 0.0;
};

/// Exponent placement in the purity-decay integrand.
enum class PurityExponent {
  over_hbar,  // exp(-D^2 / hbar): square of the amplitude damping
  bare        // exp(-D^2)
};

/// Angle-pair torus integral of the oscillation-averaged squared chord sum.
/// `amplitude_scale` multiplies every chord amplitude.
double purity_t0(const ShellSpec& shell, double hbar, int grid = 128, double amplitude_scale = 1.0,
                 Exec exec = Exec::parallel);

struct PurityDecayOptions {
  int grid = 256;
  PurityExponent exponent = PurityExponent::over_hbar;
  FlowOptions flow;
  Exec exec = Exec::parallel;
};

AngleIntegralReport purity_decay(const ShellSpec& shell, const HamiltonianSystem& system,
                                 Channels channels, double t, double hbar,
                                 const PurityDecayOptions& options = {});

struct DirectTraceOptions {
  int angle_nodes = 64;      // along the chord-centre angle
  int panel_order = 16;      // Gauss points per panel in the opening angle
  double maslov = M_PI / 4.0;
  Exec exec = Exec::parallel;
};

/// Integral of the semiclassical Wigner function over phase space, computed
/// in angle-pair variables (sigma = theta_-, delta = opening angle).
AngleIntegralReport direct_trace(const ShellSpec& shell, double hbar,
                                 const DirectTraceOptions& options = {});

/// (finite-difference d^2 S / d theta_+^2 at theta_- = theta,
///  theta_+ = theta + delta; (1/2) |x'_+ ^ x'_-| at the same pair).
std::pair<double, double> hessian_limit(const ShellSpec& shell, double theta, double delta = 1e-2);

}  // namespace scwig
