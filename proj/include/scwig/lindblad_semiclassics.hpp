#pragma once

#include <complex>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "scwig/chord_geometry.hpp"
#include "scwig/polynomial.hpp"

namespace scwig {

/// One environment coupling L(x); the coupling constant is folded into L.
struct LindbladChannel {
  std::string label;
  std::function<std::complex<double>(const PhasePoint&)> value;
  /// Gradient of the real part; used for Poisson brackets. Optional.
  GradientField gradient;
  bool hermitian = true;
  /// Present when L is a polynomial symbol (lets the oracle quantize it).
  std::optional<PolynomialSymbol> symbol;

  static LindbladChannel from_symbol(const PolynomialSymbol& symbol, std::string label = "poly");
  static LindbladChannel position(double coupling = 1.0);
  static LindbladChannel momentum(double coupling = 1.0);
  /// Real channel given as a scalar field.
  static LindbladChannel real_field(std::string label, ScalarField f, GradientField g = {});

  double real_value(const PhasePoint& x) const;
  SmoothField field() const;
  LindbladChannel scaled(double factor) const;
};

using Channels = std::span<const LindbladChannel>;

bool all_hermitian(Channels channels);

/// Time derivative of a chord contribution for possibly complex channels
/// (evaluation only).
double lindblad_rate(const Chord& chord, Channels channels, double hbar);

/// (1 / 2 hbar) sum_j |L_j(x+) - L_j(x-)|^2 for hermitian channels.
double hermitian_decay_rate(const Chord& chord, Channels channels, double hbar);
double hermitian_decay_rate(const PhasePoint& x_plus, const PhasePoint& x_minus, Channels channels,
                            double hbar);

/// sum_j |L_j(a) - L_j(b)|^2 for hermitian channels.
double channel_gap_squared(const PhasePoint& a, const PhasePoint& b, Channels channels);

struct DecoherenceRecord {
  double t = 0.0;
  double distance = 0.0;  // D_t
  std::vector<double> times;
  std::vector<double> integrand;
  std::vector<double> cumulative;  // running D^2 at each sample
  Trajectory plus;
  Trajectory minus;

  double distance_squared() const { return distance * distance; }
};

/// D_t^2 = sum_j int_0^t |L_j(x+(s)) - L_j(x-(s))|^2 ds along the flowed tips,
/// composite Simpson on the fixed flow grid.
DecoherenceRecord decoherence_distance(const PhasePoint& x_plus0, const PhasePoint& x_minus0,
                                       const HamiltonianSystem& system, Channels channels, double t,
                                       const FlowOptions& options = {});

struct EvolvedChord {
  Chord chord;  // tips, centre and chord vector at time t; action = S_t
  double damping = 1.0;
  double log_damping = 0.0;
  DecoherenceRecord record;
  std::vector<double> action_history;  // S at each record time
};

/// Continuous evolution: flowed tips, Hamilton-Jacobi action update and
/// damping exp(-D_t^2 / 2 hbar).
EvolvedChord evolve_contribution(const Chord& chord0, const HamiltonianSystem& system,
                                 Channels channels, double t, double hbar,
                                 const FlowOptions& options = {});

/// Split evolution with N alternating unitary and damping half-steps; the
/// Hamiltonian is doubled and the couplings scaled by sqrt(2) internally.
EvolvedChord trotter_evolve(const Chord& chord0, const HamiltonianSystem& system, Channels channels,
                            double t, int steps, double hbar, const FlowOptions& options = {});

}  // namespace scwig
