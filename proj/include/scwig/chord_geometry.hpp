#pragma once

#include <cmath>
#include <limits>
#include <vector>

#include "scwig/classical_flow.hpp"

namespace scwig {

/// Closed energy curve sampled uniformly in the canonical angle
/// theta = 2 pi t / T, with a smooth interpolant and an action table.
class ShellSpec {
 public:
  ShellSpec(HamiltonianSystem system, const PeriodicOrbit& orbit);

  const HamiltonianSystem& system() const { return system_; }
  double energy() const { return energy_; }
  double period() const { return period_; }
  int size() const { return static_cast<int>(points_.size()); }
  double step() const { return 2.0 * M_PI / size(); }
  const std::vector<PhasePoint>& samples() const { return points_; }
  /// Largest |dx/dtheta| over the samples.
  double max_speed() const { return max_speed_; }

  /// Point at angle theta (cubic Hermite interpolation between samples).
  PhasePoint point(double theta) const;
  /// d/dtheta of the interpolant.
  PhasePoint tangent(double theta) const;
  /// Angle velocity dx/dtheta = (T / 2 pi) J grad H at point(theta).
  PhasePoint angle_velocity(double theta) const;

  /// Integral of p dq along the flow from theta_a forward to theta_b
  /// (covering (theta_b - theta_a) mod 2 pi).
  double arc_action(double theta_a, double theta_b) const;
  /// Area enclosed by the shell, the loop integral of p dq.
  double enclosed_area() const { return cumulative_.back(); }

  /// Angle of the shell point nearest to x (refined by Newton).
  double nearest_angle(const PhasePoint& x) const;

 private:
  double action_from_sample(int i, double dtheta) const;

  HamiltonianSystem system_;
  double energy_ = 0.0;
  double period_ = 0.0;
  double max_speed_ = 0.0;
  std::vector<PhasePoint> points_;
  std::vector<PhasePoint> tangents_;
  std::vector<double> cumulative_;  // size n + 1
};

/// Reduce an angle to [0, 2 pi).
double wrap_angle(double theta);

ShellSpec build_shell(const HamiltonianSystem& system, double energy, int samples = 1024,
                      const FlowOptions& options = {});

struct Chord {
  PhasePoint centre;
  PhasePoint xi;  // x_plus - x_minus
  PhasePoint x_plus;
  PhasePoint x_minus;
  double theta_minus = 0.0;
  double theta_plus = 0.0;
  double action = 0.0;
  double amplitude = 0.0;  // filled when a positive hbar is supplied
  double tau = 0.0;
  double maslov = M_PI / 4.0;
  double wedge = 0.0;  // |dx+/dtheta ^ dx-/dtheta|
  bool caustic = false;
  bool degenerate = false;
};

struct ChordOptions {
  double hbar = 0.0;
  double maslov = M_PI / 4.0;
  /// Relative caustic tolerance on the wedge, in units of max_speed^2.
  double caustic_tolerance = 1e-3;
  int scan = 64;
  double newton_tolerance = 1e-11;
};

struct AngleChart {
  double theta_minus = 0.0;
  double theta_plus = 0.0;
  double jacobian = 0.0;
};

/// Build a chord from a pair of angles (ordered so that the forward arc from
/// theta_minus to theta_plus is the shorter one).
Chord chord_from_angles(double theta_a, double theta_b, const ShellSpec& shell,
                        const ChordOptions& options = {});

/// All chords of the shell centred on x, deduplicated under tip swap.
std::vector<Chord> find_chords(const PhasePoint& x, const ShellSpec& shell,
                               const ChordOptions& options = {});

/// Area between the shorter shell arc and the chord (nonnegative for the
/// flow orientation).
double chord_action(const Chord& chord, const ShellSpec& shell);

/// 2/(pi sqrt(2 pi hbar)) |wedge|^(-1/2). Throws NumericalError at a caustic.
double chord_amplitude(const Chord& chord, double hbar);

AngleChart angle_jacobian(double theta_minus, double theta_plus, const ShellSpec& shell);

double traversal_time(double theta_minus, double theta_plus, const ShellSpec& shell);

/// Minimum wedge over the chords centred on x; 0 where x is on the shell or
/// has no chords.
double caustic_indicator(const PhasePoint& x, const ShellSpec& shell,
                         const ChordOptions& options = {});

}  // namespace scwig
