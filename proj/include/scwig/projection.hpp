#pragma once

#include <complex>
#include <vector>

#include "scwig/lindblad_semiclassics.hpp"

namespace scwig {

struct WKBBranch {
  int id = 0;
  double q = 0.0;
  double p = 0.0;
  double amplitude = 0.0;  // (T |dH/dp|)^(-1/2)
  double action = 0.0;     // int p dq from the left turning point along this branch
  double maslov = 0.0;     // branch phase offset
  bool turning = false;
};

/// Momentum branches of the shell above position q, ordered by decreasing p.
std::vector<WKBBranch> wkb_branches(double q, const ShellSpec& shell);

struct BranchPairTerm {
  int branch_plus = 0;
  int branch_minus = 0;
  std::complex<double> value;
  double damping = 1.0;
  double distance = 0.0;
};

struct DensityMatrixElement {
  double q_plus = 0.0;
  double q_minus = 0.0;
  std::complex<double> value;
  std::vector<BranchPairTerm> terms;
  bool turning_flag = false;

  double damping_min() const;
};

struct ProjectionOptions {
  /// Decoherence accumulated along the trajectories that arrive at the tips
  /// at time t (integrated backward from the tips); false launches them
  /// forward instead.
  bool backward = true;
  FlowOptions flow;
};

DensityMatrixElement density_matrix_sc(double q_plus, double q_minus, const ShellSpec& shell,
                                       const HamiltonianSystem& system, Channels channels, double t,
                                       double hbar, const ProjectionOptions& options = {});

/// Normalized short-chord correlation J_nu(z) / z^nu * 2^nu Gamma(nu + 1)
/// with nu = l/2 - 1 and z = p * separation / hbar.
double bessel_correlation(double separation, double p, double hbar, int dof);

/// Canonical quarter rotation (p, q) -> (P, Q) = (-q, p) that turns momentum
/// into the new position.
PhasePoint to_momentum_frame(const PhasePoint& x);
PhasePoint from_momentum_frame(const PhasePoint& y);
HamiltonianSystem momentum_frame_system(const HamiltonianSystem& system);
LindbladChannel momentum_frame_channel(const LindbladChannel& channel);

/// Density-matrix element between momenta p+ and p-: the position-space
/// construction applied in the rotated frame.
DensityMatrixElement momentum_rep_element(double p_plus, double p_minus,
                                          const HamiltonianSystem& system, double energy,
                                          Channels channels, double t, double hbar,
                                          const ProjectionOptions& options = {},
                                          int samples = 1024);

}  // namespace scwig
