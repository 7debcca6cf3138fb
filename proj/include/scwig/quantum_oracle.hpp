#pragma once

#include <Eigen/Dense>
#include <complex>
#include <functional>
#include <string>
#include <vector>

#include "scwig/classical_flow.hpp"
#include "scwig/kernels.hpp"
#include "scwig/polynomial.hpp"

namespace scwig::oracle {

using RMatrix = Eigen::MatrixXd;
using CMatrix = Eigen::MatrixXcd;
using RVector = Eigen::VectorXd;
using CVector = Eigen::VectorXcd;

/// Uniform position grid q_i = -L + i dq, i = 0..n-1, dq = 2L / (n - 1).
struct Grid {
  int n = 0;
  double half_width = 0.0;
  double dq = 0.0;

  static Grid make(int n, double half_width);
  double q(int i) const { return -half_width + i * dq; }
  RVector positions() const;
};

/// Six times the largest |q| reached on the shell H = E.
double auto_half_width(const HamiltonianSystem& system, double energy);

/// Exact sinc-basis matrices on the grid (discrete orthonormal basis).
RMatrix derivative_matrix(const Grid& grid);
RMatrix kinetic_matrix(const Grid& grid, double hbar);  // p^2 / 2
CMatrix momentum_matrix(const Grid& grid, double hbar);
CMatrix position_matrix(const Grid& grid);
/// Weyl (symmetric) ordering of a polynomial symbol.
CMatrix weyl_quantize(const PolynomialSymbol& symbol, const Grid& grid, double hbar);
/// p^2/2 + V(q) for the separable presets; Weyl quantization otherwise.
CMatrix hamiltonian_matrix(const HamiltonianSystem& system, const Grid& grid, double hbar,
                           const PolynomialSymbol* symbol = nullptr);

struct Eigenpairs {
  RVector energies;
  CMatrix vectors;  // columns, unit norm in the discrete inner product
  double max_residual = 0.0;
};

Eigenpairs solve_eigenstates(const std::function<double(double)>& potential, const Grid& grid,
                             double hbar, int count);
Eigenpairs solve_eigenstates(const CMatrix& hamiltonian, int count);

/// Density matrix in position representation rho(q_a, q_b).
struct DensityGrid {
  Grid grid;
  double hbar = 1.0;
  CMatrix rho;

  /// From discrete-normalized amplitudes c_a = sqrt(dq) psi(q_a).
  static DensityGrid pure(const Grid& grid, double hbar, const CVector& amplitudes);
  double trace() const;
  CMatrix discrete() const { return rho * grid.dq; }
  double purity() const;
};

/// Wigner function on 2n-1 half-grid centres x n momenta.
struct WignerGrid {
  Grid grid;
  double hbar = 1.0;
  double dp = 0.0;
  RMatrix values;  // rows: centre index s, q = q_0 + s dq / 2; cols: p_j = (j - n/2) dp
  double imag_residue = 0.0;

  double centre(int s) const { return grid.q(0) + 0.5 * s * grid.dq; }
  double momentum(int j) const { return (j - grid.n / 2) * dp; }
  /// Integral over phase space (exact on the even rows).
  double integral() const;
  /// Integral over p at grid position index a.
  double marginal(int a) const;
  /// Bilinear-free lookup: value at the nearest node.
  double nearest(const PhasePoint& x) const;
};

WignerGrid weyl_transform(const DensityGrid& rho, Exec exec = Exec::parallel,
                          bool check_aliasing = true);
DensityGrid inverse_weyl(const WignerGrid& w);
/// (2 pi hbar) int W_A W_B dp dq.
double overlap(const WignerGrid& a, const WignerGrid& b);

/// Complex Weyl symbol (2 pi hbar times a Wigner function) on the same
/// half-grid layout.
struct SymbolGrid {
  Grid grid;
  double hbar = 1.0;
  double dp = 0.0;
  CMatrix values;

  static SymbolGrid from_wigner(const WignerGrid& w);
  /// Sample a smooth symbol a(p, q) at the grid nodes.
  static SymbolGrid sample(const Grid& grid, double hbar,
                           const std::function<std::complex<double>(const PhasePoint&)>& a);
  double max_difference(const SymbolGrid& o) const;
};

/// Symbol of the operator product, computed through the position kernels.
SymbolGrid moyal_star(const SymbolGrid& a, const SymbolGrid& b, Exec exec = Exec::parallel);
/// Discrete Weyl symbol of the identity operator on the grid.
SymbolGrid identity_symbol(const Grid& grid, double hbar);
CMatrix kernel_from_symbol(const SymbolGrid& a);
SymbolGrid symbol_from_kernel(const CMatrix& kernel, const Grid& grid, double hbar,
                              Exec exec = Exec::parallel);

struct TruncatedState {
  Grid grid;
  double hbar = 1.0;
  RVector energies;  // eigenvalues of the internal Hamiltonian
  CMatrix basis;     // n x N eigenvectors
  CMatrix rho;       // N x N

  int size() const { return static_cast<int>(rho.rows()); }
  static TruncatedState from_grid(const DensityGrid& rho, const Eigenpairs& eig, int basis_size);
  DensityGrid to_grid() const;
  double trace() const { return rho.trace().real(); }
  double purity() const;
  /// Population in the top 10% of the basis.
  double leak() const;
  /// Project a grid operator onto the basis.
  CMatrix project(const CMatrix& op) const;
};

struct LindbladOptions {
  double dt = 1e-3;
  double leak_threshold = 1e-6;
  /// Called at t = 0 and then every `observe_every` steps and at the end.
  std::function<void(double, const TruncatedState&)> observer;
  int observe_every = 1;
};

/// RK4 integration of drho/dt = -(i/hbar)[H, rho]
///   + (1/hbar) sum_j (L rho L^dag - {L^dag L, rho}/2), all in the basis.
TruncatedState lindblad_integrate(TruncatedState state, const CMatrix& h,
                                  const std::vector<CMatrix>& channels, double t,
                                  const LindbladOptions& options = {});

double energy_variance(const TruncatedState& state);

/// Normalized coherent-state amplitudes centred on x.
CVector coherent_state(const Grid& grid, double hbar, const PhasePoint& x);

/// Projector onto the strictly positive (sign = +1) or strictly negative
/// (sign = -1) discrete Fourier momenta of the grid.
CMatrix momentum_sign_projector(const Grid& grid, int sign);

/// Basis functions at an arbitrary position q, by sinc interpolation
/// (row vector of length N, position-representation normalization).
CVector basis_at(const TruncatedState& state, double q);

/// rho(q+, q-) in position representation at arbitrary positions.
std::complex<double> element_at(const TruncatedState& state, double q_plus, double q_minus);
double energy_mean(const TruncatedState& state);

void write_checkpoint(const std::string& path, const TruncatedState& state);
TruncatedState read_checkpoint(const std::string& path);

}  // namespace scwig::oracle
