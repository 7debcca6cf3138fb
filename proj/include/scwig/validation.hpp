#pragma once

#include <string>
#include <vector>

#include "json.hpp"
#include "scwig/quantum_oracle.hpp"

namespace scwig {

/// Outcome of one acceptance criterion. `measured`, `target` and `tolerance`
/// carry the headline number; `data` holds the full table behind it.
struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  double measured = 0.0;
  double target = 0.0;
  double tolerance = 0.0;
  std::string detail;
  double seconds = 0.0;
  nlohmann::json data;

  std::string line() const;
};

constexpr int criterion_count = 9;

CriterionResult run_criterion(int id);

CriterionResult check_cat_decoherence();
CriterionResult check_eigenstate_wigner();
CriterionResult check_purity_identity();
CriterionResult check_direct_trace();
CriterionResult check_energy_diffusion();
CriterionResult check_purity_decay();
CriterionResult check_trotter_order();
CriterionResult check_branch_damping();
CriterionResult check_invariants();

using oracle::CMatrix;
using oracle::CVector;
using oracle::Eigenpairs;
using oracle::Grid;
using oracle::TruncatedState;

/// Harmonic-basis truncated oracle prepared with an arbitrary state. The
/// basis is the first `basis_size` eigenstates of the quantized Hamiltonian.
struct OracleSetup {
  Grid grid;
  double hbar = 1.0;
  Eigenpairs eig;
  int basis_size = 64;

  static OracleSetup make(const HamiltonianSystem& system, double hbar, double energy, int grid_n,
                          int basis_size);
  TruncatedState pure_eigenstate(int n) const;
  TruncatedState from_amplitudes(const CVector& amplitudes) const;
  CMatrix hamiltonian() const;
  CMatrix channel(const PolynomialSymbol& symbol) const;
};

/// Least-squares slope of y against x.
double fit_slope(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace scwig
