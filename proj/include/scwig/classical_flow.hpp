#pragma once

#include <cmath>
#include <functional>
#include <string>
#include <vector>

#include "scwig/polynomial.hpp"

namespace scwig {

/// A point x = (p, q) of the one-degree-of-freedom phase space.
struct PhasePoint {
  double p = 0.0;
  double q = 0.0;

  PhasePoint operator+(const PhasePoint& o) const { return {p + o.p, q + o.q}; }
  PhasePoint operator-(const PhasePoint& o) const { return {p - o.p, q - o.q}; }
  PhasePoint operator*(double s) const { return {p * s, q * s}; }
  PhasePoint operator/(double s) const { return {p / s, q / s}; }
  PhasePoint& operator+=(const PhasePoint& o) { p += o.p; q += o.q; return *this; }
  bool operator==(const PhasePoint&) const = default;
};

inline PhasePoint operator*(double s, const PhasePoint& x) { return x * s; }
inline double dot(const PhasePoint& a, const PhasePoint& b) { return a.p * b.p + a.q * b.q; }
inline double norm(const PhasePoint& a) { return std::hypot(a.p, a.q); }
inline bool is_finite(const PhasePoint& a) { return std::isfinite(a.p) && std::isfinite(a.q); }

/// J v for the symplectic matrix J = [[0,-1],[1,0]] acting on (p, q).
inline PhasePoint apply_j(const PhasePoint& v) { return {-v.q, v.p}; }

/// Phase-space vector with l degrees of freedom, x = (p_1..p_l, q_1..q_l).
class PhaseVector {
 public:
  PhaseVector(std::vector<double> p, std::vector<double> q);
  explicit PhaseVector(const PhasePoint& x) : p_{x.p}, q_{x.q} {}

  std::size_t dof() const { return p_.size(); }
  const std::vector<double>& p() const { return p_; }
  const std::vector<double>& q() const { return q_; }

 private:
  std::vector<double> p_;
  std::vector<double> q_;
};

/// Skew product a ^ b = (J a) . b.
inline double symplectic_form(const PhasePoint& a, const PhasePoint& b) {
  return a.p * b.q - a.q * b.p;
}
double symplectic_form(const PhaseVector& a, const PhaseVector& b);

/// Berezin phase 2(x^x1 + x1^x2 + x2^x); four times the signed area of the
/// triangle with vertices x, x1, x2 (equivalently the symplectic area of the
/// triangle that has them as midpoints).
double triangle_area(const PhasePoint& x, const PhasePoint& x1, const PhasePoint& x2);
double triangle_area(const PhaseVector& x, const PhaseVector& x1, const PhaseVector& x2);

using ScalarField = std::function<double(const PhasePoint&)>;
/// Gradient returned as (d/dp, d/dq).
using GradientField = std::function<PhasePoint(const PhasePoint&)>;

/// Central-difference gradient with step 1e-6 * max(1, |x|).
PhasePoint central_gradient(const ScalarField& f, const PhasePoint& x);

/// A scalar field with an optional analytic gradient.
struct SmoothField {
  ScalarField value;
  GradientField gradient;

  double operator()(const PhasePoint& x) const { return value(x); }
  PhasePoint grad(const PhasePoint& x) const {
    return gradient ? gradient(x) : central_gradient(value, x);
  }
};

/// {f, g} = df/dq dg/dp - df/dp dg/dq, so that {H, q} = -p.
double poisson_bracket(const SmoothField& f, const SmoothField& g, const PhasePoint& x);

class HamiltonianSystem {
 public:
  HamiltonianSystem(std::string name, ScalarField energy, GradientField gradient = {},
                    PhasePoint equilibrium = {});

  /// (p^2 + q^2) / 2
  static HamiltonianSystem harmonic();
  /// (p^2 + q^4) / 2
  static HamiltonianSystem quartic();
  /// p^2 / 2 - cos q
  static HamiltonianSystem pendulum();
  /// Real polynomial H(p, q) given by a coefficient table.
  static HamiltonianSystem polynomial(const PolynomialSymbol& symbol, std::string name = "polynomial",
                                      PhasePoint equilibrium = {});
  /// H = 0: frozen dynamics.
  static HamiltonianSystem zero();
  /// Resolve one of the shipped names ("harmonic", "quartic", "pendulum").
  static HamiltonianSystem by_name(const std::string& name);

  const std::string& name() const { return name_; }
  double energy(const PhasePoint& x) const { return energy_(x); }
  PhasePoint gradient(const PhasePoint& x) const;
  /// Hamiltonian vector field  dx/dt = J dH/dx.
  PhasePoint velocity(const PhasePoint& x) const { return apply_j(gradient(x)); }
  const PhasePoint& equilibrium() const { return equilibrium_; }
  bool has_analytic_gradient() const { return static_cast<bool>(gradient_); }
  bool is_zero() const { return zero_; }

  SmoothField field() const { return {energy_, gradient_}; }
  /// Same dynamics with H multiplied by `factor`.
  HamiltonianSystem scaled(double factor) const;

 private:
  std::string name_;
  ScalarField energy_;
  GradientField gradient_;
  PhasePoint equilibrium_;
  bool zero_ = false;
};

struct FlowOptions {
  double dt = 1e-3;
  /// Hard cap on |H(x(t)) - H(x0)| relative to max(1, |H(x0)|).
  double drift_cap = 1e-6;
};

struct TrajectorySample {
  double t = 0.0;
  PhasePoint x;
};

struct Trajectory {
  std::vector<TrajectorySample> samples;
  double energy_drift = 0.0;

  const PhasePoint& final_point() const { return samples.back().x; }
};

/// One step of size h of the fourth-order symmetric composition of implicit
/// midpoint steps (triple jump). Symplectic for any smooth H.
PhasePoint symplectic_step(const HamiltonianSystem& system, const PhasePoint& x, double h);

/// Integrate Hamilton's equations over [0, t] (t may be negative) with a
/// fixed step no larger than options.dt.
Trajectory hamiltonian_flow(const PhasePoint& x0, double t, const HamiltonianSystem& system,
                            const FlowOptions& options = {});

/// As hamiltonian_flow, with an explicit number of equal steps.
Trajectory hamiltonian_flow_steps(const PhasePoint& x0, double t, int steps,
                                  const HamiltonianSystem& system, const FlowOptions& options = {});

/// Endpoint of the time-t flow only.
PhasePoint flow_map(const PhasePoint& x0, double t, const HamiltonianSystem& system,
                    const FlowOptions& options = {});

/// A closed energy curve sampled uniformly in time over one period.
struct PeriodicOrbit {
  double energy = 0.0;
  double period = 0.0;
  std::vector<PhasePoint> points;
  std::vector<PhasePoint> velocities;  // dx/dt at each point
};

/// Locate the shell H = E, detect its period and sample it uniformly in time.
/// Throws ShellError for empty, unbounded or open shells.
PeriodicOrbit trace_periodic_orbit(const HamiltonianSystem& system, double energy, int samples,
                                   const FlowOptions& options = {});

/// Time average of f over one period of the shell H = E.
double shell_average(const ScalarField& f, double energy, const HamiltonianSystem& system,
                     int samples = 512);

}  // namespace scwig
