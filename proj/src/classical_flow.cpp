#include "scwig/classical_flow.hpp"

#include <algorithm>
#include <cmath>

#include "scwig/errors.hpp"

namespace scwig {

PhaseVector::PhaseVector(std::vector<double> p, std::vector<double> q)
    : p_(std::move(p)), q_(std::move(q)) {
  if (p_.size() != q_.size()) throw DimensionMismatch("phase vector: p and q lengths differ");
  if (p_.empty()) throw DimensionMismatch("phase vector: at least one degree of freedom required");
}

double symplectic_form(const PhaseVector& a, const PhaseVector& b) {
  if (a.dof() != b.dof()) throw DimensionMismatch("symplectic_form: unequal degrees of freedom");
  double s = 0.0;
  for (std::size_t i = 0; i < a.dof(); ++i) s += a.p()[i] * b.q()[i] - a.q()[i] * b.p()[i];
  return s;
}

double triangle_area(const PhasePoint& x, const PhasePoint& x1, const PhasePoint& x2) {
  return 2.0 * (symplectic_form(x, x1) + symplectic_form(x1, x2) + symplectic_form(x2, x));
}

double triangle_area(const PhaseVector& x, const PhaseVector& x1, const PhaseVector& x2) {
  if (x.dof() != x1.dof() || x.dof() != x2.dof())
    throw DimensionMismatch("triangle_area: unequal degrees of freedom");
  return 2.0 * (symplectic_form(x, x1) + symplectic_form(x1, x2) + symplectic_form(x2, x));
}

PhasePoint central_gradient(const ScalarField& f, const PhasePoint& x) {
  const double h = 1e-6 * std::max(1.0, norm(x));
  const double fp = (f({x.p + h, x.q}) - f({x.p - h, x.q})) / (2.0 * h);
  const double fq = (f({x.p, x.q + h}) - f({x.p, x.q - h})) / (2.0 * h);
  return {fp, fq};
}

double poisson_bracket(const SmoothField& f, const SmoothField& g, const PhasePoint& x) {
  const PhasePoint df = f.grad(x);
  const PhasePoint dg = g.grad(x);
  const double v = df.q * dg.p - df.p * dg.q;
  if (!std::isfinite(v)) throw NumericalError("poisson_bracket: non-finite field values");
  return v;
}

HamiltonianSystem::HamiltonianSystem(std::string name, ScalarField energy, GradientField gradient,
                                     PhasePoint equilibrium)
    : name_(std::move(name)),
      energy_(std::move(energy)),
      gradient_(std::move(gradient)),
      equilibrium_(equilibrium) {}

PhasePoint HamiltonianSystem::gradient(const PhasePoint& x) const {
  return gradient_ ? gradient_(x) : central_gradient(energy_, x);
}

HamiltonianSystem HamiltonianSystem::harmonic() {
  return {"harmonic", [](const PhasePoint& x) { return 0.5 * (x.p * x.p + x.q * x.q); },
          [](const PhasePoint& x) { return x; }};
}

HamiltonianSystem HamiltonianSystem::quartic() {
  return {"quartic",
          [](const PhasePoint& x) { return 0.5 * (x.p * x.p + x.q * x.q * x.q * x.q); },
          [](const PhasePoint& x) { return PhasePoint{x.p, 2.0 * x.q * x.q * x.q}; }};
}

HamiltonianSystem HamiltonianSystem::pendulum() {
  return {"pendulum", [](const PhasePoint& x) { return 0.5 * x.p * x.p - std::cos(x.q); },
          [](const PhasePoint& x) { return PhasePoint{x.p, std::sin(x.q)}; }};
}

HamiltonianSystem HamiltonianSystem::polynomial(const PolynomialSymbol& symbol, std::string name,
                                                PhasePoint equilibrium) {
  if (!symbol.is_real(1e-14)) throw ConfigError("polynomial Hamiltonian must be real");
  return {std::move(name), [symbol](const PhasePoint& x) { return symbol(x).real(); },
          [symbol](const PhasePoint& x) {
            const auto [gp, gq] = symbol.gradient(x.p, x.q);
            return PhasePoint{gp.real(), gq.real()};
          },
          equilibrium};
}

HamiltonianSystem HamiltonianSystem::zero() {
  HamiltonianSystem h{"zero", [](const PhasePoint&) { return 0.0; },
                      [](const PhasePoint&) { return PhasePoint{}; }};
  h.zero_ = true;
  return h;
}

HamiltonianSystem HamiltonianSystem::by_name(const std::string& name) {
  if (name == "harmonic") return harmonic();
  if (name == "quartic") return quartic();
  if (name == "pendulum") return pendulum();
  if (name == "zero" || name == "off") return zero();
  throw ConfigError("unknown Hamiltonian '" + name + "'");
}

HamiltonianSystem HamiltonianSystem::scaled(double factor) const {
  HamiltonianSystem h = *this;
  auto e = energy_;
  h.energy_ = [e, factor](const PhasePoint& x) { return factor * e(x); };
  if (gradient_) {
    auto g = gradient_;
    h.gradient_ = [g, factor](const PhasePoint& x) { return g(x) * factor; };
  }
  return h;
}

namespace {

PhasePoint implicit_midpoint(const HamiltonianSystem& system, const PhasePoint& x, double h) {
  PhasePoint y = x + system.velocity(x) * h;
  for (int it = 0; it < 100; ++it) {
    const PhasePoint next = x + system.velocity((x + y) * 0.5) * h;
    const double change = norm(next - y);
    y = next;
    if (change <= 4e-16 * (1.0 + norm(y))) return y;
  }
  if (!is_finite(y)) throw NumericalError("implicit midpoint: non-finite state");
  // Fixed-point iteration stalled at rounding level; accept if the residual is tiny.
  const double residual = norm(x + system.velocity((x + y) * 0.5) * h - y);
  if (residual > 1e-13 * (1.0 + norm(y)))
    throw NumericalError("implicit midpoint: fixed-point iteration did not converge (step too large)");
  return y;
}

// Triple-jump coefficients for a fourth-order symmetric composition.
const double kW1 = 1.0 / (2.0 - std::cbrt(2.0));
const double kW0 = 1.0 - 2.0 * kW1;

}  // namespace

PhasePoint symplectic_step(const HamiltonianSystem& system, const PhasePoint& x, double h) {
  if (system.is_zero()) return x;
  PhasePoint y = implicit_midpoint(system, x, kW1 * h);
  y = implicit_midpoint(system, y, kW0 * h);
  return implicit_midpoint(system, y, kW1 * h);
}

Trajectory hamiltonian_flow_steps(const PhasePoint& x0, double t, int steps,
                                  const HamiltonianSystem& system, const FlowOptions& options) {
  if (!is_finite(x0)) throw NumericalError("hamiltonian_flow: non-finite initial point");
  Trajectory traj;
  traj.samples.push_back({0.0, x0});
  if (t == 0.0 || steps <= 0) return traj;
  const double h = t / steps;
  const double e0 = system.energy(x0);
  const double cap = options.drift_cap * std::max(1.0, std::abs(e0));
  traj.samples.reserve(static_cast<std::size_t>(steps) + 1);
  PhasePoint x = x0;
  for (int k = 1; k <= steps; ++k) {
    x = symplectic_step(system, x, h);
    if (!is_finite(x)) throw NumericalError("hamiltonian_flow: trajectory left finite range");
    const double drift = std::abs(system.energy(x) - e0);
    traj.energy_drift = std::max(traj.energy_drift, drift);
    if (drift > cap)
      throw NumericalError("hamiltonian_flow: energy drift exceeds cap; reduce dt");
    traj.samples.push_back({k == steps ? t : k * h, x});
  }
  return traj;
}

Trajectory hamiltonian_flow(const PhasePoint& x0, double t, const HamiltonianSystem& system,
                            const FlowOptions& options) {
  if (!(options.dt > 0.0)) throw ConfigError("hamiltonian_flow: dt must be positive");
  if (!std::isfinite(t)) throw ConfigError("hamiltonian_flow: non-finite duration");
  const int steps = static_cast<int>(std::ceil(std::abs(t) / options.dt - 1e-9));
  return hamiltonian_flow_steps(x0, t, std::max(steps, t == 0.0 ? 0 : 1), system, options);
}

PhasePoint flow_map(const PhasePoint& x0, double t, const HamiltonianSystem& system,
                    const FlowOptions& options) {
  if (t == 0.0 || system.is_zero()) return x0;
  const int steps = std::max(1, static_cast<int>(std::ceil(std::abs(t) / options.dt - 1e-9)));
  const double h = t / steps;
  PhasePoint x = x0;
  for (int k = 0; k < steps; ++k) x = symplectic_step(system, x, h);
  if (!is_finite(x)) throw NumericalError("flow_map: trajectory left finite range");
  return x;
}

namespace {

PhasePoint shell_start_point(const HamiltonianSystem& system, double energy) {
  const PhasePoint eq = system.equilibrium();
  const double e_eq = system.energy(eq);
  if (!(energy > e_eq)) throw ShellError("empty shell: energy at or below the potential minimum");
  auto f = [&](double s) { return system.energy({eq.p + s, eq.q}) - energy; };
  double hi = 1e-3;
  while (f(hi) < 0.0) {
    hi *= 2.0;
    if (hi > 1e8) throw ShellError("unbounded shell: energy level not reached along the momentum ray");
  }
  double lo = 0.0;
  for (int it = 0; it < 200 && hi - lo > 1e-16 * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    (f(mid) < 0.0 ? lo : hi) = mid;
  }
  return {eq.p + 0.5 * (lo + hi), eq.q};
}

PhasePoint project_to_shell(const HamiltonianSystem& system, PhasePoint x, double energy) {
  for (int it = 0; it < 3; ++it) {
    const PhasePoint g = system.gradient(x);
    const double g2 = dot(g, g);
    if (g2 == 0.0) break;
    x += g * ((energy - system.energy(x)) / g2);
  }
  return x;
}

}  // namespace

PeriodicOrbit trace_periodic_orbit(const HamiltonianSystem& system, double energy, int samples,
                                   const FlowOptions& options) {
  if (samples < 4) throw ConfigError("trace_periodic_orbit: need at least 4 samples");
  if (system.is_zero()) throw ShellError("empty shell: zero Hamiltonian has no closed orbits");
  const PhasePoint x0 = shell_start_point(system, energy);
  const PhasePoint v0 = system.velocity(x0);
  const double scale = std::max(1.0, norm(x0));
  if (norm(v0) == 0.0) throw ShellError("degenerate shell: start point is stationary");

  const double h = options.dt;
  const double max_time = 1e3;
  auto g = [&](const PhasePoint& x) { return dot(x - x0, v0); };

  // Bracket returns to the start by the negative-to-positive sign change of
  // (x - x0).v0, then refine the crossing time by bisection on a partial step.
  double period = -1.0;
  PhasePoint x = x0;
  double t = 0.0;
  double g_prev = 0.0;
  while (t < max_time) {
    const PhasePoint next = symplectic_step(system, x, h);
    if (!is_finite(next) || norm(next - x0) > 1e6 * scale)
      throw ShellError("open shell: trajectory escapes");
    const double g_next = g(next);
    if (g_prev < 0.0 && g_next >= 0.0) {
      double lo = 0.0, hi = h;
      for (int it = 0; it < 80 && hi - lo > 1e-17; ++it) {
        const double mid = 0.5 * (lo + hi);
        (g(symplectic_step(system, x, mid)) < 0.0 ? lo : hi) = mid;
      }
      const double s = 0.5 * (lo + hi);
      const PhasePoint xr = symplectic_step(system, x, s);
      if (norm(xr - x0) <= 1e-8 * scale) {
        period = t + s;
        break;
      }
    }
    x = next;
    t += h;
    g_prev = g_next;
  }
  if (period <= 0.0) throw ShellError("open shell: no return to the start point");

  PeriodicOrbit orbit;
  orbit.energy = energy;
  orbit.period = period;
  orbit.points.resize(samples);
  orbit.velocities.resize(samples);
  const double hs = period / samples;
  const int sub = std::max(1, static_cast<int>(std::ceil(hs / h)));
  const double step = hs / sub;
  x = x0;
  for (int i = 0; i < samples; ++i) {
    const PhasePoint xs = project_to_shell(system, x, energy);
    orbit.points[i] = xs;
    orbit.velocities[i] = system.velocity(xs);
    for (int k = 0; k < sub; ++k) x = symplectic_step(system, x, step);
  }
  if (norm(x - x0) > 1e-8 * scale) throw ShellError("open shell: sampled orbit does not close");
  return orbit;
}

double shell_average(const ScalarField& f, double energy, const HamiltonianSystem& system,
                     int samples) {
  const PeriodicOrbit orbit = trace_periodic_orbit(system, energy, samples);
  double s = 0.0;
  for (const auto& x : orbit.points) s += f(x);
  return s / samples;
}

}  // namespace scwig
