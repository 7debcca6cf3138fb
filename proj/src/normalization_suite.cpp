#include "scwig/normalization_suite.hpp"

#include <algorithm>
#include <cmath>

#include "scwig/errors.hpp"
#include "scwig/quadrature.hpp"

namespace scwig {

namespace {

constexpr double kTwoPi = 2.0 * M_PI;

double amplitude_prefactor(double hbar) { return 2.0 / (M_PI * std::sqrt(kTwoPi * hbar)); }

}  // namespace

double purity_t0(const ShellSpec& shell, double hbar, int grid, double amplitude_scale, Exec exec) {
  if (!(hbar > 0.0)) throw ConfigError("hbar must be positive");
  if (grid < 2) throw ConfigError("purity_t0: grid too small");
  (void)shell;
  // tr rho^2 = 2 pi hbar int W^2 dx. Averaging the oscillations leaves
  // A^2 / 2 per chord, dx = J dtheta- dtheta+ and every chord appears twice
  // on the torus. A^2 J = pref^2 |w|^(-1) |w| / 4: the Jacobian cancels the
  // caustic divergence, so the product is formed before any division by w.
  const double a_sqrt_j = amplitude_scale * amplitude_prefactor(hbar) * 0.5;
  const double integrand = 0.5 * kTwoPi * hbar * 0.5 * a_sqrt_j * a_sqrt_j;
  const double cell = (kTwoPi / grid) * (kTwoPi / grid);
  const auto n = static_cast<std::size_t>(grid);
  return ordered_sum(n, exec, [&](std::size_t) {
    double row = 0.0;
    for (int j = 0; j < grid; ++j) row += integrand * cell;
    return row;
  });
}

AngleIntegralReport purity_decay(const ShellSpec& shell, const HamiltonianSystem& system,
                                 Channels channels, double t, double hbar,
                                 const PurityDecayOptions& options) {
  if (!all_hermitian(channels)) throw UnsupportedOperation("purity_decay: hermitian channels only");
  if (!(hbar > 0.0)) throw ConfigError("hbar must be positive");
  if (options.grid < 4 || options.grid % 2) throw ConfigError("purity_decay: grid must be even and >= 4");
  AngleIntegralReport rep;
  rep.grid = options.grid;
  if (t == 0.0 || channels.empty()) {
    rep.value = 1.0;
    return rep;
  }
  const int n = options.grid;
  int m = std::max(2, static_cast<int>(std::ceil(t / options.flow.dt - 1e-9)));
  m += m % 2;
  const std::size_t nc = channels.size();
  const std::size_t stride = static_cast<std::size_t>(m + 1) * nc;
  std::vector<double> lv(static_cast<std::size_t>(n) * stride);
  for_each_index(static_cast<std::size_t>(n), options.exec, [&](std::size_t i) {
    const PhasePoint x0 = shell.point(kTwoPi * static_cast<double>(i) / n);
    const Trajectory tr = hamiltonian_flow_steps(x0, t, m, system, options.flow);
    for (int k = 0; k <= m; ++k)
      for (std::size_t j = 0; j < nc; ++j)
        lv[i * stride + k * nc + j] = channels[j].real_value(tr.samples[k].x);
  });
  const double h = t / m;
  std::vector<double> w(m + 1);
  for (int k = 0; k <= m; ++k) w[k] = h / 3.0 * (k == 0 || k == m ? 1.0 : (k % 2 ? 4.0 : 2.0));
  const double scale = options.exponent == PurityExponent::over_hbar ? 1.0 / hbar : 1.0;

  // Row sums over the full grid and over its even-index subgrid.
  std::vector<double> fine(n), coarse(n);
  for_each_index(static_cast<std::size_t>(n), options.exec, [&](std::size_t i) {
    double sf = 0.0, sc = 0.0;
    for (int ip = 0; ip < n; ++ip) {
      double d2 = 0.0;
      const double* a = &lv[i * stride];
      const double* b = &lv[static_cast<std::size_t>(ip) * stride];
      for (int k = 0; k <= m; ++k) {
        double g = 0.0;
        for (std::size_t j = 0; j < nc; ++j) {
          const double d = a[k * nc + j] - b[k * nc + j];
          g += d * d;
        }
        d2 += w[k] * g;
      }
      const double v = std::exp(-d2 * scale);
      sf += v;
      if (i % 2 == 0 && ip % 2 == 0) sc += v;
    }
    fine[i] = sf;
    coarse[i] = sc;
  });
  double total = 0.0, total_coarse = 0.0;
  for (int i = 0; i < n; ++i) total += fine[i], total_coarse += coarse[i];
  rep.value = total / (static_cast<double>(n) * n);
  const double half = n / 2;
  rep.error_estimate = std::abs(rep.value - total_coarse / (half * half));
  return rep;
}

namespace {

double direct_trace_pass(const ShellSpec& shell, double hbar, const DirectTraceOptions& o,
                         int panels, const GaussRule& rule) {
  const int ns = o.angle_nodes;
  const double pref = amplitude_prefactor(hbar);
  std::vector<PhasePoint> vel(ns);
  for (int a = 0; a < ns; ++a) vel[a] = shell.angle_velocity(kTwoPi * a / ns);
  const double dv = 1.0 / panels;
  return ordered_sum(static_cast<std::size_t>(ns), o.exec, [&](std::size_t a) {
    const double sigma = kTwoPi * static_cast<double>(a) / ns;
    const PhasePoint xm = shell.point(sigma);
    double s = 0.0;
    for (int k = 0; k < panels; ++k) {
      for (std::size_t g = 0; g < rule.nodes.size(); ++g) {
        // Opening angle graded at both ends: delta = pi (1 - cos(pi v)) / 2.
        const double v = (k + 0.5 * (rule.nodes[g] + 1.0)) * dv;
        const double delta = 0.5 * M_PI * (1.0 - std::cos(M_PI * v));
        const double ddelta = 0.5 * M_PI * M_PI * std::sin(M_PI * v);
        const double tp = sigma + delta;
        const PhasePoint xp = shell.point(tp);
        const double action =
            shell.arc_action(sigma, tp) - 0.5 * (xp.p + xm.p) * (xp.q - xm.q);
        const double wedge = std::abs(symplectic_form(shell.angle_velocity(tp), vel[a]));
        // A J = pref |w|^(-1/2) |w| / 4 = pref sqrt|w| / 4.
        const double aj = pref * std::sqrt(wedge) * 0.25;
        s += 0.5 * dv * rule.weights[g] * ddelta * aj * std::cos(action / hbar - o.maslov);
      }
    }
    return s * kTwoPi / ns;
  });
}

}  // namespace

AngleIntegralReport direct_trace(const ShellSpec& shell, double hbar,
                                 const DirectTraceOptions& options) {
  if (!(hbar > 0.0)) throw ConfigError("hbar must be positive");
  const GaussRule rule = gauss_legendre(options.panel_order);
  // Roughly one panel per three radians of total phase excursion.
  const int panels = static_cast<int>(std::ceil(shell.enclosed_area() / hbar / 3.0)) + 4;
  const double coarse = direct_trace_pass(shell, hbar, options, panels, rule);
  const double fine = direct_trace_pass(shell, hbar, options, 2 * panels, rule);
  AngleIntegralReport rep;
  rep.value = fine;
  rep.grid = options.angle_nodes * 2 * panels * options.panel_order;
  rep.error_estimate = std::abs(fine - coarse);
  if (!std::isfinite(fine) || rep.error_estimate > 1e-2 * std::max(1.0, std::abs(fine)))
    throw NumericalError("direct_trace: quadrature did not converge (error " +
                         std::to_string(rep.error_estimate) + ")");
  return rep;
}

std::pair<double, double> hessian_limit(const ShellSpec& shell, double theta, double delta) {
  if (!(delta > 0.0) || delta > M_PI)
    throw NumericalError("hessian_limit: opening angle must lie in (0, pi]");
  const PhasePoint v = shell.angle_velocity(theta);
  if (norm(v) < 1e-8 * shell.max_speed())
    throw NumericalError("hessian_limit: degenerate parametrization at this shell point");
  const PhasePoint xm = shell.point(theta);
  auto action = [&](double tp) {
    const PhasePoint xp = shell.point(tp);
    return shell.arc_action(theta, tp) - 0.5 * (xp.p + xm.p) * (xp.q - xm.q);
  };
  const double h = 0.1 * delta;
  const double tp = theta + delta;
  const double fd = (action(tp + h) - 2.0 * action(tp) + action(tp - h)) / (h * h);
  if (!std::isfinite(fd)) throw NumericalError("hessian_limit: differencing failure");
  const double limit = 0.5 * std::abs(symplectic_form(shell.angle_velocity(tp), v));
  return {fd, limit};
}

}  // namespace scwig
