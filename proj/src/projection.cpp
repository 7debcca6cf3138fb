#include "scwig/projection.hpp"

#include <algorithm>
#include <cmath>

#include "scwig/errors.hpp"

namespace scwig {

namespace {

// Angle at which q(theta) is extremal near sample i (ternary search).
double refine_extremum(const ShellSpec& shell, int i, bool minimum) {
  double lo = (i - 1) * shell.step(), hi = (i + 1) * shell.step();
  auto f = [&](double th) { return minimum ? shell.point(th).q : -shell.point(th).q; };
  for (int it = 0; it < 100; ++it) {
    const double a = lo + (hi - lo) / 3.0, b = hi - (hi - lo) / 3.0;
    (f(a) < f(b) ? hi : lo) = f(a) < f(b) ? b : a;
  }
  return wrap_angle(0.5 * (lo + hi));
}

std::pair<double, double> turning_angles(const ShellSpec& shell) {
  const auto& pts = shell.samples();
  int imin = 0, imax = 0;
  for (int i = 1; i < shell.size(); ++i) {
    if (pts[i].q < pts[imin].q) imin = i;
    if (pts[i].q > pts[imax].q) imax = i;
  }
  return {refine_extremum(shell, imin, true), refine_extremum(shell, imax, false)};
}

}  // namespace

std::vector<WKBBranch> wkb_branches(double q, const ShellSpec& shell) {
  std::vector<WKBBranch> out;
  const auto& pts = shell.samples();
  const int n = shell.size();
  const HamiltonianSystem& sys = shell.system();
  const double e = shell.energy();
  const auto [theta_left, theta_right] = turning_angles(shell);
  const double span_right = wrap_angle(theta_right - theta_left);

  for (int i = 0; i < n; ++i) {
    const double a = pts[i].q - q, b = pts[(i + 1) % n].q - q;
    if ((a >= 0.0) == (b >= 0.0)) continue;
    double lo = i * shell.step(), hi = (i + 1) * shell.step();
    for (int it = 0; it < 100 && hi - lo > 1e-16; ++it) {
      const double mid = 0.5 * (lo + hi);
      ((shell.point(mid).q - q >= 0.0) == (a >= 0.0) ? lo : hi) = mid;
    }
    const double theta = wrap_angle(0.5 * (lo + hi));
    WKBBranch br;
    br.q = q;
    br.p = shell.point(theta).p;
    PhasePoint g = sys.gradient({br.p, q});
    const double scale = std::max(norm(g), 1e-300);
    br.turning = std::abs(g.p) < 1e-6 * scale;
    if (!br.turning) {
      for (int it = 0; it < 4; ++it) {
        br.p -= (sys.energy({br.p, q}) - e) / g.p;
        g = sys.gradient({br.p, q});
      }
      br.amplitude = 1.0 / std::sqrt(shell.period() * std::abs(g.p));
    }
    const double arc = shell.arc_action(theta_left, theta);
    const bool rising = wrap_angle(theta - theta_left) <= span_right;
    br.action = rising ? arc : arc - shell.enclosed_area();
    br.maslov = g.p > 0.0 ? -M_PI / 4.0 : M_PI / 4.0;
    out.push_back(br);
  }
  std::sort(out.begin(), out.end(), [](const WKBBranch& x, const WKBBranch& y) { return x.p > y.p; });
  // Two crossings that coincide mark a turning point.
  for (std::size_t i = 0; i + 1 < out.size(); ++i) {
    if (std::abs(out[i].p - out[i + 1].p) < 1e-6 * std::max(1.0, std::abs(out[i].p))) {
      out[i].turning = true;
      out.erase(out.begin() + static_cast<std::ptrdiff_t>(i) + 1);
    }
  }
  for (std::size_t i = 0; i < out.size(); ++i) out[i].id = static_cast<int>(i);
  return out;
}

double DensityMatrixElement::damping_min() const {
  double d = 1.0;
  for (const auto& t : terms) d = std::min(d, t.damping);
  return d;
}

DensityMatrixElement density_matrix_sc(double q_plus, double q_minus, const ShellSpec& shell,
                                       const HamiltonianSystem& system, Channels channels, double t,
                                       double hbar, const ProjectionOptions& options) {
  if (!(hbar > 0.0)) throw ConfigError("hbar must be positive");
  if (!all_hermitian(channels))
    throw UnsupportedOperation("density_matrix_sc: hermitian channels only");
  DensityMatrixElement el;
  el.q_plus = q_plus;
  el.q_minus = q_minus;
  const auto bp = wkb_branches(q_plus, shell);
  const auto bm = wkb_branches(q_minus, shell);
  const HamiltonianSystem driver = options.backward ? system.scaled(-1.0) : system;
  const bool damp = t > 0.0 && !channels.empty();
  for (const auto& a : bp) {
    for (const auto& b : bm) {
      if (a.turning || b.turning) {
        el.turning_flag = true;
        continue;
      }
      BranchPairTerm term;
      term.branch_plus = a.id;
      term.branch_minus = b.id;
      if (damp) {
        const auto rec =
            decoherence_distance({a.p, q_plus}, {b.p, q_minus}, driver, channels, t, options.flow);
        term.distance = rec.distance;
        term.damping = std::exp(-rec.distance_squared() / (2.0 * hbar));
      }
      const double phase = (a.action - b.action) / hbar + a.maslov - b.maslov;
      term.value = std::polar(a.amplitude * b.amplitude * term.damping, phase);
      el.value += term.value;
      el.terms.push_back(term);
    }
  }
  return el;
}

double bessel_correlation(double separation, double p, double hbar, int dof) {
  if (dof < 1) throw ConfigError("bessel_correlation: need at least one degree of freedom");
  const double nu = 0.5 * dof - 1.0;
  const double z = std::abs(p * separation / hbar);
  const double norm_factor = std::pow(2.0, nu) * std::tgamma(nu + 1.0);
  if (z < 1e-8) return 1.0;
  double j;
  if (nu >= 0.0) {
    j = std::cyl_bessel_j(nu, z);
  } else {
    // Reflection J_{-a} = cos(a pi) J_a - sin(a pi) Y_a for non-integer a.
    const double a = -nu;
    j = std::cos(a * M_PI) * std::cyl_bessel_j(a, z) - std::sin(a * M_PI) * std::cyl_neumann(a, z);
  }
  return j / std::pow(z, nu) * norm_factor;
}

PhasePoint to_momentum_frame(const PhasePoint& x) { return {-x.q, x.p}; }
PhasePoint from_momentum_frame(const PhasePoint& y) { return {y.q, -y.p}; }

HamiltonianSystem momentum_frame_system(const HamiltonianSystem& system) {
  if (system.is_zero()) return HamiltonianSystem::zero();
  // grad' = (dH'/dP, dH'/dQ) = (-dH/dq, dH/dp).
  return {system.name() + "/momentum-frame",
          [system](const PhasePoint& y) { return system.energy(from_momentum_frame(y)); },
          [system](const PhasePoint& y) {
            const PhasePoint g = system.gradient(from_momentum_frame(y));
            return PhasePoint{-g.q, g.p};
          },
          to_momentum_frame(system.equilibrium())};
}

LindbladChannel momentum_frame_channel(const LindbladChannel& channel) {
  LindbladChannel c = channel;
  auto v = channel.value;
  c.value = [v](const PhasePoint& y) { return v(from_momentum_frame(y)); };
  if (channel.gradient) {
    auto g = channel.gradient;
    c.gradient = [g](const PhasePoint& y) {
      const PhasePoint d = g(from_momentum_frame(y));
      return PhasePoint{-d.q, d.p};
    };
  }
  c.symbol.reset();
  return c;
}

DensityMatrixElement momentum_rep_element(double p_plus, double p_minus,
                                          const HamiltonianSystem& system, double energy,
                                          Channels channels, double t, double hbar,
                                          const ProjectionOptions& options, int samples) {
  const HamiltonianSystem rotated = momentum_frame_system(system);
  std::vector<LindbladChannel> rc;
  for (const auto& c : channels) rc.push_back(momentum_frame_channel(c));
  const ShellSpec shell = build_shell(rotated, energy, samples, options.flow);
  return density_matrix_sc(p_plus, p_minus, shell, rotated, rc, t, hbar, options);
}

}  // namespace scwig
