#include "scwig/chord_geometry.hpp"

#include <algorithm>
#include <array>

#include "scwig/errors.hpp"

namespace scwig {

namespace {

constexpr double kTwoPi = 2.0 * M_PI;

// Four-point Gauss-Legendre is exact for p(theta) q'(theta) on a cubic
// Hermite segment (degree 5).
constexpr std::array<double, 4> kGaussX = {-0.8611363115940526, -0.3399810435848563,
                                           0.3399810435848563, 0.8611363115940526};
constexpr std::array<double, 4> kGaussW = {0.3478548451374538, 0.6521451548625461,
                                           0.6521451548625461, 0.3478548451374538};

double circular_distance(double a, double b) {
  const double d = wrap_angle(a - b);
  return std::min(d, kTwoPi - d);
}

}  // namespace

double wrap_angle(double theta) {
  double t = std::fmod(theta, kTwoPi);
  if (t < 0.0) t += kTwoPi;
  if (t >= kTwoPi) t = 0.0;
  return t;
}

ShellSpec::ShellSpec(HamiltonianSystem system, const PeriodicOrbit& orbit)
    : system_(std::move(system)),
      energy_(orbit.energy),
      period_(orbit.period),
      points_(orbit.points) {
  const int n = size();
  const double factor = period_ / kTwoPi;
  tangents_.resize(n);
  for (int i = 0; i < n; ++i) {
    tangents_[i] = orbit.velocities[i] * factor;
    max_speed_ = std::max(max_speed_, norm(tangents_[i]));
  }
  cumulative_.assign(n + 1, 0.0);
  for (int i = 0; i < n; ++i) cumulative_[i + 1] = cumulative_[i] + action_from_sample(i, step());
}

PhasePoint ShellSpec::point(double theta) const {
  const double t = wrap_angle(theta) / step();
  const int n = size();
  const int i = std::min(static_cast<int>(t), n - 1);
  const double u = t - i;
  const int j = (i + 1) % n;
  const double h = step();
  const double u2 = u * u, u3 = u2 * u;
  return points_[i] * (2 * u3 - 3 * u2 + 1) + tangents_[i] * (h * (u3 - 2 * u2 + u)) +
         points_[j] * (-2 * u3 + 3 * u2) + tangents_[j] * (h * (u3 - u2));
}

PhasePoint ShellSpec::tangent(double theta) const {
  const double t = wrap_angle(theta) / step();
  const int n = size();
  const int i = std::min(static_cast<int>(t), n - 1);
  const double u = t - i;
  const int j = (i + 1) % n;
  const double h = step();
  const double u2 = u * u;
  return (points_[i] * (6 * u2 - 6 * u) + points_[j] * (-6 * u2 + 6 * u)) / h +
         tangents_[i] * (3 * u2 - 4 * u + 1) + tangents_[j] * (3 * u2 - 2 * u);
}

PhasePoint ShellSpec::angle_velocity(double theta) const {
  return system_.velocity(point(theta)) * (period_ / kTwoPi);
}

double ShellSpec::action_from_sample(int i, double dtheta) const {
  if (dtheta <= 0.0) return 0.0;
  const double base = i * step();
  double s = 0.0;
  for (std::size_t k = 0; k < kGaussX.size(); ++k) {
    const double th = base + 0.5 * dtheta * (kGaussX[k] + 1.0);
    s += kGaussW[k] * point(th).p * tangent(th).q;
  }
  return 0.5 * dtheta * s;
}

double ShellSpec::arc_action(double theta_a, double theta_b) const {
  auto running = [&](double theta) {
    const double t = wrap_angle(theta);
    const int i = std::min(static_cast<int>(t / step()), size() - 1);
    return cumulative_[i] + action_from_sample(i, t - i * step());
  };
  double s = running(theta_b) - running(theta_a);
  if (wrap_angle(theta_b) < wrap_angle(theta_a)) s += enclosed_area();
  return s;
}

double ShellSpec::nearest_angle(const PhasePoint& x) const {
  int best = 0;
  double best_d = norm(points_[0] - x);
  for (int i = 1; i < size(); ++i) {
    const double d = norm(points_[i] - x);
    if (d < best_d) best_d = d, best = i;
  }
  double theta = best * step();
  for (int it = 0; it < 20; ++it) {
    const PhasePoint t = tangent(theta);
    const double dt = dot(point(theta) - x, t) / dot(t, t);
    theta = wrap_angle(theta - dt);
    if (std::abs(dt) < 1e-15) break;
  }
  return theta;
}

ShellSpec build_shell(const HamiltonianSystem& system, double energy, int samples,
                      const FlowOptions& options) {
  const PeriodicOrbit orbit = trace_periodic_orbit(system, energy, samples, options);
  for (const auto& x : orbit.points)
    if (std::abs(system.energy(x) - energy) > 1e-8)
      throw ShellError("shell samples violate the energy residual bound");
  return ShellSpec(system, orbit);
}

Chord chord_from_angles(double theta_a, double theta_b, const ShellSpec& shell,
                        const ChordOptions& options) {
  double a = wrap_angle(theta_a);
  double b = wrap_angle(theta_b);
  double delta = wrap_angle(b - a);
  if (delta > M_PI) {
    std::swap(a, b);
    delta = kTwoPi - delta;
  }
  Chord c;
  c.theta_minus = a;
  c.theta_plus = b;
  c.x_minus = shell.point(a);
  c.x_plus = shell.point(b);
  c.centre = (c.x_plus + c.x_minus) * 0.5;
  c.xi = c.x_plus - c.x_minus;
  c.tau = delta * shell.period() / kTwoPi;
  c.maslov = options.maslov;
  c.degenerate = delta < 1e-12;
  c.wedge = std::abs(symplectic_form(shell.angle_velocity(b), shell.angle_velocity(a)));
  c.caustic = c.degenerate || c.wedge < options.caustic_tolerance * shell.max_speed() * shell.max_speed();
  c.action = c.degenerate ? 0.0 : chord_action(c, shell);
  if (options.hbar > 0.0 && !c.caustic) c.amplitude = chord_amplitude(c, options.hbar);
  return c;
}

double chord_action(const Chord& chord, const ShellSpec& shell) {
  if (chord.theta_minus == chord.theta_plus) return 0.0;
  const PhasePoint& xp = chord.x_plus;
  const PhasePoint& xm = chord.x_minus;
  const double arc = shell.arc_action(chord.theta_minus, chord.theta_plus);
  const double s = arc - 0.5 * (xp.p + xm.p) * (xp.q - xm.q);
  if (!std::isfinite(s)) throw NumericalError("chord_action: quadrature failure");
  return s;
}

double chord_amplitude(const Chord& chord, double hbar) {
  if (!(hbar > 0.0)) throw ConfigError("chord_amplitude: hbar must be positive");
  if (chord.caustic || chord.wedge <= 0.0)
    throw NumericalError("chord_amplitude: caustic chord, amplitude withheld");
  return 2.0 / (M_PI * std::sqrt(kTwoPi * hbar)) / std::sqrt(chord.wedge);
}

AngleChart angle_jacobian(double theta_minus, double theta_plus, const ShellSpec& shell) {
  const double w =
      symplectic_form(shell.angle_velocity(theta_plus), shell.angle_velocity(theta_minus));
  return {theta_minus, theta_plus, 0.25 * std::abs(w)};
}

double traversal_time(double theta_minus, double theta_plus, const ShellSpec& shell) {
  return wrap_angle(theta_plus - theta_minus) * shell.period() / kTwoPi;
}

namespace {

// Levenberg-Marquardt on F(a, b) = (x(a) + x(b)) / 2 - x; reduces to Newton
// away from singular Jacobians.
bool refine_pair(const PhasePoint& x, const ShellSpec& shell, double tol, double& a, double& b) {
  auto residual = [&](double ta, double tb) { return (shell.point(ta) + shell.point(tb)) * 0.5 - x; };
  PhasePoint f = residual(a, b);
  double fn = norm(f);
  double lambda = 1e-8;
  for (int it = 0; it < 80; ++it) {
    if (fn <= tol) return true;
    const PhasePoint ja = shell.tangent(a) * 0.5;
    const PhasePoint jb = shell.tangent(b) * 0.5;
    // Normal equations (J^T J + lambda diag) d = -J^T F.
    const double g11 = dot(ja, ja), g12 = dot(ja, jb), g22 = dot(jb, jb);
    const double r1 = -dot(ja, f), r2 = -dot(jb, f);
    bool accepted = false;
    for (int inner = 0; inner < 30 && !accepted; ++inner) {
      const double m11 = g11 * (1.0 + lambda), m22 = g22 * (1.0 + lambda);
      const double det = m11 * m22 - g12 * g12;
      if (!(std::abs(det) > 0.0)) {
        lambda = std::max(lambda * 10.0, 1e-12);
        continue;
      }
      double da = (r1 * m22 - r2 * g12) / det;
      double db = (m11 * r2 - g12 * r1) / det;
      const double len = std::hypot(da, db);
      if (len > 0.5) da *= 0.5 / len, db *= 0.5 / len;
      const PhasePoint fnew = residual(a + da, b + db);
      const double nn = norm(fnew);
      if (nn < fn) {
        a = wrap_angle(a + da);
        b = wrap_angle(b + db);
        f = fnew;
        fn = nn;
        lambda = std::max(lambda * 0.1, 1e-15);
        accepted = true;
      } else {
        lambda *= 10.0;
      }
    }
    if (!accepted) break;
  }
  return fn <= tol;
}

}  // namespace

std::vector<Chord> find_chords(const PhasePoint& x, const ShellSpec& shell,
                               const ChordOptions& options) {
  std::vector<Chord> chords;
  const double scale = std::max(1.0, norm(x));
  const double e = shell.energy();
  if (std::abs(shell.system().energy(x) - e) <= 1e-10 * std::max(1.0, std::abs(e))) {
    const double th = shell.nearest_angle(x);
    chords.push_back(chord_from_angles(th, th, shell, options));
    return chords;
  }

  const int m = options.scan;
  std::vector<PhasePoint> nodes(m);
  for (int i = 0; i < m; ++i) nodes[i] = shell.point(kTwoPi * i / m);
  std::vector<double> f(static_cast<std::size_t>(m) * m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) f[i * m + j] = norm((nodes[i] + nodes[j]) * 0.5 - x);
  const double threshold = shell.max_speed() * kTwoPi / m;
  const double tol = options.newton_tolerance * scale;

  for (int i = 0; i < m; ++i) {
    for (int j = i + 1; j < m; ++j) {
      const double v = f[i * m + j];
      if (v > threshold) continue;
      bool minimum = true;
      for (int di = -1; di <= 1 && minimum; ++di)
        for (int dj = -1; dj <= 1; ++dj) {
          if (di == 0 && dj == 0) continue;
          const int ii = (i + di + m) % m, jj = (j + dj + m) % m;
          if (f[ii * m + jj] < v) {
            minimum = false;
            break;
          }
        }
      if (!minimum) continue;
      double a = kTwoPi * i / m, b = kTwoPi * j / m;
      if (!refine_pair(x, shell, tol, a, b)) continue;
      if (circular_distance(a, b) < 1e-7) continue;  // tip coincidence only on the shell
      Chord c = chord_from_angles(a, b, shell, options);
      bool duplicate = false;
      for (const auto& o : chords)
        if (circular_distance(o.theta_minus, c.theta_minus) < 1e-6 &&
            circular_distance(o.theta_plus, c.theta_plus) < 1e-6)
          duplicate = true;
      if (!duplicate) chords.push_back(c);
    }
  }
  std::sort(chords.begin(), chords.end(),
            [](const Chord& p, const Chord& q) { return p.theta_minus < q.theta_minus; });
  return chords;
}

double caustic_indicator(const PhasePoint& x, const ShellSpec& shell, const ChordOptions& options) {
  const auto chords = find_chords(x, shell, options);
  if (chords.empty()) return 0.0;
  double w = std::numeric_limits<double>::infinity();
  for (const auto& c : chords) w = std::min(w, c.wedge);
  return w;
}

}  // namespace scwig
