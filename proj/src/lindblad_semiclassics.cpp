#include "scwig/lindblad_semiclassics.hpp"

#include <algorithm>
#include <cmath>

#include "scwig/errors.hpp"
#include "scwig/quadrature.hpp"

namespace scwig {

LindbladChannel LindbladChannel::from_symbol(const PolynomialSymbol& symbol, std::string label) {
  LindbladChannel c;
  c.label = std::move(label);
  c.symbol = symbol;
  c.hermitian = symbol.is_real(1e-14);
  c.value = [symbol](const PhasePoint& x) { return symbol(x); };
  c.gradient = [symbol](const PhasePoint& x) {
    const auto [gp, gq] = symbol.gradient(x.p, x.q);
    return PhasePoint{gp.real(), gq.real()};
  };
  return c;
}

LindbladChannel LindbladChannel::position(double coupling) {
  return from_symbol(PolynomialSymbol::q() * coupling, "q");
}

LindbladChannel LindbladChannel::momentum(double coupling) {
  return from_symbol(PolynomialSymbol::p() * coupling, "p");
}

LindbladChannel LindbladChannel::real_field(std::string label, ScalarField f, GradientField g) {
  LindbladChannel c;
  c.label = std::move(label);
  c.value = [f](const PhasePoint& x) { return std::complex<double>(f(x), 0.0); };
  c.gradient = std::move(g);
  return c;
}

double LindbladChannel::real_value(const PhasePoint& x) const {
  if (!hermitian) throw UnsupportedOperation("channel '" + label + "' is not hermitian");
  return value(x).real();
}

SmoothField LindbladChannel::field() const {
  auto v = value;
  return {[v](const PhasePoint& x) { return v(x).real(); }, gradient};
}

LindbladChannel LindbladChannel::scaled(double factor) const {
  LindbladChannel c = *this;
  auto v = value;
  c.value = [v, factor](const PhasePoint& x) { return v(x) * factor; };
  if (gradient) {
    auto g = gradient;
    c.gradient = [g, factor](const PhasePoint& x) { return g(x) * factor; };
  }
  if (symbol) c.symbol = *symbol * factor;
  return c;
}

bool all_hermitian(Channels channels) {
  return std::all_of(channels.begin(), channels.end(),
                     [](const LindbladChannel& c) { return c.hermitian; });
}

double lindblad_rate(const Chord& chord, Channels channels, double hbar) {
  const double phase = chord.action / hbar;
  const std::complex<double> rot = std::polar(1.0, phase);
  double s = 0.0;
  for (const auto& ch : channels) {
    const auto lp = ch.value(chord.x_plus);
    const auto lm = ch.value(chord.x_minus);
    s += (lp * std::conj(lm) * rot).real() - 0.5 * (std::norm(lp) + std::norm(lm)) * std::cos(phase);
  }
  return chord.amplitude / hbar * s;
}

double channel_gap_squared(const PhasePoint& a, const PhasePoint& b, Channels channels) {
  double s = 0.0;
  for (const auto& ch : channels) {
    const double d = ch.real_value(a) - ch.real_value(b);
    s += d * d;
  }
  return s;
}

double hermitian_decay_rate(const PhasePoint& x_plus, const PhasePoint& x_minus, Channels channels,
                            double hbar) {
  if (!all_hermitian(channels))
    throw UnsupportedOperation("hermitian_decay_rate: non-hermitian channel present");
  return channel_gap_squared(x_plus, x_minus, channels) / (2.0 * hbar);
}

double hermitian_decay_rate(const Chord& chord, Channels channels, double hbar) {
  return hermitian_decay_rate(chord.x_plus, chord.x_minus, channels, hbar);
}

namespace {

int even_steps(double t, double dt) {
  int n = std::max(2, static_cast<int>(std::ceil(std::abs(t) / dt - 1e-9)));
  return n + (n % 2);
}

}  // namespace

DecoherenceRecord decoherence_distance(const PhasePoint& x_plus0, const PhasePoint& x_minus0,
                                       const HamiltonianSystem& system, Channels channels, double t,
                                       const FlowOptions& options) {
  if (!all_hermitian(channels))
    throw UnsupportedOperation("decoherence distance needs hermitian channels; non-hermitian "
                               "channels admit rate evaluation only");
  if (!(t >= 0.0)) throw ConfigError("decoherence_distance: t must be nonnegative");
  DecoherenceRecord rec;
  rec.t = t;
  if (t == 0.0) {
    rec.plus.samples.push_back({0.0, x_plus0});
    rec.minus.samples.push_back({0.0, x_minus0});
    rec.times = {0.0};
    rec.integrand = {channel_gap_squared(x_plus0, x_minus0, channels)};
    rec.cumulative = {0.0};
    return rec;
  }
  const int n = even_steps(t, options.dt);
  rec.plus = hamiltonian_flow_steps(x_plus0, t, n, system, options);
  rec.minus = hamiltonian_flow_steps(x_minus0, t, n, system, options);
  rec.times.resize(n + 1);
  rec.integrand.resize(n + 1);
  for (int k = 0; k <= n; ++k) {
    rec.times[k] = rec.plus.samples[k].t;
    rec.integrand[k] = channel_gap_squared(rec.plus.samples[k].x, rec.minus.samples[k].x, channels);
  }
  const double h = t / n;
  rec.cumulative = cumulative_simpson(rec.integrand, h);
  rec.cumulative.back() = simpson(rec.integrand, h);
  // Running values from mixed Simpson/trapezoid can dip by rounding; keep monotone.
  for (int k = 1; k <= n; ++k) rec.cumulative[k] = std::max(rec.cumulative[k], rec.cumulative[k - 1]);
  rec.distance = std::sqrt(std::max(0.0, rec.cumulative.back()));
  return rec;
}

namespace {

Chord with_tips(const Chord& base, const PhasePoint& xp, const PhasePoint& xm, double action) {
  Chord c = base;
  c.x_plus = xp;
  c.x_minus = xm;
  c.centre = (xp + xm) * 0.5;
  c.xi = xp - xm;
  c.action = action;
  return c;
}

}  // namespace

EvolvedChord evolve_contribution(const Chord& chord0, const HamiltonianSystem& system,
                                 Channels channels, double t, double hbar,
                                 const FlowOptions& options) {
  if (!(hbar > 0.0)) throw ConfigError("hbar must be positive");
  EvolvedChord out;
  out.record = decoherence_distance(chord0.x_plus, chord0.x_minus, system, channels, t, options);
  const auto& rec = out.record;
  const std::size_t n = rec.times.size();
  std::vector<double> gap(n);
  for (std::size_t k = 0; k < n; ++k)
    gap[k] = system.energy(rec.plus.samples[k].x) - system.energy(rec.minus.samples[k].x);
  if (n > 1) {
    const double h = t / static_cast<double>(n - 1);
    out.action_history = cumulative_simpson(gap, h);
    out.action_history.back() = simpson(gap, h);
  } else {
    out.action_history = {0.0};
  }
  for (double& s : out.action_history) s = chord0.action - s;
  out.chord = with_tips(chord0, rec.plus.final_point(), rec.minus.final_point(),
                        out.action_history.back());
  out.log_damping = -rec.distance_squared() / (2.0 * hbar);
  out.damping = std::exp(out.log_damping);
  return out;
}

EvolvedChord trotter_evolve(const Chord& chord0, const HamiltonianSystem& system, Channels channels,
                            double t, int steps, double hbar, const FlowOptions& options) {
  if (steps < 1) throw ConfigError("trotter_evolve: need at least one step");
  if (!(hbar > 0.0)) throw ConfigError("hbar must be positive");
  if (!all_hermitian(channels))
    throw UnsupportedOperation("trotter_evolve: non-hermitian channels cannot be time-integrated");
  const HamiltonianSystem doubled = system.scaled(2.0);
  std::vector<LindbladChannel> boosted;
  for (const auto& c : channels) boosted.push_back(c.scaled(std::sqrt(2.0)));
  const double half = t / (2.0 * steps);

  EvolvedChord out;
  PhasePoint xp = chord0.x_plus, xm = chord0.x_minus;
  double action = chord0.action;
  out.action_history.push_back(action);
  for (int k = 0; k < steps; ++k) {
    // Unitary half-step with the doubled Hamiltonian; the action follows the
    // Hamilton-Jacobi law along the transported tips.
    const int n = even_steps(half, options.dt);
    const Trajectory tp = hamiltonian_flow_steps(xp, half, n, doubled, options);
    const Trajectory tm = hamiltonian_flow_steps(xm, half, n, doubled, options);
    std::vector<double> gap(n + 1);
    for (int i = 0; i <= n; ++i)
      gap[i] = doubled.energy(tp.samples[i].x) - doubled.energy(tm.samples[i].x);
    action -= simpson(gap, half / n);
    xp = tp.final_point();
    xm = tm.final_point();
    out.action_history.push_back(action);
    // Frozen-chord damping half-step.
    out.log_damping -= half * hermitian_decay_rate(xp, xm, boosted, hbar);
  }
  out.record.t = t;
  out.record.distance = std::sqrt(-2.0 * hbar * out.log_damping);
  out.chord = with_tips(chord0, xp, xm, action);
  out.damping = std::exp(out.log_damping);
  return out;
}

}  // namespace scwig
