#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "scwig/chord_geometry.hpp"
#include "scwig/energy_diffusion.hpp"
#include "scwig/errors.hpp"
#include "scwig/experiment.hpp"
#include "scwig/lindblad_semiclassics.hpp"
#include "scwig/normalization_suite.hpp"
#include "scwig/projection.hpp"
#include "scwig/quantum_oracle.hpp"
#include "scwig/semiclassical_wigner.hpp"
#include "scwig/validation.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace scwig;

namespace {

struct Overrides {
  std::string config;
  std::string output_dir;
  std::string channels;
  std::optional<double> hbar, energy, t, maslov, epsilon;
  std::optional<int> n;
  std::string purity_exponent;
};

json apply(json raw, const Overrides& o) {
  if (!raw.is_object()) raw = json::object();
  if (!o.output_dir.empty()) raw["output_dir"] = o.output_dir;
  if (o.hbar) raw["hbar"] = *o.hbar;
  if (o.n) {
    raw["shell"]["n"] = *o.n;
    if (raw["shell"].contains("energy")) raw["shell"].erase("energy");
  }
  if (o.energy) {
    raw["shell"]["energy"] = *o.energy;
    if (raw["shell"].contains("n")) raw["shell"].erase("n");
  }
  if (o.t) raw["time"]["t"] = *o.t;
  if (o.maslov) raw["conventions"]["maslov"] = *o.maslov;
  if (!o.purity_exponent.empty()) raw["conventions"]["purity_exponent"] = o.purity_exponent;
  if (o.epsilon) raw["window"]["epsilon"] = *o.epsilon;
  if (!o.channels.empty()) {
    json list = json::array();
    if (o.channels != "none") {
      std::stringstream ss(o.channels);
      for (std::string sym; std::getline(ss, sym, ',');) list.push_back({{"symbol", sym}});
    }
    raw["channels"] = list;
  }
  return raw;
}

ExperimentConfig load(const Overrides& o) {
  json raw = json::object();
  if (!o.config.empty()) {
    std::ifstream in(o.config);
    if (!in) throw ConfigError("cannot read config file " + o.config);
    try {
      raw = json::parse(in);
    } catch (const json::exception& e) {
      throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
  }
  return parse_config(apply(raw, o));
}

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.15g", v);
  return buf;
}

/// CSV writer with fixed numeric formatting so reruns are byte-identical.
class Csv {
 public:
  Csv(const fs::path& path, const std::vector<std::string>& header) : out_(path) {
    if (!out_) throw ConfigError("cannot write " + path.string());
    for (size_t i = 0; i < header.size(); ++i) out_ << (i ? "," : "") << header[i];
    out_ << '\n';
  }
  void row(const std::vector<double>& values) {
    for (size_t i = 0; i < values.size(); ++i) out_ << (i ? "," : "") << num(values[i]);
    out_ << '\n';
  }

 private:
  std::ofstream out_;
};

fs::path output_dir(const ExperimentConfig& cfg) {
  fs::path dir(cfg.output_dir);
  fs::create_directories(dir);
  return dir;
}

void write_json(const fs::path& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write " + path.string());
  out << j.dump(2) << '\n';
}

json manifest(const ExperimentConfig& cfg, const std::string& command) {
  json m = {{"command", command},
            {"config_hash", cfg.hash},
            {"config", cfg.raw},
            {"system", cfg.system().name()},
            {"hbar", cfg.hbar},
            {"conventions", cfg.conventions()},
            {"channels", cfg.channel_specs}};
  return m;
}

std::vector<double> time_axis(const ExperimentConfig& cfg) {
  std::vector<double> ts;
  const int n = std::max(1, cfg.time_samples);
  for (int i = 0; i < n; ++i) ts.push_back(n == 1 ? cfg.t_final : cfg.t_final * i / (n - 1));
  return ts;
}

SemiclassicalState make_state(const ExperimentConfig& cfg, const ShellSpec& shell) {
  SemiclassicalState st = cfg.epsilon > 0.0
                              ? SemiclassicalState::spectral_window(shell, cfg.hbar, cfg.epsilon, cfg.window)
                              : SemiclassicalState::pure(shell, cfg.hbar, cfg.maslov);
  st.maslov = cfg.maslov;
  return st;
}

int cmd_build_wigner(const ExperimentConfig& cfg) {
  const auto system = cfg.system();
  const double energy = cfg.shell_energy();
  const ShellSpec shell = build_shell(system, energy, cfg.shell_samples, cfg.flow());
  const SemiclassicalState state = make_state(cfg, shell);

  std::vector<PhasePoint> points;
  for (int i = 0; i < cfg.grid_q.count; ++i)
    for (int j = 0; j < cfg.grid_p.count; ++j) points.push_back({cfg.grid_p.at(j), cfg.grid_q.at(i)});
  const auto samples = eval_points(points, state);

  const fs::path dir = output_dir(cfg);
  Csv grid(dir / "wigner.csv", {"p", "q", "W", "n_chords", "caustic_flag"});
  Csv chords(dir / "chords.csv", {"x_p", "x_q", "xi_p", "xi_q", "S", "A", "tau", "caustic_flag"});
  int caustics = 0;
  for (const auto& s : samples) {
    grid.row({s.x.p, s.x.q, s.value, double(s.contributions.size()), s.caustic_flag ? 1.0 : 0.0});
    caustics += s.caustic_flag ? 1 : 0;
    for (const auto& c : s.contributions)
      chords.row({s.x.p, s.x.q, c.xi.p, c.xi.q, c.action, c.amplitude, c.tau, c.caustic ? 1.0 : 0.0});
  }
  json m = manifest(cfg, "build-wigner");
  m["energy"] = energy;
  m["epsilon"] = cfg.epsilon;
  m["period"] = shell.period();
  m["points"] = samples.size();
  m["caustic_points"] = caustics;
  m["outputs"] = {"wigner.csv", "chords.csv"};
  write_json(dir / "manifest.json", m);
  return 0;
}

PhasePoint default_centre(const ShellSpec& shell, const HamiltonianSystem& system) {
  // Halfway from the equilibrium to the shell start point.
  const PhasePoint eq = system.equilibrium();
  return eq + (shell.point(0.0) - eq) * 0.5;
}

PhasePoint read_point(const json& j, const PhasePoint& fallback) {
  if (j.is_null()) return fallback;
  if (!j.is_array() || j.size() != 2) throw ConfigError("points are [p, q]");
  return {j[0].get<double>(), j[1].get<double>()};
}

int cmd_evolve(const ExperimentConfig& cfg) {
  const auto system = cfg.system();
  const double energy = cfg.shell_energy();
  const ShellSpec shell = build_shell(system, energy, cfg.shell_samples, cfg.flow());
  const json sec = cfg.section("evolve");
  const PhasePoint centre = read_point(sec.value("centre", json()), default_centre(shell, system));
  const int trotter = sec.value("trotter_steps", 0);
  if (trotter < 0) throw ConfigError("evolve.trotter_steps must be nonnegative");

  ChordOptions co;
  co.hbar = cfg.hbar;
  co.maslov = cfg.maslov;
  const auto chords = find_chords(centre, shell, co);
  if (chords.empty()) throw ConfigError("no chords centred on the requested point");

  const fs::path dir = output_dir(cfg);
  Csv csv(dir / "evolution.csv", {"chord", "t", "x_plus_p", "x_plus_q", "x_minus_p", "x_minus_q",
                                  "S_t", "D_t", "damping"});
  const auto ts = time_axis(cfg);
  for (size_t k = 0; k < chords.size(); ++k) {
    for (double t : ts) {
      const EvolvedChord e =
          trotter > 0 ? trotter_evolve(chords[k], system, cfg.channels, t, trotter, cfg.hbar, cfg.flow())
                      : evolve_contribution(chords[k], system, cfg.channels, t, cfg.hbar, cfg.flow());
      csv.row({double(k), t, e.chord.x_plus.p, e.chord.x_plus.q, e.chord.x_minus.p,
               e.chord.x_minus.q, e.chord.action, e.record.distance, e.damping});
    }
  }
  json m = manifest(cfg, "evolve");
  m["energy"] = energy;
  m["centre"] = {centre.p, centre.q};
  m["chords"] = chords.size();
  m["method"] = trotter > 0 ? "trotter" : "continuous";
  if (trotter > 0) m["trotter_steps"] = trotter;
  m["outputs"] = {"evolution.csv"};
  write_json(dir / "manifest.json", m);
  return 0;
}

Axis read_axis(const json& sec, const char* key, const Axis& fallback) {
  if (!sec.contains(key)) return fallback;
  const json& j = sec[key];
  if (!j.is_array() || j.size() != 3) throw ConfigError(std::string("project.") + key + " must be [min, max, count]");
  Axis a{j[0].get<double>(), j[1].get<double>(), j[2].get<int>()};
  if (a.count < 1) throw ConfigError(std::string("project.") + key + " needs at least one node");
  return a;
}

int cmd_project(const ExperimentConfig& cfg) {
  const auto system = cfg.system();
  const double energy = cfg.shell_energy();
  const json sec = cfg.section("project");
  const std::string rep = sec.value("representation", "position");
  if (rep != "position" && rep != "momentum") throw ConfigError("project.representation must be position or momentum");
  const bool momentum = rep == "momentum";
  const Axis& base = momentum ? cfg.grid_p : cfg.grid_q;
  const Axis ax_plus = read_axis(sec, "plus", base);
  const Axis ax_minus = read_axis(sec, "minus", base);
  ProjectionOptions po;
  po.backward = sec.value("backward", true);
  po.flow = cfg.flow();

  std::optional<ShellSpec> shell;
  if (!momentum) shell = build_shell(system, energy, cfg.shell_samples, cfg.flow());
  const size_t total = size_t(ax_plus.count) * ax_minus.count;
  std::vector<DensityMatrixElement> out(total);
  for_each_index(total, Exec::parallel, [&](size_t k) {
    const double a = ax_plus.at(int(k / ax_minus.count));
    const double b = ax_minus.at(int(k % ax_minus.count));
    out[k] = momentum ? momentum_rep_element(a, b, system, energy, cfg.channels, cfg.t_final, cfg.hbar,
                                             po, cfg.shell_samples)
                      : density_matrix_sc(a, b, *shell, system, cfg.channels, cfg.t_final, cfg.hbar, po);
  });

  const fs::path dir = output_dir(cfg);
  const std::vector<std::string> header =
      momentum ? std::vector<std::string>{"p_plus", "p_minus", "re", "im", "damping_min"}
               : std::vector<std::string>{"q_plus", "q_minus", "re", "im", "damping_min"};
  Csv csv(dir / "density.csv", header);
  int turning = 0;
  for (const auto& e : out) {
    csv.row({e.q_plus, e.q_minus, e.value.real(), e.value.imag(), e.damping_min()});
    turning += e.turning_flag ? 1 : 0;
  }
  json m = manifest(cfg, "project");
  m["energy"] = energy;
  m["t"] = cfg.t_final;
  m["representation"] = rep;
  m["trajectories"] = po.backward ? "backward from the tips" : "forward from the tips";
  m["turning_point_elements"] = turning;
  m["outputs"] = {"density.csv"};
  write_json(dir / "manifest.json", m);
  return 0;
}

int cmd_diffusion(const ExperimentConfig& cfg) {
  const auto system = cfg.system();
  const double energy = cfg.shell_energy();
  const json sec = cfg.section("diffusion");
  const double eps0 = sec.value("epsilon0", cfg.epsilon > 0.0 ? cfg.epsilon : 0.1);
  if (!(eps0 > 0.0)) throw ConfigError("diffusion.epsilon0 must be positive");
  const bool with_oracle = sec.value("oracle", true);
  const auto ts = time_axis(cfg);

  std::vector<double> oracle_var(ts.size(), NAN);
  if (with_oracle) {
    if (!all_hermitian(cfg.channels)) throw ConfigError("diffusion oracle supports hermitian channels only");
    oracle::Grid grid = oracle::Grid::make(
        cfg.oracle_grid, cfg.oracle_half_width ? *cfg.oracle_half_width : oracle::auto_half_width(system, energy));
    const oracle::CMatrix h = oracle::hamiltonian_matrix(system, grid, cfg.hbar, cfg.system_symbol ? &*cfg.system_symbol : nullptr);
    const oracle::Eigenpairs eig = oracle::solve_eigenstates(h, cfg.oracle_basis);
    oracle::TruncatedState st;
    st.grid = grid;
    st.hbar = cfg.hbar;
    st.energies = eig.energies;
    st.basis = eig.vectors;
    st.rho = oracle::CMatrix::Zero(cfg.oracle_basis, cfg.oracle_basis);
    double norm = 0.0;
    for (int k = 0; k < cfg.oracle_basis; ++k) {
      const double d = eig.energies[k] - energy;
      st.rho(k, k) = std::exp(-d * d / (2.0 * eps0 * eps0));
      norm += st.rho(k, k).real();
    }
    st.rho /= norm;
    std::vector<oracle::CMatrix> ls;
    for (const auto& c : cfg.channels) {
      if (!c.symbol) throw ConfigError("diffusion oracle needs polynomial channels");
      ls.push_back(st.basis.adjoint() * oracle::weyl_quantize(*c.symbol, grid, cfg.hbar) * st.basis);
    }
    const oracle::CMatrix hn = eig.energies.cast<std::complex<double>>().asDiagonal();
    oracle::TruncatedState cur = st;
    double t_prev = 0.0;
    for (size_t i = 0; i < ts.size(); ++i) {
      oracle::LindbladOptions lo;
      lo.dt = cfg.dt;
      if (ts[i] > t_prev) cur = oracle::lindblad_integrate(cur, hn, ls, ts[i] - t_prev, lo);
      t_prev = ts[i];
      oracle_var[i] = oracle::energy_variance(cur);
    }
  }

  const fs::path dir = output_dir(cfg);
  Csv csv(dir / "diffusion.csv", {"t", "epsilon_predicted", "epsilon_oracle", "slope_ratio"});
  std::vector<double> fit_t, fit_v;
  for (size_t i = 0; i < ts.size(); ++i) {
    const double eps = window_width(eps0, ts[i], energy, cfg.channels, system, cfg.hbar).epsilon;
    const double eo = std::sqrt(oracle_var[i]);
    const double grow_pred = eps * eps - eps0 * eps0;
    const double ratio = ts[i] > 0.0 && grow_pred > 0.0 ? (oracle_var[i] - oracle_var[0]) / grow_pred : NAN;
    csv.row({ts[i], eps, eo, ratio});
    if (with_oracle) {
      fit_t.push_back(ts[i]);
      fit_v.push_back(oracle_var[i]);
    }
  }
  json m = manifest(cfg, "diffusion");
  m["energy"] = energy;
  m["epsilon0"] = eps0;
  m["bracket_rate"] = bracket_rate(energy, cfg.channels, system);
  m["predicted_variance_slope"] = 0.5 * cfg.hbar * bracket_rate(energy, cfg.channels, system);
  if (fit_t.size() >= 2) m["oracle_variance_slope"] = fit_slope(fit_t, fit_v);
  m["outputs"] = {"diffusion.csv"};
  write_json(dir / "manifest.json", m);
  return 0;
}

int cmd_normalize(const ExperimentConfig& cfg) {
  const auto system = cfg.system();
  const double energy = cfg.shell_energy();
  const ShellSpec shell = build_shell(system, energy, cfg.shell_samples, cfg.flow());
  const json sec = cfg.section("normalize");
  const auto hbars = sec.value("hbars", std::vector<double>{0.1, 0.05, 0.025});

  json report = manifest(cfg, "normalize");
  report["energy"] = energy;
  report["purity_t0"] = purity_t0(shell, cfg.hbar);
  json dt = json::array();
  for (double h : hbars) {
    const AngleIntegralReport r = direct_trace(shell, h);
    dt.push_back({{"hbar", h}, {"value", r.value}, {"error_estimate", r.error_estimate}});
  }
  report["direct_trace"] = dt;
  report["direct_trace_references"] = {{"sqrt(1/2)", std::sqrt(0.5)}, {"sqrt(2/3)", std::sqrt(2.0 / 3.0)}};
  json pd = json::array();
  PurityDecayOptions po;
  po.exponent = cfg.purity_exponent;
  po.flow = cfg.flow();
  for (double t : time_axis(cfg)) {
    const AngleIntegralReport r = purity_decay(shell, system, cfg.channels, t, cfg.hbar, po);
    pd.push_back({{"t", t}, {"value", r.value}, {"error_estimate", r.error_estimate}});
  }
  report["purity_decay"] = pd;
  const auto [fd, closed] = hessian_limit(shell, 0.0);
  report["hessian_limit"] = {{"finite_difference", fd}, {"half_wedge", closed}};
  report["tolerances"] = {{"purity_t0", 1e-9}, {"direct_trace_quadrature", 1e-2}};
  write_json(output_dir(cfg) / "normalize.json", report);
  return 0;
}

json criterion_json(const CriterionResult& r) {
  return {{"id", r.id},          {"name", r.name},       {"pass", r.pass},
          {"measured", r.measured}, {"target", r.target}, {"tolerance", r.tolerance},
          {"detail", r.detail},  {"seconds", r.seconds}, {"data", r.data}};
}

int cmd_oracle_compare(const ExperimentConfig& cfg, std::vector<int> criteria) {
  const json sec = cfg.section("oracle_compare");
  if (criteria.empty()) criteria = sec.value("criteria", std::vector<int>{1, 2, 3, 4, 5, 6, 7, 8, 9});
  json report = manifest(cfg, "oracle-compare");
  json list = json::array();
  for (int id : criteria) {
    const CriterionResult r = run_criterion(id);
    std::cout << r.line() << '\n';
    list.push_back(criterion_json(r));
  }
  report["criteria"] = list;

  // Configured shell: semiclassical vs exact eigenstate Wigner at the grid nodes.
  if (cfg.quantum_number) {
    const auto system = cfg.system();
    const int n = *cfg.quantum_number;
    const double energy = cfg.shell_energy();
    const oracle::Grid grid = oracle::Grid::make(
        cfg.oracle_grid, cfg.oracle_half_width ? *cfg.oracle_half_width : oracle::auto_half_width(system, energy));
    const auto h = oracle::hamiltonian_matrix(system, grid, cfg.hbar, cfg.system_symbol ? &*cfg.system_symbol : nullptr);
    const auto eig = oracle::solve_eigenstates(h, n + 1);
    const auto w = oracle::weyl_transform(oracle::DensityGrid::pure(grid, cfg.hbar, eig.vectors.col(n)));
    const ShellSpec shell = build_shell(system, energy, cfg.shell_samples, cfg.flow());
    const SemiclassicalState state = SemiclassicalState::pure(shell, cfg.hbar, cfg.maslov);
    std::vector<PhasePoint> pts;
    for (int i = 0; i < cfg.grid_q.count; ++i)
      for (int j = 0; j < cfg.grid_p.count; ++j) pts.push_back({cfg.grid_p.at(j), cfg.grid_q.at(i)});
    const auto sc = eval_points(pts, state);
    const double peak = w.values.cwiseAbs().maxCoeff();
    double worst = 0.0, sum = 0.0;
    int used = 0;
    for (const auto& smp : sc) {
      if (smp.caustic_flag || smp.contributions.empty()) continue;
      const double d = std::abs(smp.value - w.nearest(smp.x)) / peak;
      worst = std::max(worst, d);
      sum += d;
      ++used;
    }
    report["wigner_comparison"] = {{"n", n},
                                   {"oracle_energy", eig.energies[n]},
                                   {"shell_energy", energy},
                                   {"nodes", used},
                                   {"max_delta_over_peak", worst},
                                   {"mean_delta_over_peak", used ? sum / used : 0.0},
                                   {"note", "oracle values taken at the nearest oracle node"}};
  }
  write_json(output_dir(cfg) / "oracle_compare.json", report);
  for (const auto& r : list)
    if (!r["pass"].get<bool>()) return 1;
  return 0;
}

int cmd_star_check(const ExperimentConfig& cfg) {
  const json sec = cfg.section("star_check");
  const double hbar = cfg.hbar;
  json report = manifest(cfg, "star-check");

  const auto q = PolynomialSymbol::q(), p = PolynomialSymbol::p();
  const auto comm = moyal_product(q, p, hbar) - moyal_product(p, q, hbar);
  report["commutator_qp"] = {{"symbol", comm.to_string()},
                             {"deviation_from_i_hbar", comm.distance(PolynomialSymbol::constant({0.0, hbar}))}};
  if (cfg.system_symbol) {
    const auto& h = *cfg.system_symbol;
    const auto hh = moyal_product(h, h, hbar);
    const auto lead = h * h;
    report["h_star_h"] = {{"symbol", hh.to_string()}, {"correction_from_h_squared", (hh - lead).to_string()}};
  }

  const int n = sec.value("grid", 128);
  const int level = cfg.quantum_number.value_or(0);
  const auto system = cfg.system();
  const double energy = hbar * (level + 0.5);
  const oracle::Grid grid = oracle::Grid::make(
      n, cfg.oracle_half_width ? *cfg.oracle_half_width : oracle::auto_half_width(system, std::max(energy, cfg.shell_energy())));
  const auto h = oracle::hamiltonian_matrix(system, grid, hbar, cfg.system_symbol ? &*cfg.system_symbol : nullptr);
  const auto eig = oracle::solve_eigenstates(h, level + 1);
  const auto w = oracle::weyl_transform(oracle::DensityGrid::pure(grid, hbar, eig.vectors.col(level)));
  const auto a = oracle::SymbolGrid::from_wigner(w);
  const auto aa = oracle::moyal_star(a, a);
  const auto one = oracle::identity_symbol(grid, hbar);
  report["grid"] = {{"n", n}, {"half_width", grid.half_width}, {"state", level}};
  report["projector_idempotence"] = aa.max_difference(a);
  report["identity_left"] = oracle::moyal_star(one, a).max_difference(a);
  report["identity_right"] = oracle::moyal_star(a, one).max_difference(a);
  write_json(output_dir(cfg) / "star_check.json", report);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Semiclassical Wigner functions under Lindblad evolution"};
  app.require_subcommand(1);
  Overrides o;
  std::vector<int> criteria;
  const std::vector<std::string> names{"build-wigner", "evolve",         "project",   "diffusion",
                                       "normalize",    "oracle-compare", "star-check"};
  for (const auto& name : names) {
    CLI::App* sub = app.add_subcommand(name);
    sub->add_option("--config", o.config, "JSON configuration file");
    sub->add_option("--output-dir", o.output_dir);
    sub->add_option("--channels", o.channels, "comma-separated channel symbols (q,p,a,H) or none");
    sub->add_option("--hbar", o.hbar);
    sub->add_option("--n", o.n, "quantized shell index");
    sub->add_option("--energy", o.energy);
    sub->add_option("--t", o.t, "final time");
    sub->add_option("--maslov", o.maslov);
    sub->add_option("--epsilon", o.epsilon, "energy window width");
    sub->add_option("--purity-exponent", o.purity_exponent)->check(CLI::IsMember({"over_hbar", "bare"}));
    if (name == "oracle-compare")
      sub->add_option("--criterion", criteria, "acceptance criteria to run")->check(CLI::Range(1, criterion_count));
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  const std::string cmd = app.get_subcommands().front()->get_name();
  try {
    const ExperimentConfig cfg = load(o);
    if (cmd == "build-wigner") return cmd_build_wigner(cfg);
    if (cmd == "evolve") return cmd_evolve(cfg);
    if (cmd == "project") return cmd_project(cfg);
    if (cmd == "diffusion") return cmd_diffusion(cfg);
    if (cmd == "normalize") return cmd_normalize(cfg);
    if (cmd == "oracle-compare") return cmd_oracle_compare(cfg, criteria);
    if (cmd == "star-check") return cmd_star_check(cfg);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  } catch (const DimensionMismatch& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  } catch (const ShellError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  } catch (const UnsupportedOperation& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return 3;
  }
  std::cerr << "unknown command " << cmd << '\n';
  return 2;
}
