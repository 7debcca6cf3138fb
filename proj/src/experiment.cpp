#include "scwig/experiment.hpp"

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <set>

#include "scwig/errors.hpp"

namespace scwig {

namespace {

const std::set<std::string> kTopLevelKeys = {
    "system", "hbar", "shell", "channels", "time", "grid", "conventions", "window", "oracle",
    "output_dir", "build_wigner", "evolve", "project", "diffusion", "normalize", "oracle_compare",
    "star_check", "comment"};

constexpr const char* kBracketConvention = "{A,B} = dA/dq dB/dp - dA/dp dB/dq";

Axis parse_axis(const nlohmann::json& j, const char* name) {
  if (!j.is_array() || j.size() != 3) throw ConfigError(std::string("grid.") + name + " must be [min, max, count]");
  Axis a{j[0].get<double>(), j[1].get<double>(), j[2].get<int>()};
  if (a.count < 1 || !(a.max >= a.min)) throw ConfigError(std::string("grid.") + name + " is empty");
  return a;
}

template <class T>
T positive(const nlohmann::json& j, const char* key, T fallback) {
  if (!j.contains(key)) return fallback;
  const T v = j.at(key).get<T>();
  if (!(v > T(0))) throw ConfigError(std::string(key) + " must be positive");
  return v;
}

}  // namespace

PolynomialSymbol parse_terms(const nlohmann::json& terms) {
  if (!terms.is_array() || terms.empty()) throw ConfigError("terms must be a nonempty array");
  PolynomialSymbol s;
  for (const auto& t : terms) {
    if (!t.is_array() || t.size() < 3 || t.size() > 4)
      throw ConfigError("each term is [p_power, q_power, re] or [p_power, q_power, re, im]");
    const int a = t[0].get<int>(), b = t[1].get<int>();
    if (a < 0 || b < 0) throw ConfigError("term powers must be nonnegative");
    s.add_term(a, b, {t[2].get<double>(), t.size() == 4 ? t[3].get<double>() : 0.0});
  }
  return s;
}

LindbladChannel parse_channel(const nlohmann::json& spec, const HamiltonianSystem& system,
                              const std::optional<PolynomialSymbol>& system_symbol) {
  const double c = spec.value("coupling", 1.0);
  if (spec.contains("terms")) {
    auto ch = LindbladChannel::from_symbol(parse_terms(spec["terms"]) * c, spec.value("label", "poly"));
    return ch;
  }
  const std::string sym = spec.value("symbol", "");
  if (sym == "q") return LindbladChannel::position(c);
  if (sym == "p") return LindbladChannel::momentum(c);
  if (sym == "a") {
    PolynomialSymbol a = (PolynomialSymbol::q() + PolynomialSymbol::p() * std::complex<double>(0, 1)) *
                         (c / std::sqrt(2.0));
    return LindbladChannel::from_symbol(a, "a");
  }
  if (sym == "H") {
    if (system_symbol) return LindbladChannel::from_symbol(*system_symbol * c, "H");
    if (system.name() == "harmonic") {
      PolynomialSymbol h;
      h.add_term(2, 0, 0.5);
      h.add_term(0, 2, 0.5);
      return LindbladChannel::from_symbol(h * c, "H");
    }
    auto f = system.field();
    return LindbladChannel::real_field(
        "H", [f, c](const PhasePoint& x) { return c * f(x); },
        [f, c](const PhasePoint& x) { return f.grad(x) * c; });
  }
  throw ConfigError("unknown channel symbol '" + sym + "' (use q, p, a, H or terms)");
}

std::string config_hash(const nlohmann::json& j) {
  const std::string s = j.dump();  // nlohmann objects keep keys sorted
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char ch : s) {
    h ^= ch;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

ExperimentConfig parse_config(const nlohmann::json& j) {
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  for (const auto& [k, v] : j.items())
    if (!kTopLevelKeys.count(k)) throw ConfigError("unknown config key '" + k + "'");
  ExperimentConfig c;
  c.raw = j;
  c.hash = config_hash(j);
  try {
    if (j.contains("system")) {
      const auto& s = j["system"];
      if (s.is_string()) {
        c.system_name = s.get<std::string>();
      } else {
        c.system_name = s.value("name", "polynomial");
        if (s.contains("terms")) {
          c.system_symbol = parse_terms(s["terms"]);
          if (!c.system_symbol->is_real(1e-14)) throw ConfigError("system terms must be real");
        }
      }
      if (!c.system_symbol && c.system_name == "polynomial")
        throw ConfigError("polynomial system needs terms");
    }
    c.system();  // resolve the name early
    c.hbar = positive(j, "hbar", c.hbar);
    if (j.contains("shell")) {
      const auto& s = j["shell"];
      if (s.contains("n")) {
        c.quantum_number = s["n"].get<int>();
        if (*c.quantum_number < 0) throw ConfigError("shell.n must be nonnegative");
      }
      if (s.contains("energy")) c.energy = s["energy"].get<double>();
      c.shell_samples = positive(s, "samples", c.shell_samples);
    }
    if (j.contains("channels")) {
      if (!j["channels"].is_array()) throw ConfigError("channels must be an array");
      c.channel_specs = j["channels"];
      const auto sys = c.system();
      for (const auto& spec : j["channels"]) c.channels.push_back(parse_channel(spec, sys, c.system_symbol));
    }
    if (j.contains("time")) {
      const auto& t = j["time"];
      if (t.contains("t")) {
        c.t_final = t["t"].get<double>();
        if (!(c.t_final >= 0.0)) throw ConfigError("time.t must be nonnegative");
      }
      c.dt = positive(t, "dt", c.dt);
      c.time_samples = positive(t, "samples", c.time_samples);
    }
    if (j.contains("grid")) {
      if (j["grid"].contains("p")) c.grid_p = parse_axis(j["grid"]["p"], "p");
      if (j["grid"].contains("q")) c.grid_q = parse_axis(j["grid"]["q"], "q");
    }
    if (j.contains("conventions")) {
      const auto& v = j["conventions"];
      c.maslov = v.value("maslov", c.maslov);
      const std::string e = v.value("purity_exponent", "over_hbar");
      if (e == "over_hbar") c.purity_exponent = PurityExponent::over_hbar;
      else if (e == "bare") c.purity_exponent = PurityExponent::bare;
      else throw ConfigError("conventions.purity_exponent must be over_hbar or bare");
      if (v.contains("bracket") && v["bracket"].get<std::string>() != kBracketConvention)
        throw ConfigError(std::string("only the bracket convention '") + kBracketConvention + "' is supported");
    }
    if (j.contains("window")) {
      const auto& w = j["window"];
      c.epsilon = w.value("epsilon", 0.0);
      if (!(c.epsilon >= 0.0)) throw ConfigError("window.epsilon must be nonnegative");
      const std::string shape = w.value("shape", "gaussian");
      if (shape == "gaussian") c.window = WindowShape::gaussian;
      else if (shape == "lorentzian") c.window = WindowShape::lorentzian;
      else throw ConfigError("window.shape must be gaussian or lorentzian");
    }
    if (j.contains("oracle")) {
      const auto& o = j["oracle"];
      c.oracle_grid = positive(o, "grid", c.oracle_grid);
      c.oracle_basis = positive(o, "basis", c.oracle_basis);
      if (o.contains("half_width") && !o["half_width"].is_null())
        c.oracle_half_width = positive(o, "half_width", 1.0);
      if (c.oracle_grid % 2) throw ConfigError("oracle.grid must be even");
      if (c.oracle_basis > c.oracle_grid) throw ConfigError("oracle.basis exceeds oracle.grid");
    }
    c.output_dir = j.value("output_dir", c.output_dir);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("config type error: ") + e.what());
  }
  return c;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file '" + path + "'");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  return parse_config(j);
}

HamiltonianSystem ExperimentConfig::system() const {
  if (system_symbol) return HamiltonianSystem::polynomial(*system_symbol, system_name);
  return HamiltonianSystem::by_name(system_name);
}

double ExperimentConfig::shell_energy() const {
  if (energy) return *energy;
  if (quantum_number) return quantized_energy(system(), hbar, *quantum_number, shell_samples);
  throw ConfigError("shell needs either 'n' or 'energy'");
}

FlowOptions ExperimentConfig::flow() const {
  FlowOptions f;
  f.dt = dt;
  return f;
}

nlohmann::json ExperimentConfig::conventions() const {
  return {{"maslov", maslov},
          {"purity_exponent", purity_exponent == PurityExponent::over_hbar ? "exp(-D^2/hbar)" : "exp(-D^2)"},
          {"bracket", kBracketConvention},
          {"symplectic_form", "a^b = a_p b_q - a_q b_p"},
          {"angle", "theta = 2 pi t / T"},
          {"window", window == WindowShape::gaussian ? "gaussian" : "lorentzian"},
          {"quantization", "loop integral of p dq = 2 pi hbar (n + 1/2)"}};
}

nlohmann::json ExperimentConfig::section(const std::string& name) const {
  return raw.contains(name) ? raw[name] : nlohmann::json::object();
}

}  // namespace scwig
