#pragma once

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "scwig/lindblad_semiclassics.hpp"
#include "scwig/normalization_suite.hpp"
#include "scwig/polynomial.hpp"
#include "scwig/semiclassical_wigner.hpp"

namespace scwig {

struct Axis {
  double min = -1.0;
  double max = 1.0;
  int count = 11;

  double at(int i) const { return count == 1 ? min : min + (max - min) * i / (count - 1); }
};

/// Parsed experiment configuration. Every key is optional except where a
/// command needs it; defaults are listed in the README.
struct ExperimentConfig {
  nlohmann::json raw;
  std::string hash;

  std::string system_name = "harmonic";
  std::optional<PolynomialSymbol> system_symbol;
  double hbar = 0.05;
  std::optional<int> quantum_number;
  std::optional<double> energy;
  int shell_samples = 1024;

  std::vector<LindbladChannel> channels;
  nlohmann::json channel_specs = nlohmann::json::array();

  double t_final = 1.0;
  double dt = 1e-3;
  int time_samples = 11;

  Axis grid_p{-1.5, 1.5, 61};
  Axis grid_q{-1.5, 1.5, 61};

  double maslov = M_PI / 4.0;
  PurityExponent purity_exponent = PurityExponent::over_hbar;
  double epsilon = 0.0;
  WindowShape window = WindowShape::gaussian;

  int oracle_grid = 512;
  int oracle_basis = 64;
  std::optional<double> oracle_half_width;

  std::string output_dir = "out";

  HamiltonianSystem system() const;
  /// Shell energy from "energy", or the quantized shell for "n".
  double shell_energy() const;
  FlowOptions flow() const;
  /// Physical conventions for manifests.
  nlohmann::json conventions() const;
  /// Command-specific section (empty object if absent).
  nlohmann::json section(const std::string& name) const;
};

ExperimentConfig parse_config(const nlohmann::json& j);
ExperimentConfig load_config(const std::string& path);

/// FNV-1a 64-bit hash of the canonical (sorted-key) JSON dump, as hex.
std::string config_hash(const nlohmann::json& j);

LindbladChannel parse_channel(const nlohmann::json& spec, const HamiltonianSystem& system,
                              const std::optional<PolynomialSymbol>& system_symbol);
PolynomialSymbol parse_terms(const nlohmann::json& terms);

}  // namespace scwig
