#pragma once

// Configuration-driven detuning and control-field sweeps written as CSV.

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "eitlab/response.hpp"

namespace eitlab {

enum class SweepAxis { Delta, Control };

struct ScenarioConfig {
  double gamma_b = 0.5;
  double gamma_c = 0.5;
  double delta = 0.0;       // two-photon detuning (fixed value for control sweeps)
  double mean_delta = 0.0;  // Delta
  double omega_c = 0.16;    // |Omega_c|
  double phi_c = 0.0;
  double phi_b = 0.0;
  double probe_ratio = 1e-4;  // |Omega_b| / |Omega_c|
  double channel_rate = 0.1;  // rate of each single-family channel in delta sweeps
  double eta_z_normalized = 0.01;  // control sweeps use normalized_rates(eta_z_normalized)
  ChannelRates rates;              // used by the "general" kind
  std::vector<ChannelKind> channels{ChannelKind::Ideal, ChannelKind::Dephase, ChannelKind::Depol,
                                    ChannelKind::DampBc, ChannelKind::DampCb, ChannelKind::Popex};
  SweepAxis axis = SweepAxis::Delta;
  double sweep_min = -0.5;
  double sweep_max = 0.5;
  int sweep_count = 1001;
  ChiMethod method = ChiMethod::Numeric;
  double kappa = 1.0;
  double wavelength = 2.0 * 3.14159265358979323846;
  int precision = 12;
  std::string output = "sweep.csv";
  std::string errata_ledger;  // resolved relative to the config file

  /// Throws Error(Config) on violated invariants.
  void validate() const;

  /// Lambda parameters at a given two-photon detuning and control amplitude.
  LambdaParams lambda_params(double delta_value, double omega_c_abs) const;
  /// Rates of one curve: single-family rates (delta sweeps), normalized
  /// rates (control sweeps) or the explicit rate block (general).
  ChannelRates rates_for(ChannelKind kind) const;
};

/// "dephase, popex" -> kinds. Throws Error(Config) on unknown names.
std::vector<ChannelKind> parse_channel_list(const std::string& list);

ScenarioConfig parse_config(const std::string& json_text);
/// Reads and parses; relative errata paths are resolved against the file's directory.
ScenarioConfig load_config(const std::filesystem::path& path);
std::string config_to_json(const ScenarioConfig& config);

/// Grid value i of count points on [min, max], exactly symmetric when min = -max.
double grid_point(double min, double max, int count, int i);

/// Per point and curve: reconstructed-state diagnostics from the numeric route.
struct PointDiagnostics {
  double min_rho_eigenvalue = 0.0;
  double coherence_norm2 = 0.0;
  bool available = false;
};

struct SweepTable {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
  std::vector<std::vector<PointDiagnostics>> diagnostics;  // [row][curve]
  std::vector<std::string> warnings;
};

/// Serial reference evaluation of the sweep.
SweepTable compute_sweep_serial(const ScenarioConfig& config);
/// OpenMP evaluation with `jobs` threads; identical output to the serial path.
SweepTable compute_sweep_parallel(const ScenarioConfig& config, int jobs);
/// jobs <= 1 selects the serial path.
SweepTable compute_sweep(const ScenarioConfig& config, int jobs);

void write_csv(std::ostream& out, const ScenarioConfig& config, const SweepTable& table);

/// compute_sweep + write_csv to config.output. Warnings go to `diag`.
SweepTable run_sweep(const ScenarioConfig& config, int jobs, std::ostream& diag);

}  // namespace eitlab
