#include "eitlab/sweep.hpp"

#include <omp.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "eitlab/errors.hpp"
#include "eitlab/version.hpp"

namespace eitlab {

namespace {

using nlohmann::json;

const double kNaN = std::numeric_limits<double>::quiet_NaN();

std::string_view axis_name(SweepAxis axis) { return axis == SweepAxis::Delta ? "delta" : "control"; }
std::string_view method_name(ChiMethod m) { return m == ChiMethod::Numeric ? "numeric" : "closed_form"; }

double number(const json& j, const char* key) {
  if (!j.is_number()) throw Error(ErrorKind::Config, std::string("'") + key + "' must be a number");
  return j.get<double>();
}

ChannelRates parse_rates(const json& j) {
  if (!j.is_object()) throw Error(ErrorKind::Config, "'rates' must be an object");
  ChannelRates r;
  for (const auto& [key, value] : j.items()) {
    if (key == "eta_x") r.eta_x = number(value, "eta_x");
    else if (key == "eta_y") r.eta_y = number(value, "eta_y");
    else if (key == "eta_z") r.eta_z = number(value, "eta_z");
    else if (key == "eta_depol") r.eta_depol = number(value, "eta_depol");
    else if (key == "eta_bc") r.eta_bc = number(value, "eta_bc");
    else if (key == "eta_cb") r.eta_cb = number(value, "eta_cb");
    else throw Error(ErrorKind::Config, "unknown rate '" + key + "'");
  }
  return r;
}

std::vector<ChannelKind> parse_channels(const json& j) {
  std::vector<ChannelKind> out;
  auto add = [&](std::string name) {
    const auto first = name.find_first_not_of(' ');
    const auto last = name.find_last_not_of(' ');
    if (first == std::string::npos) return;
    out.push_back(parse_channel_kind(name.substr(first, last - first + 1)));
  };
  if (j.is_string()) {
    std::stringstream ss(j.get<std::string>());
    std::string item;
    while (std::getline(ss, item, ',')) add(item);
  } else if (j.is_array()) {
    for (const auto& item : j) {
      if (!item.is_string()) throw Error(ErrorKind::Config, "'channels' entries must be strings");
      add(item.get<std::string>());
    }
  } else {
    throw Error(ErrorKind::Config, "'channels' must be a list or a comma-separated string");
  }
  return out;
}

std::string format_number(double v, int precision) {
  if (std::isnan(v)) return "NaN";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", precision, v);
  return buf;
}

struct PointResult {
  std::vector<double> row;
  std::vector<PointDiagnostics> diagnostics;
  std::vector<std::string> warnings;
};

PointDiagnostics diagnostics_of(const CoherenceVector& x) {
  const DensityMatrix rho = from_coherence(x, su3().basis);
  return PointDiagnostics{min_eigenvalue(rho), x.squaredNorm(), true};
}

PointResult evaluate_point(const ScenarioConfig& config, int i) {
  const double value = grid_point(config.sweep_min, config.sweep_max, config.sweep_count, i);
  PointResult out;
  out.row.push_back(value);
  for (ChannelKind kind : config.channels) {
    const ChannelRates rates = config.rates_for(kind);
    const LambdaParams p = config.axis == SweepAxis::Delta ? config.lambda_params(value, config.omega_c)
                                                           : config.lambda_params(config.delta, value);
    PointDiagnostics diag;
    try {
      cplx chi_value;
      if (config.method == ChiMethod::Numeric) {
        const NumericResponse resp = steady_response(p, rates, config.kappa);
        chi_value = resp.chi;
        diag = diagnostics_of(resp.x);
      } else {
        chi_value = chi_closed_form(kind, p.two_photon_detuning(), p.mean_detuning(), p, rates, config.kappa);
      }
      if (config.axis == SweepAxis::Delta) {
        out.row.push_back(chi_value.real());
        out.row.push_back(chi_value.imag());
      } else {
        const SlopeEstimate slope = chi_slope(kind, p, rates, default_slope_step(p), config.method, config.kappa);
        out.row.push_back(slope.value);
        out.row.push_back(absorption(chi_value, config.wavelength));
      }
    } catch (const Error& e) {
      out.row.push_back(kNaN);
      out.row.push_back(kNaN);
      out.warnings.push_back("point " + std::to_string(i) + " (" + std::string(axis_name(config.axis)) + " = " +
                             format_number(value, 12) + "), " + std::string(to_string(kind)) + ": " + e.what());
    }
    out.diagnostics.push_back(diag);
  }
  return out;
}

std::vector<std::string> column_names(const ScenarioConfig& config) {
  std::vector<std::string> cols;
  if (config.axis == SweepAxis::Delta) {
    cols.emplace_back("delta");
    for (ChannelKind k : config.channels) {
      cols.push_back(std::string(to_string(k)) + "_re_chi");
      cols.push_back(std::string(to_string(k)) + "_im_chi");
    }
  } else {
    cols.emplace_back("omega_c");
    for (ChannelKind k : config.channels) {
      cols.push_back(std::string(to_string(k)) + "_ng_integrand");
      cols.push_back(std::string(to_string(k)) + "_alpha");
    }
  }
  return cols;
}

SweepTable collect(const ScenarioConfig& config, std::vector<PointResult>& points) {
  SweepTable table;
  table.columns = column_names(config);
  table.rows.reserve(points.size());
  table.diagnostics.reserve(points.size());
  for (auto& pt : points) {
    table.rows.push_back(std::move(pt.row));
    table.diagnostics.push_back(std::move(pt.diagnostics));
    for (auto& w : pt.warnings) table.warnings.push_back(std::move(w));
  }
  return table;
}

}  // namespace

void ScenarioConfig::validate() const {
  auto fail = [](const std::string& msg) { throw Error(ErrorKind::Config, msg); };
  if (sweep_count < 2) fail("sweep_count must be >= 2");
  if (!(sweep_min < sweep_max)) fail("sweep_min must be < sweep_max");
  if (!(gamma_b >= 0.0) || !(gamma_c >= 0.0) || !(gamma_b + gamma_c > 0.0)) {
    fail("decay rates must be nonnegative with a positive sum");
  }
  if (!(channel_rate >= 0.0) || !(eta_z_normalized >= 0.0)) fail("rates must be nonnegative");
  try {
    rates.validate();
  } catch (const Error&) {
    fail("rates must be finite and nonnegative");
  }
  if (!(probe_ratio > 0.0 && probe_ratio <= 1e-3)) fail("probe_ratio must lie in (0, 1e-3]");
  if (!(wavelength > 0.0)) fail("wavelength must be positive");
  if (precision < 1 || precision > 17) fail("precision must be in [1, 17]");
  if (channels.empty()) fail("at least one channel kind is required");
  if (axis == SweepAxis::Delta && !(omega_c > 0.0)) fail("omega_c must be positive");
  if (axis == SweepAxis::Control && sweep_min < 0.0) fail("control sweep range must be nonnegative");
  if (output.empty()) fail("output path must not be empty");
}

LambdaParams ScenarioConfig::lambda_params(double delta_value, double omega_c_abs) const {
  LambdaParams p;
  p.delta_b = mean_delta + delta_value;
  p.delta_c = mean_delta - delta_value;
  p.omega_c = std::polar(omega_c_abs, phi_c);
  p.omega_b = std::polar(probe_ratio * omega_c_abs, phi_b);
  p.gamma_b = gamma_b;
  p.gamma_c = gamma_c;
  return p;
}

ChannelRates ScenarioConfig::rates_for(ChannelKind kind) const {
  if (kind == ChannelKind::General) return rates;
  if (kind == ChannelKind::Ideal) return {};
  if (axis == SweepAxis::Delta) return rates_for_kind(kind, channel_rate);
  return normalized_rates(eta_z_normalized).for_kind(kind);
}

std::vector<ChannelKind> parse_channel_list(const std::string& list) { return parse_channels(json(list)); }

ScenarioConfig parse_config(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::Config, std::string("malformed config: ") + e.what());
  }
  if (!j.is_object()) throw Error(ErrorKind::Config, "config must be a JSON object");
  ScenarioConfig c;
  for (const auto& [key, value] : j.items()) {
    const char* k = key.c_str();
    if (key == "gamma_b") c.gamma_b = number(value, k);
    else if (key == "gamma_c") c.gamma_c = number(value, k);
    else if (key == "delta") c.delta = number(value, k);
    else if (key == "Delta") c.mean_delta = number(value, k);
    else if (key == "omega_c") c.omega_c = number(value, k);
    else if (key == "phi_c") c.phi_c = number(value, k);
    else if (key == "phi_b") c.phi_b = number(value, k);
    else if (key == "probe_ratio") c.probe_ratio = number(value, k);
    else if (key == "channel_rate") c.channel_rate = number(value, k);
    else if (key == "eta_z_normalized") c.eta_z_normalized = number(value, k);
    else if (key == "rates") c.rates = parse_rates(value);
    else if (key == "channels") c.channels = parse_channels(value);
    else if (key == "sweep_axis") {
      const std::string v = value.is_string() ? value.get<std::string>() : "";
      if (v == "delta") c.axis = SweepAxis::Delta;
      else if (v == "control") c.axis = SweepAxis::Control;
      else throw Error(ErrorKind::Config, "sweep_axis must be 'delta' or 'control'");
    } else if (key == "sweep_min") c.sweep_min = number(value, k);
    else if (key == "sweep_max") c.sweep_max = number(value, k);
    else if (key == "sweep_count") {
      if (!value.is_number_integer()) throw Error(ErrorKind::Config, "sweep_count must be an integer");
      c.sweep_count = value.get<int>();
    } else if (key == "method") {
      const std::string v = value.is_string() ? value.get<std::string>() : "";
      if (v == "numeric") c.method = ChiMethod::Numeric;
      else if (v == "closed_form") c.method = ChiMethod::ClosedForm;
      else throw Error(ErrorKind::Config, "method must be 'numeric' or 'closed_form'");
    } else if (key == "kappa") c.kappa = number(value, k);
    else if (key == "wavelength") c.wavelength = number(value, k);
    else if (key == "precision") {
      if (!value.is_number_integer()) throw Error(ErrorKind::Config, "precision must be an integer");
      c.precision = value.get<int>();
    } else if (key == "output") {
      if (!value.is_string()) throw Error(ErrorKind::Config, "output must be a string");
      c.output = value.get<std::string>();
    } else if (key == "errata_ledger") {
      if (!value.is_string()) throw Error(ErrorKind::Config, "errata_ledger must be a string");
      c.errata_ledger = value.get<std::string>();
    } else {
      throw Error(ErrorKind::Config, "unknown config key '" + key + "'");
    }
  }
  c.validate();
  return c;
}

ScenarioConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Io, "cannot read config " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  ScenarioConfig c = parse_config(ss.str());
  if (!c.errata_ledger.empty() && std::filesystem::path(c.errata_ledger).is_relative()) {
    c.errata_ledger = (path.parent_path() / c.errata_ledger).lexically_normal().string();
  }
  return c;
}

std::string config_to_json(const ScenarioConfig& c) {
  json j;
  j["gamma_b"] = c.gamma_b;
  j["gamma_c"] = c.gamma_c;
  j["delta"] = c.delta;
  j["Delta"] = c.mean_delta;
  j["omega_c"] = c.omega_c;
  j["phi_c"] = c.phi_c;
  j["phi_b"] = c.phi_b;
  j["probe_ratio"] = c.probe_ratio;
  j["channel_rate"] = c.channel_rate;
  j["eta_z_normalized"] = c.eta_z_normalized;
  j["rates"] = {{"eta_x", c.rates.eta_x},   {"eta_y", c.rates.eta_y},         {"eta_z", c.rates.eta_z},
                {"eta_depol", c.rates.eta_depol}, {"eta_bc", c.rates.eta_bc}, {"eta_cb", c.rates.eta_cb}};
  json kinds = json::array();
  for (ChannelKind k : c.channels) kinds.push_back(std::string(to_string(k)));
  j["channels"] = kinds;
  j["sweep_axis"] = std::string(axis_name(c.axis));
  j["sweep_min"] = c.sweep_min;
  j["sweep_max"] = c.sweep_max;
  j["sweep_count"] = c.sweep_count;
  j["method"] = std::string(method_name(c.method));
  j["kappa"] = c.kappa;
  j["wavelength"] = c.wavelength;
  j["precision"] = c.precision;
  j["output"] = c.output;
  return j.dump();
}

double grid_point(double min, double max, int count, int i) {
  // Evaluated from the nearer end so that mirrored indices give exactly
  // mirrored values on a symmetric range.
  const int last = count - 1;
  if (2 * i <= last) {
    const double t = static_cast<double>(i) / last;
    return min + (max - min) * t;
  }
  const double t = static_cast<double>(last - i) / last;
  return max - (max - min) * t;
}

SweepTable compute_sweep_serial(const ScenarioConfig& config) {
  config.validate();
  std::vector<PointResult> points;
  points.reserve(static_cast<std::size_t>(config.sweep_count));
  for (int i = 0; i < config.sweep_count; ++i) points.push_back(evaluate_point(config, i));
  return collect(config, points);
}

SweepTable compute_sweep_parallel(const ScenarioConfig& config, int jobs) {
  config.validate();
  std::vector<PointResult> points(static_cast<std::size_t>(config.sweep_count));
  const int threads = std::max(1, jobs);
#pragma omp parallel for schedule(dynamic, 8) num_threads(threads)
  for (int i = 0; i < config.sweep_count; ++i) {
    points[static_cast<std::size_t>(i)] = evaluate_point(config, i);
  }
  return collect(config, points);
}

SweepTable compute_sweep(const ScenarioConfig& config, int jobs) {
  return jobs <= 1 ? compute_sweep_serial(config) : compute_sweep_parallel(config, jobs);
}

void write_csv(std::ostream& out, const ScenarioConfig& config, const SweepTable& table) {
  out << "# generator: eitlab " << kVersion << '\n';
  out << "# config: " << config_to_json(config) << '\n';
  out << "# units: rates, detunings and Rabi frequencies in units of gamma; chi in units of kappa\n";
  for (std::size_t c = 0; c < table.columns.size(); ++c) {
    if (c) out << ',';
    out << table.columns[c];
  }
  out << '\n';
  for (const auto& row : table.rows) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c) out << ',';
      out << format_number(row[c], config.precision);
    }
    out << '\n';
  }
}

SweepTable run_sweep(const ScenarioConfig& config, int jobs, std::ostream& diag) {
  SweepTable table = compute_sweep(config, jobs);
  std::ofstream out(config.output, std::ios::binary);
  if (!out) throw Error(ErrorKind::Io, "cannot write " + config.output);
  write_csv(out, config, table);
  if (!out) throw Error(ErrorKind::Io, "write failed for " + config.output);
  for (const auto& w : table.warnings) diag << "warning: " << w << '\n';
  return table;
}

}  // namespace eitlab
