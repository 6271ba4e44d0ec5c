// eitlab: susceptibility sweeps and formula verification for the Lambda system.

#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "eitlab/errors.hpp"
#include "eitlab/sweep.hpp"
#include "eitlab/verify.hpp"
#include "eitlab/version.hpp"

namespace {

struct CommonOptions {
  std::string config;
  std::string output;
  std::string channels;
  int jobs = 1;
};

eitlab::ScenarioConfig load(const CommonOptions& opt) {
  eitlab::ScenarioConfig config = opt.config.empty() ? eitlab::ScenarioConfig{} : eitlab::load_config(opt.config);
  if (!opt.channels.empty()) config.channels = eitlab::parse_channel_list(opt.channels);
  config.validate();
  return config;
}

int run_sweep_cmd(const CommonOptions& opt) {
  eitlab::ScenarioConfig config = load(opt);
  if (!opt.output.empty()) config.output = opt.output;
  const auto table = eitlab::run_sweep(config, opt.jobs, std::cerr);
  std::cerr << "wrote " << table.rows.size() << " rows to " << config.output;
  if (!table.warnings.empty()) std::cerr << " (" << table.warnings.size() << " warnings)";
  std::cerr << '\n';
  return 0;
}

int run_verify_cmd(const CommonOptions& opt, const std::string& errata_path) {
  const eitlab::ScenarioConfig config = load(opt);
  const std::string path = errata_path.empty() ? config.errata_ledger : errata_path;
  std::vector<eitlab::ErratumEntry> ledger;
  if (!path.empty()) ledger = eitlab::load_errata(path);
  const eitlab::VerifyReport report = eitlab::run_verify(config, ledger);
  std::cout << report.text();
  if (!opt.output.empty()) {
    std::ofstream out(opt.output, std::ios::binary);
    if (!out) throw eitlab::Error(eitlab::ErrorKind::Io, "cannot write " + opt.output);
    out << report.json() << '\n';
  }
  return report.success() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Coherence-vector Lindblad solver for Lambda-system EIT"};
  app.set_version_flag("--version", std::string(eitlab::kVersion));
  app.require_subcommand(1);

  CommonOptions sweep_opt;
  auto* sweep = app.add_subcommand("sweep", "Write a detuning or control-field sweep as CSV");
  sweep->add_option("--config", sweep_opt.config, "JSON scenario file")->check(CLI::ExistingFile);
  sweep->add_option("--output", sweep_opt.output, "CSV path (overrides the config)");
  sweep->add_option("--channels", sweep_opt.channels, "Comma list: ideal,dephase,depol,damp_bc,damp_cb,popex,general");
  sweep->add_option("--jobs", sweep_opt.jobs, "Worker threads (1 = serial path)")->check(CLI::PositiveNumber);

  CommonOptions verify_opt;
  std::string errata_path;
  auto* verify = app.add_subcommand("verify", "Compare tabulated expressions against the oracle");
  verify->add_option("--config", verify_opt.config, "JSON scenario file")->check(CLI::ExistingFile);
  verify->add_option("--output", verify_opt.output, "Write the machine-readable report (JSON) here");
  verify->add_option("--channels", verify_opt.channels, "Accepted for symmetry with sweep; unused");
  verify->add_option("--jobs", verify_opt.jobs, "Accepted for symmetry with sweep; unused");
  verify->add_option("--errata", errata_path, "Errata ledger (overrides the config)")->check(CLI::ExistingFile);

  CLI11_PARSE(app, argc, argv);

  try {
    if (sweep->parsed()) return run_sweep_cmd(sweep_opt);
    return run_verify_cmd(verify_opt, errata_path);
  } catch (const eitlab::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
}
