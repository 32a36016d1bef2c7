#include <exception>
#include <functional>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "peierls/commands.hpp"
#include "peierls/config.hpp"
#include "peierls/errors.hpp"

using namespace peierls;

namespace {

struct Flags {
  std::string config_file;
  std::vector<std::string> sets;
  std::string out;
  int workers = -1;
  std::string phonon_norm;
  bool quiet = false;
};

RunConfig resolve(const Flags& f) {
  RunConfig cfg;
  if (!f.config_file.empty()) load_config_file(cfg, f.config_file);
  apply_environment(cfg);
  for (const auto& s : f.sets) apply_assignment(cfg, s);
  if (!f.out.empty()) set_config_value(cfg, "out", f.out, "--out");
  if (f.workers >= 0) cfg.workers = f.workers;
  if (!f.phonon_norm.empty()) set_config_value(cfg, "phonon_norm", f.phonon_norm, "--phonon-norm");
  return cfg;
}

int run(const std::function<CommandOutput(const RunConfig&)>& command, const Flags& flags) {
  try {
    const CommandOutput out = command(resolve(flags));
    if (!flags.quiet) {
      for (const auto& file : out.files) std::cout << file << '\n';
    }
    if (out.exit_code == exit_validation_failed) std::cerr << "validation failed; see " << out.files.back() << '\n';
    return out.exit_code;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return exit_config_error;
  } catch (const DomainError& e) {
    std::cerr << "domain error: " << e.what() << '\n';
    return exit_config_error;
  } catch (const NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return exit_numerical_error;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_numerical_error;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Electron-phonon chain simulator: energy landscape, mode spectra, ground-state dynamics, kinks"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Show help for every subcommand");

  std::string keys;
  for (const auto& k : config_keys()) keys += (keys.empty() ? "" : ", ") + k;
  app.footer("Config keys: " + keys +
             "\nPrecedence: defaults < --config file < PEIERLS_<KEY> environment < --set and flags."
             "\nExit codes: 0 ok, 1 validation failed, 2 config or domain error, 3 numerical failure.");

  Flags flags;
  const std::map<std::string, std::pair<std::string, std::function<CommandOutput(const RunConfig&)>>> commands = {
      {"landscape", {"Energy density on a (Re z, Im z) grid", cmd_landscape}},
      {"critical-points", {"Minima and saddles of the energy density", cmd_critical_points}},
      {"spectrum", {"Ring spectrum against the per-mode eigenvalues", cmd_spectrum}},
      {"dynamics", {"Restricted ground-state oscillator trajectory", cmd_dynamics}},
      {"kink-spectrum", {"Spectrum of the chain with one domain wall", cmd_kink_spectrum}},
      {"kink-propagate", {"Time evolution of a domain wall", cmd_kink_propagate}},
      {"validate", {"Cross-module oracle checks", cmd_validate}},
  };
  std::string chosen;
  for (const auto& [name, entry] : commands) {
    CLI::App* sub = app.add_subcommand(name, entry.first);
    sub->add_option("-c,--config", flags.config_file, "key = value config file")->check(CLI::ExistingFile);
    sub->add_option("-s,--set", flags.sets, "Override one key: key=value (repeatable)");
    sub->add_option("-o,--out", flags.out, "Output path prefix");
    sub->add_option("-j,--workers", flags.workers, "Worker threads (0 = all cores)")->check(CLI::NonNegativeNumber);
    sub->add_option("--phonon-norm", flags.phonon_norm, "per-cell or per-site")
        ->check(CLI::IsMember({"per-cell", "per-site"}));
    sub->add_flag("-q,--quiet", flags.quiet, "Do not list written files");
    sub->callback([&chosen, n = name] { chosen = n; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : exit_config_error;
  }
  return run(commands.at(chosen).second, flags);
}
