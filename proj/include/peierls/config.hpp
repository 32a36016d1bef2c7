#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "peierls/energy_landscape.hpp"
#include "peierls/kink.hpp"
#include "peierls/model.hpp"

namespace peierls {

/// Every knob of every subcommand. Defaults reproduce the double-well reference run.
struct RunConfig {
  ModelParams model{0.11929, 1.0, 0.8, 1.5, -1.4, 64};
  PhononNorm phonon_norm = PhononNorm::per_cell;
  bool unit_weights = false;

  // landscape grid and critical-point window
  double re_min = -0.2;
  double re_max = 0.2;
  double im_min = -0.32;
  double im_max = 0.32;
  int resolution = 101;
  int seeds_per_axis = 9;
  double tol = 1e-10;
  int max_iter = 200;

  // ground-state ODE
  double x0 = 1e-3;
  double v0 = 0.0;
  double dt = 0.01;
  int steps = 20000;

  // amplitude used by spectrum and the kink commands
  double z_re = 0.0755856;
  double z_im = 0.2418738;

  // kink chain
  int n_sites = 200;
  int kink_n = 100;
  double kink_dt = 0.01;
  int kink_steps = 6000;
  int kink_record_every = 10;
  double hysteresis = 0.25;
  double wall_tilt = -2.0;
  bool freeze_z = false;
  KinkForm kink_form = KinkForm::averaged;

  // execution
  std::string out = "peierls";
  int workers = 0;  ///< 0 = hardware concurrency

  /// Scales xi in the printed eigenvalue cross-check of `validate`; 1 leaves it intact.
  double corrupt_xi = 1.0;

  CoherentAmplitude amplitude() const { return {z_re, z_im}; }
  unsigned worker_count() const;
};

/// Names of all keys, sorted.
std::vector<std::string> config_keys();

/// Sets one key. `where` prefixes error messages (e.g. "run.cfg:3:7"); `column`
/// is the 1-based column of the value within its source, used for numeric errors.
void set_config_value(RunConfig& config, std::string_view key, std::string_view value,
                      std::string_view where = "", int column = 0);

/// Flat `key = value` lines; `#` starts a comment. Errors carry file:line:col.
void load_config_file(RunConfig& config, const std::string& path);
void load_config_text(RunConfig& config, std::string_view text, std::string_view source);

/// PEIERLS_<KEY> (upper-case) environment overrides.
void apply_environment(RunConfig& config);

/// "key=value" from a --set flag.
void apply_assignment(RunConfig& config, std::string_view assignment);

/// Throws ConfigError naming the first invalid field.
void validate(const RunConfig& config);

/// Sorted (key, value) pairs. `embedded` drops execution-only keys (out, workers)
/// so that artifacts do not depend on where or how wide a run was.
std::vector<std::pair<std::string, std::string>> config_entries(const RunConfig& config, bool embedded = true);

}  // namespace peierls
