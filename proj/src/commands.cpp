#include "peierls/commands.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "peierls/deformed_algebra.hpp"
#include "peierls/dynamics.hpp"
#include "peierls/energy_landscape.hpp"
#include "peierls/errors.hpp"
#include "peierls/io.hpp"
#include "peierls/kink.hpp"
#include "peierls/validation.hpp"

namespace peierls {

namespace {

std::string path_for(const RunConfig& c, const std::string& suffix) { return c.out + "." + suffix; }

nlohmann::ordered_json point_json(CoherentAmplitude z) { return {{"re", z.re}, {"im", z.im}}; }

SearchWindow window_of(const RunConfig& c) { return {c.re_min, c.re_max, c.im_min, c.im_max}; }

}  // namespace

CommandOutput cmd_landscape(const RunConfig& config) {
  validate(config);
  const GridAxis re{config.re_min, config.re_max, config.resolution};
  const GridAxis im{config.im_min, config.im_max, config.resolution};
  const auto cells = landscape_grid(config.model, re, im, config.phonon_norm, config.worker_count());

  CommandOutput out;
  const std::string csv = path_for(config, "landscape.csv");
  CsvWriter writer(csv, "landscape", config, {"re", "im", "e_phonon", "e_electronic", "e_total", "status"});
  std::size_t best = cells.size();
  int outside = 0;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    const auto& c = cells[i];
    writer.row({format_number(c.z.re), format_number(c.z.im), format_number(c.energy.phonon),
                format_number(c.energy.electronic), format_number(c.energy.total), c.in_domain ? "ok" : "domain"});
    if (!c.in_domain) {
      ++outside;
      continue;
    }
    if (best == cells.size() || c.energy.total < cells[best].energy.total) best = i;
  }
  writer.close();
  out.files.push_back(csv);

  auto meta = metadata("landscape", config);
  meta["columns"] = {"re", "im", "e_phonon", "e_electronic", "e_total", "status"};
  meta["order"] = "row-major, im slow, re fast";
  meta["shape"] = {config.resolution, config.resolution};
  meta["cells_outside_domain"] = outside;
  if (best < cells.size()) {
    const auto& b = cells[best];
    meta["grid_minimum"] = {{"location", point_json(b.z)},
                            {"e_total", b.energy.total},
                            {"mirror_e_total", total_density(config.model, -b.z, config.phonon_norm).total}};
  }
  const std::string json = path_for(config, "landscape.json");
  write_json(json, meta);
  out.files.push_back(json);
  out.summary = meta;
  return out;
}

CommandOutput cmd_critical_points(const RunConfig& config) {
  validate(config);
  CriticalSearchOptions opt;
  opt.window = window_of(config);
  opt.seeds = grid_seeds(*opt.window, config.seeds_per_axis);
  opt.tol = config.tol;
  opt.max_iter = config.max_iter;
  opt.norm = config.phonon_norm;
  opt.workers = config.worker_count();
  const CriticalPointReport report = find_critical_points(config.model, opt);

  auto meta = metadata("critical_points", config);
  meta["xi"] = xi(config.model.q, config.model.w);
  nlohmann::ordered_json points = nlohmann::ordered_json::array();
  for (const auto& p : report.points) {
    points.push_back({{"kind", to_string(p.kind)},
                      {"location", point_json(p.location)},
                      {"state_location", state_location(config.model, p.location)},
                      {"energy", p.energy},
                      {"gradient_norm", p.gradient_norm},
                      {"hessian_eigenvalues", {p.hessian_eigs[0], p.hessian_eigs[1]}}});
  }
  meta["points"] = points;
  nlohmann::ordered_json seeds = nlohmann::ordered_json::array();
  for (const auto& s : report.seeds) {
    seeds.push_back({{"seed", point_json(s.seed)},
                     {"status", to_string(s.status)},
                     {"final", point_json(s.final_point)},
                     {"iterations", s.iterations},
                     {"gradient_norm", s.gradient_norm}});
  }
  meta["seeds"] = seeds;
  CommandOutput out;
  const std::string json = path_for(config, "critical_points.json");
  write_json(json, meta);
  out.files.push_back(json);
  out.summary = meta;
  return out;
}

CommandOutput cmd_spectrum(const RunConfig& config) {
  validate(config);
  const ModelParams& p = config.model;
  const CoherentAmplitude z = config.amplitude();
  const double g = effective_coupling(p);
  const double loc = state_location(p, z);

  const std::vector<double> real = spectrum(single_particle_matrix(staggered_bonds(p, z)));
  std::vector<double> pm;
  CommandOutput out;
  const std::string modes_csv = path_for(config, "modes.csv");
  {
    CsvWriter w(modes_csv, "modes", config,
                {"k", "epsilon", "delta", "lambda_plus", "lambda_minus", "printed_plus", "printed_minus"});
    for (int k = 0; k < p.big_l; ++k) {
      const ModeEnergies mode = mode_energies(g, loc, k, p.big_l);
      const ModeEigenvalues m = mode_eigenvalues(deformed_mode_matrix(p, mode));
      const ModeEigenvalues pr = printed_lambda(p, mode);
      w.row({static_cast<double>(k), mode.epsilon, mode.delta, m.lambda_plus, m.lambda_minus, pr.lambda_plus,
             pr.lambda_minus});
      const double root = std::hypot(mode.epsilon, mode.delta);
      pm.push_back(-root);
      pm.push_back(root);
    }
    w.close();
  }
  std::sort(pm.begin(), pm.end());

  double num = 0.0, den = 0.0, lo = INFINITY, hi = -INFINITY;
  for (std::size_t i = 0; i < real.size(); ++i) {
    num += real[i] * pm[i];
    den += pm[i] * pm[i];
    if (std::abs(pm[i]) < 1e-12) continue;
    lo = std::min(lo, real[i] / pm[i]);
    hi = std::max(hi, real[i] / pm[i]);
  }
  const double constant = den > 0.0 ? num / den : std::numeric_limits<double>::quiet_NaN();

  const std::string csv = path_for(config, "spectrum.csv");
  {
    CsvWriter w(csv, "spectrum", config, {"index", "real_space", "mode_root", "ratio"});
    for (std::size_t i = 0; i < real.size(); ++i) {
      const double ratio = std::abs(pm[i]) < 1e-12 ? std::numeric_limits<double>::quiet_NaN() : real[i] / pm[i];
      w.row({static_cast<double>(i), real[i], pm[i], ratio});
    }
    w.close();
  }

  auto meta = metadata("spectrum", config);
  meta["state_location"] = loc;
  meta["coupling"] = g;
  meta["proportionality_constant"] = constant;
  meta["ratio_relative_spread"] = std::isfinite(hi - lo) ? (hi - lo) / std::abs(constant) : 0.0;
  meta["note"] = "real_space compares the ring eigenvalues to +/-sqrt(eps^2 + delta^2); exact pairing holds at q = 1";
  const std::string json = path_for(config, "spectrum.json");
  write_json(json, meta);
  out.files = {csv, modes_csv, json};
  out.summary = meta;
  return out;
}

CommandOutput cmd_dynamics(const RunConfig& config) {
  validate(config);
  const DynamicsOptions opt{config.unit_weights};
  const Trajectory traj = integrate(config.model, {0.0, config.x0, config.v0}, config.dt, config.steps, opt);

  CommandOutput out;
  const std::string csv = path_for(config, "trajectory.csv");
  CsvWriter w(csv, "trajectory", config, {"t", "x", "v", "e_total"});
  for (const auto& s : traj.states) {
    double e = std::numeric_limits<double>::quiet_NaN();
    try {
      e = total_density(config.model, diagonal_amplitude(s.x), config.phonon_norm).total;
    } catch (const DomainError&) {
    }
    w.row({s.t, s.x, s.v, e});
  }
  w.close();
  out.files.push_back(csv);

  auto meta = metadata("trajectory", config);
  meta["method"] = traj.method;
  meta["termination"] = traj.termination;
  meta["samples"] = traj.states.size();
  if (!traj.states.empty()) {
    const auto& last = traj.states.back();
    meta["final"] = {{"t", last.t}, {"x", last.x}, {"v", last.v}};
  }
  nlohmann::ordered_json fps = nlohmann::ordered_json::array();
  try {
    for (const auto& fp : find_fixed_points(config.model, 2.0 * config.re_min, 2.0 * config.re_max, 401, opt)) {
      fps.push_back({{"x", fp.x},
                     {"branch", to_string(fp.branch)},
                     {"residual", fp.residual},
                     {"stiffness", fp.stiffness},
                     {"damping", fp.damping},
                     {"stable", fp.stable}});
    }
  } catch (const DomainError& e) {
    meta["fixed_point_scan_error"] = e.what();
  }
  meta["fixed_points"] = fps;
  const std::string json = path_for(config, "trajectory.json");
  write_json(json, meta);
  out.files.push_back(json);
  out.summary = meta;
  if (traj.termination == "non_finite") out.exit_code = exit_numerical_error;
  return out;
}

CommandOutput cmd_kink_spectrum(const RunConfig& config) {
  validate(config);
  const KinkConfiguration kc{config.kink_n, config.amplitude(), config.n_sites};
  const KinkSpectrum spec = kink_spectrum(config.model, kc, config.kink_form);
  CommandOutput out;
  const std::string csv = path_for(config, "kink_spectrum.csv");
  CsvWriter w(csv, "kink_spectrum", config, {"index", "eigenvalue", "in_gap"});
  int mid_gap = 0;
  for (std::size_t i = 0; i < spec.eigenvalues.size(); ++i) {
    w.row({std::to_string(i), format_number(spec.eigenvalues[i]), spec.in_gap[i] ? "1" : "0"});
    mid_gap += spec.in_gap[i] ? 1 : 0;
  }
  w.close();
  out.files.push_back(csv);

  auto meta = metadata("kink_spectrum", config);
  meta["lowest_eigenvalue"] = spec.lowest;
  meta["gap_half_width"] = spec.gap_half_width;
  meta["mid_gap_states"] = mid_gap;
  if (config.kink_n <= config.n_sites - 3) {
    const DifferenceOperator d = difference_operator(config.model, kc);
    const ZeroSubspace v0 = zero_subspace(config.model, kc);
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> printed(d.printed_block), literal(d.literal_block);
    nlohmann::ordered_json basis = nlohmann::ordered_json::array();
    for (int k = 0; k < v0.dimension; ++k) basis.push_back({v0.basis(0, k), v0.basis(1, k), v0.basis(2, k)});
    meta["difference_operator"] = {
        {"omega", d.omega},
        {"printed_block_eigenvalues", {printed.eigenvalues()(0), printed.eigenvalues()(1), printed.eigenvalues()(2)}},
        {"literal_block_eigenvalues", {literal.eigenvalues()(0), literal.eigenvalues()(1), literal.eigenvalues()(2)}},
        {"literal_support_bonds", d.literal_support},
        {"literal_norm", d.literal_norm},
        {"printed_norm", d.printed.norm()},
        {"zero_subspace_dimension", v0.dimension},
        {"zero_subspace_basis", basis}};
  }
  const std::string json = path_for(config, "kink_spectrum.json");
  write_json(json, meta);
  out.files.push_back(json);
  out.summary = meta;
  return out;
}

CommandOutput cmd_kink_propagate(const RunConfig& config) {
  validate(config);
  PropagationOptions opt;
  opt.dt = config.kink_dt;
  opt.steps = config.kink_steps;
  opt.n_sites = config.n_sites;
  opt.hysteresis = config.hysteresis;
  opt.freeze_z = config.freeze_z;
  opt.wall_tilt = config.wall_tilt;
  opt.form = config.kink_form;
  opt.record_every = config.kink_record_every;
  const PropagationResult res = propagate_kink(config.model, config.amplitude(), config.kink_n, opt);

  CommandOutput out;
  const std::string csv = path_for(config, "kink.csv");
  CsvWriter w(csv, "kink", config, {"t", "re_z", "im_z", "kink_position", "energy", "n_anchor", "lowest_eigenvalue"});
  double e_min = INFINITY, e_max = -INFINITY;
  for (const auto& s : res.samples) {
    w.row({s.t, s.z.re, s.z.im, s.kink_position, s.energy, static_cast<double>(s.anchor), s.lowest_eigenvalue});
    e_min = std::min(e_min, s.energy);
    e_max = std::max(e_max, s.energy);
  }
  w.close();
  out.files.push_back(csv);

  auto meta = metadata("kink", config);
  meta["termination"] = res.termination;
  meta["reanchors"] = res.reanchors;
  meta["max_orthonormality_error"] = res.max_orthonormality_error;
  if (!res.samples.empty()) {
    const auto& first = res.samples.front();
    const auto& last = res.samples.back();
    meta["initial_position"] = first.kink_position;
    meta["final_position"] = last.kink_position;
    meta["advance"] = last.kink_position - first.kink_position;
    meta["relative_energy_drift"] = (e_max - e_min) / std::abs(first.energy);
  }
  const std::string json = path_for(config, "kink.json");
  write_json(json, meta);
  out.files.push_back(json);
  out.summary = meta;
  if (res.termination == "eigensolver_failure") out.exit_code = exit_numerical_error;
  return out;
}

CommandOutput cmd_validate(const RunConfig& config) {
  validate(config);
  const ValidationReport report = run_validation(config);
  auto meta = metadata("validate", config);
  const nlohmann::ordered_json body = report.to_json();
  for (const auto& [key, value] : body.items()) meta[key] = value;
  CommandOutput out;
  const std::string json = path_for(config, "validate.json");
  write_json(json, meta);
  out.files.push_back(json);
  out.summary = meta;
  out.exit_code = report.all_passed() ? exit_ok : exit_validation_failed;
  return out;
}

}  // namespace peierls
