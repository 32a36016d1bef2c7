// Acceptance gate: one PASS/FAIL line per criterion. `acceptance --only N` runs one.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "peierls/commands.hpp"
#include "peierls/deformed_algebra.hpp"
#include "peierls/dynamics.hpp"
#include "peierls/energy_landscape.hpp"
#include "peierls/kink.hpp"
#include "peierls/model.hpp"
#include "peierls/special_functions.hpp"
#include "peierls/validation.hpp"
#include "support/reference.hpp"

using namespace peierls;

namespace {

struct Outcome {
  bool passed = true;
  std::string detail;
  double timed_s = -1;  ///< when set, the budget applies to this instead of the wall time

  void require(bool ok, const std::string& what) {
    if (!ok) passed = false;
    if (!detail.empty()) detail += "; ";
    detail += what + (ok ? "" : " [x]");
  }
};

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

// ---------------------------------------------------------------------------

Outcome special_functions() {
  Outcome o;
  double worst_e = 0, worst_k = 0, worst_l = 0;
  std::vector<double> me, mk;
  for (int i = 0; i <= 7; ++i) {
    me.push_back(-1.0 + 0.25 * i);
    mk.push_back(-1.0 + 0.25 * i);
  }
  me.push_back(0.99);
  mk.push_back(0.95);
  // reference values first, so the runtime bound covers only the library evaluations
  std::vector<double> qe, qk;
  for (double m : me) qe.push_back(oracle::elliptic_e_quadrature(m));
  for (double m : mk) qk.push_back(oracle::elliptic_k_quadrature(m));
  const auto t0 = std::chrono::steady_clock::now();
  for (std::size_t i = 0; i < me.size(); ++i) worst_e = std::max(worst_e, std::abs(special::elliptic_e(me[i]) - qe[i]));
  for (std::size_t i = 0; i < mk.size(); ++i) worst_k = std::max(worst_k, std::abs(special::elliptic_k(mk[i]) - qk[i]));
  for (int i = 1; i <= 20; ++i) {
    const double m = i / 21.0, c = 1 - m;
    const double lhs = special::elliptic_e(m) * special::elliptic_k(c) + special::elliptic_e(c) * special::elliptic_k(m) -
                       special::elliptic_k(m) * special::elliptic_k(c);
    worst_l = std::max(worst_l, std::abs(lhs - std::numbers::pi / 2));
  }
  o.timed_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  o.require(worst_e <= 1e-10, "max|E-quad| " + num(worst_e));
  o.require(worst_k <= 1e-10, "max|K-quad| " + num(worst_k));
  o.require(worst_l <= 1e-10, "Legendre " + num(worst_l));
  return o;
}

Outcome spectral_oracle() {
  Outcome o;
  const int big_l = 64;
  const double g = 1.0, s = 0.4;
  const std::vector<double> real = spectrum(single_particle_matrix(staggered_bonds_at(g, s, big_l)));
  std::vector<double> analytic, modes;
  for (int m = 0; m < big_l; ++m) {
    const double c = std::cos(std::numbers::pi * m / big_l);
    const double root = 2 * g * std::sqrt(std::sinh(s) * std::sinh(s) + c * c);
    analytic.insert(analytic.end(), {root, -root});
    const ModeEnergies mode = mode_energies(g, s, m, big_l);
    const double r = std::hypot(mode.epsilon, mode.delta);
    modes.insert(modes.end(), {r, -r});
  }
  std::sort(analytic.begin(), analytic.end());
  std::sort(modes.begin(), modes.end());
  double worst = 0, lo = INFINITY, hi = -INFINITY;
  for (std::size_t i = 0; i < real.size(); ++i) {
    worst = std::max(worst, std::abs(real[i] - analytic[i]));
    lo = std::min(lo, real[i] / modes[i]);
    hi = std::max(hi, real[i] / modes[i]);
  }
  o.require(worst <= 1e-9, "max|ring-analytic| " + num(worst));
  const double spread = (hi - lo) / std::abs(0.5 * (hi + lo));
  o.require(spread <= 1e-9, "constant " + num(0.5 * (hi + lo)) + " spread " + num(spread));
  return o;
}

Outcome deformed_continuity() {
  Outcome o;
  double worst = 0;
  for (double w : {0.0, -1.4}) {
    for (int k = 0; k < 64; ++k) {
      const ModeEnergies m = mode_energies(1.0, 0.4, k, 64);
      const ModeEigenvalues a = mode_eigenvalues(deformed_mode_matrix(1.0, w, m));
      const ModeEigenvalues b = mode_eigenvalues(deformed_mode_matrix(1.0 + 1e-7, w, m));
      worst = std::max({worst, std::abs(a.lambda_plus - b.lambda_plus), std::abs(a.lambda_minus - b.lambda_minus)});
    }
  }
  o.require(worst < 1e-6, "max jump " + num(worst));
  return o;
}

Outcome modesum_convergence() {
  Outcome o;
  ModelParams p;
  p.q = 1.0;
  // zero dimerization: the only q = 1 state with a non-roundoff discretization error
  const double c0 = electronic_density_continuum_at(p, 0.0);
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  bool decreasing = true;
  double prev = INFINITY;
  std::string errs;
  for (int l : {64, 128, 256, 512}) {
    p.big_l = l;
    const double err = std::abs(electronic_density_modesum_at(p, 0.0) - c0);
    decreasing = decreasing && err < prev;
    prev = err;
    errs += (errs.empty() ? "" : ",") + num(err);
    const double x = std::log(l), y = std::log(err);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double slope = -(4 * sxy - sx * sy) / (4 * sxx - sx * sx);
  o.require(decreasing, "errors " + errs);
  o.require(slope >= 0.8 && slope <= 1.2, "fitted slope " + num(slope) + " (window 0.8..1.2)");
  p.big_l = 4096;
  const double c = electronic_density_continuum_at(p, 0.4);
  const double rel = std::abs(electronic_density_modesum_at(p, 0.4) - c) / std::abs(c);
  o.require(rel <= 2e-3, "L=4096 rel " + num(rel));
  return o;
}

Outcome double_well() {
  Outcome o;
  const RunConfig cfg = testing_support::reference_config();
  const double x = xi(cfg.model.q, cfg.model.w);
  o.require(cfg.model.q == 1.5 && x > 1 && x < 2, "q 1.5, xi " + num(x));

  CriticalSearchOptions opt;
  opt.window = SearchWindow{cfg.re_min, cfg.re_max, cfg.im_min, cfg.im_max};
  opt.seeds = grid_seeds(*opt.window, cfg.seeds_per_axis);
  opt.tol = cfg.tol;
  opt.max_iter = cfg.max_iter;
  opt.workers = cfg.worker_count();
  const auto report = find_critical_points(cfg.model, opt);
  std::vector<CriticalPoint> saddles, minima;
  for (const auto& p : report.points) {
    if (p.kind == CriticalKind::saddle) saddles.push_back(p);
    if (p.kind == CriticalKind::minimum) minima.push_back(p);
  }
  o.require(saddles.size() == 1, num(static_cast<double>(saddles.size())) + " saddle(s)");
  if (saddles.size() == 1) {
    const auto& s = saddles[0];
    const double r = std::hypot(s.location.re, s.location.im);
    o.require(r < 1e-6 && s.hessian_eigs[0] < 0 && s.hessian_eigs[1] > 0, "saddle |z| " + num(r));
  }
  o.require(minima.size() == 2, num(static_cast<double>(minima.size())) + " minima");
  if (minima.size() == 2) {
    const double de = std::abs(minima[0].energy - minima[1].energy);
    const double mirror = std::hypot(minima[0].location.re + minima[1].location.re,
                                     minima[0].location.im + minima[1].location.im);
    o.require(de < 1e-10, "dE " + num(de));
    o.require(mirror < 1e-8, "mirror " + num(mirror));
  }

  ModelParams flat = cfg.model;
  flat.q = 1.0;
  const auto q1 = find_critical_points(flat, opt);
  int off_origin = 0;
  for (const auto& p : q1.points)
    if (p.kind == CriticalKind::minimum && std::hypot(p.location.re, p.location.im) > 1e-6) ++off_origin;
  o.require(off_origin == 0, "q=1 off-origin minima " + std::to_string(off_origin));
  return o;
}

Outcome gradient_check() {
  Outcome o;
  const RunConfig cfg = testing_support::reference_config();
  std::mt19937_64 rng(1234);
  std::uniform_real_distribution<double> u(-0.6, 0.6);
  double worst = 0;
  int n = 0;
  while (n < 50) {
    const CoherentAmplitude z{u(rng), u(rng)};
    if (std::abs(state_location(cfg.model, z)) >= domain_limit(cfg.model)) continue;
    ++n;
    const ModelParams& p = cfg.model;
    const double h = 1e-6;
    const double fd_re = (electronic_density_continuum(p, {z.re + h, z.im}) - electronic_density_continuum(p, {z.re - h, z.im})) / (2 * h);
    const double fd_im = (electronic_density_continuum(p, {z.re, z.im + h}) - electronic_density_continuum(p, {z.re, z.im - h})) / (2 * h);
    // analytic electronic part: chain rule through the state location
    const double slope = electronic_density_continuum_slope(p, state_location(p, z));
    const double an_re = slope * 2 * std::numbers::sqrt2 * p.zeta;
    const double an_im = slope * 2 * std::numbers::sqrt2 * p.kappa;
    worst = std::max(worst, std::hypot(an_re - fd_re, an_im - fd_im) / std::max(1.0, std::hypot(an_re, an_im)));
  }
  o.require(worst <= 1e-6, "max rel err " + num(worst) + " over 50 points");
  return o;
}

Outcome dynamics() {
  Outcome o;
  const RunConfig cfg = testing_support::reference_config();
  const PhaseState start{0, 0.05, 0};
  const double t_end = 4.0;
  const int base = 20, finest = base * 64 * 8;
  const Trajectory ref = integrate(cfg.model, start, t_end / finest, finest);
  std::vector<double> errs;
  for (int level = 0; level <= 5; ++level) {
    const int steps = base << level;
    const Trajectory t = integrate(cfg.model, start, t_end / steps, steps);
    double gap = 0;
    for (std::size_t i = 0; i < t.states.size(); ++i)
      gap = std::max(gap, std::abs(t.states[i].x - ref.states[i * static_cast<std::size_t>(finest / steps)].x));
    errs.push_back(gap);
  }
  double worst_order = INFINITY;
  for (std::size_t i = 0; i + 1 < errs.size(); ++i) worst_order = std::min(worst_order, std::log2(errs[i] / errs[i + 1]));
  o.require(worst_order >= 3.8, "min order " + num(worst_order));

  CriticalSearchOptions opt;
  opt.window = SearchWindow{cfg.re_min, cfg.re_max, cfg.im_min, cfg.im_max};
  opt.seeds = grid_seeds(*opt.window, cfg.seeds_per_axis);
  opt.workers = cfg.worker_count();
  std::vector<double> targets;
  for (const auto& p : find_critical_points(cfg.model, opt).points)
    if (p.kind == CriticalKind::minimum) targets.push_back(2 * p.location.re);

  const Trajectory t = integrate(cfg.model, {0, cfg.x0, cfg.v0}, cfg.dt, cfg.steps);
  const PhaseState last = t.states.back();
  double nearest = INFINITY;
  for (double x : targets) nearest = std::min(nearest, std::abs(last.x - x));
  o.require(t.termination == "completed", "termination " + t.termination);
  o.require(nearest < 1e-3, "|x_end - x_min| " + num(nearest));
  o.require(std::abs(last.v) < 1e-6, "|v_end| " + num(std::abs(last.v)));
  return o;
}

Outcome kink() {
  Outcome o;
  const RunConfig cfg = testing_support::reference_config();
  const double g = effective_coupling(cfg.model);
  const int sites = 200;
  const KinkSpectrum flat = kink_spectrum(cfg.model, {sites / 2, {0, 0}, sites});
  double worst = 0;
  for (int m = 1; m <= sites; ++m)
    worst = std::max(worst, std::abs(flat.eigenvalues[static_cast<std::size_t>(m - 1)] + 2 * g * std::cos(std::numbers::pi * m / (sites + 1))));
  o.require(worst <= 1e-10, "z=0 spectrum " + num(worst));

  const KinkConfiguration kc{cfg.kink_n, cfg.amplitude(), cfg.n_sites};
  const DifferenceOperator d = difference_operator(cfg.model, kc);
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> es(d.printed_block);
  const double r = std::numbers::sqrt2 * std::abs(d.omega);
  const double eig_err = (es.eigenvalues() - Eigen::Vector3d(-r, 0, r)).cwiseAbs().maxCoeff();
  o.require(eig_err <= 1e-10, "D block eig " + num(eig_err));
  const ZeroSubspace v0 = zero_subspace(cfg.model, kc);
  double kernel_err = 1;
  if (v0.dimension == 1)
    kernel_err = (v0.basis.col(0) - Eigen::Vector3d(1, 0, 1) / std::numbers::sqrt2).cwiseAbs().maxCoeff();
  o.require(kernel_err <= 1e-10, "kernel dim " + std::to_string(v0.dimension) + " err " + num(kernel_err));

  PropagationOptions opt;
  opt.n_sites = cfg.n_sites;
  opt.dt = cfg.kink_dt;
  opt.hysteresis = cfg.hysteresis;
  opt.wall_tilt = cfg.wall_tilt;
  opt.form = cfg.kink_form;

  PropagationOptions long_run = opt;
  long_run.steps = 1000;
  long_run.freeze_z = true;
  long_run.record_every = 1000;
  const PropagationResult u = propagate_kink(cfg.model, cfg.amplitude(), cfg.kink_n, long_run);
  o.require(u.max_orthonormality_error < 1e-10, "unitarity drift/1e3 steps " + num(u.max_orthonormality_error));

  opt.steps = cfg.kink_steps;
  opt.freeze_z = cfg.freeze_z;
  const PropagationResult run = propagate_kink(cfg.model, cfg.amplitude(), cfg.kink_n, opt);
  double e_min = INFINITY, e_max = -INFINITY;
  for (const auto& s : run.samples) {
    e_min = std::min(e_min, s.energy);
    e_max = std::max(e_max, s.energy);
  }
  const double advance = run.samples.back().kink_position - run.samples.front().kink_position;
  const double drift = (e_max - e_min) / std::abs(run.samples.front().energy);
  o.require(run.termination == "completed", "termination " + run.termination);
  o.require(advance >= 1.0, "advance " + num(advance) + " sites");
  o.require(drift < 1e-3, "energy drift " + num(drift));
  return o;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

Outcome determinism() {
  Outcome o;
  const auto dir = std::filesystem::temp_directory_path() / "peierls_acceptance";
  std::filesystem::create_directories(dir);
  RunConfig cfg = testing_support::reference_config();
  std::vector<std::string> csv;
  for (int workers : {1, 1, 4}) {
    cfg.workers = workers;
    cfg.out = (dir / ("run" + std::to_string(csv.size()))).string();
    csv.push_back(slurp(cmd_landscape(cfg).files[0]));
  }
  o.require(!csv[0].empty() && csv[0] == csv[1], "repeat identical");
  o.require(csv[0] == csv[2], "1 vs 4 workers identical");
  return o;
}

struct Criterion {
  int id;
  std::string name;
  double budget_s;  ///< 0 = no runtime bound
  std::function<Outcome()> run;
};

}  // namespace

int main(int argc, char** argv) {
  int only = 0;
  for (int i = 1; i < argc; ++i)
    if (std::strcmp(argv[i], "--only") == 0 && i + 1 < argc) only = std::atoi(argv[++i]);

  const std::vector<Criterion> criteria = {
      {1, "special functions", 1.0, special_functions},
      {2, "q=1 spectral oracle", 1.0, spectral_oracle},
      {3, "deformed-limit continuity", 0.0, deformed_continuity},
      {4, "mode-sum convergence", 10.0, modesum_convergence},
      {5, "double well", 30.0, double_well},
      {6, "gradient correctness", 0.0, gradient_check},
      {7, "ground-state dynamics", 30.0, dynamics},
      {8, "kink", 120.0, kink},
      {9, "determinism", 0.0, determinism},
  };

  int failed = 0;
  for (const auto& c : criteria) {
    if (only != 0 && c.id != only) continue;
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.passed = false;
      o.detail = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (c.budget_s > 0 && o.timed_s >= 0)
      o.require(o.timed_s < c.budget_s, "evaluation " + num(o.timed_s) + " s < " + num(c.budget_s) + " s (total " +
                                             num(secs) + " s)");
    else if (c.budget_s > 0) o.require(secs < c.budget_s, "runtime " + num(secs) + " s < " + num(c.budget_s) + " s");
    else o.detail += "; runtime " + num(secs) + " s";
    std::printf("%s criterion %d (%s): %s\n", o.passed ? "PASS" : "FAIL", c.id, c.name.c_str(), o.detail.c_str());
    std::fflush(stdout);
    if (!o.passed) ++failed;
  }
  return failed == 0 ? 0 : 1;
}
