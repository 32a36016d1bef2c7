#include "peierls/validation.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "peierls/deformed_algebra.hpp"
#include "peierls/dynamics.hpp"
#include "peierls/energy_landscape.hpp"
#include "peierls/kink.hpp"
#include "peierls/model.hpp"
#include "peierls/special_functions.hpp"

namespace peierls {

namespace oracle {

double elliptic_e_quadrature(double m) {
  auto f = [m](double th) {
    const double s = std::sin(th);
    return std::sqrt(1.0 - m * s * s);
  };
  return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, 0.0, std::numbers::pi / 2, 20, 1e-15);
}

double elliptic_k_quadrature(double m) {
  auto f = [m](double th) {
    const double s = std::sin(th);
    return 1.0 / std::sqrt(1.0 - m * s * s);
  };
  return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, 0.0, std::numbers::pi / 2, 20, 1e-15);
}

}  // namespace oracle

bool ValidationReport::all_passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const ValidationCheck& c) { return c.passed || !c.gated; });
}

nlohmann::ordered_json ValidationReport::to_json() const {
  nlohmann::ordered_json doc;
  doc["all_passed"] = all_passed();
  nlohmann::ordered_json list = nlohmann::ordered_json::array();
  for (const auto& c : checks) {
    nlohmann::ordered_json j;
    j["name"] = c.name;
    j["passed"] = c.passed;
    j["gated"] = c.gated;
    j["measured"] = c.measured;
    j["threshold"] = c.threshold;
    if (!c.detail.empty()) j["detail"] = c.detail;
    list.push_back(j);
  }
  doc["checks"] = list;
  return doc;
}

namespace {

ValidationCheck at_most(std::string name, double measured, double threshold) {
  ValidationCheck c;
  c.name = std::move(name);
  c.measured = measured;
  c.threshold = threshold;
  c.passed = std::isfinite(measured) && measured <= threshold;
  return c;
}

std::vector<double> e_grid() {
  std::vector<double> m;
  for (int i = 0; i <= 7; ++i) m.push_back(-1.0 + 0.25 * i);
  m.push_back(0.99);
  return m;
}

std::vector<double> k_grid() {
  std::vector<double> m;
  for (int i = 0; i <= 7; ++i) m.push_back(-1.0 + 0.25 * i);
  m.push_back(0.95);
  return m;
}

void special_function_checks(ValidationReport& r) {
  double worst_e = 0.0, worst_k = 0.0;
  for (double m : e_grid()) worst_e = std::max(worst_e, std::abs(special::elliptic_e(m) - oracle::elliptic_e_quadrature(m)));
  for (double m : k_grid()) worst_k = std::max(worst_k, std::abs(special::elliptic_k(m) - oracle::elliptic_k_quadrature(m)));
  r.checks.push_back(at_most("elliptic_e_vs_quadrature", worst_e, 1e-10));
  r.checks.push_back(at_most("elliptic_k_vs_quadrature", worst_k, 1e-10));

  double worst_l = 0.0;
  for (int i = 1; i <= 20; ++i) {
    const double m = i / 21.0;
    const double mc = 1.0 - m;
    const double lhs = special::elliptic_e(m) * special::elliptic_k(mc) + special::elliptic_e(mc) * special::elliptic_k(m) -
                       special::elliptic_k(m) * special::elliptic_k(mc);
    worst_l = std::max(worst_l, std::abs(lhs - std::numbers::pi / 2));
  }
  r.checks.push_back(at_most("legendre_relation", worst_l, 1e-10));

  double worst_h = 0.0;
  for (double m : k_grid()) {
    worst_h = std::max(worst_h, std::abs(special::hyp_e(m) - 2.0 / std::numbers::pi * oracle::elliptic_e_quadrature(m)));
    worst_h = std::max(worst_h, std::abs(special::hyp_f(m) - 2.0 / std::numbers::pi * oracle::elliptic_k_quadrature(m)));
  }
  r.checks.push_back(at_most("hypergeometric_normalization", worst_h, 1e-10));
}

void contraction_checks(ValidationReport& r, const RunConfig& cfg) {
  ModelParams one = cfg.model;
  one.q = 1.0;
  ModelParams near = cfg.model;
  near.q = 1.0 + 1e-7;
  const double g = effective_coupling(cfg.model);
  const double loc = state_location(cfg.model, cfg.amplitude());
  double worst = 0.0;
  for (int k = 0; k < cfg.model.big_l; ++k) {
    const ModeEnergies mode = mode_energies(g, loc, k, cfg.model.big_l);
    const ModeEigenvalues a = mode_eigenvalues(deformed_mode_matrix(one, mode));
    const ModeEigenvalues b = mode_eigenvalues(deformed_mode_matrix(near, mode));
    worst = std::max({worst, std::abs(a.lambda_plus - b.lambda_plus), std::abs(a.lambda_minus - b.lambda_minus)});
  }
  r.checks.push_back(at_most("mode_eigenvalue_continuity_q_to_1", worst, 1e-6));

  const DeformedGenerators gen = deformed_generators(1.0 + 1e-7, cfg.model.w);
  const Eigen::Matrix2d comm = gen.j_plus * gen.j_minus - gen.j_minus * gen.j_plus;
  r.checks.push_back(at_most("su2_commutator_contraction", (comm - 2.0 * gen.j_3).cwiseAbs().maxCoeff(), 1e-6));
  r.checks.push_back(at_most("xi_contraction", std::abs(xi(1.0 + 1e-7, cfg.model.w) - 1.0), 1e-6));
}

double printed_vs_matrix(double q, double w, double xi_scale, double g, double loc, int big_l) {
  double worst = 0.0;
  for (int k = 0; k < big_l; ++k) {
    const ModeEnergies mode = mode_energies(g, loc, k, big_l);
    const ModeEigenvalues m = mode_eigenvalues(deformed_mode_matrix(q, w, mode));
    const ModeEigenvalues p = printed_lambda(q, w, xi(q, w) * xi_scale, mode);
    const double scale = std::max({1.0, std::abs(m.lambda_plus), std::abs(m.lambda_minus)});
    worst = std::max({worst, std::abs(m.lambda_plus - p.lambda_plus) / scale,
                      std::abs(m.lambda_minus - p.lambda_minus) / scale});
  }
  return worst;
}

void lambda_checks(ValidationReport& r, const RunConfig& cfg) {
  const double g = effective_coupling(cfg.model);
  const double loc = state_location(cfg.model, cfg.amplitude());
  double worst = 0.0;
  for (double q : {1.2, 1.5, 2.0}) worst = std::max(worst, printed_vs_matrix(q, 0.0, cfg.corrupt_xi, g, loc, 32));
  ValidationCheck c = at_most("printed_vs_matrix_eigenvalues_w0", worst, 1e-12);
  c.detail["q_values"] = {1.2, 1.5, 2.0};
  r.checks.push_back(c);

  ValidationCheck info =
      at_most("printed_vs_matrix_eigenvalues_configured_w",
              printed_vs_matrix(cfg.model.q, cfg.model.w, cfg.corrupt_xi, g, loc, cfg.model.big_l), 0.0);
  info.gated = false;
  info.passed = info.measured == 0.0;
  info.detail["note"] = "the printed root omits q^{2w} on the delta^2 term; nonzero whenever w != 0";
  r.checks.push_back(info);
}

void spectrum_checks(ValidationReport& r) {
  const int big_l = 64;
  const double g = 1.0;
  const double loc = 0.4;
  const std::vector<double> real = spectrum(single_particle_matrix(staggered_bonds_at(g, loc, big_l)));
  std::vector<double> analytic, modes;
  for (int m = 0; m < big_l; ++m) {
    const double c = std::cos(std::numbers::pi * m / big_l);
    const double root = 2.0 * g * std::sqrt(std::sinh(loc) * std::sinh(loc) + c * c);
    analytic.push_back(root);
    analytic.push_back(-root);
    const ModeEnergies mode = mode_energies(g, loc, m, big_l);
    const double mode_root = std::hypot(mode.epsilon, mode.delta);
    modes.push_back(mode_root);
    modes.push_back(-mode_root);
  }
  std::sort(analytic.begin(), analytic.end());
  std::sort(modes.begin(), modes.end());
  double worst = 0.0;
  for (std::size_t i = 0; i < real.size(); ++i) worst = std::max(worst, std::abs(real[i] - analytic[i]));
  r.checks.push_back(at_most("ring_spectrum_vs_analytic", worst, 1e-9));

  double lo = INFINITY, hi = -INFINITY, num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < real.size(); ++i) {
    num += real[i] * modes[i];
    den += modes[i] * modes[i];
    if (std::abs(modes[i]) < 1e-12) continue;
    lo = std::min(lo, real[i] / modes[i]);
    hi = std::max(hi, real[i] / modes[i]);
  }
  const double constant = num / den;
  ValidationCheck c = at_most("ring_to_mode_proportionality", (hi - lo) / std::abs(constant), 1e-9);
  c.detail["constant"] = constant;
  r.checks.push_back(c);
}

void modesum_checks(ValidationReport& r) {
  ModelParams p;
  p.t = 1.0;
  p.q = 1.0;
  const double loc = 0.4;
  p.big_l = 4096;
  const double cont = electronic_density_continuum_at(p, loc);
  const double rel = std::abs(electronic_density_modesum_at(p, loc) - cont) / std::abs(cont);
  r.checks.push_back(at_most("modesum_vs_continuum_L4096", rel, 2e-3));

  // Convergence order at the undimerized point, where the error is measurable.
  std::vector<double> logs_l, logs_e;
  const double c0 = electronic_density_continuum_at(p, 0.0);
  for (int l : {64, 128, 256, 512}) {
    p.big_l = l;
    logs_l.push_back(std::log(l));
    logs_e.push_back(std::log(std::abs(electronic_density_modesum_at(p, 0.0) - c0)));
  }
  const double n = 4.0;
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < 4; ++i) {
    sx += logs_l[i];
    sy += logs_e[i];
    sxx += logs_l[i] * logs_l[i];
    sxy += logs_l[i] * logs_e[i];
  }
  const double slope = -(n * sxy - sx * sy) / (n * sxx - sx * sx);
  ValidationCheck c;
  c.name = "modesum_convergence_order";
  c.gated = false;
  c.measured = slope;
  c.threshold = 1.0;
  c.passed = slope >= 0.8 && slope <= 1.2;
  c.detail["note"] = "uniform mode sum of a periodic integrand; order 2 at zero dimerization, spectral otherwise";
  r.checks.push_back(c);
}

void landscape_checks(ValidationReport& r, const RunConfig& cfg) {
  std::mt19937_64 rng(20240611);
  std::uniform_real_distribution<double> ure(cfg.re_min, cfg.re_max), uim(cfg.im_min, cfg.im_max);
  double worst_parity = 0.0, worst_grad = 0.0;
  int sampled = 0;
  for (int attempt = 0; attempt < 1000 && sampled < 50; ++attempt) {
    const CoherentAmplitude z{ure(rng), uim(rng)};
    if (std::abs(state_location(cfg.model, z)) >= domain_limit(cfg.model)) continue;
    if (std::abs(state_location(cfg.model, z)) < 1e-3) continue;
    ++sampled;
    const double e = total_density(cfg.model, z, cfg.phonon_norm).total;
    worst_parity = std::max(worst_parity, std::abs(e - total_density(cfg.model, -z, cfg.phonon_norm).total));
    const Gradient g = total_gradient(cfg.model, z, cfg.phonon_norm);
    const double h = 1e-6;
    auto f = [&](double re, double im) { return total_density(cfg.model, {re, im}, cfg.phonon_norm).total; };
    const double fre = (f(z.re + h, z.im) - f(z.re - h, z.im)) / (2 * h);
    const double fim = (f(z.re, z.im + h) - f(z.re, z.im - h)) / (2 * h);
    const double scale = std::max(1.0, std::hypot(g.d_re, g.d_im));
    worst_grad = std::max(worst_grad, std::hypot(g.d_re - fre, g.d_im - fim) / scale);
  }
  r.checks.push_back(at_most("landscape_parity", worst_parity, 1e-12));
  ValidationCheck c = at_most("landscape_gradient_vs_fd", worst_grad, 1e-6);
  c.detail["points"] = sampled;
  r.checks.push_back(c);
}

void drive_checks(ValidationReport& r) {
  ModelParams p;
  p.t = 1.0;
  p.zeta = 1.0;
  p.kappa = 1.0;
  p.q = 1.0;
  p.w = 0.0;
  double worst = 0.0;
  for (double x : {0.01, 0.02, 0.05}) {
    const double loc = std::numbers::sqrt2 * 2.0 * x;
    const double oracle = -2.0 * std::numbers::sqrt2 / std::numbers::pi * electronic_density_continuum_slope(p, loc);
    worst = std::max(worst, std::abs(script_p(p, x, x) - oracle));
  }
  r.checks.push_back(at_most("drive_vs_density_slope", worst, 1e-4));
}

void kink_checks(ValidationReport& r, const RunConfig& cfg) {
  const int sites = 200;
  const double g = effective_coupling(cfg.model);
  const KinkSpectrum flat = kink_spectrum(cfg.model, {sites / 2, {0.0, 0.0}, sites});
  double worst = 0.0;
  for (int m = 1; m <= sites; ++m) {
    const double exact = -2.0 * g * std::cos(std::numbers::pi * m / (sites + 1));
    worst = std::max(worst, std::abs(flat.eigenvalues[static_cast<std::size_t>(m - 1)] - exact));
  }
  r.checks.push_back(at_most("kink_flat_spectrum_vs_open_chain", worst, 1e-10));

  const KinkConfiguration config{cfg.kink_n, cfg.amplitude(), cfg.n_sites};
  const DifferenceOperator d = difference_operator(cfg.model, config);
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> solver(d.printed_block);
  const double root = std::numbers::sqrt2 * std::abs(d.omega);
  const Eigen::Vector3d expect(-root, 0.0, root);
  r.checks.push_back(at_most("difference_block_eigenvalues", (solver.eigenvalues() - expect).cwiseAbs().maxCoeff(), 1e-10));
  const ZeroSubspace v0 = zero_subspace(cfg.model, config);
  double kernel_err = 1.0;
  if (v0.dimension == 1) {
    const Eigen::Vector3d target(1.0 / std::numbers::sqrt2, 0.0, 1.0 / std::numbers::sqrt2);
    kernel_err = (v0.basis.col(0) - target).cwiseAbs().maxCoeff();
  }
  ValidationCheck kc = at_most("difference_kernel", kernel_err, 1e-10);
  kc.detail["dimension"] = v0.dimension;
  r.checks.push_back(kc);

  const HoppingChain bonds = kink_bonds(cfg.model, config);
  r.checks.push_back(at_most("kink_wall_bond", std::abs(bonds.bonds[static_cast<std::size_t>(cfg.kink_n)] - g), 1e-14 * g));

  const KinkObservables obs =
      kink_observables(ground_orbitals(single_particle_matrix(bonds), cfg.n_sites / 2), bonds, cfg.kink_n);
  ValidationCheck sc = at_most("kink_single_sign_change", std::abs(obs.sign_changes - 1), 0.0);
  sc.detail["position"] = obs.kink_position;
  r.checks.push_back(sc);
}

}  // namespace

ValidationReport run_validation(const RunConfig& config) {
  ValidationReport r;
  special_function_checks(r);
  contraction_checks(r, config);
  lambda_checks(r, config);
  spectrum_checks(r);
  modesum_checks(r);
  landscape_checks(r, config);
  drive_checks(r);
  kink_checks(r, config);
  return r;
}

}  // namespace peierls
