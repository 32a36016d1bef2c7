#include "peierls/energy_landscape.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "peierls/deformed_algebra.hpp"
#include "peierls/errors.hpp"
#include "peierls/parallel.hpp"
#include "peierls/special_functions.hpp"

namespace peierls {
namespace {

constexpr double kTwoSqrt2 = 2.0 * std::numbers::sqrt2;

bool decoupled(const ModelParams& params) { return params.zeta == 0.0 && params.kappa == 0.0; }

double electronic_prefactor(const ModelParams& params) {
  return (2.0 / std::numbers::pi) * effective_coupling(params) * std::pow(params.q, params.w);
}

double phonon_scale(PhononNorm norm) { return norm == PhononNorm::per_cell ? 1.0 : 0.5; }

}  // namespace

std::string_view to_string(PhononNorm norm) { return norm == PhononNorm::per_cell ? "per-cell" : "per-site"; }

PhononNorm parse_phonon_norm(std::string_view text) {
  if (text == "per-cell") return PhononNorm::per_cell;
  if (text == "per-site") return PhononNorm::per_site;
  throw ConfigError("phonon_norm must be per-cell or per-site, got '" + std::string(text) + "'");
}

double phonon_energy_total(CoherentAmplitude z, int big_l) {
  return 2.0 * big_l * (4.0 * z.re * z.re + z.im * z.im + 0.75);
}

double phonon_density(CoherentAmplitude z, PhononNorm norm) {
  return phonon_scale(norm) * phonon_energy_total(z, 1);
}

double domain_limit(const ModelParams& params) {
  const double x = xi(params.q, params.w);
  if (x > 2.0) return std::atanh(std::sqrt(2.0 / x));
  return std::numeric_limits<double>::infinity();
}

double elliptic_parameter(const ModelParams& params, double location) {
  const double th = std::tanh(location);
  return 1.0 - xi(params.q, params.w) * th * th;
}

double electronic_density_continuum_at(const ModelParams& params, double location) {
  const double m = elliptic_parameter(params, location);
  if (std::abs(m) > 1.0) {
    throw DomainError("state location " + std::to_string(location) + " beyond convergence bound " +
                      std::to_string(domain_limit(params)) + " (|m_q| > 1)");
  }
  const double value = -electronic_prefactor(params) * std::cosh(location) * special::elliptic_e(m);
  if (!std::isfinite(value)) throw DomainError("electronic density overflows at state location " + std::to_string(location));
  return value;
}

double electronic_density_continuum(const ModelParams& params, CoherentAmplitude z) {
  if (decoupled(params)) return electronic_density_continuum_at(params, 0.0);
  return electronic_density_continuum_at(params, state_location(params, z));
}

double electronic_density_continuum_slope(const ModelParams& params, double location) {
  if (location == 0.0) return 0.0;
  const double m = elliptic_parameter(params, location);
  if (std::abs(m) > 1.0) throw DomainError("state location beyond convergence bound (|m_q| > 1)");
  const double c = electronic_prefactor(params);
  const double sh = std::sinh(location);
  if (m >= 1.0) return -c * sh;  // tanh^2 underflowed; remaining terms are O(s^3 ln s)
  const double ch = std::cosh(location);
  const double th = std::tanh(location);
  const double dm_ds = -2.0 * xi(params.q, params.w) * th / (ch * ch);
  return -c * (sh * special::elliptic_e(m) + ch * special::elliptic_e_dm(m) * dm_ds);
}

double electronic_density_modesum_at(const ModelParams& params, double location) {
  const double g = effective_coupling(params);
  double sum = 0.0;
  for (int k = 0; k < params.big_l; ++k) {
    const ModeEnergies mode = mode_energies(g, location, k, params.big_l);
    sum += mode_eigenvalues(deformed_mode_matrix(params, mode)).lambda_plus;
  }
  return sum / params.big_l;
}

double electronic_density_modesum(const ModelParams& params, CoherentAmplitude z) {
  return electronic_density_modesum_at(params, decoupled(params) ? 0.0 : state_location(params, z));
}

EnergyBreakdown total_density(const ModelParams& params, CoherentAmplitude z, PhononNorm norm) {
  EnergyBreakdown e;
  e.phonon = phonon_density(z, norm);
  e.electronic = electronic_density_continuum(params, z);
  e.total = e.phonon + e.electronic;
  return e;
}

Gradient total_gradient(const ModelParams& params, CoherentAmplitude z, PhononNorm norm) {
  const double scale = phonon_scale(norm);
  Gradient grad{scale * 16.0 * z.re, scale * 4.0 * z.im};
  if (decoupled(params)) return grad;
  const double slope = electronic_density_continuum_slope(params, state_location(params, z));
  grad.d_re += slope * kTwoSqrt2 * params.zeta;
  grad.d_im += slope * kTwoSqrt2 * params.kappa;
  return grad;
}

double GridAxis::value(int i) const {
  if (points <= 1) return 0.5 * (min + max);
  return min + (max - min) * static_cast<double>(i) / static_cast<double>(points - 1);
}

std::vector<LandscapeCell> landscape_grid(const ModelParams& params, const GridAxis& re_axis,
                                          const GridAxis& im_axis, PhononNorm norm, unsigned workers) {
  if (re_axis.points < 1 || im_axis.points < 1) throw ConfigError("resolution must be >= 1");
  const auto nx = static_cast<std::size_t>(re_axis.points);
  const auto ny = static_cast<std::size_t>(im_axis.points);
  std::vector<LandscapeCell> cells(nx * ny);
  parallel_for(cells.size(), workers, [&](std::size_t idx) {
    LandscapeCell& cell = cells[idx];
    cell.z = {re_axis.value(static_cast<int>(idx % nx)), im_axis.value(static_cast<int>(idx / nx))};
    try {
      cell.energy = total_density(params, cell.z, norm);
      cell.in_domain = true;
    } catch (const DomainError&) {
      const double nan = std::numeric_limits<double>::quiet_NaN();
      cell.energy = {phonon_density(cell.z, norm), nan, nan};
      cell.in_domain = false;
    }
  });
  return cells;
}

}  // namespace peierls
