#pragma once

#include <array>
#include <optional>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "peierls/model.hpp"

namespace peierls {

/// Phonon energy density normalization: Ĥ_ph / L (per unit cell) or Ĥ_ph / 2L (per site).
enum class PhononNorm { per_cell, per_site };

std::string_view to_string(PhononNorm norm);
PhononNorm parse_phonon_norm(std::string_view text);

/// 2L (4 (Re z)^2 + (Im z)^2 + 3/4).
double phonon_energy_total(CoherentAmplitude z, int big_l);
double phonon_density(CoherentAmplitude z, PhononNorm norm);

/// Bound on |state location| beyond which |m_q| > 1: artanh(sqrt(2/xi)) for
/// xi > 2, +infinity otherwise.
double domain_limit(const ModelParams& params);

/// m_q = 1 - xi tanh^2(s).
double elliptic_parameter(const ModelParams& params, double location);

/// -p_q E(m_q), p_q = (2/pi) g q^w cosh(s). Throws DomainError when |m_q| > 1.
double electronic_density_continuum(const ModelParams& params, CoherentAmplitude z);
double electronic_density_continuum_at(const ModelParams& params, double location);

/// d/ds of the continuum electronic density at state location s, via dE/dm.
double electronic_density_continuum_slope(const ModelParams& params, double location);

/// (1/L) sum_k lambda_plus(k) from the deformed 2x2 mode matrices.
double electronic_density_modesum(const ModelParams& params, CoherentAmplitude z);
double electronic_density_modesum_at(const ModelParams& params, double location);

struct EnergyBreakdown {
  double phonon = 0.0;
  double electronic = 0.0;
  double total = 0.0;
};

EnergyBreakdown total_density(const ModelParams& params, CoherentAmplitude z,
                              PhononNorm norm = PhononNorm::per_cell);

struct Gradient {
  double d_re = 0.0;
  double d_im = 0.0;
};

/// Analytic gradient of the total density with respect to (Re z, Im z).
Gradient total_gradient(const ModelParams& params, CoherentAmplitude z,
                        PhononNorm norm = PhononNorm::per_cell);

// ---------------------------------------------------------------------------
// Landscape grid

struct GridAxis {
  double min = 0.0;
  double max = 0.0;
  int points = 1;

  /// points == 1 evaluates the range centre.
  double value(int i) const;
};

struct LandscapeCell {
  CoherentAmplitude z;
  EnergyBreakdown energy;
  bool in_domain = true;
};

/// Row-major: im is the slow index, re the fast one. Cells are evaluated by
/// `workers` threads; the result does not depend on the worker count.
std::vector<LandscapeCell> landscape_grid(const ModelParams& params, const GridAxis& re_axis,
                                          const GridAxis& im_axis, PhononNorm norm,
                                          unsigned workers = 1);

// ---------------------------------------------------------------------------
// Critical points

enum class CriticalKind { minimum, saddle, maximum, marginal };
std::string_view to_string(CriticalKind kind);

struct CriticalPoint {
  CoherentAmplitude location;
  double gradient_norm = 0.0;
  std::array<double, 2> hessian_eigs{};  ///< ascending
  CriticalKind kind = CriticalKind::marginal;
  double energy = 0.0;
};

struct SearchWindow {
  double re_min = -1.0;
  double re_max = 1.0;
  double im_min = -1.0;
  double im_max = 1.0;

  bool contains(CoherentAmplitude z) const {
    return z.re >= re_min && z.re <= re_max && z.im >= im_min && z.im <= im_max;
  }
};

struct CriticalSearchOptions {
  std::vector<CoherentAmplitude> seeds;
  double tol = 1e-10;        ///< gradient-norm convergence threshold
  int max_iter = 200;
  double dedupe = 1e-6;
  std::optional<SearchWindow> window;
  PhononNorm norm = PhononNorm::per_cell;
  unsigned workers = 1;
};

enum class SeedStatus { converged, max_iterations, stalled, left_window, domain_error };
std::string_view to_string(SeedStatus status);

struct SeedOutcome {
  CoherentAmplitude seed;
  SeedStatus status = SeedStatus::max_iterations;
  CoherentAmplitude final_point;
  int iterations = 0;
  double gradient_norm = 0.0;
};

struct CriticalPointReport {
  std::vector<CriticalPoint> points;
  std::vector<SeedOutcome> seeds;
};

/// n x n seeds spread uniformly over the window (n = 1 gives the centre).
std::vector<CoherentAmplitude> grid_seeds(const SearchWindow& window, int per_axis);

/// Central-difference Hessian of the total density, step 1e-4 (1 + |coordinate|).
Eigen::Matrix2d hessian(const ModelParams& params, CoherentAmplitude z, PhononNorm norm);

CriticalKind classify(const std::array<double, 2>& eigs);

/// Damped Newton on grad = 0 from every seed (line search on |grad|), then
/// deduplication and Hessian classification.
CriticalPointReport find_critical_points(const ModelParams& params, const CriticalSearchOptions& options);

}  // namespace peierls
