#pragma once

#include <complex>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "peierls/energy_landscape.hpp"
#include "peierls/model.hpp"

namespace peierls {

/// Options shared by the phase-space routines.
struct DynamicsOptions {
  /// Force state location sqrt(2)(x + p) (zeta = kappa = 1) instead of
  /// sqrt(2)(zeta x + kappa p).
  bool unit_weights = false;
};

/// Driving function of the restricted ground-state oscillator, with
/// s = state location of (x, p), m = 1 - xi tanh^2 s and E, F in 2F1 normalization:
///   P = (4 sqrt2 g / pi) sinh(s) / (xi (q + 1/q)) * (E(m) - xi (E(m) - F(m)) / (m cosh^2 s)).
/// The printed "(x+b)" in the cosh factor is taken to be (x+p).
double script_p(const ModelParams& params, double x, double p, const DynamicsOptions& opt = {});

/// dP/dx along the line x = p, central difference with step 1e-6 (1 + |x|).
double script_p_x(const ModelParams& params, double x, const DynamicsOptions& opt = {});

struct PhaseState {
  double t = 0.0;
  double x = 0.0;  ///< 2 Re z
  double v = 0.0;  ///< dx/dt
};

struct PhaseRate {
  double dx = 0.0;
  double dv = 0.0;
};

/// x'' = (x - P)(1 - P_x) - x' P_x with P evaluated at p = x.
PhaseRate ode_rhs(const ModelParams& params, const PhaseState& state, const DynamicsOptions& opt = {});

struct Trajectory {
  std::vector<PhaseState> states;
  std::string method = "rk4";
  double dt = 0.0;
  int steps_requested = 0;
  std::string termination = "completed";  ///< completed | domain_exit | non_finite
};

/// Fixed-step classical Runge-Kutta. Stops (without emitting the offending
/// state) if the state leaves the elliptic domain or becomes non-finite.
Trajectory integrate(const ModelParams& params, const PhaseState& initial, double dt, int steps,
                     const DynamicsOptions& opt = {});

/// Coherent amplitude of a point on the line x = p.
inline CoherentAmplitude diagonal_amplitude(double x) { return {0.5 * x, 0.5 * x}; }

enum class FixedPointBranch { drive_balance, unit_slope };  ///< x = P, or P_x = 1
std::string_view to_string(FixedPointBranch branch);

struct FixedPoint {
  double x = 0.0;
  FixedPointBranch branch = FixedPointBranch::drive_balance;
  double residual = 0.0;  ///< |x - P| or |1 - P_x|
  double stiffness = 0.0; ///< d/dx of (x - P)(1 - P_x)
  double damping = 0.0;   ///< P_x
  bool stable = false;    ///< stiffness < 0 and damping > 0
};

/// Fixed points (v = 0) in [x_min, x_max], located by sign changes on a uniform
/// scan followed by bracketed root refinement.
std::vector<FixedPoint> find_fixed_points(const ModelParams& params, double x_min, double x_max, int samples,
                                          const DynamicsOptions& opt = {});

// ---------------------------------------------------------------------------
// Canonical flow of an energy functional over z.

/// dE/dz̄ = (dE/dRe z + i dE/dIm z) / 2 of the ground-state density (analytic).
std::complex<double> complex_gradient(const ModelParams& params, CoherentAmplitude z,
                                      PhononNorm norm = PhononNorm::per_cell);

/// dz/dt = -i dE/dz̄, the energy-conserving coherent-state flow.
std::complex<double> canonical_flow(const ModelParams& params, CoherentAmplitude z,
                                    PhononNorm norm = PhononNorm::per_cell);

using EnergyFunctional = std::function<double(CoherentAmplitude)>;

/// Same two quantities for an arbitrary functional, by central differences with step h.
std::complex<double> complex_gradient(const EnergyFunctional& energy, CoherentAmplitude z, double h = 1e-6);
std::complex<double> canonical_flow(const EnergyFunctional& energy, CoherentAmplitude z, double h = 1e-6);

}  // namespace peierls
