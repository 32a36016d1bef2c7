#include "peierls/dynamics.hpp"

#include <cmath>
#include <numbers>
#include <utility>

#include <boost/math/tools/roots.hpp>

#include "peierls/deformed_algebra.hpp"
#include "peierls/errors.hpp"
#include "peierls/special_functions.hpp"

namespace peierls {
namespace {

double location_of(const ModelParams& params, double x, double p, const DynamicsOptions& opt) {
  if (opt.unit_weights) return std::numbers::sqrt2 * (x + p);
  return std::numbers::sqrt2 * (params.zeta * x + params.kappa * p);
}

bool finite(const PhaseState& s) { return std::isfinite(s.x) && std::isfinite(s.v); }

PhaseState advance(const PhaseState& s, const PhaseRate& r, double h) {
  return {s.t + h, s.x + h * r.dx, s.v + h * r.dv};
}

double refine(const std::function<double(double)>& f, double lo, double hi) {
  boost::uintmax_t iters = 100;
  const auto [a, b] = boost::math::tools::toms748_solve(f, lo, hi, boost::math::tools::eps_tolerance<double>(50), iters);
  return 0.5 * (a + b);
}

}  // namespace

double script_p(const ModelParams& params, double x, double p, const DynamicsOptions& opt) {
  const double s = location_of(params, x, p, opt);
  if (s == 0.0) return 0.0;
  const double xq = xi(params.q, params.w);
  const double th = std::tanh(s);
  const double m = 1.0 - xq * th * th;
  if (std::abs(m) > 1.0) throw DomainError("script_p: |m_q| > 1 at state location " + std::to_string(s));
  const double ch = std::cosh(s);
  const double prefactor = 4.0 * std::numbers::sqrt2 * effective_coupling(params) / std::numbers::pi * std::sinh(s) /
                           (xq * (params.q + 1.0 / params.q));
  if (m >= 1.0) return prefactor * special::hyp_e(1.0);
  // (E - F)/m in 2F1 normalization equals (4/pi) dE/dm of the integral form.
  const double e_minus_f_over_m = 4.0 / std::numbers::pi * special::elliptic_e_dm(m);
  const double value = prefactor * (special::hyp_e(m) - xq * e_minus_f_over_m / (ch * ch));
  if (!std::isfinite(value)) throw DomainError("script_p: non-finite value at state location " + std::to_string(s));
  return value;
}

double script_p_x(const ModelParams& params, double x, const DynamicsOptions& opt) {
  const double h = 1e-6 * (1.0 + std::abs(x));
  return (script_p(params, x + h, x + h, opt) - script_p(params, x - h, x - h, opt)) / (2.0 * h);
}

PhaseRate ode_rhs(const ModelParams& params, const PhaseState& state, const DynamicsOptions& opt) {
  const double drive = script_p(params, state.x, state.x, opt);
  const double slope = script_p_x(params, state.x, opt);
  return {state.v, (state.x - drive) * (1.0 - slope) - state.v * slope};
}

Trajectory integrate(const ModelParams& params, const PhaseState& initial, double dt, int steps,
                     const DynamicsOptions& opt) {
  if (!(dt > 0.0)) throw ConfigError("dt must be > 0");
  if (steps < 0) throw ConfigError("steps must be >= 0");
  Trajectory traj;
  traj.dt = dt;
  traj.steps_requested = steps;
  if (!finite(initial)) {
    traj.termination = "non_finite";
    return traj;
  }
  traj.states.reserve(static_cast<std::size_t>(steps) + 1);
  PhaseState s = initial;
  try {
    ode_rhs(params, s, opt);
  } catch (const DomainError&) {
    traj.termination = "domain_exit";
    return traj;
  }
  traj.states.push_back(s);
  for (int i = 0; i < steps; ++i) {
    PhaseState next;
    try {
      const PhaseRate k1 = ode_rhs(params, s, opt);
      const PhaseRate k2 = ode_rhs(params, advance(s, k1, 0.5 * dt), opt);
      const PhaseRate k3 = ode_rhs(params, advance(s, k2, 0.5 * dt), opt);
      const PhaseRate k4 = ode_rhs(params, advance(s, k3, dt), opt);
      next.t = initial.t + (i + 1) * dt;
      next.x = s.x + dt / 6.0 * (k1.dx + 2.0 * k2.dx + 2.0 * k3.dx + k4.dx);
      next.v = s.v + dt / 6.0 * (k1.dv + 2.0 * k2.dv + 2.0 * k3.dv + k4.dv);
      if (finite(next)) ode_rhs(params, next, opt);  // domain check of the new state
    } catch (const DomainError&) {
      traj.termination = "domain_exit";
      return traj;
    }
    if (!finite(next)) {
      traj.termination = "non_finite";
      return traj;
    }
    traj.states.push_back(next);
    s = next;
  }
  return traj;
}

std::string_view to_string(FixedPointBranch branch) {
  return branch == FixedPointBranch::drive_balance ? "x_equals_P" : "P_x_equals_1";
}

std::vector<FixedPoint> find_fixed_points(const ModelParams& params, double x_min, double x_max, int samples,
                                          const DynamicsOptions& opt) {
  if (samples < 2 || !(x_max > x_min)) throw ConfigError("find_fixed_points: need samples >= 2 and x_max > x_min");
  const std::function<double(double)> balance = [&](double x) { return x - script_p(params, x, x, opt); };
  const std::function<double(double)> slope = [&](double x) { return 1.0 - script_p_x(params, x, opt); };
  auto force = [&](double x) { return balance(x) * slope(x); };

  std::vector<FixedPoint> out;
  auto scan = [&](const std::function<double(double)>& f, FixedPointBranch branch) {
    double prev_x = x_min;
    double prev_f = f(prev_x);
    for (int i = 1; i < samples; ++i) {
      const double x = x_min + (x_max - x_min) * i / (samples - 1);
      const double fx = f(x);
      double root;
      bool found = false;
      if (prev_f == 0.0) {
        root = prev_x;
        found = true;
      } else if (prev_f * fx < 0.0) {
        root = refine(f, prev_x, x);
        found = true;
      }
      if (found) {
        FixedPoint fp;
        fp.x = root;
        fp.branch = branch;
        fp.residual = std::abs(f(root));
        const double h = 1e-5 * (1.0 + std::abs(root));
        fp.stiffness = (force(root + h) - force(root - h)) / (2.0 * h);
        fp.damping = script_p_x(params, root, opt);
        fp.stable = fp.stiffness < 0.0 && fp.damping > 0.0;
        out.push_back(fp);
      }
      prev_x = x;
      prev_f = fx;
    }
  };
  scan(balance, FixedPointBranch::drive_balance);
  scan(slope, FixedPointBranch::unit_slope);
  return out;
}

std::complex<double> complex_gradient(const ModelParams& params, CoherentAmplitude z, PhononNorm norm) {
  const Gradient g = total_gradient(params, z, norm);
  return 0.5 * std::complex<double>(g.d_re, g.d_im);
}

std::complex<double> canonical_flow(const ModelParams& params, CoherentAmplitude z, PhononNorm norm) {
  return std::complex<double>(0.0, -1.0) * complex_gradient(params, z, norm);
}

std::complex<double> complex_gradient(const EnergyFunctional& energy, CoherentAmplitude z, double h) {
  const double d_re = (energy({z.re + h, z.im}) - energy({z.re - h, z.im})) / (2.0 * h);
  const double d_im = (energy({z.re, z.im + h}) - energy({z.re, z.im - h})) / (2.0 * h);
  return 0.5 * std::complex<double>(d_re, d_im);
}

std::complex<double> canonical_flow(const EnergyFunctional& energy, CoherentAmplitude z, double h) {
  return std::complex<double>(0.0, -1.0) * complex_gradient(energy, z, h);
}

}  // namespace peierls
