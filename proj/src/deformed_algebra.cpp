#include "peierls/deformed_algebra.hpp"

#include <cmath>
#include <numbers>

namespace peierls {

double q_bracket(double x, double q) {
  if (std::abs(q - 1.0) < 1e-8) return x;
  return (std::pow(q, x) - std::pow(q, -x)) / (q - 1.0 / q);
}

double xi(double q, double w) { return 2.0 * std::pow(q, -w) / (q + 1.0 / q); }

ModeEnergies mode_energies(double coupling, double location, int k, int big_l) {
  const double theta = std::numbers::pi * k / big_l;
  return {k, coupling * std::cosh(location) * std::cos(theta), coupling * std::sinh(location) * std::sin(theta)};
}

ModeEnergies mode_energies(const ModelParams& params, CoherentAmplitude z, int k) {
  return mode_energies(effective_coupling(params), state_location(params, z), k, params.big_l);
}

DeformedGenerators deformed_generators(double q, double w) {
  const Eigen::Matrix2d k3 = Eigen::Vector2d(0.5, -0.5).asDiagonal();
  Eigen::Matrix2d kp = Eigen::Matrix2d::Zero();
  kp(0, 1) = 1.0;
  const Eigen::Matrix2d km = kp.transpose();

  // q^{-K3 +- 1/2} is diagonal since K3 is.
  auto q_power = [q](const Eigen::Matrix2d& diag, double shift) {
    Eigen::Matrix2d out = Eigen::Matrix2d::Zero();
    out(0, 0) = std::pow(q, -diag(0, 0) + shift);
    out(1, 1) = std::pow(q, -diag(1, 1) + shift);
    return out;
  };

  const double xq = xi(q, w);
  const double scale = std::pow(q, w) * std::sqrt(xq);
  DeformedGenerators g;
  g.j_plus = scale * q_power(k3, 0.5) * kp;
  g.j_minus = scale * q_power(k3, -0.5) * km;
  g.j_3 = std::pow(q, 2.0 * w) * (xq / 2.0) * (q * kp * km - (1.0 / q) * km * kp);
  return g;
}

DeformedModeMatrix deformed_mode_matrix(double q, double w, const ModeEnergies& mode) {
  const DeformedGenerators g = deformed_generators(q, w);
  return {-2.0 * mode.epsilon * g.j_3 - mode.delta * (g.j_plus + g.j_minus)};
}

DeformedModeMatrix deformed_mode_matrix(const ModelParams& params, const ModeEnergies& mode) {
  return deformed_mode_matrix(params.q, params.w, mode);
}

ModeEigenvalues mode_eigenvalues(const DeformedModeMatrix& matrix) {
  const Eigen::Matrix2d& h = matrix.entries;
  const double mean = 0.5 * (h(0, 0) + h(1, 1));
  const double half_diff = 0.5 * (h(0, 0) - h(1, 1));
  const double off = 0.5 * (h(0, 1) + h(1, 0));
  const double root = std::hypot(half_diff, off);
  return {mean - root, mean + root};
}

ModeEigenvalues printed_lambda(double q, double w, double xi_value, const ModeEnergies& mode) {
  const double q2w = std::pow(q, 2.0 * w);
  const double shift = -0.5 * mode.epsilon * (q - 1.0 / q) * q2w * xi_value;
  const double root = std::sqrt(q2w * mode.epsilon * mode.epsilon + xi_value * mode.delta * mode.delta);
  return {shift - root, shift + root};
}

ModeEigenvalues printed_lambda(const ModelParams& params, const ModeEnergies& mode) {
  return printed_lambda(params.q, params.w, xi(params.q, params.w), mode);
}

}  // namespace peierls
