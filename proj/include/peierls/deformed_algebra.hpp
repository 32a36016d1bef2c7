#pragma once

#include <Eigen/Dense>

#include "peierls/model.hpp"

namespace peierls {

/// q-number [x]_q = (q^x - q^-x)/(q - 1/q); returns x when |q - 1| < 1e-8.
double q_bracket(double x, double q);

/// xi_q = 2 q^-w / (q + 1/q).
double xi(double q, double w);

/// Per-mode energies of the averaged electron-phonon Hamiltonian, k in [0, L-1]:
///   epsilon = g cosh(s) cos(pi k / L),  delta = g sinh(s) sin(pi k / L).
struct ModeEnergies {
  int k = 0;
  double epsilon = 0.0;
  double delta = 0.0;
};

ModeEnergies mode_energies(double coupling, double location, int k, int big_l);
ModeEnergies mode_energies(const ModelParams& params, CoherentAmplitude z, int k);

/// Generators J_+, J_-, J_3 of the deformed algebra in the spin-1/2 representation,
/// built from K3 = diag(1/2, -1/2), K+ = E_01, K- = E_10:
///   J_pm = q^w sqrt(xi) q^{-K3 +- 1/2} K_pm
///   J_3  = q^{2w} (xi/2) (q K+ K- - q^-1 K- K+)
struct DeformedGenerators {
  Eigen::Matrix2d j_plus;
  Eigen::Matrix2d j_minus;
  Eigen::Matrix2d j_3;
};

DeformedGenerators deformed_generators(double q, double w);

/// H_k^(q) = -2 epsilon J_3 - delta (J_+ + J_-) as a real symmetric 2x2 matrix.
struct DeformedModeMatrix {
  Eigen::Matrix2d entries;
};

DeformedModeMatrix deformed_mode_matrix(double q, double w, const ModeEnergies& mode);
DeformedModeMatrix deformed_mode_matrix(const ModelParams& params, const ModeEnergies& mode);

/// lambda_plus <= lambda_minus; lambda_plus is the filled branch.
struct ModeEigenvalues {
  double lambda_plus = 0.0;
  double lambda_minus = 0.0;
};

ModeEigenvalues mode_eigenvalues(const DeformedModeMatrix& matrix);

/// Closed form as printed:
///   -1/2 eps (q - 1/q) q^{2w} xi  -/+  sqrt(q^{2w} eps^2 + xi delta^2).
/// Kept as a cross-check; it differs from the matrix eigenvalues by the factor
/// q^{2w} on the delta^2 term. `xi_value` overrides xi_q (fault injection in validation).
ModeEigenvalues printed_lambda(double q, double w, double xi_value, const ModeEnergies& mode);
ModeEigenvalues printed_lambda(const ModelParams& params, const ModeEnergies& mode);

}  // namespace peierls
