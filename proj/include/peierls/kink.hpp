#pragma once

#include <complex>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "peierls/model.hpp"

namespace peierls {

/// Single domain wall at site n of an open chain of N sites. Amplitudes follow
/// z_j = (-1)^j z for j <= n and z_j = (-1)^{j+1} z for j > n, so z_n = z_{n+1}.
struct KinkConfiguration {
  int n = 0;
  CoherentAmplitude z;
  int n_sites = 0;

  /// Throws DomainError unless N >= 3 and 0 <= n <= N - 2.
  void check() const;
  std::vector<CoherentAmplitude> amplitudes() const;
};

enum class KinkForm {
  averaged,  ///< coherent-state average of the exponential hopping under the kink staggering
  printed,   ///< the closed form with omega_l = g - (c + (-1)^l s), evaluated verbatim
};
std::string_view to_string(KinkForm form);
KinkForm parse_kink_form(std::string_view text);

/// Open chain of N - 1 bonds. Averaged form: A_j = g(cosh s - (-1)^j sinh s) for
/// j < n, A_n = g, A_j = g(cosh s + (-1)^j sinh s) for j > n.
HoppingChain kink_bonds(const ModelParams& params, const KinkConfiguration& config,
                        KinkForm form = KinkForm::averaged);
HoppingChain kink_bonds_at(double coupling, double location, int n, int n_sites,
                           KinkForm form = KinkForm::averaged);

struct KinkSpectrum {
  std::vector<double> eigenvalues;  ///< ascending
  double lowest = 0.0;              ///< E(z, n)
  double gap_half_width = 0.0;      ///< 2 g |sinh s|, bulk gap of the dimerized chain
  std::vector<bool> in_gap;
};

KinkSpectrum kink_spectrum(const ModelParams& params, const KinkConfiguration& config,
                           KinkForm form = KinkForm::averaged);

/// H'_{n+1} - H'_n, as printed (omega_n (f+_{n+2} f_{n+1} - f+_{n+1} f_n + h.c.)) and
/// as the literal difference of the two averaged kink matrices.
struct DifferenceOperator {
  double omega = 0.0;               ///< printed omega_n = g - (c + (-1)^n s)
  Eigen::MatrixXd printed;          ///< N x N
  Eigen::MatrixXd literal;          ///< N x N
  Eigen::Matrix3d printed_block;    ///< restriction to sites n, n+1, n+2
  Eigen::Matrix3d literal_block;
  std::vector<int> literal_support;  ///< bonds j with a non-zero literal entry
  double literal_norm = 0.0;         ///< Frobenius norm
};

/// Requires n <= N - 3.
DifferenceOperator difference_operator(const ModelParams& params, const KinkConfiguration& config);

struct ZeroSubspace {
  int dimension = 0;
  Eigen::MatrixXd basis;  ///< 3 x dimension, orthonormal columns over sites n, n+1, n+2
};

/// Kernel of the printed 3x3 difference block. Eigenvalues below
/// 1e-12 * max(1, |omega|) count as zero.
ZeroSubspace zero_subspace(const ModelParams& params, const KinkConfiguration& config);
ZeroSubspace kernel_of(const Eigen::Matrix3d& block, double scale);

// ---------------------------------------------------------------------------
// Propagation

using Orbitals = Eigen::MatrixXcd;  ///< N x occupied, one column per single-particle state

struct KinkObservables {
  std::vector<double> bond_order;  ///< B_j = (-1)^j Re<f+_{j+1} f_j>, j = 0..N-2
  std::vector<double> site_order;  ///< u_i = (B_{i-1} + B_i)/2, i = 1..N-2 (index i-1)
  double kink_position = 0.0;      ///< interpolated sign change of u, in site units
  int sign_changes = 0;
  double energy = 0.0;             ///< sum over occupied orbitals of <psi|H|psi> for the given chain
};

/// `anchor` picks the sign change nearest to n + 1/2 when several exist.
KinkObservables kink_observables(const Orbitals& orbitals, const HoppingChain& chain, int anchor);

/// Lowest N/2 eigenvectors of a symmetric matrix.
Orbitals ground_orbitals(const Eigen::MatrixXd& hamiltonian, int occupied);

struct PropagationOptions {
  double dt = 0.01;
  int steps = 1000;
  int n_sites = 200;
  double hysteresis = 0.25;
  bool freeze_z = false;
  /// Electrons start in the ground state of H'_n + wall_tilt * (H'_{n+1} - H'_n).
  double wall_tilt = 0.0;
  KinkForm form = KinkForm::averaged;
  double gradient_step = 1e-6;
  int record_every = 1;
};

struct PropagationSample {
  double t = 0.0;
  CoherentAmplitude z;
  double kink_position = 0.0;
  double energy = 0.0;
  double lowest_eigenvalue = 0.0;
  int anchor = 0;
};

struct PropagationResult {
  std::vector<PropagationSample> samples;
  std::string termination = "completed";  ///< completed | domain_exit | eigensolver_failure | lost_kink
  double max_orthonormality_error = 0.0;  ///< max |Psi^H Psi - I| over the run
  int reanchors = 0;
};

/// Operator-splitting loop: canonical-flow step of z for E(z, n); exact evolution of
/// the occupied orbitals under H'_n via its eigendecomposition; observables; re-anchor
/// n -> n +/- 1 when the wall passes site n + 1 + hysteresis or n - hysteresis.
PropagationResult propagate_kink(const ModelParams& params, CoherentAmplitude z0, int n0,
                                 const PropagationOptions& options);

/// As above, starting from the given orbitals (N x N/2) instead of the tilted ground state.
PropagationResult propagate_kink(const ModelParams& params, CoherentAmplitude z0, int n0,
                                 const PropagationOptions& options, Orbitals initial);

}  // namespace peierls
