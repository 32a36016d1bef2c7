#pragma once

#include <cstddef>
#include <vector>

#include <Eigen/Dense>

namespace peierls {

/// Physical constants of the chain. hbar, ion mass and phonon frequency are 1.
struct ModelParams {
  double t = 1.0;      ///< bare hopping scale, > 0
  double zeta = 0.0;   ///< displacement coupling
  double kappa = 0.0;  ///< momentum coupling
  double q = 1.0;      ///< deformation parameter, > 0
  double w = 0.0;      ///< deformation exponent
  int big_l = 64;      ///< the ring has 2L sites
};

/// Throws ConfigError naming the offending field.
void validate(const ModelParams& params);

/// Coherent-state amplitude z = re + i im of the staggered phonon state.
struct CoherentAmplitude {
  double re = 0.0;
  double im = 0.0;

  CoherentAmplitude operator-() const { return {-re, -im}; }
  friend bool operator==(const CoherentAmplitude&, const CoherentAmplitude&) = default;
};

/// g = t exp(zeta^2 + kappa^2).
double effective_coupling(const ModelParams& params);

/// 2 sqrt(2) (zeta Re z + kappa Im z). The time-reversal phase of the bare
/// hopping is absorbed so that every averaged bond amplitude is real.
double state_location(const ModelParams& params, CoherentAmplitude z);

enum class Boundary { periodic, open };

struct HoppingChain {
  std::vector<double> bonds;  ///< amplitude A_j couples sites j and j+1
  Boundary boundary = Boundary::periodic;

  std::size_t sites() const {
    return boundary == Boundary::periodic ? bonds.size() : bonds.size() + 1;
  }
};

/// Bonds g(cosh s - (-1)^j sinh s), j = 0..2L-1, on a ring (s = state location).
HoppingChain staggered_bonds(const ModelParams& params, CoherentAmplitude z);
HoppingChain staggered_bonds_at(double coupling, double location, int big_l);

/// First-quantized -sum_j A_j (|j+1><j| + h.c.).
Eigen::MatrixXd single_particle_matrix(const HoppingChain& chain);

/// Eigenvalues in non-decreasing order. Throws NumericalError if the solver fails.
std::vector<double> spectrum(const Eigen::MatrixXd& matrix);

struct EigenSystem {
  Eigen::VectorXd values;   ///< ascending
  Eigen::MatrixXd vectors;  ///< columns
};

/// Full eigendecomposition of a symmetric matrix.
EigenSystem eigen_system(const Eigen::MatrixXd& matrix);

/// Eigendecomposition of an open chain's matrix via the tridiagonal solver.
EigenSystem open_chain_eigen_system(const HoppingChain& chain, bool with_vectors = true);

/// Smallest eigenvalue of an open chain by Sturm-sequence bisection, to roundoff.
double open_chain_lowest_eigenvalue(const HoppingChain& chain);

}  // namespace peierls
