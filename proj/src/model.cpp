#include "peierls/model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "peierls/errors.hpp"

namespace peierls {

void validate(const ModelParams& params) {
  if (!(params.t > 0.0) || !std::isfinite(params.t)) throw ConfigError("t must be finite and > 0");
  if (!std::isfinite(params.zeta)) throw ConfigError("zeta must be finite");
  if (!std::isfinite(params.kappa)) throw ConfigError("kappa must be finite");
  if (!(params.q > 0.0) || !std::isfinite(params.q)) throw ConfigError("q must be finite and > 0");
  if (!std::isfinite(params.w)) throw ConfigError("w must be finite");
  if (params.big_l < 1) throw ConfigError("big_l must be >= 1");
}

double effective_coupling(const ModelParams& params) {
  return params.t * std::exp(params.zeta * params.zeta + params.kappa * params.kappa);
}

double state_location(const ModelParams& params, CoherentAmplitude z) {
  return 2.0 * std::numbers::sqrt2 * (params.zeta * z.re + params.kappa * z.im);
}

HoppingChain staggered_bonds_at(double coupling, double location, int big_l) {
  // cosh s -/+ sinh s = exp(-/+ s); the exponential form avoids cancellation.
  const double even = coupling * std::exp(-location);
  const double odd = coupling * std::exp(location);
  HoppingChain chain;
  chain.boundary = Boundary::periodic;
  chain.bonds.resize(2 * static_cast<std::size_t>(big_l));
  for (std::size_t j = 0; j < chain.bonds.size(); ++j) chain.bonds[j] = (j % 2 == 0) ? even : odd;
  return chain;
}

HoppingChain staggered_bonds(const ModelParams& params, CoherentAmplitude z) {
  return staggered_bonds_at(effective_coupling(params), state_location(params, z), params.big_l);
}

Eigen::MatrixXd single_particle_matrix(const HoppingChain& chain) {
  const std::size_t n = chain.sites();
  if (n < 2) throw DomainError("single_particle_matrix: need at least 2 sites");
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (std::size_t j = 0; j < chain.bonds.size(); ++j) {
    const auto a = static_cast<Eigen::Index>(j);
    const auto b = static_cast<Eigen::Index>((j + 1) % n);
    h(a, b) -= chain.bonds[j];
    h(b, a) -= chain.bonds[j];
  }
  return h;
}

EigenSystem eigen_system(const Eigen::MatrixXd& matrix) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(matrix, Eigen::ComputeEigenvectors);
  if (solver.info() != Eigen::Success) throw NumericalError("symmetric eigensolver did not converge");
  return {solver.eigenvalues(), solver.eigenvectors()};
}

std::vector<double> spectrum(const Eigen::MatrixXd& matrix) {
  if (matrix.rows() != matrix.cols()) throw DomainError("spectrum: matrix is not square");
  if (!matrix.allFinite()) throw DomainError("spectrum: matrix has non-finite entries");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(matrix, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw NumericalError("symmetric eigensolver did not converge");
  const Eigen::VectorXd& v = solver.eigenvalues();
  return {v.data(), v.data() + v.size()};
}

EigenSystem open_chain_eigen_system(const HoppingChain& chain, bool with_vectors) {
  if (chain.boundary != Boundary::open) throw DomainError("open_chain_eigen_system: chain is periodic");
  const auto n = static_cast<Eigen::Index>(chain.sites());
  if (n < 2) throw DomainError("open_chain_eigen_system: need at least 2 sites");
  Eigen::VectorXd diag = Eigen::VectorXd::Zero(n);
  Eigen::VectorXd sub(n - 1);
  for (Eigen::Index j = 0; j < n - 1; ++j) sub(j) = -chain.bonds[static_cast<std::size_t>(j)];
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
  solver.computeFromTridiagonal(diag, sub, with_vectors ? Eigen::ComputeEigenvectors : Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw NumericalError("tridiagonal eigensolver did not converge");
  EigenSystem out;
  out.values = solver.eigenvalues();
  if (with_vectors) out.vectors = solver.eigenvectors();
  return out;
}

double open_chain_lowest_eigenvalue(const HoppingChain& chain) {
  if (chain.boundary != Boundary::open) throw DomainError("open_chain_lowest_eigenvalue: chain is periodic");
  if (chain.bonds.empty()) throw DomainError("open_chain_lowest_eigenvalue: need at least 2 sites");
  // Zero diagonal, off-diagonal -A_j. Gershgorin bounds the spectrum by max row sum.
  double radius = 0.0;
  double pivmin = std::numeric_limits<double>::min();
  for (std::size_t j = 0; j < chain.bonds.size(); ++j) {
    const double left = j > 0 ? std::abs(chain.bonds[j - 1]) : 0.0;
    radius = std::max(radius, left + std::abs(chain.bonds[j]));
    pivmin = std::max(pivmin, chain.bonds[j] * chain.bonds[j] * std::numeric_limits<double>::min());
  }
  radius = std::max(radius, std::abs(chain.bonds.back()));
  if (!std::isfinite(radius)) throw DomainError("open_chain_lowest_eigenvalue: non-finite bonds");
  // Number of eigenvalues below x, from the LDL^T pivots of T - x.
  auto count_below = [&](double x) {
    int count = 0;
    double d = -x;
    if (std::abs(d) < pivmin) d = -pivmin;
    if (d < 0.0) ++count;
    for (double a : chain.bonds) {
      d = -x - a * a / d;
      if (std::abs(d) < pivmin) d = -pivmin;
      if (d < 0.0) ++count;
    }
    return count;
  };
  double lo = -radius * (1.0 + 1e-12) - pivmin;
  double hi = radius * (1.0 + 1e-12) + pivmin;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (hi - lo <= 2.0 * std::numeric_limits<double>::epsilon() * std::max(std::abs(lo), std::abs(hi))) break;
    if (count_below(mid) >= 1) hi = mid;
    else lo = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace peierls
