#include "peierls/kink.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "peierls/dynamics.hpp"
#include "peierls/errors.hpp"

namespace peierls {

namespace {

double parity(int j) { return (j % 2 == 0) ? 1.0 : -1.0; }

// Sign changes closer than this to either end are boundary dimerization, not a wall.
constexpr int kEdgeMargin = 3;

}  // namespace

void KinkConfiguration::check() const {
  if (n_sites < 3) throw DomainError("kink chain needs at least 3 sites");
  if (n < 0 || n > n_sites - 2)
    throw DomainError("kink site n=" + std::to_string(n) + " outside [0, " + std::to_string(n_sites - 2) + "]");
  if (!std::isfinite(z.re) || !std::isfinite(z.im)) throw DomainError("kink amplitude is not finite");
}

std::vector<CoherentAmplitude> KinkConfiguration::amplitudes() const {
  check();
  std::vector<CoherentAmplitude> out(static_cast<std::size_t>(n_sites));
  for (int j = 0; j < n_sites; ++j) {
    const double sign = (j <= n) ? parity(j) : -parity(j);
    out[static_cast<std::size_t>(j)] = {sign * z.re, sign * z.im};
  }
  return out;
}

std::string_view to_string(KinkForm form) { return form == KinkForm::averaged ? "averaged" : "printed"; }

KinkForm parse_kink_form(std::string_view text) {
  if (text == "averaged") return KinkForm::averaged;
  if (text == "printed") return KinkForm::printed;
  throw ConfigError("kink_form must be 'averaged' or 'printed', got '" + std::string(text) + "'");
}

HoppingChain kink_bonds_at(double coupling, double location, int n, int n_sites, KinkForm form) {
  KinkConfiguration{n, {}, n_sites}.check();
  HoppingChain chain;
  chain.boundary = Boundary::open;
  chain.bonds.assign(static_cast<std::size_t>(n_sites - 1), 0.0);
  const double c = coupling * std::cosh(location);
  const double s = coupling * std::sinh(location);
  if (form == KinkForm::averaged) {
    const double lo = coupling * std::exp(-location);
    const double hi = coupling * std::exp(location);
    for (int j = 0; j < n_sites - 1; ++j) {
      double a = coupling;
      if (j < n) a = (j % 2 == 0) ? lo : hi;
      if (j > n) a = (j % 2 == 0) ? hi : lo;
      chain.bonds[static_cast<std::size_t>(j)] = a;
    }
    return chain;
  }
  // Coefficients h_j of (f+_{j+1} f_j + h.c.); the matrix carries -A_j, so A_j = -h_j.
  auto omega = [&](int l) { return coupling - (c + parity(l) * s); };
  for (int j = 0; j < n_sites - 1; ++j) {
    double h = 0.0;
    if (j >= 1) h += omega(j);
    if (j == n) h += omega(n);
    if (j >= n + 1) h -= 2.0 * s * parity(j);
    chain.bonds[static_cast<std::size_t>(j)] = -h;
  }
  return chain;
}

HoppingChain kink_bonds(const ModelParams& params, const KinkConfiguration& config, KinkForm form) {
  config.check();
  return kink_bonds_at(effective_coupling(params), state_location(params, config.z), config.n, config.n_sites,
                       form);
}

KinkSpectrum kink_spectrum(const ModelParams& params, const KinkConfiguration& config, KinkForm form) {
  const HoppingChain chain = kink_bonds(params, config, form);
  for (double a : chain.bonds)
    if (!std::isfinite(a)) throw DomainError("kink bonds are not finite");
  const EigenSystem sys = open_chain_eigen_system(chain, false);
  KinkSpectrum out;
  out.eigenvalues.assign(sys.values.data(), sys.values.data() + sys.values.size());
  out.lowest = out.eigenvalues.front();
  out.gap_half_width = 2.0 * effective_coupling(params) * std::abs(std::sinh(state_location(params, config.z)));
  const double edge = out.gap_half_width * (1.0 - 1e-6);
  out.in_gap.reserve(out.eigenvalues.size());
  for (double e : out.eigenvalues) out.in_gap.push_back(std::abs(e) < edge);
  return out;
}

DifferenceOperator difference_operator(const ModelParams& params, const KinkConfiguration& config) {
  config.check();
  const int n = config.n;
  const int sites = config.n_sites;
  if (n > sites - 3) throw DomainError("difference operator needs n <= N - 3");
  const double g = effective_coupling(params);
  const double loc = state_location(params, config.z);

  DifferenceOperator out;
  out.omega = g - (g * std::cosh(loc) + parity(n) * g * std::sinh(loc));
  out.printed = Eigen::MatrixXd::Zero(sites, sites);
  out.printed(n + 2, n + 1) = out.printed(n + 1, n + 2) = out.omega;
  out.printed(n + 1, n) = out.printed(n, n + 1) = -out.omega;

  const Eigen::MatrixXd next = single_particle_matrix(kink_bonds_at(g, loc, n + 1, sites));
  const Eigen::MatrixXd here = single_particle_matrix(kink_bonds_at(g, loc, n, sites));
  out.literal = next - here;

  out.printed_block = out.printed.block<3, 3>(n, n);
  out.literal_block = out.literal.block<3, 3>(n, n);
  for (int j = 0; j < sites - 1; ++j)
    if (out.literal(j, j + 1) != 0.0) out.literal_support.push_back(j);
  out.literal_norm = out.literal.norm();
  return out;
}

ZeroSubspace kernel_of(const Eigen::Matrix3d& block, double scale) {
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> solver(block);
  if (solver.info() != Eigen::Success) throw NumericalError("3x3 eigensolver did not converge");
  const double tol = 1e-12 * std::max(1.0, std::abs(scale));
  ZeroSubspace out;
  std::vector<int> cols;
  for (int i = 0; i < 3; ++i)
    if (std::abs(solver.eigenvalues()(i)) < tol) cols.push_back(i);
  out.dimension = static_cast<int>(cols.size());
  out.basis.resize(3, out.dimension);
  for (int k = 0; k < out.dimension; ++k) {
    Eigen::Vector3d v = solver.eigenvectors().col(cols[static_cast<std::size_t>(k)]);
    // Fix the overall sign so the first non-negligible component is positive.
    for (int i = 0; i < 3; ++i) {
      if (std::abs(v(i)) > 1e-8) {
        if (v(i) < 0) v = -v;
        break;
      }
    }
    out.basis.col(k) = v;
  }
  return out;
}

ZeroSubspace zero_subspace(const ModelParams& params, const KinkConfiguration& config) {
  const DifferenceOperator d = difference_operator(params, config);
  return kernel_of(d.printed_block, d.omega);
}

// ---------------------------------------------------------------------------

Orbitals ground_orbitals(const Eigen::MatrixXd& hamiltonian, int occupied) {
  const EigenSystem sys = eigen_system(hamiltonian);
  return sys.vectors.leftCols(occupied).cast<std::complex<double>>();
}

KinkObservables kink_observables(const Orbitals& orbitals, const HoppingChain& chain, int anchor) {
  const auto sites = orbitals.rows();
  if (chain.boundary != Boundary::open || static_cast<Eigen::Index>(chain.sites()) != sites)
    throw DomainError("kink_observables: orbitals do not match the open chain");
  KinkObservables out;
  out.bond_order.resize(static_cast<std::size_t>(sites - 1));
  // Re <f+_{j+1} f_j> summed over orbitals; <H> = -2 sum_j A_j Re <f+_{j+1} f_j>.
  const Eigen::MatrixXd re = orbitals.real();
  const Eigen::MatrixXd im = orbitals.imag();
  out.energy = 0.0;
  for (Eigen::Index j = 0; j + 1 < sites; ++j) {
    const double coherence = re.row(j + 1).dot(re.row(j)) + im.row(j + 1).dot(im.row(j));
    out.bond_order[static_cast<std::size_t>(j)] = parity(static_cast<int>(j)) * coherence;
    out.energy -= 2.0 * chain.bonds[static_cast<std::size_t>(j)] * coherence;
  }
  // u_i = (B_{i-1} + B_i)/2 for sites i = 1..N-2; stored at index i - 1.
  out.site_order.resize(static_cast<std::size_t>(std::max<Eigen::Index>(sites - 2, 0)));
  for (std::size_t i = 0; i < out.site_order.size(); ++i)
    out.site_order[i] = 0.5 * (out.bond_order[i] + out.bond_order[i + 1]);

  const double target = anchor + 0.5;
  double best = std::numeric_limits<double>::quiet_NaN();
  const int last = static_cast<int>(out.site_order.size()) - 1;
  for (int k = kEdgeMargin; k < last - kEdgeMargin; ++k) {
    const double a = out.site_order[static_cast<std::size_t>(k)];
    const double b = out.site_order[static_cast<std::size_t>(k + 1)];
    double x;
    if (a == 0.0) {
      x = k + 1;
    } else if (a * b < 0.0) {
      x = (k + 1) + a / (a - b);
    } else {
      continue;
    }
    ++out.sign_changes;
    // Strict comparison keeps the lower-index candidate on ties.
    if (std::isnan(best) || std::abs(x - target) < std::abs(best - target)) best = x;
  }
  out.kink_position = best;
  return out;
}

namespace {

struct Propagator {
  const ModelParams& params;
  const PropagationOptions& opt;
  double g;

  HoppingChain chain(CoherentAmplitude z, int n) const {
    HoppingChain c = kink_bonds_at(g, state_location(params, z), n, opt.n_sites, opt.form);
    for (double a : c.bonds)
      if (!std::isfinite(a)) throw DomainError("kink bonds left the finite domain");
    return c;
  }

  double lowest(CoherentAmplitude z, int n) const { return open_chain_lowest_eigenvalue(chain(z, n)); }
};

}  // namespace

PropagationResult propagate_kink(const ModelParams& params, CoherentAmplitude z0, int n0,
                                 const PropagationOptions& options) {
  validate(params);
  KinkConfiguration{n0, z0, options.n_sites}.check();
  const double g = effective_coupling(params);
  const double loc = state_location(params, z0);
  Eigen::MatrixXd h = single_particle_matrix(kink_bonds_at(g, loc, n0, options.n_sites, options.form));
  if (options.wall_tilt != 0.0) {
    if (n0 > options.n_sites - 3) throw DomainError("wall_tilt needs n0 <= N - 3");
    const Eigen::MatrixXd next = single_particle_matrix(kink_bonds_at(g, loc, n0 + 1, options.n_sites, options.form));
    h += options.wall_tilt * (next - h);
  }
  return propagate_kink(params, z0, n0, options, ground_orbitals(h, options.n_sites / 2));
}

PropagationResult propagate_kink(const ModelParams& params, CoherentAmplitude z0, int n0,
                                 const PropagationOptions& options, Orbitals psi) {
  validate(params);
  KinkConfiguration{n0, z0, options.n_sites}.check();
  if (!(options.dt > 0.0) || !std::isfinite(options.dt)) throw DomainError("dt must be finite and > 0");
  if (options.steps < 0) throw DomainError("steps must be >= 0");
  if (psi.rows() != options.n_sites) throw DomainError("initial orbitals have the wrong number of sites");
  const int record_every = std::max(1, options.record_every);

  const Propagator prop{params, options, effective_coupling(params)};
  PropagationResult result;
  CoherentAmplitude z = z0;
  int n = n0;
  const Eigen::Index occ = psi.cols();
  const Eigen::MatrixXcd identity = Eigen::MatrixXcd::Identity(occ, occ);

  auto record = [&](double t, const KinkObservables& obs) {
    result.samples.push_back({t, z, obs.kink_position, obs.energy, prop.lowest(z, n), n});
  };

  HoppingChain chain = prop.chain(z, n);
  KinkObservables obs = kink_observables(psi, chain, n);
  record(0.0, obs);

  for (int step = 1; step <= options.steps; ++step) {
    const double t = step * options.dt;
    try {
      if (!options.freeze_z) {
        const int anchor = n;
        const EnergyFunctional energy = [&](CoherentAmplitude c) { return prop.lowest(c, anchor); };
        const std::complex<double> rate = canonical_flow(energy, z, options.gradient_step);
        z = {z.re + options.dt * rate.real(), z.im + options.dt * rate.imag()};
        if (!std::isfinite(z.re) || !std::isfinite(z.im)) {
          result.termination = "domain_exit";
          break;
        }
      }
      chain = prop.chain(z, n);
      const EigenSystem sys = open_chain_eigen_system(chain, true);
      // V is real: rotate real and imaginary parts separately, apply exp(-i lambda dt) in the eigenbasis.
      const Eigen::ArrayXd c = (sys.values * options.dt).array().cos();
      const Eigen::ArrayXd s = (sys.values * options.dt).array().sin();
      const Eigen::MatrixXd a = sys.vectors.transpose() * psi.real();
      const Eigen::MatrixXd b = sys.vectors.transpose() * psi.imag();
      const Eigen::MatrixXd a2 = (a.array().colwise() * c + b.array().colwise() * s).matrix();
      const Eigen::MatrixXd b2 = (b.array().colwise() * c - a.array().colwise() * s).matrix();
      psi.real() = sys.vectors * a2;
      psi.imag() = sys.vectors * b2;
    } catch (const DomainError&) {
      result.termination = "domain_exit";
      break;
    } catch (const NumericalError&) {
      result.termination = "eigensolver_failure";
      break;
    }

    result.max_orthonormality_error =
        std::max(result.max_orthonormality_error, (psi.adjoint() * psi - identity).cwiseAbs().maxCoeff());
    obs = kink_observables(psi, chain, n);
    if (std::isnan(obs.kink_position)) {
      result.termination = "lost_kink";
      break;
    }
    // Re-anchor; the energy reported for this step is taken under the new anchor.
    bool moved = false;
    while (obs.kink_position >= n + 1 + options.hysteresis && n + 1 <= options.n_sites - 2) {
      ++n;
      moved = true;
    }
    while (obs.kink_position <= n - options.hysteresis && n - 1 >= 0) {
      --n;
      moved = true;
    }
    if (moved) {
      ++result.reanchors;
      chain = prop.chain(z, n);
      obs = kink_observables(psi, chain, n);
    }
    if (step % record_every == 0 || step == options.steps) record(t, obs);
  }
  return result;
}

}  // namespace peierls
