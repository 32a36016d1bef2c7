#include <cmath>

#include "peierls/energy_landscape.hpp"
#include "peierls/errors.hpp"
#include "peierls/parallel.hpp"

namespace peierls {
namespace {

constexpr double kMarginal = 1e-8;

Eigen::Vector2d as_vector(const Gradient& g) { return {g.d_re, g.d_im}; }

// Jacobian of the analytic gradient by central differences.
Eigen::Matrix2d gradient_jacobian(const ModelParams& params, CoherentAmplitude z, PhononNorm norm) {
  Eigen::Matrix2d jac;
  const double h_re = 1e-6 * (1.0 + std::abs(z.re));
  const double h_im = 1e-6 * (1.0 + std::abs(z.im));
  jac.col(0) = (as_vector(total_gradient(params, {z.re + h_re, z.im}, norm)) -
                as_vector(total_gradient(params, {z.re - h_re, z.im}, norm))) / (2.0 * h_re);
  jac.col(1) = (as_vector(total_gradient(params, {z.re, z.im + h_im}, norm)) -
                as_vector(total_gradient(params, {z.re, z.im - h_im}, norm))) / (2.0 * h_im);
  return 0.5 * (jac + jac.transpose());
}

SeedOutcome newton_from(const ModelParams& params, CoherentAmplitude seed, const CriticalSearchOptions& opt) {
  SeedOutcome out;
  out.seed = seed;
  Eigen::Vector2d x(seed.re, seed.im);
  auto grad_at = [&](const Eigen::Vector2d& p) {
    return as_vector(total_gradient(params, {p(0), p(1)}, opt.norm));
  };
  try {
    Eigen::Vector2d g = grad_at(x);
    double merit = g.squaredNorm();
    for (int it = 0; it <= opt.max_iter; ++it) {
      out.iterations = it;
      out.final_point = {x(0), x(1)};
      out.gradient_norm = std::sqrt(merit);
      if (opt.window && !opt.window->contains(out.final_point)) {
        out.status = SeedStatus::left_window;
        return out;
      }
      if (out.gradient_norm < opt.tol) {
        out.status = SeedStatus::converged;
        return out;
      }
      if (it == opt.max_iter) break;

      const Eigen::Matrix2d jac = gradient_jacobian(params, {x(0), x(1)}, opt.norm);
      Eigen::Vector2d dir;
      const double det = jac.determinant();
      if (std::abs(det) > 1e-14 * (1.0 + jac.squaredNorm())) {
        dir = -jac.inverse() * g;
      } else {
        dir = -jac.transpose() * g;  // descent on |grad|^2
      }

      bool accepted = false;
      double alpha = 1.0;
      for (int half = 0; half < 40; ++half, alpha *= 0.5) {
        const Eigen::Vector2d trial = x + alpha * dir;
        try {
          const Eigen::Vector2d g_trial = grad_at(trial);
          const double m_trial = g_trial.squaredNorm();
          if (std::isfinite(m_trial) && m_trial < (1.0 - 1e-4 * alpha) * merit) {
            x = trial;
            g = g_trial;
            merit = m_trial;
            accepted = true;
            break;
          }
        } catch (const DomainError&) {
        }
      }
      if (!accepted) {
        out.status = SeedStatus::stalled;
        return out;
      }
    }
  } catch (const DomainError&) {
    out.status = SeedStatus::domain_error;
    return out;
  }
  out.status = SeedStatus::max_iterations;
  return out;
}

}  // namespace

std::string_view to_string(CriticalKind kind) {
  switch (kind) {
    case CriticalKind::minimum: return "minimum";
    case CriticalKind::saddle: return "saddle";
    case CriticalKind::maximum: return "maximum";
    case CriticalKind::marginal: return "marginal";
  }
  return "unknown";
}

std::string_view to_string(SeedStatus status) {
  switch (status) {
    case SeedStatus::converged: return "converged";
    case SeedStatus::max_iterations: return "max_iterations";
    case SeedStatus::stalled: return "stalled";
    case SeedStatus::left_window: return "left_window";
    case SeedStatus::domain_error: return "domain_error";
  }
  return "unknown";
}

std::vector<CoherentAmplitude> grid_seeds(const SearchWindow& window, int per_axis) {
  const GridAxis re{window.re_min, window.re_max, per_axis};
  const GridAxis im{window.im_min, window.im_max, per_axis};
  std::vector<CoherentAmplitude> seeds;
  for (int j = 0; j < per_axis; ++j)
    for (int i = 0; i < per_axis; ++i) seeds.push_back({re.value(i), im.value(j)});
  return seeds;
}

Eigen::Matrix2d hessian(const ModelParams& params, CoherentAmplitude z, PhononNorm norm) {
  const double hx = 1e-4 * (1.0 + std::abs(z.re));
  const double hy = 1e-4 * (1.0 + std::abs(z.im));
  auto f = [&](double dx, double dy) { return total_density(params, {z.re + dx, z.im + dy}, norm).total; };
  const double f0 = f(0.0, 0.0);
  Eigen::Matrix2d h;
  h(0, 0) = (f(hx, 0.0) - 2.0 * f0 + f(-hx, 0.0)) / (hx * hx);
  h(1, 1) = (f(0.0, hy) - 2.0 * f0 + f(0.0, -hy)) / (hy * hy);
  h(0, 1) = h(1, 0) = (f(hx, hy) - f(hx, -hy) - f(-hx, hy) + f(-hx, -hy)) / (4.0 * hx * hy);
  return h;
}

CriticalKind classify(const std::array<double, 2>& eigs) {
  if (std::abs(eigs[0]) < kMarginal || std::abs(eigs[1]) < kMarginal) return CriticalKind::marginal;
  if (eigs[0] > 0.0 && eigs[1] > 0.0) return CriticalKind::minimum;
  if (eigs[0] < 0.0 && eigs[1] < 0.0) return CriticalKind::maximum;
  return CriticalKind::saddle;
}

CriticalPointReport find_critical_points(const ModelParams& params, const CriticalSearchOptions& options) {
  validate(params);
  CriticalPointReport report;
  report.seeds.resize(options.seeds.size());
  parallel_for(options.seeds.size(), options.workers,
               [&](std::size_t i) { report.seeds[i] = newton_from(params, options.seeds[i], options); });

  for (const SeedOutcome& s : report.seeds) {
    if (s.status != SeedStatus::converged) continue;
    bool duplicate = false;
    for (const CriticalPoint& p : report.points) {
      if (std::hypot(p.location.re - s.final_point.re, p.location.im - s.final_point.im) < options.dedupe) {
        duplicate = true;
        break;
      }
    }
    if (duplicate) continue;
    CriticalPoint cp;
    cp.location = s.final_point;
    cp.gradient_norm = s.gradient_norm;
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> eig(hessian(params, cp.location, options.norm));
    cp.hessian_eigs = {eig.eigenvalues()(0), eig.eigenvalues()(1)};
    cp.kind = classify(cp.hessian_eigs);
    cp.energy = total_density(params, cp.location, options.norm).total;
    report.points.push_back(cp);
  }
  return report;
}

}  // namespace peierls
