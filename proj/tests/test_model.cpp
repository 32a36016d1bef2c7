#include <doctest.h>

#include <cmath>
#include <numbers>

#include "peierls/errors.hpp"
#include "peierls/model.hpp"
#include "support/jacobi.hpp"

using namespace peierls;

TEST_CASE("state location") {
  ModelParams p;
  p.zeta = 1.0;
  CHECK(std::abs(state_location(p, {0.5, 0.3}) - std::numbers::sqrt2) < 1e-15);
  p.kappa = 0.7;
  CHECK(state_location(p, {0.0, 0.0}) == 0.0);
  ModelParams free;
  CHECK(state_location(free, {0.4, -2.0}) == 0.0);
}

TEST_CASE("effective coupling") {
  ModelParams p;
  CHECK(effective_coupling(p) == 1.0);
  p.zeta = 0.3;
  p.kappa = 0.4;
  CHECK(std::abs(effective_coupling(p) - std::exp(0.25)) < 1e-15);
  ModelParams q;
  q.t = 2.0;
  q.zeta = 1.0;
  CHECK(std::abs(effective_coupling(q) - 5.43656365691809) < 1e-13);
}

TEST_CASE("parameter validation names the field") {
  ModelParams p;
  p.t = -1.0;
  CHECK_THROWS_WITH_AS(validate(p), doctest::Contains("t"), ConfigError);
  p = {};
  p.q = 0.0;
  CHECK_THROWS_WITH_AS(validate(p), doctest::Contains("q"), ConfigError);
  p = {};
  p.big_l = 0;
  CHECK_THROWS_WITH_AS(validate(p), doctest::Contains("big_l"), ConfigError);
}

TEST_CASE("staggered bonds") {
  ModelParams p;
  p.zeta = 0.5;
  p.kappa = 0.2;
  p.big_l = 4;
  const HoppingChain flat = staggered_bonds(p, {0.0, 0.0});
  CHECK(flat.bonds.size() == 8);
  for (double a : flat.bonds) CHECK(a == effective_coupling(p));

  const HoppingChain c = staggered_bonds_at(1.0, std::log(2.0), 3);
  for (std::size_t j = 0; j < c.bonds.size(); ++j) CHECK(std::abs(c.bonds[j] - (j % 2 == 0 ? 0.5 : 2.0)) < 1e-15);

  // z -> -z swaps even and odd bonds: a one-site shift on the ring
  const HoppingChain plus = staggered_bonds(p, {0.3, 0.1});
  const HoppingChain minus = staggered_bonds(p, {-0.3, -0.1});
  for (std::size_t j = 0; j < plus.bonds.size(); ++j)
    CHECK(plus.bonds[j] == minus.bonds[(j + 1) % plus.bonds.size()]);
}

TEST_CASE("linearized bonds for small dimerization") {
  ModelParams p;
  p.zeta = 1.0;
  const double g = effective_coupling(p);
  for (double re : {1e-3, 3e-3, 1e-2}) {
    const double s = state_location(p, {re, 0.0});
    const HoppingChain c = staggered_bonds(p, {re, 0.0});
    CHECK(std::abs(c.bonds[0] - g * (1 - s)) <= g * s * s);
    CHECK(std::abs(c.bonds[1] - g * (1 + s)) <= g * s * s);
  }
}

TEST_CASE("single-particle matrix") {
  HoppingChain two{{0.7}, Boundary::open};
  const Eigen::MatrixXd h = single_particle_matrix(two);
  CHECK(h(0, 1) == -0.7);
  CHECK(h(1, 0) == -0.7);
  const auto ev = spectrum(h);
  CHECK(std::abs(ev[0] + 0.7) < 1e-15);
  CHECK(std::abs(ev[1] - 0.7) < 1e-15);

  HoppingChain ring{{1, 1, 1, 1}, Boundary::periodic};
  const auto r = spectrum(single_particle_matrix(ring));
  const double expect[] = {-2, 0, 0, 2};
  for (int i = 0; i < 4; ++i) CHECK(std::abs(r[static_cast<std::size_t>(i)] - expect[i]) < 1e-12);

  CHECK_THROWS_AS(single_particle_matrix(HoppingChain{{}, Boundary::open}), DomainError);
}

TEST_CASE("spectrum basics") {
  Eigen::MatrixXd d = Eigen::Vector3d(3, 1, 2).asDiagonal();
  const auto ev = spectrum(d);
  CHECK(ev == std::vector<double>{1, 2, 3});
  Eigen::MatrixXd pair(2, 2);
  pair << 0, -1, -1, 0;
  const auto p = spectrum(pair);
  CHECK(std::abs(p[0] + 1) < 1e-15);
  CHECK(std::abs(p[1] - 1) < 1e-15);
  CHECK_THROWS_AS(spectrum(Eigen::MatrixXd(2, 3)), DomainError);
  Eigen::MatrixXd bad = Eigen::MatrixXd::Zero(2, 2);
  bad(0, 0) = NAN;
  CHECK_THROWS_AS(spectrum(bad), DomainError);
}

TEST_CASE("staggered ring band formula, checked with Jacobi rotations") {
  for (int big_l : {4, 16}) {
    const double g = 1.0, s = 0.4;
    const Eigen::MatrixXd h = single_particle_matrix(staggered_bonds_at(g, s, big_l));
    const auto eigen = spectrum(h);
    const auto jac = testing_support::jacobi_eigenvalues(h);
    std::vector<double> analytic;
    for (int m = 0; m < big_l; ++m) {
      const double c = std::cos(std::numbers::pi * m / big_l);
      const double root = 2 * g * std::sqrt(std::sinh(s) * std::sinh(s) + c * c);
      analytic.push_back(root);
      analytic.push_back(-root);
    }
    std::sort(analytic.begin(), analytic.end());
    for (std::size_t i = 0; i < analytic.size(); ++i) {
      CHECK(std::abs(eigen[i] - analytic[i]) < 1e-9);
      CHECK(std::abs(jac[i] - analytic[i]) < 1e-9);
    }
  }
}

TEST_CASE("chiral symmetry and band edge of staggered rings") {
  ModelParams p;
  p.zeta = 0.8;
  p.kappa = 0.3;
  p.t = 0.6;
  p.big_l = 24;
  for (CoherentAmplitude z : {CoherentAmplitude{0.1, 0.2}, CoherentAmplitude{-0.4, 0.05}, CoherentAmplitude{0, 0}}) {
    const auto ev = spectrum(single_particle_matrix(staggered_bonds(p, z)));
    const std::size_t n = ev.size();
    for (std::size_t i = 0; i < n; ++i) CHECK(std::abs(ev[i] + ev[n - 1 - i]) < 1e-10);
    const double edge = 2 * effective_coupling(p) * std::cosh(state_location(p, z));
    CHECK(std::abs(ev.back() - edge) < 1e-9);
  }
}

TEST_CASE("open chain solver matches dense solver") {
  HoppingChain c{{0.3, 1.2, 0.7, 0.9, 1.1, 0.2}, Boundary::open};
  const EigenSystem tri = open_chain_eigen_system(c);
  const auto dense = spectrum(single_particle_matrix(c));
  for (std::size_t i = 0; i < dense.size(); ++i) CHECK(std::abs(tri.values(static_cast<Eigen::Index>(i)) - dense[i]) < 1e-13);
  const Eigen::MatrixXd h = single_particle_matrix(c);
  CHECK((h * tri.vectors - tri.vectors * tri.values.asDiagonal()).cwiseAbs().maxCoeff() < 1e-12);
  CHECK(std::abs(open_chain_lowest_eigenvalue(c) - dense.front()) < 1e-14);
  CHECK_THROWS_AS(open_chain_eigen_system(HoppingChain{{1, 1}, Boundary::periodic}), DomainError);
}

TEST_CASE("open uniform chain closed form") {
  const int n = 50;
  const double g = 0.8;
  HoppingChain c{std::vector<double>(n - 1, g), Boundary::open};
  const EigenSystem sys = open_chain_eigen_system(c, false);
  for (int m = 1; m <= n; ++m)
    CHECK(std::abs(sys.values(m - 1) + 2 * g * std::cos(std::numbers::pi * m / (n + 1))) < 1e-12);
}
