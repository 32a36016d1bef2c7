#include <doctest.h>

#include <cmath>
#include <numbers>

#include "peierls/errors.hpp"
#include "peierls/special_functions.hpp"
#include "peierls/validation.hpp"

using namespace peierls;
using namespace peierls::special;

TEST_CASE("elliptic_e reference values") {
  CHECK(elliptic_e(0.0) == doctest::Approx(std::numbers::pi / 2).epsilon(1e-15));
  CHECK(elliptic_e(1.0) == 1.0);
  // quadrature of the defining integral
  CHECK(std::abs(elliptic_e(0.5) - 1.3506438810476755) < 1e-14);
}

TEST_CASE("elliptic_k reference values") {
  CHECK(std::abs(elliptic_k(0.0) - std::numbers::pi / 2) < 1e-15);
  CHECK(std::abs(elliptic_k(0.5) - 1.8540746773013719) < 1e-14);
  CHECK(std::abs(elliptic_k(-1.0) - 1.3110287771460600) < 1e-14);
}

TEST_CASE("hypergeometric normalization") {
  CHECK(std::abs(hyp_e(0.0) - 1.0) < 1e-15);
  CHECK(std::abs(hyp_e(1.0) - 2.0 / std::numbers::pi) < 1e-15);
  CHECK(std::abs(hyp_f(0.5) - 1.1803405990160962) < 1e-14);
}

TEST_CASE("domain errors") {
  CHECK_THROWS_AS(elliptic_e(1.0001), DomainError);
  CHECK_THROWS_AS(elliptic_k(1.0), DomainError);
  CHECK_THROWS_AS(elliptic_e(std::nan("")), DomainError);
  CHECK_THROWS_AS(elliptic_k(INFINITY), DomainError);
  CHECK_THROWS_AS(elliptic_e_dm(1.0), DomainError);
}

TEST_CASE("agreement with quadrature across the parameter range") {
  for (double m = -1.0; m <= 0.99; m += 0.07) {
    CAPTURE(m);
    CHECK(std::abs(elliptic_e(m) - oracle::elliptic_e_quadrature(m)) < 1e-12);
    CHECK(std::abs(elliptic_k(m) - oracle::elliptic_k_quadrature(m)) < 1e-12);
  }
  for (double m : {-1.0, -0.5, -0.1}) CHECK(std::abs(elliptic_e(m) - oracle::elliptic_e_quadrature(m)) < 1e-10);
}

TEST_CASE("Legendre relation") {
  for (int i = 1; i <= 20; ++i) {
    const double m = i / 21.0;
    const double lhs = elliptic_e(m) * elliptic_k(1 - m) + elliptic_e(1 - m) * elliptic_k(m) - elliptic_k(m) * elliptic_k(1 - m);
    CHECK(std::abs(lhs - std::numbers::pi / 2) < 1e-10);
  }
}

TEST_CASE("dE/dm against central differences") {
  for (double m = 0.05; m <= 0.95; m += 0.05) {
    const double h = 1e-5;
    const double fd = (elliptic_e(m + h) - elliptic_e(m - h)) / (2 * h);
    CHECK(std::abs(elliptic_e_dm(m) - fd) < 1e-6);
  }
}

TEST_CASE("dE/dm series branch is continuous with the closed form") {
  for (double m : {-2e-4, -1.0001e-4, -9.999e-5, 0.0, 9.999e-5, 1.0001e-4, 2e-4}) {
    CAPTURE(m);
    const double h = 1e-3;
    const double fd = (elliptic_e(m + h) - elliptic_e(m - h)) / (2 * h);
    CHECK(std::abs(elliptic_e_dm(m) - fd) < 1e-6);
  }
  CHECK(std::abs(elliptic_e_dm(0.0) + std::numbers::pi / 8) < 1e-15);
}
