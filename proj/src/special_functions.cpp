#include "peierls/special_functions.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "peierls/errors.hpp"

namespace peierls::special {
namespace {

constexpr double kHalfPi = std::numbers::pi / 2.0;
constexpr double kSeriesCutoff = 1e-4;

struct AgmResult {
  double k;
  double e;
};

void require_finite(double m, const char* who) {
  if (!std::isfinite(m)) {
    throw DomainError(std::string(who) + ": non-finite parameter");
  }
}

// AGM for 0 <= m < 1. E = K (1 - sum_{n>=0} 2^{n-1} c_n^2), c_0^2 = m.
AgmResult agm(double m) {
  double a = 1.0;
  double b = std::sqrt(1.0 - m);
  double weight = 0.5;
  double sum = weight * m;
  for (int it = 0; it < 64; ++it) {
    const double c = 0.5 * (a - b);
    const double a_next = 0.5 * (a + b);
    b = std::sqrt(a * b);
    a = a_next;
    weight *= 2.0;
    sum += weight * c * c;
    // The next c is c^2 / 4a, so a and the sum are converged to roundoff.
    if (std::abs(c) <= 1e-10 * a) {
      const double k = kHalfPi / a;
      return {k, k * (1.0 - sum)};
    }
  }
  throw NumericalError("elliptic AGM did not converge for m = " + std::to_string(m));
}

// Imaginary-modulus transformation maps m < 0 onto m' = m/(m-1) in (0, 1).
AgmResult complete_pair(double m) {
  if (m == 0.0) return {kHalfPi, kHalfPi};
  if (m > 0.0) return agm(m);
  const double s = std::sqrt(1.0 - m);
  const AgmResult r = agm(m / (m - 1.0));
  return {r.k / s, r.e * s};
}

}  // namespace

double elliptic_e(double m) {
  require_finite(m, "elliptic_e");
  if (m > 1.0) throw DomainError("elliptic_e: parameter m = " + std::to_string(m) + " > 1");
  if (m == 1.0) return 1.0;
  return complete_pair(m).e;
}

double elliptic_k(double m) {
  require_finite(m, "elliptic_k");
  if (m >= 1.0) throw DomainError("elliptic_k: parameter m = " + std::to_string(m) + " >= 1");
  return complete_pair(m).k;
}

double hyp_e(double m) { return elliptic_e(m) / kHalfPi; }

double hyp_f(double m) { return elliptic_k(m) / kHalfPi; }

double elliptic_e_dm(double m) {
  require_finite(m, "elliptic_e_dm");
  if (m >= 1.0) throw DomainError("elliptic_e_dm: parameter m = " + std::to_string(m) + " >= 1");
  if (std::abs(m) < kSeriesCutoff) {
    // (E - K)/(2m) = (pi/2) sum_{n>=1} a_n^2 n/(1-2n) m^{n-1}, a_n = (2n-1)!!/(2n)!!
    double a = 1.0;
    double power = 1.0;
    double sum = 0.0;
    for (int n = 1; n <= 6; ++n) {
      a *= (2.0 * n - 1.0) / (2.0 * n);
      sum += a * a * n / (1.0 - 2.0 * n) * power;
      power *= m;
    }
    return kHalfPi * sum;
  }
  const AgmResult r = complete_pair(m);
  return (r.e - r.k) / (2.0 * m);
}

}  // namespace peierls::special
