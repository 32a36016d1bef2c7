#pragma once

// Complete elliptic integrals in the parameter convention m = k^2:
//   E(m) = int_0^{pi/2} sqrt(1 - m sin^2 t) dt
//   K(m) = int_0^{pi/2} dt / sqrt(1 - m sin^2 t)
// and the Gauss hypergeometric normalizations 2F1(1/2,-1/2;1;m) = (2/pi) E(m),
// 2F1(1/2,1/2;1;m) = (2/pi) K(m).

namespace peierls::special {

/// Complete elliptic integral of the second kind. Requires m <= 1.
double elliptic_e(double m);

/// Complete elliptic integral of the first kind. Requires m < 1.
double elliptic_k(double m);

/// 2F1(1/2,-1/2;1;m).
double hyp_e(double m);

/// 2F1(1/2,1/2;1;m).
double hyp_f(double m);

/// dE/dm = (E(m) - K(m)) / (2m); series around m = 0 for |m| < 1e-4. Requires m < 1.
double elliptic_e_dm(double m);

}  // namespace peierls::special
