#pragma once

// Genus-1 analytic layer: the Jacobi-style product J_tau(z), the invariant
// mu = J_tau(1+tau), the inverse direction tau = I2/I1 via period integrals,
// and the modular moves relating the six mu values of one curve.

#include <functional>

#include "rectsurf/hyperbolic.hpp"

namespace rectsurf {

struct LatticeTau {
  Complex tau;
  explicit LatticeTau(Complex t) : tau(t) {
    if (t.imag() <= 0.0) throw DomainError("Im(tau) must be positive");
  }
};

/// Cross-ratio invariant of y^2 = x (x-1) (x-mu).
struct MuInvariant {
  Complex mu;
  explicit MuInvariant(Complex m) : mu(m) {
    if (std::abs(m) < 1e-14 || std::abs(m - 1.0) < 1e-14)
      throw DomainError("mu must avoid 0 and 1");
  }
};

/// Infinite-product evaluation; J(0) = 0, J(1) = 1, pole at z = tau.
/// max_factors caps the truncation for convergence self-tests.
Complex jacobi_value(const LatticeTau& tau, Complex z,
                     int max_factors = 1 << 20);

MuInvariant mu_from_tau(const LatticeTau& tau, int max_factors = 1 << 20);

/// Period-integral inverse for real mu > 1; the returned tau is pure
/// imaginary. Throws BranchUnsupported off that domain.
LatticeTau tau_from_mu(const MuInvariant& mu);

/// mu for tau = i*t, any t > 0; small t is routed through tau -> -1/tau.
Complex mu_imaginary_axis(double t);

enum class MuMove { S, Tm, U };  // tau -> -1/tau, tau - 1, tau/(1+tau)

MuInvariant modular_mu(const MuInvariant& mu, MuMove op);

/// Adaptive Gauss-Kronrod quadrature of a smooth real integrand.
double integrate(const std::function<double(double)>& f, double a, double b,
                 double tol = 1e-11);

}  // namespace rectsurf
