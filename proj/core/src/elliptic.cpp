#include "rectsurf/elliptic.hpp"

#include <cmath>
#include <functional>

namespace rectsurf {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr Complex kI{0.0, 1.0};

Complex jacobi_K(Complex zeta, int max_factors) {
  Complex prod = 1.0;
  Complex z2k = 1.0;  // zeta^(2k), starting at k = 1 below
  for (int k = 1; k <= max_factors; ++k) {
    z2k *= zeta * zeta;
    Complex f = (1.0 + z2k) / (1.0 + z2k / zeta);
    Complex f4 = f * f * f * f;
    prod *= f4;
    if (std::abs(f4 - 1.0) < 1e-16) break;
  }
  return 4.0 * prod;
}

}  // namespace

Complex jacobi_value(const LatticeTau& tau, Complex z, int max_factors) {
  Complex zeta = std::exp(kI * kPi * tau.tau);
  if (std::abs(zeta) >= 1.0 - 1e-6)
    throw ConvergenceFailure("tau too close to the real axis");
  Complex w = std::exp(kI * kPi * z);

  Complex prod = 1.0;
  Complex z2k = 1.0;  // zeta^(2k)
  int quiet = 0;
  for (int k = 0; k <= max_factors; ++k) {
    Complex z2k1 = z2k * zeta;    // zeta^(2k+1)
    Complex z2k2 = z2k1 * zeta;   // zeta^(2k+2)
    Complex num = (w - z2k) * (1.0 - z2k2 * w);
    Complex den = (w - z2k1) * (1.0 - z2k1 * w);
    Complex f = (num * num) / (den * den);
    prod *= f;
    if (std::abs(f - 1.0) < 1e-16) {
      if (++quiet >= 2) break;
    } else {
      quiet = 0;
    }
    z2k = z2k2;
  }
  return -w / jacobi_K(zeta, max_factors) * prod;
}

MuInvariant mu_from_tau(const LatticeTau& tau, int max_factors) {
  Complex m = jacobi_value(tau, 1.0 + tau.tau, max_factors);
  // For genuinely complex mu the value depends on which of the markings
  // tau / tau - 1 presents the parallelogram (they give mu and 1 - mu).
  // Normalize to the branch with Im(mu) >= 0; rectangles are unaffected.
  if (m.imag() < -1e-12) m = 1.0 - m;
  return MuInvariant(m);
}

double integrate(const std::function<double(double)>& f, double a, double b,
                 double tol) {
  // Gauss 7 / Kronrod 15 pair on [-1, 1].
  static const double xk[15] = {
      -0.991455371120813, -0.949107912342759, -0.864864423359769,
      -0.741531185599394, -0.586087235467691, -0.405845151377397,
      -0.207784955007898, 0.0,
      0.207784955007898,  0.405845151377397,  0.586087235467691,
      0.741531185599394,  0.864864423359769,  0.949107912342759,
      0.991455371120813};
  static const double wk[15] = {
      0.022935322010529, 0.063092092629979, 0.104790010322250,
      0.140653259715525, 0.169004726639267, 0.190350578064785,
      0.204432940075298, 0.209482141084728,
      0.204432940075298, 0.190350578064785, 0.169004726639267,
      0.140653259715525, 0.104790010322250, 0.063092092629979,
      0.022935322010529};
  static const double wg[7] = {
      0.129484966168870, 0.279705391489277, 0.381830050505119,
      0.417959183673469, 0.381830050505119, 0.279705391489277,
      0.129484966168870};

  std::function<double(double, double, double)> segment =
      [&](double lo, double hi, double eps) -> double {
    double h = (hi - lo) / 2.0, mid = (lo + hi) / 2.0;
    double gk = 0.0, g = 0.0;
    for (int i = 0; i < 15; ++i) {
      double v = f(mid + h * xk[i]);
      gk += wk[i] * v;
      if (i % 2 == 1) g += wg[i / 2] * v;
    }
    gk *= h;
    g *= h;
    if (std::abs(gk - g) < eps || (hi - lo) < 1e-13)
      return gk;
    return segment(lo, mid, eps / 2.0) + segment(mid, hi, eps / 2.0);
  };
  return segment(a, b, tol);
}

LatticeTau tau_from_mu(const MuInvariant& mu) {
  if (std::abs(mu.mu.imag()) > 1e-9 || mu.mu.real() <= 1.0)
    throw BranchUnsupported("period integrals implemented for real mu > 1");
  double m = mu.mu.real();
  // x = sin^2(theta) on [0,1] and x = 1 + (m-1) sin^2(theta) on [1,m]
  // remove the inverse-square-root endpoint singularities of 1/sqrt(P).
  double I1 = integrate(
      [m](double th) {
        double s = std::sin(th);
        return 2.0 / std::sqrt(m - s * s);
      },
      0.0, kPi / 2.0);
  double I2 = integrate(
      [m](double th) {
        double s = std::sin(th);
        return 2.0 / std::sqrt(1.0 + (m - 1.0) * s * s);
      },
      0.0, kPi / 2.0);
  return LatticeTau(kI * (I2 / I1));
}

Complex mu_imaginary_axis(double t) {
  if (t <= 0.0) throw DomainError("t must be positive");
  if (t >= 0.5) return mu_from_tau(LatticeTau(kI * t)).mu;
  // tau -> -1/tau sends mu to mu/(mu-1); evaluate at the well-converged dual.
  Complex md = mu_from_tau(LatticeTau(kI / t)).mu;
  return md / (md - 1.0);
}

MuInvariant modular_mu(const MuInvariant& mu, MuMove op) {
  Complex m = mu.mu;
  switch (op) {
    case MuMove::S:
      return MuInvariant(m / (m - 1.0));
    case MuMove::Tm:
      return MuInvariant(1.0 - m);
    case MuMove::U:
      return MuInvariant(1.0 / m);
  }
  throw UnsupportedCase();
}

}  // namespace rectsurf
