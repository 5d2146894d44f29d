#pragma once

// Algebraic-curve equations and parameter transformations of the staircase
// and escalator families and of the four balanced four-square cases, plus
// the orbit polynomials tying each modular orbit together.

#include <string>
#include <vector>

#include "rectsurf/elliptic.hpp"
#include "rectsurf/tiling.hpp"

namespace rectsurf {

/// Dense polynomial, coefficients by ascending degree.
struct Poly {
  std::vector<Complex> c;

  int degree() const { return static_cast<int>(c.size()) - 1; }
  Complex eval(Complex x) const;
  Poly derivative() const;
  Poly operator*(const Poly& o) const;
  static Poly from_roots(const std::vector<Complex>& roots);
  /// Durand-Kerner iteration; fine for the well-separated roots used here.
  std::vector<Complex> roots() const;
  /// Smallest pairwise root distance (double-root certificates).
  double min_root_gap() const;
};

struct HyperellipticCurve {
  Poly p;  // y^2 = p(x)
  std::string family;
  int genus = 0;
  Complex mu{0.0}, a{0.0};
  std::string differential;
};

/// y^2 = P(x) for the staircase/escalator families; a = (2 mu - 4) / mu.
HyperellipticCurve family_equation(Family f, int g, Complex mu);

std::string curve_to_json(const HyperellipticCurve& c);

// --- four-square cases -----------------------------------------------------

struct CaseAData {
  Complex a, nu, mu;
  Poly curve;          // y^2 = (x^2-a^2)(x^2-1)(x^2-a^2-1)
  Poly genus1_target;  // y^2 = x(x-1)(x-mu)
  // Degree-4 covering onto the genus-1 curve.
  Complex map_x(Complex x) const;
  Complex map_y(Complex x, Complex y) const;
  std::vector<Complex> orbit_nu() const;  // the six modular companions
};
CaseAData caseA_from_a(Complex a);
CaseAData caseA_from_nu(Complex nu);

struct CaseBData {
  Complex mu, a;
  Poly curve;  // y^2 = x (x^4 + a x^2 + 1)
  std::vector<Complex> orbit_a() const;  // the modular triple
};
CaseBData caseB_data(Complex mu);

struct CaseCData {
  Complex t, a, b, c, lambda, mu, d1, d2, p, q;
  Poly quartic;                    // the w-polynomial at this mu
  std::vector<Complex> companions() const;  // the four equivalent t values
  Complex f(Complex x) const;      // covering map x-part
};
CaseCData caseC_data(Complex t);

/// The degree-4 w-polynomial x^4+(2-8mu)x^3+12mu x^2-(2+6mu)x+mu-1.
Poly caseC_quartic(Complex mu);

enum class CaseCClass { C1, C4, MirrorPair };
struct CaseCCandidate {
  Complex w, t;
  CaseCClass cls;
  double residual;  // |mu(t) - mu|
};
/// All t parameters over the four w-roots, classified for real mu > 1.
std::vector<CaseCCandidate> caseC_from_mu(Complex mu);

struct CaseDData {
  Complex mu, lambda, b;
  Complex a1, a3;     // branch values of the two real-root pairs
  Poly curve1, curve3;  // the explicit sextics
};
CaseDData caseD_data(Complex mu);

// --- orbit polynomials -------------------------------------------------------

enum class OrbitCase { A, B, C };
struct OrbitPolynomial {
  Poly poly;
  std::vector<Complex> values;
  double residual;  // max scaled |poly(value)|
};
/// parameter = nu (case A), a (case B), mu (case C).
OrbitPolynomial orbit_polynomial(OrbitCase oc, Complex parameter);

}  // namespace rectsurf
