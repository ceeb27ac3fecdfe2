#pragma once

#include <complex>
#include <vector>

#include "neutrostat/setval.hpp"

namespace neutrostat {

// Number of the form a + bI where the indeterminacy symbol I satisfies
// I^2 = I (hence I^n = I). Equality is coefficientwise.
struct NeutroNumber {
  double a = 0;  // determinate coefficient
  double b = 0;  // coefficient of I
  bool operator==(const NeutroNumber&) const = default;
};

// a + b*i + c*I + d*i*I with real coefficients.
struct NeutroComplex {
  double a = 0, b = 0, c = 0, d = 0;
  bool operator==(const NeutroComplex&) const = default;
};

// A*x^2 + B*x + C with neutrosophic coefficients.
struct NeutroQuadratic {
  NeutroNumber coeff2, coeff1, coeff0;
};

// One way to split a quadratic: leading*(x - root1)*(x - root2).
struct Factoring {
  NeutroNumber leading, root1, root2;
};

NeutroNumber nn_add(const NeutroNumber& u, const NeutroNumber& v);
NeutroNumber nn_sub(const NeutroNumber& u, const NeutroNumber& v);
// (a1 + b1 I)(a2 + b2 I) = a1 a2 + (a1 b2 + a2 b1 + b1 b2) I
NeutroNumber nn_mul(const NeutroNumber& u, const NeutroNumber& v);
// x = a1/a2, y = (a2 b1 - a1 b2) / (a2 (a2 + b2)).
// UndefinedDivision when v.a == 0 or v.a == -v.b (e.g. dividing by kI or by
// a - aI, including I/I itself).
NeutroNumber nn_div(const NeutroNumber& u, const NeutroNumber& v);
// (a + bI)^n = a^n + ((a+b)^n - a^n) I; n >= 0.
NeutroNumber nn_pow(const NeutroNumber& u, int n);

// All real square roots: combinations of x = ±sqrt(a) and x + y = ±sqrt(a+b),
// deduplicated; up to 4. NoRealRoot unless a >= 0 and a + b >= 0.
std::vector<NeutroNumber> nn_sqrt(const NeutroNumber& u);
// The branch with x >= 0 and x + y >= 0, smallest |y| on ties.
NeutroNumber nn_sqrt_principal(const NeutroNumber& u);
// All real nth roots: x^n = a, (x+y)^n = a + b solved branchwise. Odd n is
// always defined (single root); even n needs a >= 0 and a + b >= 0.
std::vector<NeutroNumber> nn_nth_root(const NeutroNumber& u, int n);

// Both square roots ±(x + yi) of an ordinary complex number.
std::vector<std::complex<double>> complex_sqrt(std::complex<double> z);
// All n roots in increasing-argument order (de Moivre).
std::vector<std::complex<double>> complex_nth_root(std::complex<double> z, int n);

NeutroComplex ncomplex_add(const NeutroComplex& u, const NeutroComplex& v);
// (u1 + v1 I)(u2 + v2 I) with complex u's and v's and I^2 = I.
NeutroComplex ncomplex_mul(const NeutroComplex& u, const NeutroComplex& v);
// All square roots (x + yi) + (z + wi)I: writing q = u + vI with complex
// u, v, the roots are p + r I where p^2 = u and (p + r)^2 = u + v; up to 4
// combinations, deduplicated. Every result squares back to q.
std::vector<NeutroComplex> ncomplex_sqrt(const NeutroComplex& q);

// Horner evaluation; coeffs run from the highest-degree term down to the
// constant term.
NeutroNumber nn_poly_eval(const std::vector<NeutroNumber>& coeffs, const NeutroNumber& x);

// Quadratic formula over a + bI: every sqrt branch of B^2 - 4AC feeds
// (-B ± s) / (2A); duplicates removed; every kept root has |P(root)| <= 1e-9
// per coefficient. UndefinedDivision / NoRealRoot propagate.
std::vector<NeutroNumber> nn_quadratic_solve(const NeutroQuadratic& q);

// Every unordered root pair {xi, xj} (i <= j allowed) whose expansion
// A(x - xi)(x - xj) reproduces the coefficients within 1e-9.
std::vector<Factoring> nn_factorings(const NeutroQuadratic& q);

}  // namespace neutrostat
