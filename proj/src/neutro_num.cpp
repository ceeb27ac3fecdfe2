#include "neutrostat/neutro_num.hpp"

#include <algorithm>
#include <cmath>

namespace neutrostat {

namespace {

[[noreturn]] void fail(const char* code, const std::string& what) {
  throw DomainError(code, what);
}

double ipow(double base, int n) {
  double r = 1.0, b = base;
  for (int e = n; e > 0; e >>= 1) {
    if (e & 1) r *= b;
    b *= b;
  }
  return r;
}

// Principal real nth root (negative base allowed for odd n).
double nroot(double x, int n) {
  if (x == 0.0) return 0.0;
  if (x < 0.0) return -nroot(-x, n);
  if (n == 2) return std::sqrt(x);
  if (n == 3) return std::cbrt(x);
  double r = std::pow(x, 1.0 / n);
  for (int i = 0; i < 2; ++i) {
    double rp = ipow(r, n - 1);
    if (rp == 0.0) break;
    r -= (r * rp - x) / (n * rp);
  }
  return r;
}

void push_unique(std::vector<NeutroNumber>& out, const NeutroNumber& v, double tol = 1e-9) {
  for (const NeutroNumber& w : out)
    if (std::fabs(w.a - v.a) <= tol && std::fabs(w.b - v.b) <= tol) return;
  out.push_back(v);
}

}  // namespace

NeutroNumber nn_add(const NeutroNumber& u, const NeutroNumber& v) { return {u.a + v.a, u.b + v.b}; }
NeutroNumber nn_sub(const NeutroNumber& u, const NeutroNumber& v) { return {u.a - v.a, u.b - v.b}; }

NeutroNumber nn_mul(const NeutroNumber& u, const NeutroNumber& v) {
  return {u.a * v.a, u.a * v.b + v.a * u.b + u.b * v.b};
}

NeutroNumber nn_div(const NeutroNumber& u, const NeutroNumber& v) {
  if (v.a == 0.0 || v.a == -v.b)
    fail("UndefinedDivision", "division by a + bI needs a != 0 and a != -b");
  double x = u.a / v.a;
  double y = (v.a * u.b - u.a * v.b) / (v.a * (v.a + v.b));
  return {x, y};
}

NeutroNumber nn_pow(const NeutroNumber& u, int n) {
  if (n < 0) fail("BadExponent", "nn_pow needs n >= 0");
  if (n == 0) return {1, 0};
  double an = ipow(u.a, n);
  return {an, ipow(u.a + u.b, n) - an};
}

std::vector<NeutroNumber> nn_sqrt(const NeutroNumber& u) {
  if (u.a < 0.0 || u.a + u.b < 0.0)
    fail("NoRealRoot", "square root needs a >= 0 and a + b >= 0");
  return nn_nth_root(u, 2);
}

NeutroNumber nn_sqrt_principal(const NeutroNumber& u) {
  std::vector<NeutroNumber> roots = nn_sqrt(u);
  const NeutroNumber* best = nullptr;
  for (const NeutroNumber& r : roots) {
    if (r.a < 0.0 || r.a + r.b < 0.0) continue;
    if (!best || std::fabs(r.b) < std::fabs(best->b)) best = &r;
  }
  if (!best) fail("NoRealRoot", "no branch with nonnegative determinate and total parts");
  return *best;
}

std::vector<NeutroNumber> nn_nth_root(const NeutroNumber& u, int n) {
  if (n < 2) fail("BadRootIndex", "root index must be >= 2");
  // x^n = a and (x+y)^n = a + b; for even n both the determinate part and the
  // total part must be nonnegative for real branches to exist.
  std::vector<double> xs, ts;
  if (n % 2 == 1) {
    xs = {nroot(u.a, n)};
    ts = {nroot(u.a + u.b, n)};
  } else {
    if (u.a < 0.0 || u.a + u.b < 0.0)
      fail("NoRealRoot", "even root needs a >= 0 and a + b >= 0");
    double r = nroot(u.a, n), s = nroot(u.a + u.b, n);
    xs = {r, -r};
    ts = {s, -s};
  }
  std::vector<NeutroNumber> out;
  for (double x : xs)
    for (double t : ts) push_unique(out, {x, t - x});
  return out;
}

std::vector<std::complex<double>> complex_sqrt(std::complex<double> z) {
  double a = z.real(), b = z.imag();
  double r = std::hypot(a, b);
  double x = std::sqrt(std::max(0.0, (r + a) / 2.0));
  double y = std::sqrt(std::max(0.0, (r - a) / 2.0));
  if (b < 0.0) y = -y;
  std::complex<double> root(x, y);
  return {root, -root};
}

std::vector<std::complex<double>> complex_nth_root(std::complex<double> z, int n) {
  if (n < 2) fail("BadRootIndex", "root index must be >= 2");
  if (z == std::complex<double>(0.0, 0.0)) return {z};
  double rad = std::pow(std::abs(z), 1.0 / n);
  double base = std::arg(z) / n;
  std::vector<std::complex<double>> out;
  out.reserve(n);
  for (int k = 0; k < n; ++k) {
    double th = base + 2.0 * M_PI * k / n;
    out.emplace_back(rad * std::cos(th), rad * std::sin(th));
  }
  return out;
}

NeutroComplex ncomplex_add(const NeutroComplex& u, const NeutroComplex& v) {
  return {u.a + v.a, u.b + v.b, u.c + v.c, u.d + v.d};
}

NeutroComplex ncomplex_mul(const NeutroComplex& u, const NeutroComplex& v) {
  std::complex<double> u1(u.a, u.b), v1(u.c, u.d);
  std::complex<double> u2(v.a, v.b), v2(v.c, v.d);
  std::complex<double> det = u1 * u2;
  std::complex<double> ind = u1 * v2 + u2 * v1 + v1 * v2;
  return {det.real(), det.imag(), ind.real(), ind.imag()};
}

std::vector<NeutroComplex> ncomplex_sqrt(const NeutroComplex& q) {
  // q = u + vI with complex u = a+bi, v = c+di. A root p + rI satisfies
  // p^2 = u and (p + r)^2 = u + v, so p and p+r are ordinary complex square
  // roots and r is their difference.
  std::complex<double> u(q.a, q.b), uv(q.a + q.c, q.b + q.d);
  std::vector<NeutroComplex> out;
  auto push = [&](const NeutroComplex& w) {
    for (const NeutroComplex& e : out)
      if (std::fabs(e.a - w.a) <= 1e-9 && std::fabs(e.b - w.b) <= 1e-9 &&
          std::fabs(e.c - w.c) <= 1e-9 && std::fabs(e.d - w.d) <= 1e-9)
        return;
    out.push_back(w);
  };
  for (const std::complex<double>& p : complex_sqrt(u))
    for (const std::complex<double>& t : complex_sqrt(uv)) {
      std::complex<double> r = t - p;
      push({p.real(), p.imag(), r.real(), r.imag()});
    }
  return out;
}

NeutroNumber nn_poly_eval(const std::vector<NeutroNumber>& coeffs, const NeutroNumber& x) {
  NeutroNumber acc{0, 0};
  for (const NeutroNumber& c : coeffs) acc = nn_add(nn_mul(acc, x), c);
  return acc;
}

std::vector<NeutroNumber> nn_quadratic_solve(const NeutroQuadratic& q) {
  const NeutroNumber &A = q.coeff2, &B = q.coeff1, &C = q.coeff0;
  NeutroNumber disc = nn_sub(nn_mul(B, B), nn_mul(nn_mul({4, 0}, A), C));
  NeutroNumber twoA = nn_mul({2, 0}, A);
  std::vector<NeutroNumber> out;
  for (const NeutroNumber& s : nn_sqrt(disc)) {
    for (int sign : {+1, -1}) {
      NeutroNumber num = nn_add(nn_sub({0, 0}, B), nn_mul({double(sign), 0}, s));
      NeutroNumber x = nn_div(num, twoA);
      NeutroNumber resid = nn_poly_eval({A, B, C}, x);
      if (std::fabs(resid.a) <= 1e-9 && std::fabs(resid.b) <= 1e-9) push_unique(out, x);
    }
  }
  return out;
}

std::vector<Factoring> nn_factorings(const NeutroQuadratic& q) {
  const NeutroNumber &A = q.coeff2, &B = q.coeff1, &C = q.coeff0;
  std::vector<NeutroNumber> roots = nn_quadratic_solve(q);
  std::vector<Factoring> out;
  for (size_t i = 0; i < roots.size(); ++i)
    for (size_t j = i; j < roots.size(); ++j) {
      NeutroNumber b1 = nn_mul(nn_sub({0, 0}, A), nn_add(roots[i], roots[j]));
      NeutroNumber c0 = nn_mul(A, nn_mul(roots[i], roots[j]));
      if (std::fabs(b1.a - B.a) <= 1e-9 && std::fabs(b1.b - B.b) <= 1e-9 &&
          std::fabs(c0.a - C.a) <= 1e-9 && std::fabs(c0.b - C.b) <= 1e-9)
        out.push_back({A, roots[i], roots[j]});
    }
  return out;
}

}  // namespace neutrostat
