#include "neutrostat/distributions.hpp"

#include <algorithm>
#include <cmath>

namespace neutrostat {

namespace {

double factorial(int n) {
  double f = 1;
  for (int k = 2; k <= n; ++k) f *= k;
  return f;
}

// n! / m!  (m <= n)
double falling(int n, int m) {
  double f = 1;
  for (int k = m + 1; k <= n; ++k) f *= k;
  return f;
}

double choose(int n, int k) { return falling(n, n - k) / factorial(k); }

void check_prob(double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw DomainError("BadSpec", "trial chance outside [0,1]");
}

void check_spec(const BinomialSpec& s) {
  if (s.n < 1) throw DomainError("BadSpec", "need at least one trial");
  if (s.th < 0 || s.th > s.n) throw DomainError("BadSpec", "threshold outside 0..n");
  check_prob(s.pS);
  check_prob(s.pI);
  check_prob(s.pF);
}

void check_spec(const MultinomialSpec& s) {
  if (s.n < 1) throw DomainError("BadSpec", "need at least one trial");
  if (s.th < 0 || s.th > s.n) throw DomainError("BadSpec", "threshold outside 0..n");
  if (s.P.size() < 2) throw DomainError("BadSpec", "need at least two event chances");
  for (double p : s.P) check_prob(p);
  check_prob(s.i);
}

// Determinate mass with exactly x successes: all splits of the n - x
// non-success trials into k indeterminate and n - x - k failures, k <= th.
double binom_T(const BinomialSpec& s, int x) {
  double inner = 0;
  for (int k = 0; k <= std::min(s.th, s.n - x); ++k)
    inner += std::pow(s.pI, k) * std::pow(s.pF, s.n - x - k) /
             (factorial(k) * factorial(s.n - x - k));
  return falling(s.n, x) * std::pow(s.pS, x) * inner;
}

}  // namespace

NeutroTriplet nbinomial_pmf(const BinomialSpec& spec, int x) {
  check_spec(spec);
  if (x < 0 || x > spec.n) throw DomainError("XOutOfRange", "success count outside 0..n");
  NeutroTriplet t;
  t.T = binom_T(spec, x);
  for (int z = spec.th + 1; z <= spec.n; ++z) {
    double inner = 0;
    for (int k = 0; k <= spec.n - z; ++k)
      inner += std::pow(spec.pS, k) * std::pow(spec.pF, spec.n - z - k) /
               (factorial(k) * factorial(spec.n - z - k));
    t.I += falling(spec.n, z) * std::pow(spec.pI, z) * inner;
  }
  for (int y = 0; y <= spec.n; ++y)
    if (y != x) t.F += binom_T(spec, y);
  return t;
}

NeutroTriplet nbinomial_via_trinomial(const BinomialSpec& spec, int x) {
  check_spec(spec);
  if (x < 0 || x > spec.n) throw DomainError("XOutOfRange", "success count outside 0..n");
  auto A = [&](int alpha, int beta, int gamma) {
    return trinomial_A(spec.n, alpha, beta, gamma, spec.pS, spec.pI, spec.pF);
  };
  NeutroTriplet t;
  for (int beta = 0; beta <= std::min(spec.th, spec.n - x); ++beta)
    t.T += A(x, beta, spec.n - x - beta);
  for (int beta = spec.th + 1; beta <= spec.n; ++beta)
    for (int alpha = 0; alpha <= spec.n - beta; ++alpha)
      t.I += A(alpha, beta, spec.n - alpha - beta);
  for (int y = 0; y <= spec.n; ++y) {
    if (y == x) continue;
    for (int beta = 0; beta <= std::min(spec.th, spec.n - y); ++beta)
      t.F += A(y, beta, spec.n - y - beta);
  }
  return t;
}

NeutroTriplet normalize_triplet(const NeutroTriplet& t) {
  double sum = t.T + t.I + t.F;
  if (!(sum > 0)) throw DomainError("ZeroTotal", "cannot normalize a zero triplet");
  return {t.T / sum, t.I / sum, t.F / sum};
}

ProbMode classify_mode(double pS, double pI, double pF) {
  double sum = pS + pI + pF;
  if (sum < 0 || sum > 3) throw DomainError("OutOfRange", "chance sum outside [0,3]");
  if (std::fabs(sum - 1.0) <= 1e-12) return ProbMode::Complete;
  return sum < 1.0 ? ProbMode::Incomplete : ProbMode::Paraconsistent;
}

double trinomial_A(int n, int alpha, int beta, int gamma, double p1, double i, double p2) {
  if (alpha < 0 || beta < 0 || gamma < 0 || alpha + beta + gamma != n)
    throw DomainError("BadComposition", "counts must be nonnegative and sum to n");
  return factorial(n) / (factorial(alpha) * factorial(beta) * factorial(gamma)) *
         std::pow(p1, alpha) * std::pow(i, beta) * std::pow(p2, gamma);
}

NeutroTriplet nmultinomial_pmf(const MultinomialSpec& spec, const std::vector<int>& x) {
  check_spec(spec);
  if (x.size() != spec.P.size())
    throw DomainError("BadCounts", "need one count per determinate event");
  int sumx = 0;
  for (int c : x) {
    if (c < 0) throw DomainError("BadCounts", "counts must be nonnegative");
    sumx += c;
  }
  if (sumx > spec.n) throw DomainError("BadCounts", "counts exceed the number of trials");

  double sumP = 0;
  for (double p : spec.P) sumP += p;

  NeutroTriplet t;
  // the count vector fixes the number of indeterminate trials
  int beta = spec.n - sumx;
  if (beta <= spec.th) {
    double coef = factorial(spec.n) / factorial(beta);
    for (size_t j = 0; j < x.size(); ++j) {
      coef /= factorial(x[j]);
      coef *= std::pow(spec.P[j], x[j]);
    }
    t.T = coef * std::pow(spec.i, beta);
  }
  // indeterminate and determinate layer masses via the multinomial theorem
  for (int b = spec.th + 1; b <= spec.n; ++b)
    t.I += choose(spec.n, b) * std::pow(spec.i, b) * std::pow(sumP, spec.n - b);
  double determinate = 0;
  for (int b = 0; b <= spec.th; ++b)
    determinate += choose(spec.n, b) * std::pow(spec.i, b) * std::pow(sumP, spec.n - b);
  t.F = determinate - t.T;
  return t;
}

SetValue nnormal_pdf(const NormalSpec& spec, double x) {
  if (!(spec.sigma.infimum() > 0))
    throw DomainError("BadSpec", "standard deviation must be positive");
  double mlo = spec.mu.infimum(), mhi = spec.mu.supremum();
  double s1 = spec.sigma.infimum(), s2 = spec.sigma.supremum();
  double d_near = (x < mlo) ? mlo - x : (x > mhi ? x - mhi : 0.0);
  double d_far = std::max(std::fabs(x - mlo), std::fabs(x - mhi));
  auto density = [](double d, double sig) {
    return std::exp(-d * d / (2 * sig * sig)) / (sig * std::sqrt(2 * M_PI));
  };
  // at fixed distance d the density peaks at sigma = d, so the max is at the
  // nearest mean and the sigma closest to d_near; the min is at the farthest
  // mean and one of the sigma endpoints
  double hi = density(d_near, std::clamp(d_near, s1, s2));
  double lo = std::min(density(d_far, s1), density(d_far, s2));
  return SetValue::interval(lo, hi);
}

SetValue nnormal_sigma_band(const NormalSpec& spec, int k) {
  if (!(spec.sigma.infimum() > 0))
    throw DomainError("BadSpec", "standard deviation must be positive");
  double w = k * spec.sigma.supremum();
  return SetValue::interval(spec.mu.infimum() - w, spec.mu.supremum() + w);
}

}  // namespace neutrostat
