#include "neutrostat/distributions.hpp"

#include <chrono>
#include <cmath>
#include <functional>
#include <random>
#include <vector>

#include "doctest.h"
#include "test_util.hpp"

using namespace neutrostat;

namespace {

// Independent oracle: walk every labeled outcome string (success /
// indeterminate / failure per trial), classify by indeterminate-trial count
// against the threshold, and accumulate the product chances.
NeutroTriplet brute_force(const BinomialSpec& s, int x) {
  NeutroTriplet t;
  long total = 1;
  for (int i = 0; i < s.n; ++i) total *= 3;
  for (long m = 0; m < total; ++m) {
    long code = m;
    int nS = 0, nI = 0, nF = 0;
    for (int i = 0; i < s.n; ++i) {
      int d = code % 3;
      code /= 3;
      if (d == 0)
        ++nS;
      else if (d == 1)
        ++nI;
      else
        ++nF;
    }
    double w = std::pow(s.pS, nS) * std::pow(s.pI, nI) * std::pow(s.pF, nF);
    if (nI > s.th)
      t.I += w;
    else if (nS == x)
      t.T += w;
    else
      t.F += w;
  }
  return t;
}

// Independent oracle for the r-event case: enumerate every count vector.
void enumerate_counts(int r, int remaining, std::vector<int>& alpha,
                      const std::function<void(const std::vector<int>&)>& visit) {
  if (static_cast<int>(alpha.size()) == r - 1) {
    alpha.push_back(remaining);
    visit(alpha);
    alpha.pop_back();
    return;
  }
  for (int c = 0; c <= remaining; ++c) {
    alpha.push_back(c);
    enumerate_counts(r, remaining - c, alpha, visit);
    alpha.pop_back();
  }
}

NeutroTriplet brute_force_multi(const MultinomialSpec& s, const std::vector<int>& x) {
  NeutroTriplet t;
  int r = static_cast<int>(s.P.size());
  auto fact = [](int n) {
    double f = 1;
    for (int k = 2; k <= n; ++k) f *= k;
    return f;
  };
  for (int beta = 0; beta <= s.n; ++beta) {
    std::vector<int> alpha;
    enumerate_counts(r, s.n - beta, alpha, [&](const std::vector<int>& a) {
      double w = fact(s.n) / fact(beta) * std::pow(s.i, beta);
      for (int j = 0; j < r; ++j) w *= std::pow(s.P[j], a[j]) / fact(a[j]);
      if (beta > s.th)
        t.I += w;
      else if (a == x)
        t.T += w;
      else
        t.F += w;
    });
  }
  return t;
}

bool close3(const NeutroTriplet& a, const NeutroTriplet& b, double tol = 1e-9) {
  return std::fabs(a.T - b.T) <= tol && std::fabs(a.I - b.I) <= tol &&
         std::fabs(a.F - b.F) <= tol;
}

const BinomialSpec watch{5, 2, 0.1, 0.2, 0.8};

}  // namespace

TEST_CASE("threshold binomial pmf reproduces the worked example") {
  NeutroTriplet t = nbinomial_pmf(watch, 2);
  CHECK(t.T == doctest::Approx(0.0992).epsilon(1e-9));
  CHECK(t.I == doctest::Approx(0.07232).epsilon(1e-9));
  CHECK(t.F == doctest::Approx(1.43899).epsilon(1e-6));
  CHECK(t.T + t.I + t.F == doctest::Approx(std::pow(1.1, 5)).epsilon(1e-12));

  NeutroTriplet n = normalize_triplet(t);
  CHECK(n.T == doctest::Approx(0.061595).epsilon(1e-4));
  CHECK(n.I == doctest::Approx(0.044905).epsilon(1e-4));
  CHECK(n.F == doctest::Approx(0.893500).epsilon(1e-4));
  CHECK(std::fabs(n.T - 0.061595) < 1e-6);
  CHECK(std::fabs(n.I - 0.044905) < 1e-6);
  CHECK(std::fabs(n.F - 0.893500) < 1e-6);
  CHECK(n.T + n.I + n.F == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("binomial pmf special cases") {
  // a threshold of n leaves nothing indeterminate
  BinomialSpec all{4, 4, 0.3, 0.4, 0.2};
  for (int x = 0; x <= 4; ++x) CHECK(nbinomial_pmf(all, x).I == 0.0);

  // no indeterminacy chance and zero threshold degenerates to the classical pmf
  BinomialSpec classical{6, 0, 0.35, 0.0, 0.65};
  for (int x = 0; x <= 6; ++x) {
    NeutroTriplet t = nbinomial_pmf(classical, x);
    double want = 1;
    for (int k = 0; k < x; ++k) want *= (6.0 - k) / (k + 1);
    want *= std::pow(0.35, x) * std::pow(0.65, 6 - x);
    CHECK(t.T == doctest::Approx(want).epsilon(1e-12));
    CHECK(t.I == 0.0);
    CHECK(t.F == doctest::Approx(1.0 - want).epsilon(1e-9));
  }

  CHECK_THROWS_AS(nbinomial_pmf(watch, -1), DomainError);
  CHECK_THROWS_AS(nbinomial_pmf(watch, 6), DomainError);
  CHECK_THROWS_AS(nbinomial_pmf({5, 2, 1.2, 0.2, 0.8}, 2), DomainError);
  CHECK_THROWS_AS(nbinomial_pmf({5, 7, 0.1, 0.2, 0.8}, 2), DomainError);
  CHECK_THROWS_AS(nbinomial_pmf({0, 0, 0.1, 0.2, 0.8}, 0), DomainError);
}

TEST_CASE("three routes agree: formulas, trinomial sums, string enumeration") {
  NeutroTriplet viaA = nbinomial_via_trinomial(watch, 2);
  CHECK(viaA.T == doctest::Approx(0.0992).epsilon(1e-9));
  CHECK(viaA.I == doctest::Approx(0.07232).epsilon(1e-9));
  CHECK(viaA.F == doctest::Approx(1.43899).epsilon(1e-6));

  auto start = std::chrono::steady_clock::now();
  std::mt19937_64 rng(424242);
  std::uniform_real_distribution<double> p(0, 1);
  for (int n = 1; n <= 8; ++n) {
    for (int rep = 0; rep < 6; ++rep) {
      BinomialSpec s{n, int(rng() % (n + 1)), p(rng), p(rng), p(rng)};
      for (int x = 0; x <= n; ++x) {
        NeutroTriplet a = nbinomial_pmf(s, x);
        NeutroTriplet b = nbinomial_via_trinomial(s, x);
        NeutroTriplet c = brute_force(s, x);
        CHECK(close3(a, b));
        CHECK(close3(a, c));
        double total = std::pow(s.pS + s.pI + s.pF, n);
        CHECK(a.T + a.I + a.F == doctest::Approx(total).epsilon(1e-9));
      }
    }
  }
  auto elapsed = std::chrono::steady_clock::now() - start;
  CHECK(std::chrono::duration_cast<std::chrono::milliseconds>(elapsed).count() < 1000);
}

TEST_CASE("triplet normalization") {
  NeutroTriplet t = normalize_triplet({2, 2, 4});
  CHECK(t.T == doctest::Approx(0.25));
  CHECK(t.I == doctest::Approx(0.25));
  CHECK(t.F == doctest::Approx(0.5));
  NeutroTriplet one = normalize_triplet({1, 0, 0});
  CHECK(one.T == 1.0);
  CHECK(one.I == 0.0);
  CHECK_THROWS_AS(normalize_triplet({0, 0, 0}), DomainError);

  // idempotent, and normalizing inputs first gives the same normalized pmf
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> p(0.01, 1);
  for (int rep = 0; rep < 50; ++rep) {
    BinomialSpec s{4, 1, p(rng), p(rng), p(rng)};
    double sum = s.pS + s.pI + s.pF;
    BinomialSpec pre{4, 1, s.pS / sum, s.pI / sum, s.pF / sum};
    for (int x = 0; x <= 4; ++x) {
      NeutroTriplet after = normalize_triplet(nbinomial_pmf(s, x));
      NeutroTriplet again = normalize_triplet(after);
      CHECK(close3(after, again, 1e-12));
      NeutroTriplet before = normalize_triplet(nbinomial_pmf(pre, x));
      CHECK(close3(after, before));
    }
  }
}

TEST_CASE("probability mode classification") {
  CHECK(classify_mode(0.1, 0.2, 0.8) == ProbMode::Paraconsistent);
  CHECK(classify_mode(0.5, 0.2, 0.3) == ProbMode::Complete);
  CHECK(classify_mode(0.1, 0.1, 0.1) == ProbMode::Incomplete);
  CHECK(classify_mode(1, 1, 1) == ProbMode::Paraconsistent);
  CHECK(classify_mode(0, 0, 0) == ProbMode::Incomplete);
  CHECK_THROWS_AS(classify_mode(-0.5, 0.2, 0.2), DomainError);
  CHECK_THROWS_AS(classify_mode(2, 2, 0), DomainError);
}

TEST_CASE("trinomial coefficient terms") {
  CHECK(trinomial_A(5, 2, 0, 3, 0.1, 0.2, 0.8) == doctest::Approx(0.0512).epsilon(1e-12));
  CHECK(trinomial_A(7, 7, 0, 0, 0.3, 0.5, 0.9) == doctest::Approx(std::pow(0.3, 7)));
  double sum = 0;
  for (int a = 0; a <= 5; ++a)
    for (int b = 0; a + b <= 5; ++b) sum += trinomial_A(5, a, b, 5 - a - b, 0.2, 0.3, 0.4);
  CHECK(sum == doctest::Approx(std::pow(0.9, 5)).epsilon(1e-12));
  CHECK_THROWS_AS(trinomial_A(5, 2, 2, 2, 0.1, 0.2, 0.3), DomainError);
  CHECK_THROWS_AS(trinomial_A(5, -1, 3, 3, 0.1, 0.2, 0.3), DomainError);
}

TEST_CASE("multi-event pmf") {
  // two events reduce to the binomial once failures are summed out
  MultinomialSpec two{5, 2, {0.1, 0.8}, 0.2};
  double tsum = 0;
  for (int x2 = 0; x2 <= 3; ++x2) tsum += nmultinomial_pmf(two, {2, x2}).T;
  CHECK(tsum == doctest::Approx(0.0992).epsilon(1e-9));
  CHECK(nmultinomial_pmf(two, {2, 0}).I == doctest::Approx(0.07232).epsilon(1e-9));

  // complete chances with one trial: the pmf of a unit vector is that chance
  MultinomialSpec unit{1, 0, {0.3, 0.5}, 0.2};
  CHECK(nmultinomial_pmf(unit, {1, 0}).T == doctest::Approx(0.3));
  CHECK(nmultinomial_pmf(unit, {0, 1}).T == doctest::Approx(0.5));

  MultinomialSpec all{3, 3, {0.2, 0.3, 0.4}, 0.1};
  CHECK(nmultinomial_pmf(all, {1, 1, 1}).I == 0.0);

  CHECK_THROWS_AS(nmultinomial_pmf(two, {1, 2, 3}), DomainError);
  CHECK_THROWS_AS(nmultinomial_pmf(two, {-1, 2}), DomainError);
  CHECK_THROWS_AS(nmultinomial_pmf(two, {4, 3}), DomainError);
  CHECK_THROWS_AS(nmultinomial_pmf({5, 2, {0.1}, 0.2}, {2}), DomainError);

  // random specs against the explicit count-vector enumeration
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> p(0, 1);
  for (int rep = 0; rep < 60; ++rep) {
    int r = 2 + int(rng() % 3);
    int n = 1 + int(rng() % 5);
    MultinomialSpec s{n, int(rng() % (n + 1)), {}, p(rng)};
    for (int j = 0; j < r; ++j) s.P.push_back(p(rng));
    double sumP = s.i;
    for (double q : s.P) sumP += q;
    std::vector<int> x(r, 0);
    int budget = int(rng() % (n + 1));
    for (int j = 0; j < r && budget > 0; ++j) {
      x[j] = int(rng() % (budget + 1));
      budget -= x[j];
    }
    NeutroTriplet got = nmultinomial_pmf(s, x);
    NeutroTriplet want = brute_force_multi(s, x);
    CHECK(close3(got, want));
    CHECK(got.T + got.I + got.F == doctest::Approx(std::pow(sumP, n)).epsilon(1e-9));
  }
}

TEST_CASE("normal density envelope") {
  double root2pi = std::sqrt(2 * M_PI);
  SetValue std0 = nnormal_pdf({SetValue(0.0), SetValue(1.0)}, 0);
  CHECK(std0.is_crisp());
  CHECK(std0.crisp_value() == doctest::Approx(1 / root2pi));

  SetValue atmean = nnormal_pdf({SetValue(15.0), SetValue::interval(2, 3)}, 15);
  CHECK(atmean.infimum() == doctest::Approx(1 / (3 * root2pi)));
  CHECK(atmean.supremum() == doctest::Approx(1 / (2 * root2pi)));

  SetValue setmu = nnormal_pdf({SetValue::interval(15, 17), SetValue(2.0)}, 16);
  CHECK(setmu.supremum() == doctest::Approx(1 / (2 * root2pi)));
  CHECK(setmu.infimum() == doctest::Approx(std::exp(-1.0 / 8) / (2 * root2pi)));

  CHECK_THROWS_AS(nnormal_pdf({SetValue(0.0), SetValue(0.0)}, 0), DomainError);

  // grid oracle: sampled densities stay inside, and the bounds are attained
  std::mt19937_64 rng(20240819);
  std::uniform_real_distribution<double> d(-10, 10), w(0.01, 5), sig(0.05, 4);
  for (int rep = 0; rep < 50; ++rep) {
    double mlo = d(rng), mhi = mlo + w(rng);
    double s1 = sig(rng), s2 = s1 + w(rng);
    NormalSpec spec{SetValue::interval(mlo, mhi), SetValue::interval(s1, s2)};
    double x = d(rng) * 1.5;
    SetValue env = nnormal_pdf(spec, x);
    double seen_lo = 1e300, seen_hi = -1e300;
    for (int im = 0; im <= 100; ++im) {
      double mu = mlo + (mhi - mlo) * im / 100.0;
      for (int is = 0; is <= 100; ++is) {
        double s = s1 + (s2 - s1) * is / 100.0;
        double f = std::exp(-(x - mu) * (x - mu) / (2 * s * s)) / (s * std::sqrt(2 * M_PI));
        seen_lo = std::min(seen_lo, f);
        seen_hi = std::max(seen_hi, f);
      }
    }
    CHECK(seen_lo >= env.infimum() - 1e-12);
    CHECK(seen_hi <= env.supremum() + 1e-12);
    CHECK(seen_lo <= env.infimum() + 0.02 * (env.supremum() - env.infimum()) + 1e-9);
    CHECK(seen_hi >= env.supremum() - 0.02 * (env.supremum() - env.infimum()) - 1e-9);
  }
}

TEST_CASE("standard-deviation bands") {
  NormalSpec crispmu{SetValue(15.0), SetValue::interval(2, 3)};
  CHECK(nnormal_sigma_band(crispmu, 1) == SetValue::interval(12, 18));
  CHECK(nnormal_sigma_band(crispmu, 2) == SetValue::interval(9, 21));
  CHECK(nnormal_sigma_band(crispmu, 3) == SetValue::interval(6, 24));

  NormalSpec crispsig{SetValue::interval(15, 17), SetValue(2.0)};
  CHECK(nnormal_sigma_band(crispsig, 1) == SetValue::interval(13, 19));
  CHECK(nnormal_sigma_band(crispsig, 2) == SetValue::interval(11, 21));
  CHECK(nnormal_sigma_band(crispsig, 3) == SetValue::interval(9, 23));

  NormalSpec both{SetValue::interval(15, 17), SetValue::interval(2, 3)};
  CHECK(nnormal_sigma_band(both, 1) == SetValue::interval(12, 20));
  CHECK(nnormal_sigma_band(both, 2) == SetValue::interval(9, 23));
  CHECK(nnormal_sigma_band(both, 3) == SetValue::interval(6, 26));

  // nesting, and each band is the previous one widened by sigma once more
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> d(-20, 20), w(0.01, 6), sig(0.1, 5);
  for (int rep = 0; rep < 100; ++rep) {
    double mlo = d(rng), s1 = sig(rng);
    NormalSpec spec{SetValue::interval(mlo, mlo + w(rng)), SetValue::interval(s1, s1 + w(rng))};
    for (int k = 1; k <= 4; ++k) {
      SetValue inner = nnormal_sigma_band(spec, k);
      SetValue outer = nnormal_sigma_band(spec, k + 1);
      CHECK(outer.infimum() <= inner.infimum());
      CHECK(inner.supremum() <= outer.supremum());
      CHECK(outer.infimum() == doctest::Approx(inner.infimum() - spec.sigma.supremum()));
      CHECK(outer.supremum() == doctest::Approx(inner.supremum() + spec.sigma.supremum()));
    }
  }
}
