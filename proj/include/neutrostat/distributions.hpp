#pragma once

#include <vector>

#include "neutrostat/setval.hpp"

namespace neutrostat {

// Chance of events split three ways: determinate success (T), indeterminate
// outcome (I), determinate failure (F). Components are nonnegative but need
// not sum to 1 — for a trial spec (pS, pI, pF) repeated n times they sum to
// (pS + pI + pF)^n.
struct NeutroTriplet {
  double T = 0;
  double I = 0;
  double F = 0;
};

// An experiment of n trials where each trial lands success / indeterminate /
// failure with chances pS / pI / pF, and a whole run counts as indeterminate
// once more than `th` trials are indeterminate.
struct BinomialSpec {
  int n = 1;
  int th = 0;
  double pS = 0;
  double pI = 0;
  double pF = 0;
};

// r-way generalization: P[j] is the chance of determinate event j, i the
// chance a single trial is indeterminate.
struct MultinomialSpec {
  int n = 1;
  int th = 0;
  std::vector<double> P;
  double i = 0;
};

// Normal distribution whose mean and standard deviation are known only as
// sets; computations use the hulls of both.
struct NormalSpec {
  SetValue mu;
  SetValue sigma;
};

enum class ProbMode { Complete, Incomplete, Paraconsistent };

// Chance triplet for exactly x successes among n trials.
// T_x sums determinate outcomes with x successes and at most th indeterminate
// trials (terms with more failures than remaining trials are omitted);
// I_x sums all outcomes with more than th indeterminate trials;
// F_x sums T_y over y != x.
NeutroTriplet nbinomial_pmf(const BinomialSpec& spec, int x);

// Same triplet assembled from trinomial_A terms; cross-checks nbinomial_pmf.
NeutroTriplet nbinomial_via_trinomial(const BinomialSpec& spec, int x);

// Scales the components to sum to 1.
NeutroTriplet normalize_triplet(const NeutroTriplet& t);

// Complete when pS+pI+pF = 1 (within 1e-12), Incomplete below, Paraconsistent
// above (contradictory information); sums outside [0,3] are rejected.
ProbMode classify_mode(double pS, double pI, double pF);

// n!/(alpha! beta! gamma!) * p1^alpha * i^beta * p2^gamma for a composition
// alpha + beta + gamma = n.
double trinomial_A(int n, int alpha, int beta, int gamma, double p1, double i, double p2);

// Chance triplet for a full count vector x over the r determinate events.
NeutroTriplet nmultinomial_pmf(const MultinomialSpec& spec, const std::vector<int>& x);

// Envelope [min, max] of the classical density over all (mu, sigma) pairs in
// hull(mu) x hull(sigma).
SetValue nnormal_pdf(const NormalSpec& spec, double x);

// [inf(mu) - k*sup(sigma), sup(mu) + k*sup(sigma)]: the band within k standard
// deviations of the mean, widened for the least favourable parameters.
SetValue nnormal_sigma_band(const NormalSpec& spec, int k);

}  // namespace neutrostat
