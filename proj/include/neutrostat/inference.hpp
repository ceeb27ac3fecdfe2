#pragma once

#include <string>
#include <vector>

#include "neutrostat/setval.hpp"

namespace neutrostat {

// one-sided or two-sided alternative relative to the hypothesized region
enum class Alternative { GreaterThanSup, LessThanInf, Outside };

struct Hypothesis {
  SetValue null_set;
  Alternative alternative = Alternative::GreaterThanSup;
};

enum class Verdict { Reject, FailToReject, Indeterminate };

// Three-way test outcome. reject_chance is 1 for Reject, 0 for FailToReject,
// and a linear-measure fraction for Indeterminate; fail_chance is its
// complement, so the two always sum to 1.
struct Decision {
  Verdict verdict = Verdict::Indeterminate;
  double reject_chance = 0.0;
  double fail_chance = 1.0;
};

// Confidence level given either as a central coverage (two-sided) or as a
// single upper-tail area.
struct Level {
  enum class Kind { Central, UpperTail };
  Kind kind = Kind::Central;
  double value = 0.95;

  static Level central(double coverage) { return {Kind::Central, coverage}; }
  static Level upper_tail(double area) { return {Kind::UpperTail, area}; }
};

struct ZCritRow {
  double z;
  double right_tail;
  double central;
};

struct TRow {
  long df;
  std::vector<double> crit;  // one entry per cumulative probability column
};

// Critical-value lookup tables. z_rows list the common z critical values with
// their tail and central areas; t_rows give t critical values per degrees of
// freedom for the standard cumulative-probability columns, with limit_row
// holding the large-df (normal) limit.
class CriticalTable {
 public:
  static const CriticalTable& embedded();
  // Reads z_crit.csv and t_table.csv from the given directory.
  static CriticalTable load_dir(const std::string& dir);
  // embedded() unless the NEUTROSTAT_TABLES environment variable names a
  // directory to load instead (resolved once per process).
  static const CriticalTable& active();

  CriticalTable(std::vector<ZCritRow> z_rows, std::vector<double> t_cum_probs,
                std::vector<TRow> t_rows, std::vector<double> t_limit_row);

  const std::vector<ZCritRow>& z_rows() const { return z_rows_; }
  const std::vector<double>& t_cum_probs() const { return t_cum_probs_; }
  const std::vector<TRow>& t_rows() const { return t_rows_; }
  const std::vector<double>& t_limit_row() const { return t_limit_row_; }

  double z_crit(const Level& level) const;
  // Exact df rows only; df above the largest finite policy threshold (120)
  // uses the normal-limit row, other gaps fall back to the next smaller df
  // (conservative). df < 1 is out of table.
  double t_crit(long df, const Level& level) const;

 private:
  std::vector<ZCritRow> z_rows_;
  std::vector<double> t_cum_probs_;
  std::vector<TRow> t_rows_;
  std::vector<double> t_limit_row_;
};

struct ProportionCI {
  SetValue interval;
  double min_np = 0.0;   // smallest successes count implied by the inputs
  double min_nq = 0.0;   // smallest failures count implied by the inputs
};

struct SampleSize {
  SetValue n_set;
  long n_final = 0;    // ceiling of the largest required size
  bool degenerate = false;  // the size set touches or includes zero
};

struct CltParams {
  SetValue mu_xbar;
  SetValue sigma_xbar;
  bool applicable = false;  // smallest sample size exceeds 30
};

// Standard normal CDF, computed as erfc(-z/sqrt(2))/2; absolute error below
// 5e-8 and monotone in z.
double phi(double z);

double z_crit(const Level& level);
double t_crit(long df, const Level& level);

// (xbar - null_set) / (s / sqrt(n)); requires inf(n) > 30 and inf(s) > 0.
SetValue z_test_stat(const SetValue& xbar, const SetValue& null_set, const SetValue& s,
                     const SetValue& n);

Decision z_decision(const SetValue& z, Alternative alternative, double crit);

// Image of the tail-area map over the statistic set: upper 1-phi, lower phi,
// two-sided 2*(1 - phi(|z|)) (capped at 1 when the set straddles zero).
SetValue p_value(const SetValue& z, Alternative alternative);

// Reject when sup(p) <= inf(alpha), fail to reject when inf(p) > sup(alpha);
// otherwise indeterminate with reject_chance the probability that a uniform
// draw from p lies below a uniform draw from alpha (closed form; reduces to
// (alpha - inf p)/(sup p - inf p) for crisp alpha).
Decision p_decision(const SetValue& pval, const SetValue& alpha);

// xbar +/- z_crit * spread / sqrt(n), combined conservatively as
// [inf(xbar) - sup(margin), sup(xbar) + sup(margin)]. Requires inf(n) > 30.
SetValue ci_mean_z(const SetValue& xbar, const SetValue& spread, const SetValue& n,
                   const Level& level);

// Small-sample mean interval with t_crit(n - 1) in place of the z value.
SetValue ci_mean_t(const SetValue& xbar, const SetValue& s, long n, const Level& level);

// p +/- z_crit * sqrt(p(1-p)/n) with the same conservative combine; requires
// min np >= 5 and min n(1-p) >= 5, both reported in the result.
ProportionCI ci_proportion(const SetValue& p, const SetValue& n, const Level& level);

// Sizes needed to estimate a mean within bound B: (z_crit * sigma / B)^2.
SampleSize sample_size_mean(const SetValue& sigma, double B, const Level& level);

// (high - low) / 4.
SetValue range_sigma_estimate(const SetValue& high, const SetValue& low);

// pi(1-pi) * (z_crit / B)^2 with pi(1-pi) taken as the true image (max 1/4 at
// pi = 1/2); pi defaults to the conservative 1/2 via the overload.
SampleSize sample_size_proportion(const SetValue& pi, double B, const Level& level);
SampleSize sample_size_proportion(double B, const Level& level);

// mu_xbar = mu, sigma_xbar = sigma / sqrt(n); applicable when inf(n) > 30.
CltParams clt_params(const SetValue& mu, const SetValue& sigma, const SetValue& n);

}  // namespace neutrostat
