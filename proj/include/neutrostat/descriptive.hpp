#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "neutrostat/neutro_num.hpp"
#include "neutrostat/setval.hpp"

namespace neutrostat {

struct Dataset {
  std::vector<SetValue> observations;
  std::string label;
};

struct NNDataset {
  std::vector<NeutroNumber> observations;
};

// How positional statistics rank the observations: by the midpoint total
// order (default), or trusting the order the data was supplied in (useful
// when the caller has already arranged the observations).
enum class Ranking { MidpointSort, AsGiven };

// Fractional quartile ranks either average the two adjacent observations or
// fall back to the observation at the integer part of the rank.
enum class QuartileRule { AverageAdjacent, InferiorInteger };

SetValue mean_set(const Dataset& d);
SetValue median_set(const Dataset& d, Ranking ranking = Ranking::MidpointSort);

struct Quartiles {
  SetValue q1, q2, q3;
};
// Rank i(n+1)/4 for i = 1,2,3 over the totally ordered observations; needs
// n >= 3 (TooFewObservations).
Quartiles quartiles(const Dataset& d, QuartileRule rule = QuartileRule::AverageAdjacent,
                    Ranking ranking = Ranking::MidpointSort);

// Population form: sqrt(mean of squared deviations), dividing by n.
SetValue stddev_set(const Dataset& d);

NeutroNumber mean_nn(const NNDataset& d);
// Sorts by determinate part, ties by I-coefficient; averages the middles.
NeutroNumber median_nn(const NNDataset& d);
// Principal square root of the population mean of squared deviations.
NeutroNumber stddev_nn(const NNDataset& d);

struct FreqRow {
  std::string category;
  SetValue frequency;
  SetValue rel_freq;
};

struct FreqTable {
  std::vector<FreqRow> rows;
  FreqRow total;
};

// Relative frequencies use the constrained min/max over admissible frequency
// assignments — each row's own bound against the opposite bounds of all other
// rows — which is tighter than naive interval division by the total:
//   min_i = inf(f_i) / (inf(f_i) + sum_{j != i} sup(f_j))
//   max_i = sup(f_i) / (sup(f_i) + sum_{j != i} inf(f_j))
// The totals row sums frequencies endpointwise and rel_freqs as intervals.
FreqTable freq_table(const std::vector<std::pair<std::string, SetValue>>& rows);

// One line per stem in ascending order: "stem ‖ leaf leaf ..." with leaves
// sorted by the midpoint order and rendered in the set grammar.
std::string stem_and_leaf(const std::vector<std::pair<int, SetValue>>& data);

struct SubsampleStats {
  std::vector<double> wrong_obs;  // the discarded observations (ascending data)
  std::vector<double> kept_obs;
  double median = 0, mean = 0, stddev = 0;
  std::vector<double> deviations, squared_deviations;
};

struct StyleStats {
  double median = 0, mean = 0, stddev = 0;
};

struct IntervalStyle {
  SetValue median, mean, stddev;
};

struct CombinedStats {
  std::vector<SubsampleStats> samples;
  IntervalStyle interval_style;  // [min, max] across subsamples per metric
  StyleStats average_style;      // plain mean across subsamples
  std::optional<StyleStats> weighted_style;
};

// "k of these observations are wrong, but nobody knows which": sorts the data
// ascending, enumerates all C(n, n-k) keep-subsets in lexicographic order of
// the discarded index set, computes classical per-subsample statistics
// (population stddev), and combines them three ways. Weights, if given, are
// per subsample in enumeration order.
CombinedStats wrong_obs_enumerate(std::vector<double> observations, int k,
                                  const std::optional<std::vector<double>>& weights = std::nullopt);

// sum(w_i a_i) / sum(w_i); lengths must match and weights must be positive.
double weighted_average(const std::vector<double>& values, const std::vector<double>& weights);

}  // namespace neutrostat
