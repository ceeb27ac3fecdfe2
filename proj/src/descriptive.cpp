#include "neutrostat/descriptive.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "neutrostat/parse.hpp"

namespace neutrostat {

namespace {

[[noreturn]] void fail(const char* code, const std::string& what) {
  throw DomainError(code, what);
}

void check_nonempty(const Dataset& d) {
  if (d.observations.empty()) fail("EmptySet", "dataset needs at least one observation");
}

std::vector<SetValue> ranked(const Dataset& d, Ranking ranking) {
  std::vector<SetValue> obs = d.observations;
  if (ranking == Ranking::MidpointSort)
    std::stable_sort(obs.begin(), obs.end(), [](const SetValue& a, const SetValue& b) {
      return order_cmp(a, b) == Ordering3::Less;
    });
  return obs;
}

SetValue avg_pair(const SetValue& a, const SetValue& b) {
  return div(add(a, b), SetValue(2.0));
}

}  // namespace

SetValue mean_set(const Dataset& d) {
  check_nonempty(d);
  return div(sum(d.observations), SetValue(static_cast<double>(d.observations.size())));
}

SetValue median_set(const Dataset& d, Ranking ranking) {
  check_nonempty(d);
  std::vector<SetValue> obs = ranked(d, ranking);
  size_t n = obs.size();
  if (n % 2 == 1) return obs[n / 2];
  return avg_pair(obs[n / 2 - 1], obs[n / 2]);
}

Quartiles quartiles(const Dataset& d, QuartileRule rule, Ranking ranking) {
  check_nonempty(d);
  size_t n = d.observations.size();
  if (n < 3) fail("TooFewObservations", "quartiles need at least 3 observations");
  std::vector<SetValue> obs = ranked(d, ranking);
  auto at_rank = [&](int i) -> SetValue {
    size_t num = static_cast<size_t>(i) * (n + 1);  // rank = num / 4
    if (num % 4 == 0) return obs[num / 4 - 1];
    if (rule == QuartileRule::InferiorInteger) return obs[num / 4 - 1];
    return avg_pair(obs[num / 4 - 1], obs[num / 4]);
  };
  return {at_rank(1), at_rank(2), at_rank(3)};
}

SetValue stddev_set(const Dataset& d) {
  check_nonempty(d);
  SetValue m = mean_set(d);
  std::vector<SetValue> sq;
  sq.reserve(d.observations.size());
  for (const SetValue& x : d.observations) sq.push_back(pow(sub(x, m), 2));
  SetValue var = div(sum(sq), SetValue(static_cast<double>(d.observations.size())));
  return nth_root(var, 2);
}

NeutroNumber mean_nn(const NNDataset& d) {
  if (d.observations.empty()) fail("EmptySet", "dataset needs at least one observation");
  NeutroNumber acc{0, 0};
  for (const NeutroNumber& x : d.observations) acc = nn_add(acc, x);
  double n = static_cast<double>(d.observations.size());
  return {acc.a / n, acc.b / n};
}

NeutroNumber median_nn(const NNDataset& d) {
  if (d.observations.empty()) fail("EmptySet", "dataset needs at least one observation");
  std::vector<NeutroNumber> obs = d.observations;
  std::stable_sort(obs.begin(), obs.end(), [](const NeutroNumber& u, const NeutroNumber& v) {
    return u.a != v.a ? u.a < v.a : u.b < v.b;
  });
  size_t n = obs.size();
  if (n % 2 == 1) return obs[n / 2];
  const NeutroNumber &lo = obs[n / 2 - 1], &hi = obs[n / 2];
  return {(lo.a + hi.a) / 2, (lo.b + hi.b) / 2};
}

NeutroNumber stddev_nn(const NNDataset& d) {
  NeutroNumber m = mean_nn(d);
  NeutroNumber acc{0, 0};
  for (const NeutroNumber& x : d.observations) {
    NeutroNumber dev = nn_sub(x, m);
    acc = nn_add(acc, nn_mul(dev, dev));
  }
  double n = static_cast<double>(d.observations.size());
  return nn_sqrt_principal({acc.a / n, acc.b / n});
}

FreqTable freq_table(const std::vector<std::pair<std::string, SetValue>>& rows) {
  if (rows.empty()) fail("EmptyTable", "frequency table needs at least one row");
  double sum_inf = 0, sum_sup = 0;
  for (const auto& [cat, f] : rows) {
    if (f.infimum() < 0)
      fail("NegativeFrequency", "frequency for \"" + cat + "\" reaches below zero");
    sum_inf += f.infimum();
    sum_sup += f.supremum();
  }
  if (sum_sup <= 0) fail("EmptyTable", "every frequency is zero; nothing to normalize");

  FreqTable table;
  std::vector<SetValue> rels;
  for (const auto& [cat, f] : rows) {
    double own_inf = f.infimum(), own_sup = f.supremum();
    double others_sup = sum_sup - own_sup, others_inf = sum_inf - own_inf;
    double lo_den = own_inf + others_sup, hi_den = own_sup + others_inf;
    double lo = lo_den > 0 ? own_inf / lo_den : (own_sup > 0 ? 1.0 : 0.0);
    double hi = hi_den > 0 ? own_sup / hi_den : (own_sup > 0 ? 1.0 : 0.0);
    SetValue rel = SetValue::interval(lo, hi);
    rels.push_back(rel);
    table.rows.push_back({cat, f, rel});
  }
  table.total.category = "Total";
  table.total.frequency = SetValue::interval(sum_inf, sum_sup);
  table.total.rel_freq = sum(rels);
  return table;
}

std::string stem_and_leaf(const std::vector<std::pair<int, SetValue>>& data) {
  std::map<int, std::vector<SetValue>> stems;
  for (const auto& [stem, leaf] : data) stems[stem].push_back(leaf);
  std::string out;
  for (auto& [stem, leaves] : stems) {
    std::stable_sort(leaves.begin(), leaves.end(), [](const SetValue& a, const SetValue& b) {
      return order_cmp(a, b) == Ordering3::Less;
    });
    if (!out.empty()) out += "\n";
    out += std::to_string(stem);
    out += " ‖";
    for (const SetValue& leaf : leaves) {
      out += " ";
      out += format_set(leaf);
    }
  }
  return out;
}

namespace {

SubsampleStats subsample_stats(const std::vector<double>& kept, const std::vector<double>& wrong) {
  SubsampleStats s;
  s.wrong_obs = wrong;
  s.kept_obs = kept;
  size_t m = kept.size();
  s.median = m % 2 == 1 ? kept[m / 2] : (kept[m / 2 - 1] + kept[m / 2]) / 2.0;
  double total = 0;
  for (double x : kept) total += x;
  s.mean = total / m;
  double ss = 0;
  for (double x : kept) {
    double dev = x - s.mean;
    s.deviations.push_back(dev);
    s.squared_deviations.push_back(dev * dev);
    ss += dev * dev;
  }
  s.stddev = std::sqrt(ss / m);
  return s;
}

}  // namespace

CombinedStats wrong_obs_enumerate(std::vector<double> observations, int k,
                                  const std::optional<std::vector<double>>& weights) {
  size_t n = observations.size();
  if (n < 2 || k < 1 || static_cast<size_t>(k) > n - 1)
    fail("BadK", "need n >= 2 observations and 1 <= k <= n - 1");
  std::sort(observations.begin(), observations.end());

  CombinedStats out;
  // lexicographic enumeration of the k discarded indices
  std::vector<size_t> discard(k);
  for (int i = 0; i < k; ++i) discard[i] = i;
  while (true) {
    std::vector<double> kept, wrong;
    for (size_t i = 0, d = 0; i < n; ++i) {
      if (d < discard.size() && discard[d] == i) {
        wrong.push_back(observations[i]);
        ++d;
      } else {
        kept.push_back(observations[i]);
      }
    }
    out.samples.push_back(subsample_stats(kept, wrong));
    int pos = k - 1;
    while (pos >= 0 && discard[pos] == n - k + pos) --pos;
    if (pos < 0) break;
    ++discard[pos];
    for (int i = pos + 1; i < k; ++i) discard[i] = discard[i - 1] + 1;
  }

  auto collect = [&](auto getter) {
    std::vector<double> vs;
    for (const SubsampleStats& s : out.samples) vs.push_back(getter(s));
    return vs;
  };
  std::vector<double> medians = collect([](const SubsampleStats& s) { return s.median; });
  std::vector<double> means = collect([](const SubsampleStats& s) { return s.mean; });
  std::vector<double> stddevs = collect([](const SubsampleStats& s) { return s.stddev; });

  auto span = [](const std::vector<double>& vs) {
    auto [lo, hi] = std::minmax_element(vs.begin(), vs.end());
    return SetValue::interval(*lo, *hi);
  };
  auto avg = [](const std::vector<double>& vs) {
    double t = 0;
    for (double v : vs) t += v;
    return t / vs.size();
  };
  out.interval_style = {span(medians), span(means), span(stddevs)};
  out.average_style = {avg(medians), avg(means), avg(stddevs)};

  if (weights) {
    out.weighted_style = StyleStats{weighted_average(medians, *weights),
                                    weighted_average(means, *weights),
                                    weighted_average(stddevs, *weights)};
  }
  return out;
}

double weighted_average(const std::vector<double>& values, const std::vector<double>& weights) {
  if (values.size() != weights.size() || values.empty())
    fail("BadWeights", "need one positive weight per value");
  double num = 0, den = 0;
  for (size_t i = 0; i < values.size(); ++i) {
    if (!(weights[i] > 0)) fail("BadWeights", "weights must be positive");
    num += weights[i] * values[i];
    den += weights[i];
  }
  return num / den;
}

}  // namespace neutrostat
