#include "neutrostat/inference.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iterator>

namespace neutrostat {
namespace {

#include "tables_data.inc"

constexpr double kLevelTol = 1e-9;
constexpr long kNormalFallbackDf = 120;  // above this, gaps use the normal limit row

std::vector<std::string> csv_fields(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else if (c != '\r') {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

double table_num(const std::string& text, const std::string& path) {
  char* end = nullptr;
  double v = std::strtod(text.c_str(), &end);
  if (end == text.c_str() || *end != '\0' || !std::isfinite(v))
    throw DomainError("TableLoadError", "bad number \"" + text + "\" in " + path);
  return v;
}

std::vector<std::string> read_lines(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("TableLoadError", "cannot open " + path);
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line))
    if (!line.empty() && line != "\r") lines.push_back(line);
  if (lines.size() < 2) throw DomainError("TableLoadError", path + " has no data rows");
  return lines;
}

// Map a set through a continuous monotone function, atom by atom. A collapsed
// atom becomes a closed point: its value is attained by interior points.
template <typename F>
SetValue map_monotone(const SetValue& s, F f, bool increasing) {
  std::vector<Atom> out;
  for (const Atom& a : s.atoms()) {
    double flo = f(a.lo), fhi = f(a.hi);
    if (flo == fhi)
      out.push_back({flo, flo, false, false});
    else if (increasing)
      out.push_back({flo, fhi, a.lo_open, a.hi_open});
    else
      out.push_back({fhi, flo, a.hi_open, a.lo_open});
  }
  return SetValue::from_atoms(out);
}

double total_length(const SetValue& s) {
  double len = 0;
  for (const Atom& a : s.atoms()) len += a.hi - a.lo;
  return len;
}

// Fraction of the set lying in the rejection region; length measure for sets
// with interval parts, counting measure for pure point sets.
double fraction_in(const SetValue& s, double above, double below, bool use_above,
                   bool use_below) {
  double len = total_length(s);
  if (len > 0) {
    double part = 0;
    for (const Atom& a : s.atoms()) {
      if (use_above) part += std::max(0.0, a.hi - std::max(a.lo, above));
      if (use_below) part += std::max(0.0, std::min(a.hi, below) - a.lo);
    }
    return std::clamp(part / len, 0.0, 1.0);
  }
  std::vector<double> pts = s.points();
  double hit = 0;
  for (double p : pts) {
    if (use_above && p > above) hit += 1;
    if (use_below && p < below) hit += 1;
  }
  return hit / double(pts.size());
}

Decision make_decision(Verdict v, double reject_chance) {
  return {v, reject_chance, 1.0 - reject_chance};
}

// [inf(center) - sup(margin), sup(center) + sup(margin)], the conservative
// hull of the subtracted and added branches.
SetValue combine_ci(const SetValue& center, const SetValue& margin) {
  double lo = center.infimum() - margin.supremum();
  double hi = center.supremum() + margin.supremum();
  if (lo == hi) return SetValue(lo);
  bool lo_open = !(center.inf_attained() && margin.sup_attained());
  bool hi_open = !(center.sup_attained() && margin.sup_attained());
  return SetValue::interval(lo, hi, lo_open, hi_open);
}

void check_spread(const SetValue& spread) {
  if (spread.infimum() < 0)
    throw DomainError("BadSpread", "spread set must be nonnegative");
}

void check_unit_range(const SetValue& p) {
  if (p.infimum() < 0 || p.supremum() > 1)
    throw DomainError("BadProportion", "proportion set must lie within [0, 1]");
}

long ceil_long(double x) { return static_cast<long>(std::ceil(x)); }

}  // namespace

double phi(double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); }

CriticalTable::CriticalTable(std::vector<ZCritRow> z_rows, std::vector<double> t_cum_probs,
                             std::vector<TRow> t_rows, std::vector<double> t_limit_row)
    : z_rows_(std::move(z_rows)),
      t_cum_probs_(std::move(t_cum_probs)),
      t_rows_(std::move(t_rows)),
      t_limit_row_(std::move(t_limit_row)) {
  if (z_rows_.empty() || t_cum_probs_.empty() || t_rows_.empty())
    throw DomainError("BadTable", "critical table has an empty section");
  for (size_t i = 0; i < z_rows_.size(); ++i) {
    const ZCritRow& r = z_rows_[i];
    if (!(r.z > 0) || !(r.right_tail > 0 && r.right_tail < 1) ||
        !(r.central > 0 && r.central < 1))
      throw DomainError("BadTable", "z critical row out of range");
    if (i > 0 && !(r.z > z_rows_[i - 1].z && r.right_tail < z_rows_[i - 1].right_tail &&
                   r.central > z_rows_[i - 1].central))
      throw DomainError("BadTable", "z critical rows must be ordered");
  }
  for (size_t j = 0; j < t_cum_probs_.size(); ++j) {
    if (!(t_cum_probs_[j] > 0 && t_cum_probs_[j] < 1))
      throw DomainError("BadTable", "t column probability out of range");
    if (j > 0 && !(t_cum_probs_[j] > t_cum_probs_[j - 1]))
      throw DomainError("BadTable", "t column probabilities must increase");
  }
  if (t_limit_row_.size() != t_cum_probs_.size())
    throw DomainError("BadTable", "t limit row width mismatch");
  for (size_t i = 0; i < t_rows_.size(); ++i) {
    const TRow& r = t_rows_[i];
    if (r.df < 1) throw DomainError("BadTable", "t row df must be at least 1");
    if (i > 0 && r.df <= t_rows_[i - 1].df)
      throw DomainError("BadTable", "t rows must have increasing df");
    if (r.crit.size() != t_cum_probs_.size())
      throw DomainError("BadTable", "t row width mismatch");
    for (size_t j = 0; j < r.crit.size(); ++j) {
      if (i > 0 && r.crit[j] > t_rows_[i - 1].crit[j])
        throw DomainError("BadTable", "t criticals must not increase with df");
    }
  }
  for (size_t j = 0; j < t_limit_row_.size(); ++j)
    if (t_limit_row_[j] > t_rows_.back().crit[j])
      throw DomainError("BadTable", "t limit row must not exceed the last df row");
}

const CriticalTable& CriticalTable::embedded() {
  static const CriticalTable table = [] {
    return CriticalTable(
        std::vector<ZCritRow>(std::begin(kZCritRows), std::end(kZCritRows)),
        std::vector<double>(std::begin(kTCumProbs), std::end(kTCumProbs)),
        std::vector<TRow>(std::begin(kTRows), std::end(kTRows)),
        std::vector<double>(std::begin(kTLimitRow), std::end(kTLimitRow)));
  }();
  return table;
}

CriticalTable CriticalTable::load_dir(const std::string& dir) {
  const std::string z_path = dir + "/z_crit.csv";
  std::vector<ZCritRow> z;
  std::vector<std::string> z_lines = read_lines(z_path);
  for (size_t i = 1; i < z_lines.size(); ++i) {
    std::vector<std::string> f = csv_fields(z_lines[i]);
    if (f.size() != 3)
      throw DomainError("TableLoadError", z_path + ": expected 3 columns");
    z.push_back({table_num(f[0], z_path), table_num(f[1], z_path), table_num(f[2], z_path)});
  }

  const std::string t_path = dir + "/t_table.csv";
  std::vector<std::string> t_lines = read_lines(t_path);
  std::vector<std::string> head = csv_fields(t_lines[0]);
  if (head.size() < 2) throw DomainError("TableLoadError", t_path + ": bad header");
  std::vector<double> probs;
  for (size_t j = 1; j < head.size(); ++j) probs.push_back(table_num(head[j], t_path));
  std::vector<TRow> rows;
  std::vector<double> limit;
  for (size_t i = 1; i < t_lines.size(); ++i) {
    std::vector<std::string> f = csv_fields(t_lines[i]);
    if (f.size() != head.size())
      throw DomainError("TableLoadError", t_path + ": ragged row");
    std::vector<double> vals;
    for (size_t j = 1; j < f.size(); ++j) vals.push_back(table_num(f[j], t_path));
    if (f[0] == "z" || f[0] == "Z")
      limit = std::move(vals);
    else
      rows.push_back({ceil_long(table_num(f[0], t_path)), std::move(vals)});
  }
  if (limit.empty())
    throw DomainError("TableLoadError", t_path + ": missing the z limit row");
  return CriticalTable(std::move(z), std::move(probs), std::move(rows), std::move(limit));
}

const CriticalTable& CriticalTable::active() {
  static const CriticalTable table = [] {
    const char* dir = std::getenv("NEUTROSTAT_TABLES");
    if (dir != nullptr && *dir != '\0') return load_dir(dir);
    return embedded();
  }();
  return table;
}

double CriticalTable::z_crit(const Level& level) const {
  if (!(level.value > 0 && level.value < 1))
    throw DomainError("UnknownLevel", "level must be strictly between 0 and 1");
  for (const ZCritRow& r : z_rows_) {
    double have = level.kind == Level::Kind::Central ? r.central : r.right_tail;
    if (std::fabs(have - level.value) <= kLevelTol) return r.z;
  }
  throw DomainError("UnknownLevel", "no z critical row for the requested level");
}

double CriticalTable::t_crit(long df, const Level& level) const {
  if (!(level.value > 0 && level.value < 1))
    throw DomainError("UnknownLevel", "level must be strictly between 0 and 1");
  double cum = level.kind == Level::Kind::Central ? (1 + level.value) / 2 : 1 - level.value;
  size_t col = t_cum_probs_.size();
  for (size_t j = 0; j < t_cum_probs_.size(); ++j)
    if (std::fabs(t_cum_probs_[j] - cum) <= kLevelTol) col = j;
  if (col == t_cum_probs_.size())
    throw DomainError("UnknownLevel", "no t column for the requested level");
  if (df < 1) throw DomainError("DfOutOfTable", "degrees of freedom must be at least 1");
  const TRow* below = nullptr;
  for (const TRow& r : t_rows_) {
    if (r.df == df) return r.crit[col];
    if (r.df < df) below = &r;
  }
  if (df > kNormalFallbackDf) return t_limit_row_[col];
  if (below == nullptr) throw DomainError("DfOutOfTable", "no row at or below this df");
  return below->crit[col];
}

double z_crit(const Level& level) { return CriticalTable::active().z_crit(level); }

double t_crit(long df, const Level& level) {
  return CriticalTable::active().t_crit(df, level);
}

SetValue z_test_stat(const SetValue& xbar, const SetValue& null_set, const SetValue& s,
                     const SetValue& n) {
  if (!(n.infimum() > 30))
    throw DomainError("SmallSample", "sample size set must exceed 30 throughout");
  if (!(s.infimum() > 0))
    throw DomainError("BadSpread", "standard deviation set must be strictly positive");
  return div(sub(xbar, null_set), div(s, nth_root(n, 2)));
}

Decision z_decision(const SetValue& z, Alternative alternative, double crit) {
  switch (alternative) {
    case Alternative::GreaterThanSup:
      if (z.infimum() > crit) return make_decision(Verdict::Reject, 1.0);
      if (z.supremum() <= crit) return make_decision(Verdict::FailToReject, 0.0);
      return make_decision(Verdict::Indeterminate, fraction_in(z, crit, 0, true, false));
    case Alternative::LessThanInf:
      if (z.supremum() < -crit) return make_decision(Verdict::Reject, 1.0);
      if (z.infimum() >= -crit) return make_decision(Verdict::FailToReject, 0.0);
      return make_decision(Verdict::Indeterminate, fraction_in(z, 0, -crit, false, true));
    case Alternative::Outside:
      if (z.infimum() > crit || z.supremum() < -crit)
        return make_decision(Verdict::Reject, 1.0);
      if (z.infimum() >= -crit && z.supremum() <= crit)
        return make_decision(Verdict::FailToReject, 0.0);
      return make_decision(Verdict::Indeterminate, fraction_in(z, crit, -crit, true, true));
  }
  throw DomainError("BadAlternative", "unrecognized alternative");
}

SetValue p_value(const SetValue& z, Alternative alternative) {
  switch (alternative) {
    case Alternative::GreaterThanSup:
      return map_monotone(z, [](double t) { return 1 - phi(t); }, false);
    case Alternative::LessThanInf:
      return map_monotone(z, [](double t) { return phi(t); }, true);
    case Alternative::Outside: {
      // image of t -> 2*(1 - phi(|t|)); equals 1 where the set crosses zero
      std::vector<Atom> out;
      for (const Atom& a : z.atoms()) {
        Atom mag;
        if (a.lo >= 0) {
          mag = a;
        } else if (a.hi <= 0) {
          mag = {-a.hi, -a.lo, a.hi_open, a.lo_open};
        } else {
          double m = std::max(-a.lo, a.hi);
          bool m_open = (-a.lo > a.hi)   ? a.lo_open
                        : (a.hi > -a.lo) ? a.hi_open
                                         : (a.lo_open && a.hi_open);
          mag = {0.0, m, false, m_open};
        }
        double lo = 2 * (1 - phi(mag.hi)), hi = 2 * (1 - phi(mag.lo));
        if (lo == hi)
          out.push_back({lo, lo, false, false});
        else
          out.push_back({lo, hi, mag.hi_open, mag.lo_open});
      }
      return SetValue::from_atoms(out);
    }
  }
  throw DomainError("BadAlternative", "unrecognized alternative");
}

Decision p_decision(const SetValue& pval, const SetValue& alpha) {
  double p1 = pval.infimum(), p2 = pval.supremum();
  double a1 = alpha.infimum(), a2 = alpha.supremum();
  if (p2 <= a1) return make_decision(Verdict::Reject, 1.0);
  if (p1 > a2) return make_decision(Verdict::FailToReject, 0.0);
  // P(P <= A) for independent uniforms over the two hulls; widths of zero act
  // as point masses, so a crisp alpha gives (alpha - p1) / (p2 - p1)
  double chance;
  if (p1 == p2 && a1 == a2) {
    chance = p1 <= a1 ? 1.0 : 0.0;
  } else if (p1 == p2) {
    chance = std::clamp((a2 - p1) / (a2 - a1), 0.0, 1.0);
  } else if (a1 == a2) {
    chance = std::clamp((a1 - p1) / (p2 - p1), 0.0, 1.0);
  } else {
    auto area_below = [&](double a) {  // integral of |[p1,p2] up to t| for t <= a
      if (a <= p1) return 0.0;
      if (a >= p2) return 0.5 * (p2 - p1) * (p2 - p1) + (p2 - p1) * (a - p2);
      return 0.5 * (a - p1) * (a - p1);
    };
    chance = (area_below(a2) - area_below(a1)) / ((p2 - p1) * (a2 - a1));
    chance = std::clamp(chance, 0.0, 1.0);
  }
  return make_decision(Verdict::Indeterminate, chance);
}

SetValue ci_mean_z(const SetValue& xbar, const SetValue& spread, const SetValue& n,
                   const Level& level) {
  if (!(n.infimum() > 30))
    throw DomainError("SmallSample", "sample size set must exceed 30 throughout");
  check_spread(spread);
  SetValue margin = mul(SetValue(z_crit(level)), div(spread, nth_root(n, 2)));
  return combine_ci(xbar, margin);
}

SetValue ci_mean_t(const SetValue& xbar, const SetValue& s, long n, const Level& level) {
  if (n < 2) throw DomainError("BadN", "t interval needs a sample of at least 2");
  check_spread(s);
  SetValue margin =
      mul(SetValue(t_crit(n - 1, level)), div(s, SetValue(std::sqrt(double(n)))));
  return combine_ci(xbar, margin);
}

ProportionCI ci_proportion(const SetValue& p, const SetValue& n, const Level& level) {
  check_unit_range(p);
  ProportionCI out;
  out.min_np = n.infimum() * p.infimum();
  out.min_nq = n.infimum() * (1 - p.supremum());
  if (out.min_np < 5)
    throw DomainError("PreconditionFailed",
                      "smallest successes count " + std::to_string(out.min_np) +
                          " is below 5");
  if (out.min_nq < 5)
    throw DomainError("PreconditionFailed",
                      "smallest failures count " + std::to_string(out.min_nq) +
                          " is below 5");
  SetValue variance = div(mul(p, sub(SetValue(1.0), p)), n);
  SetValue margin = mul(SetValue(z_crit(level)), nth_root(variance, 2));
  out.interval = combine_ci(p, margin);
  return out;
}

SampleSize sample_size_mean(const SetValue& sigma, double B, const Level& level) {
  if (!(B > 0)) throw DomainError("BadBound", "error bound must be positive");
  check_spread(sigma);
  SetValue n_set = pow(div(mul(SetValue(z_crit(level)), sigma), SetValue(B)), 2);
  return {n_set, ceil_long(n_set.supremum()), n_set.infimum() <= 0};
}

SetValue range_sigma_estimate(const SetValue& high, const SetValue& low) {
  return div(sub(high, low), SetValue(4.0));
}

SampleSize sample_size_proportion(const SetValue& pi, double B, const Level& level) {
  if (!(B > 0)) throw DomainError("BadBound", "error bound must be positive");
  check_unit_range(pi);
  // true image of t -> t(1-t): increasing up to 1/2, decreasing after
  std::vector<Atom> img;
  for (const Atom& a : pi.atoms()) {
    double glo = a.lo * (1 - a.lo), ghi = a.hi * (1 - a.hi);
    double mn;
    bool mn_open;
    if (glo < ghi) {
      mn = glo;
      mn_open = a.lo_open;
    } else if (ghi < glo) {
      mn = ghi;
      mn_open = a.hi_open;
    } else {
      mn = glo;
      mn_open = a.lo_open && a.hi_open;
    }
    double mx;
    bool mx_open;
    if (a.lo < 0.5 && a.hi > 0.5) {
      mx = 0.25;  // interior maximum, always attained
      mx_open = false;
    } else if (glo > ghi) {
      mx = glo;
      mx_open = a.lo_open;
    } else if (ghi > glo) {
      mx = ghi;
      mx_open = a.hi_open;
    } else {
      mx = glo;
      mx_open = a.lo_open && a.hi_open;
    }
    if (mn == mx)
      img.push_back({mn, mn, false, false});
    else
      img.push_back({mn, mx, mn_open, mx_open});
  }
  double scale = z_crit(level) / B;
  SetValue n_set = mul(SetValue::from_atoms(img), SetValue(scale * scale));
  return {n_set, ceil_long(n_set.supremum()), n_set.infimum() <= 0};
}

SampleSize sample_size_proportion(double B, const Level& level) {
  return sample_size_proportion(SetValue(0.5), B, level);
}

CltParams clt_params(const SetValue& mu, const SetValue& sigma, const SetValue& n) {
  return {mu, div(sigma, nth_root(n, 2)), n.infimum() > 30};
}

}  // namespace neutrostat
