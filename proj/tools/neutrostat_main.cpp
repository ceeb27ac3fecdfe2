#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "neutrostat/descriptive.hpp"
#include "neutrostat/distributions.hpp"
#include "neutrostat/inference.hpp"
#include "neutrostat/neutro_num.hpp"
#include "neutrostat/parse.hpp"
#include "neutrostat/randgen.hpp"
#include "neutrostat/regression.hpp"
#include "neutrostat/setval.hpp"
#include "neutrostat/svg.hpp"

using nlohmann::json;
using namespace neutrostat;

namespace {

constexpr const char* kVersion = "0.1.0";

// ---- report plumbing ------------------------------------------------------

struct Report {
  std::string command;
  json inputs = json::object();
  json results = json::object();
  json warnings = json::array();
  int precision = 6;
  std::string format = "json";

  json to_json() const {
    return json{{"command", command},
                {"inputs", inputs},
                {"results", results},
                {"version", kVersion},
                {"warnings", warnings}};
  }
};

double rounded(double v, int prec) {
  return std::strtod(format_double_g(v, prec).c_str(), nullptr);
}

json num(double v, int prec) { return json(rounded(v, prec)); }

std::string render_num(double v, int prec) { return format_double_g(v, prec); }

// The canonical set grammar with every number at the report precision.
std::string render_set(const SetValue& s, int prec) {
  if (s.is_crisp()) return render_num(s.crisp_value(), prec);
  const std::vector<Atom>& atoms = s.atoms();
  std::string out;
  bool first_part = true;
  auto join = [&] {
    if (!first_part) out += "U";
    first_part = false;
  };
  for (std::size_t i = 0; i < atoms.size();) {
    if (atoms[i].is_point()) {
      std::size_t j = i;
      while (j < atoms.size() && atoms[j].is_point()) ++j;
      join();
      out += "{";
      for (std::size_t k = i; k < j; ++k) {
        if (k > i) out += ",";
        out += render_num(atoms[k].lo, prec);
      }
      out += "}";
      i = j;
    } else {
      const Atom& a = atoms[i];
      join();
      out += a.lo_open ? "(" : "[";
      out += render_num(a.lo, prec);
      out += ",";
      out += render_num(a.hi, prec);
      out += a.hi_open ? ")" : "]";
      ++i;
    }
  }
  return out;
}

std::string render_nn(const NeutroNumber& v, int prec) {
  return format_nn({rounded(v.a, prec), rounded(v.b, prec)});
}

std::string render_nc(const NeutroComplex& v, int prec) {
  return format_ncomplex(
      {rounded(v.a, prec), rounded(v.b, prec), rounded(v.c, prec), rounded(v.d, prec)});
}

json warning_json(const Warning& w, int prec) {
  json vals = json::array();
  for (double v : w.values) vals.push_back(num(v, prec));
  return json{{"code", w.code}, {"message", w.message}, {"values", vals}};
}

void print_table(const json& j, const std::string& prefix, std::ostream& os) {
  if (j.is_object()) {
    for (auto it = j.begin(); it != j.end(); ++it)
      print_table(it.value(), prefix.empty() ? it.key() : prefix + "." + it.key(), os);
  } else if (j.is_array()) {
    for (std::size_t i = 0; i < j.size(); ++i)
      print_table(j[i], prefix + "[" + std::to_string(i) + "]", os);
  } else if (j.is_string()) {
    os << prefix << ": " << j.get<std::string>() << "\n";
  } else {
    os << prefix << ": " << j.dump() << "\n";
  }
}

void emit(const Report& r) {
  if (r.format == "table")
    print_table(r.to_json(), "", std::cout);
  else
    std::cout << r.to_json().dump(2) << "\n";
}

// ---- input loading --------------------------------------------------------

std::vector<std::string> split_ws(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  std::string tok;
  while (in >> tok) out.push_back(tok);
  return out;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

// Comma-separated fields; double quotes protect embedded commas.
std::vector<std::string> csv_fields(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  bool quoted = false;
  for (char c : line) {
    if (quoted) {
      if (c == '"')
        quoted = false;
      else
        cur += c;
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      out.push_back(trim(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(trim(cur));
  return out;
}

std::vector<std::string> read_lines(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("IoError", "cannot open " + path);
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    lines.push_back(line);
  }
  return lines;
}

// Cells of one CSV column; the column is named in the header row or given as
// a 0-based index.
std::vector<std::string> csv_column(const std::string& path, const std::string& col) {
  const auto lines = read_lines(path);
  if (lines.empty()) throw DomainError("IoError", path + " is empty");
  const auto header = csv_fields(lines.front());
  std::size_t idx = header.size();
  try {
    std::size_t pos = 0;
    const int as_int = std::stoi(col, &pos);
    if (pos == col.size() && as_int >= 0) idx = static_cast<std::size_t>(as_int);
  } catch (...) {
  }
  if (idx >= header.size())
    for (std::size_t i = 0; i < header.size(); ++i)
      if (header[i] == col) idx = i;
  if (idx >= header.size())
    throw DomainError("IoError", "column '" + col + "' not found in " + path);
  std::vector<std::string> cells;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    if (trim(lines[i]).empty()) continue;
    const auto fields = csv_fields(lines[i]);
    if (idx >= fields.size())
      throw DomainError("IoError", path + " row " + std::to_string(i + 1) + " is too short");
    cells.push_back(fields[idx]);
  }
  return cells;
}

// Shared --data/--file/--csv/--col options; exactly one source must be set.
struct DataOpts {
  std::string inline_data;
  std::string file;
  std::string csv;
  std::string col = "0";
};

void add_data_opts(CLI::App* cmd, DataOpts& d) {
  cmd->add_option("--data", d.inline_data, "whitespace-separated observations");
  cmd->add_option("--file", d.file, "file with one observation per line");
  cmd->add_option("--csv", d.csv, "CSV file to read a column from");
  cmd->add_option("--col", d.col, "CSV column name or 0-based index (default 0)");
}

std::vector<std::string> load_tokens(const DataOpts& d, json& inputs) {
  const int sources = !d.inline_data.empty() + !d.file.empty() + !d.csv.empty();
  if (sources != 1)
    throw CLI::ValidationError("data", "give exactly one of --data, --file, --csv");
  if (!d.inline_data.empty()) {
    inputs["data"] = d.inline_data;
    return split_ws(d.inline_data);
  }
  if (!d.file.empty()) {
    inputs["file"] = d.file;
    std::vector<std::string> toks;
    for (const auto& line : read_lines(d.file))
      if (!trim(line).empty()) toks.push_back(trim(line));
    return toks;
  }
  inputs["csv"] = d.csv;
  inputs["column"] = d.col;
  return csv_column(d.csv, d.col);
}

std::vector<SetValue> load_observations(const DataOpts& d, json& inputs) {
  std::vector<SetValue> obs;
  for (const auto& tok : load_tokens(d, inputs)) obs.push_back(parse_set(tok));
  return obs;
}

std::vector<SetValue> parse_set_list(const std::string& text) {
  std::vector<SetValue> out;
  for (const auto& tok : split_ws(text)) out.push_back(parse_set(tok));
  return out;
}

const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Reject: return "Reject";
    case Verdict::FailToReject: return "FailToReject";
    default: return "Indeterminate";
  }
}

json decision_json(const Decision& d, int prec) {
  return json{{"verdict", verdict_name(d.verdict)},
              {"reject_chance", num(d.reject_chance, prec)},
              {"fail_chance", num(d.fail_chance, prec)}};
}

const char* mode_name(ProbMode m) {
  switch (m) {
    case ProbMode::Complete: return "Complete";
    case ProbMode::Incomplete: return "Incomplete";
    default: return "Paraconsistent";
  }
}

json triplet_json(const NeutroTriplet& t, int prec) {
  return json{{"T", num(t.T, prec)}, {"I", num(t.I, prec)}, {"F", num(t.F, prec)}};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"set-valued and indeterminacy-aware statistics"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);
  app.fallthrough();

  Report rep;
  std::string plot_path;
  std::uint64_t seed = 0;
  app.add_option("--precision", rep.precision, "significant digits in reports (default 6)")
      ->check(CLI::Range(1, 17));
  app.add_option("--format", rep.format, "report format")
      ->check(CLI::IsMember({"json", "table"}));
  app.add_option("--plot", plot_path, "write an SVG plot to this path");
  auto* seed_opt = app.add_option("--seed", seed, "random seed");

  auto add_cmd = [&](const std::string& name, const std::string& desc) {
    CLI::App* cmd = app.add_subcommand(name, desc);
    cmd->fallthrough();
    return cmd;
  };

  // ---- describe -----------------------------------------------------------
  {
    auto* cmd = add_cmd("describe", "mean, median, and standard deviation");
    auto d = std::make_shared<DataOpts>();
    auto ranking = std::make_shared<std::string>("midpoint");
    add_data_opts(cmd, *d);
    cmd->add_option("--rank", *ranking, "observation ordering: midpoint|given")
        ->check(CLI::IsMember({"midpoint", "given"}));
    cmd->callback([&rep, d, ranking] {
      rep.command = "describe";
      Dataset ds{load_observations(*d, rep.inputs), ""};
      const Ranking r = *ranking == "given" ? Ranking::AsGiven : Ranking::MidpointSort;
      if (*ranking == "given") rep.inputs["rank"] = *ranking;
      rep.results["n"] = static_cast<int>(ds.observations.size());
      rep.results["mean"] = render_set(mean_set(ds), rep.precision);
      rep.results["median"] = render_set(median_set(ds, r), rep.precision);
      rep.results["stddev"] = render_set(stddev_set(ds), rep.precision);
    });
  }

  // ---- quartiles ----------------------------------------------------------
  {
    auto* cmd = add_cmd("quartiles", "quartiles at ranks i(n+1)/4");
    auto d = std::make_shared<DataOpts>();
    auto rule = std::make_shared<std::string>("average");
    auto ranking = std::make_shared<std::string>("midpoint");
    add_data_opts(cmd, *d);
    cmd->add_option("--rule", *rule, "fractional rank handling: average|inferior")
        ->check(CLI::IsMember({"average", "inferior"}));
    cmd->add_option("--rank", *ranking, "observation ordering: midpoint|given")
        ->check(CLI::IsMember({"midpoint", "given"}));
    cmd->callback([&rep, d, rule, ranking] {
      rep.command = "quartiles";
      Dataset ds{load_observations(*d, rep.inputs), ""};
      if (*rule == "inferior") rep.inputs["rule"] = *rule;
      if (*ranking == "given") rep.inputs["rank"] = *ranking;
      const Quartiles q = quartiles(
          ds, *rule == "inferior" ? QuartileRule::InferiorInteger : QuartileRule::AverageAdjacent,
          *ranking == "given" ? Ranking::AsGiven : Ranking::MidpointSort);
      rep.results["q1"] = render_set(q.q1, rep.precision);
      rep.results["q2"] = render_set(q.q2, rep.precision);
      rep.results["q3"] = render_set(q.q3, rep.precision);
    });
  }

  // ---- freq ---------------------------------------------------------------
  {
    auto* cmd = add_cmd("freq", "frequency table with constrained relative frequencies");
    auto d = std::make_shared<DataOpts>();
    auto labels = std::make_shared<std::string>();
    add_data_opts(cmd, *d);
    cmd->add_option("--labels", *labels, "whitespace-separated category names");
    cmd->callback([&rep, &plot_path, d, labels] {
      rep.command = "freq";
      const auto freqs = load_observations(*d, rep.inputs);
      std::vector<std::string> names = split_ws(*labels);
      if (!labels->empty()) rep.inputs["labels"] = *labels;
      if (!names.empty() && names.size() != freqs.size())
        throw CLI::ValidationError("--labels", "label count must match the observation count");
      std::vector<std::pair<std::string, SetValue>> rows;
      for (std::size_t i = 0; i < freqs.size(); ++i)
        rows.emplace_back(names.empty() ? std::to_string(i + 1) : names[i], freqs[i]);
      const FreqTable table = freq_table(rows);
      json jrows = json::array();
      for (const auto& row : table.rows)
        jrows.push_back(json{{"category", row.category},
                             {"frequency", render_set(row.frequency, rep.precision)},
                             {"rel_freq", render_set(row.rel_freq, rep.precision)}});
      rep.results["rows"] = jrows;
      rep.results["total"] = json{{"frequency", render_set(table.total.frequency, rep.precision)},
                                  {"rel_freq", render_set(table.total.rel_freq, rep.precision)}};
      if (!plot_path.empty()) {
        std::vector<HistogramBar> bars;
        for (std::size_t i = 0; i < freqs.size(); ++i)
          bars.push_back({static_cast<double>(i), static_cast<double>(i) + 1, freqs[i]});
        write_file(svg_histogram(bars), plot_path);
        rep.results["plot"] = plot_path;
      }
    });
  }

  // ---- wrongobs -----------------------------------------------------------
  {
    auto* cmd = add_cmd("wrongobs", "statistics when k of the observations are wrong");
    auto d = std::make_shared<DataOpts>();
    auto k = std::make_shared<int>(1);
    auto weights = std::make_shared<std::string>();
    add_data_opts(cmd, *d);
    cmd->add_option("--k", *k, "how many observations are wrong")->required();
    cmd->add_option("--weights", *weights, "per-subsample weights, enumeration order");
    cmd->callback([&rep, d, k, weights] {
      rep.command = "wrongobs";
      std::vector<double> obs;
      for (const auto& s : load_observations(*d, rep.inputs)) {
        if (!s.is_crisp())
          throw CLI::ValidationError("--data", "wrongobs expects crisp observations");
        obs.push_back(s.crisp_value());
      }
      rep.inputs["k"] = *k;
      std::optional<std::vector<double>> w;
      if (!weights->empty()) {
        rep.inputs["weights"] = *weights;
        std::vector<double> ws;
        for (const auto& tok : split_ws(*weights)) ws.push_back(std::stod(tok));
        w = ws;
      }
      const CombinedStats stats = wrong_obs_enumerate(obs, *k, w);
      json samples = json::array();
      for (const auto& s : stats.samples) {
        json wrong = json::array();
        for (double v : s.wrong_obs) wrong.push_back(num(v, rep.precision));
        samples.push_back(json{{"wrong", wrong},
                               {"median", num(s.median, rep.precision)},
                               {"mean", num(s.mean, rep.precision)},
                               {"stddev", num(s.stddev, rep.precision)}});
      }
      rep.results["samples"] = samples;
      rep.results["interval_style"] =
          json{{"median", render_set(stats.interval_style.median, rep.precision)},
               {"mean", render_set(stats.interval_style.mean, rep.precision)},
               {"stddev", render_set(stats.interval_style.stddev, rep.precision)}};
      rep.results["average_style"] = json{{"median", num(stats.average_style.median, rep.precision)},
                                          {"mean", num(stats.average_style.mean, rep.precision)},
                                          {"stddev", num(stats.average_style.stddev, rep.precision)}};
      if (stats.weighted_style)
        rep.results["weighted_style"] =
            json{{"median", num(stats.weighted_style->median, rep.precision)},
                 {"mean", num(stats.weighted_style->mean, rep.precision)},
                 {"stddev", num(stats.weighted_style->stddev, rep.precision)}};
    });
  }

  // ---- binom --------------------------------------------------------------
  {
    auto* cmd = add_cmd("binom", "indeterminacy-aware binomial chance triplet");
    auto spec = std::make_shared<BinomialSpec>();
    auto x = std::make_shared<int>(0);
    cmd->add_option("--n", spec->n, "number of trials")->required();
    cmd->add_option("--th", spec->th, "indeterminacy threshold")->required();
    cmd->add_option("--ps", spec->pS, "chance of success")->required();
    cmd->add_option("--pi", spec->pI, "chance of indeterminacy")->required();
    cmd->add_option("--pf", spec->pF, "chance of failure")->required();
    cmd->add_option("--x", *x, "success count")->required();
    cmd->callback([&rep, spec, x] {
      rep.command = "binom";
      rep.inputs = json{{"n", spec->n}, {"th", spec->th}, {"ps", spec->pS},
                        {"pi", spec->pI}, {"pf", spec->pF}, {"x", *x}};
      const NeutroTriplet t = nbinomial_pmf(*spec, *x);
      rep.results["triplet"] = triplet_json(t, rep.precision);
      rep.results["normalized"] = triplet_json(normalize_triplet(t), rep.precision);
      rep.results["sum"] = num(t.T + t.I + t.F, rep.precision);
      rep.results["mode"] = mode_name(classify_mode(spec->pS, spec->pI, spec->pF));
    });
  }

  // ---- multinom -----------------------------------------------------------
  {
    auto* cmd = add_cmd("multinom", "indeterminacy-aware multinomial chance triplet");
    auto spec = std::make_shared<MultinomialSpec>();
    auto pstr = std::make_shared<std::string>();
    auto xstr = std::make_shared<std::string>();
    cmd->add_option("--n", spec->n, "number of trials")->required();
    cmd->add_option("--th", spec->th, "indeterminacy threshold")->required();
    cmd->add_option("--p", *pstr, "determinate event chances, whitespace-separated")->required();
    cmd->add_option("--i", spec->i, "chance one trial is indeterminate")->required();
    cmd->add_option("--x", *xstr, "count per determinate event, whitespace-separated")
        ->required();
    cmd->callback([&rep, spec, pstr, xstr] {
      rep.command = "multinom";
      rep.inputs = json{{"n", spec->n}, {"th", spec->th}, {"p", *pstr},
                        {"i", spec->i}, {"x", *xstr}};
      for (const auto& tok : split_ws(*pstr)) spec->P.push_back(std::stod(tok));
      std::vector<int> x;
      for (const auto& tok : split_ws(*xstr)) x.push_back(std::stoi(tok));
      const NeutroTriplet t = nmultinomial_pmf(*spec, x);
      rep.results["triplet"] = triplet_json(t, rep.precision);
      rep.results["normalized"] = triplet_json(normalize_triplet(t), rep.precision);
      rep.results["sum"] = num(t.T + t.I + t.F, rep.precision);
    });
  }

  // ---- normal -------------------------------------------------------------
  {
    auto* cmd = add_cmd("normal", "normal distribution with set-valued parameters");
    auto mu = std::make_shared<std::string>();
    auto sigma = std::make_shared<std::string>();
    auto bands = std::make_shared<std::vector<int>>();
    auto at = std::make_shared<std::vector<double>>();
    cmd->add_option("--mu", *mu, "mean set")->required();
    cmd->add_option("--sigma", *sigma, "standard deviation set")->required();
    cmd->add_option("--band", *bands, "k-sigma band (repeatable; default 1 2 3)");
    cmd->add_option("--pdf", *at, "density envelope at x (repeatable)");
    cmd->callback([&rep, mu, sigma, bands, at] {
      rep.command = "normal";
      rep.inputs = json{{"mu", *mu}, {"sigma", *sigma}};
      const NormalSpec spec{parse_set(*mu), parse_set(*sigma)};
      std::vector<int> ks = bands->empty() && at->empty() ? std::vector<int>{1, 2, 3} : *bands;
      if (!ks.empty()) {
        json jb = json::object();
        for (int k : ks) jb[std::to_string(k)] = render_set(nnormal_sigma_band(spec, k), rep.precision);
        rep.results["sigma_bands"] = jb;
      }
      if (!at->empty()) {
        json jp = json::object();
        for (double x : *at) jp[render_num(x, rep.precision)] =
            render_set(nnormal_pdf(spec, x), rep.precision);
        rep.results["pdf"] = jp;
      }
    });
  }

  // ---- fit ----------------------------------------------------------------
  {
    auto* cmd = add_cmd("fit", "set-valued least-squares line with diagnostics");
    auto xs = std::make_shared<std::string>();
    auto ys = std::make_shared<std::string>();
    auto csv = std::make_shared<std::string>();
    auto xcol = std::make_shared<std::string>("0");
    auto ycol = std::make_shared<std::string>("1");
    auto mode = std::make_shared<std::string>("textbook");
    auto predict_at = std::make_shared<std::vector<std::string>>();
    cmd->add_option("--x", *xs, "x observations, whitespace-separated");
    cmd->add_option("--y", *ys, "y observations, whitespace-separated");
    cmd->add_option("--csv", *csv, "CSV file with x and y columns");
    cmd->add_option("--xcol", *xcol, "CSV x column name or index (default 0)");
    cmd->add_option("--ycol", *ycol, "CSV y column name or index (default 1)");
    cmd->add_option("--mode", *mode, "coefficient arithmetic: textbook|exact")
        ->check(CLI::IsMember({"textbook", "exact"}));
    cmd->add_option("--predict", *predict_at, "extra x values to predict at (repeatable)");
    cmd->callback([&rep, &plot_path, xs, ys, csv, xcol, ycol, mode, predict_at] {
      rep.command = "fit";
      std::vector<SetValue> xv, yv;
      if (!csv->empty()) {
        if (!xs->empty() || !ys->empty())
          throw CLI::ValidationError("--csv", "give either --x/--y or --csv, not both");
        rep.inputs = json{{"csv", *csv}, {"xcol", *xcol}, {"ycol", *ycol}};
        for (const auto& cell : csv_column(*csv, *xcol)) xv.push_back(parse_set(cell));
        for (const auto& cell : csv_column(*csv, *ycol)) yv.push_back(parse_set(cell));
      } else {
        if (xs->empty() || ys->empty())
          throw CLI::ValidationError("--x", "both --x and --y are required without --csv");
        rep.inputs = json{{"x", *xs}, {"y", *ys}};
        xv = parse_set_list(*xs);
        yv = parse_set_list(*ys);
      }
      if (xv.size() != yv.size())
        throw CLI::ValidationError("--x", "x and y must have the same length");
      if (*mode == "exact") rep.inputs["mode"] = *mode;
      std::vector<SetPoint> pts;
      for (std::size_t i = 0; i < xv.size(); ++i) pts.push_back({xv[i], yv[i]});

      const LinearModel m =
          ls_fit(pts, *mode == "exact" ? FitArithmetic::Exact : FitArithmetic::Textbook);
      const int prec = rep.precision;
      rep.results["n"] = m.n;
      rep.results["intercept_a"] = render_set(m.intercept_a, prec);
      rep.results["slope_b"] = render_set(m.slope_b, prec);
      rep.results["sums"] = json{{"Sx", render_set(m.sums.Sx, prec)},
                                 {"Sy", render_set(m.sums.Sy, prec)},
                                 {"Sxx", render_set(m.sums.Sxx, prec)},
                                 {"Sxy", render_set(m.sums.Sxy, prec)},
                                 {"Syy", render_set(m.sums.Syy, prec)}};
      json jpred = json::array(), jresid = json::array(), jcov = json::array();
      const auto resid = residuals(pts, m);
      const auto cover = coverage_check(pts, m);
      for (std::size_t i = 0; i < pts.size(); ++i) {
        jpred.push_back(render_set(predict(m, pts[i].x), prec));
        jresid.push_back(render_set(resid[i], prec));
        jcov.push_back(static_cast<bool>(cover[i]));
      }
      rep.results["predicted"] = jpred;
      rep.results["residuals"] = jresid;
      rep.results["coverage"] = jcov;
      const double rss_mid = nss_resid_midpoint(pts, m);
      rep.results["nss_resid_midpoint"] = num(rss_mid, prec);
      rep.results["nss_resid_set"] = render_set(nss_resid_set(pts, m), prec);
      const SetValue to = nss_to(pts);
      rep.results["nss_to"] = render_set(to, prec);
      try {
        const RSquared r2 = r_squared(rss_mid, to);
        rep.results["r_squared"] =
            json{{"raw", render_set(r2.raw, prec)}, {"clipped", render_set(r2.clipped, prec)}};
        for (const auto& w : r2.warnings) rep.warnings.push_back(warning_json(w, prec));
      } catch (const DomainError& e) {
        rep.warnings.push_back(json{{"code", e.code()}, {"message", e.what()},
                                    {"values", json::array()}});
      }
      try {
        const Correlation corr = correlation(pts);
        rep.results["correlation"] = json{{"raw", render_set(corr.raw, prec)},
                                          {"clipped", render_set(corr.clipped, prec)}};
        for (const auto& w : corr.warnings) rep.warnings.push_back(warning_json(w, prec));
      } catch (const DomainError& e) {
        rep.warnings.push_back(json{{"code", e.code()}, {"message", e.what()},
                                    {"values", json::array()}});
      }
      const CrispLine line = deneutrosify(m);
      rep.results["crisp_line"] = json{{"a", num(line.a, prec)}, {"b", num(line.b, prec)}};
      json jmid = json::array();
      for (const auto& row : midpoint_report(pts, m))
        jmid.push_back(json{{"predicted", num(row.predicted, prec)},
                            {"residual", num(row.residual, prec)}});
      rep.results["midpoint_rows"] = jmid;
      if (!predict_at->empty()) {
        json jp = json::object();
        for (const auto& tok : *predict_at)
          jp[tok] = render_set(predict(m, parse_set(tok)), prec);
        rep.results["predict"] = jp;
      }
      if (!plot_path.empty()) {
        write_file(svg_scatter(scatter_objects(pts), &m), plot_path);
        rep.results["plot"] = plot_path;
      }
    });
  }

  // ---- test ---------------------------------------------------------------
  {
    auto* cmd = add_cmd("test", "z-test for a mean against a set-valued null");
    auto xbar = std::make_shared<std::string>();
    auto null_set = std::make_shared<std::string>();
    auto sd = std::make_shared<std::string>();
    auto n = std::make_shared<std::string>();
    auto alt = std::make_shared<std::string>("upper");
    auto alphas = std::make_shared<std::vector<std::string>>();
    cmd->add_option("--xbar", *xbar, "sample mean set")->required();
    cmd->add_option("--null", *null_set, "null-hypothesis mean set")->required();
    cmd->add_option("--sd", *sd, "population/sample spread set")->required();
    cmd->add_option("--n", *n, "sample size set")->required();
    cmd->add_option("--alt", *alt, "alternative: upper|lower|outside")
        ->check(CLI::IsMember({"upper", "lower", "outside"}));
    cmd->add_option("--alpha", *alphas, "significance level set (repeatable; default 0.05)");
    cmd->callback([&rep, xbar, null_set, sd, n, alt, alphas] {
      rep.command = "test";
      rep.inputs = json{{"xbar", *xbar}, {"null", *null_set}, {"sd", *sd},
                        {"n", *n}, {"alt", *alt}};
      const Alternative a = *alt == "lower"   ? Alternative::LessThanInf
                            : *alt == "outside" ? Alternative::Outside
                                                : Alternative::GreaterThanSup;
      const SetValue z =
          z_test_stat(parse_set(*xbar), parse_set(*null_set), parse_set(*sd), parse_set(*n));
      const int prec = rep.precision;
      rep.results["z"] = render_set(z, prec);
      const SetValue p = p_value(z, a);
      rep.results["p_value"] = render_set(p, prec);
      if (alphas->empty()) alphas->push_back("0.05");
      json jd = json::array();
      for (const auto& atok : *alphas) {
        const SetValue alpha = parse_set(atok);
        json entry{{"alpha", atok}};
        entry["p_based"] = decision_json(p_decision(p, alpha), prec);
        if (alpha.is_crisp()) {
          const double a0 = alpha.crisp_value();
          try {
            const double crit =
                z_crit(Level::upper_tail(a == Alternative::Outside ? a0 / 2 : a0));
            entry["z_crit"] = num(crit, prec);
            entry["critical"] = decision_json(z_decision(z, a, crit), prec);
          } catch (const DomainError& e) {
            // a level missing from the critical table only loses the
            // critical-value route; the p-value route is level-exact
            if (e.code() != "UnknownLevel") throw;
            rep.warnings.push_back(json{{"code", e.code()}, {"message", e.what()},
                                        {"values", json::array()}});
          }
        }
        jd.push_back(entry);
      }
      rep.results["decisions"] = jd;
    });
  }

  // ---- ci -----------------------------------------------------------------
  {
    auto* cmd = add_cmd("ci", "confidence interval for a mean or proportion");
    auto kind = std::make_shared<std::string>();
    auto xbar = std::make_shared<std::string>();
    auto sd = std::make_shared<std::string>();
    auto phat = std::make_shared<std::string>();
    auto n = std::make_shared<std::string>();
    auto level = std::make_shared<double>(0.95);
    cmd->add_option("--kind", *kind, "mean-z|mean-t|prop")
        ->required()
        ->check(CLI::IsMember({"mean-z", "mean-t", "prop"}));
    cmd->add_option("--xbar", *xbar, "sample mean set");
    cmd->add_option("--sd", *sd, "spread set");
    cmd->add_option("--phat", *phat, "sample proportion set");
    cmd->add_option("--n", *n, "sample size (set for mean-z/prop, integer for mean-t)");
    cmd->add_option("--level", *level, "central confidence level (default 0.95)");
    cmd->callback([&rep, kind, xbar, sd, phat, n, level] {
      rep.command = "ci";
      rep.inputs = json{{"kind", *kind}, {"level", *level}};
      if (n->empty()) throw CLI::ValidationError("--n", "--n is required");
      rep.inputs["n"] = *n;
      const Level lv = Level::central(*level);
      const int prec = rep.precision;
      if (*kind == "prop") {
        if (phat->empty()) throw CLI::ValidationError("--phat", "--phat is required for prop");
        rep.inputs["phat"] = *phat;
        const ProportionCI ci = ci_proportion(parse_set(*phat), parse_set(*n), lv);
        rep.results["interval"] = render_set(ci.interval, prec);
        rep.results["min_np"] = num(ci.min_np, prec);
        rep.results["min_nq"] = num(ci.min_nq, prec);
      } else {
        if (xbar->empty() || sd->empty())
          throw CLI::ValidationError("--xbar", "--xbar and --sd are required");
        rep.inputs["xbar"] = *xbar;
        rep.inputs["sd"] = *sd;
        if (*kind == "mean-z") {
          rep.results["interval"] =
              render_set(ci_mean_z(parse_set(*xbar), parse_set(*sd), parse_set(*n), lv), prec);
        } else {
          const long nn = std::stol(*n);
          rep.results["interval"] =
              render_set(ci_mean_t(parse_set(*xbar), parse_set(*sd), nn, lv), prec);
          rep.results["t_crit"] = num(t_crit(nn - 1, lv), prec);
        }
      }
    });
  }

  // ---- samplesize ---------------------------------------------------------
  {
    auto* cmd = add_cmd("samplesize", "required sample size for a mean or proportion");
    auto kind = std::make_shared<std::string>();
    auto sigma = std::make_shared<std::string>();
    auto low = std::make_shared<std::string>();
    auto high = std::make_shared<std::string>();
    auto pi = std::make_shared<std::string>();
    auto bound = std::make_shared<double>(0);
    auto level = std::make_shared<double>(0.95);
    cmd->add_option("--kind", *kind, "mean|prop")
        ->required()
        ->check(CLI::IsMember({"mean", "prop"}));
    cmd->add_option("--sigma", *sigma, "spread set (mean)");
    cmd->add_option("--low", *low, "smallest observation set (mean; estimates sigma)");
    cmd->add_option("--high", *high, "largest observation set (mean; estimates sigma)");
    cmd->add_option("--pi", *pi, "anticipated proportion set (prop; worst case if absent)");
    cmd->add_option("--bound", *bound, "target margin of error")->required();
    cmd->add_option("--level", *level, "central confidence level (default 0.95)");
    cmd->callback([&rep, kind, sigma, low, high, pi, bound, level] {
      rep.command = "samplesize";
      rep.inputs = json{{"kind", *kind}, {"bound", *bound}, {"level", *level}};
      const Level lv = Level::central(*level);
      const int prec = rep.precision;
      SampleSize out;
      if (*kind == "mean") {
        SetValue sg;
        if (!sigma->empty()) {
          rep.inputs["sigma"] = *sigma;
          sg = parse_set(*sigma);
        } else if (!low->empty() && !high->empty()) {
          rep.inputs["low"] = *low;
          rep.inputs["high"] = *high;
          sg = range_sigma_estimate(parse_set(*high), parse_set(*low));
          rep.results["sigma"] = render_set(sg, prec);
        } else {
          throw CLI::ValidationError("--sigma", "give --sigma or both --low and --high");
        }
        out = sample_size_mean(sg, *bound, lv);
      } else {
        if (pi->empty()) {
          out = sample_size_proportion(*bound, lv);
        } else {
          rep.inputs["pi"] = *pi;
          out = sample_size_proportion(parse_set(*pi), *bound, lv);
        }
      }
      rep.results["n_set"] = render_set(out.n_set, prec);
      rep.results["n_final"] = out.n_final;
      rep.results["degenerate"] = out.degenerate;
    });
  }

  // ---- randgen ------------------------------------------------------------
  {
    auto* cmd = add_cmd("randgen", "deterministic neutrosophic random sequences");
    auto mode = std::make_shared<std::string>();
    auto len = std::make_shared<int>(0);
    auto values = std::make_shared<std::string>("0 1 2 3 4 5 6 7 8 9");
    auto indets = std::make_shared<std::string>("1");
    auto lo = std::make_shared<long>(0);
    auto hi = std::make_shared<long>(0);
    cmd->add_option("--mode", *mode, "uniform|weighted|balls")
        ->required()
        ->check(CLI::IsMember({"uniform", "weighted", "balls"}));
    cmd->add_option("--len", *len, "sequence length")->required();
    cmd->add_option("--values", *values,
                    "uniform: values; weighted: value:chance pairs (whitespace-separated)");
    cmd->add_option("--indets", *indets,
                    "uniform: slot count; weighted: tag:chance pairs");
    cmd->add_option("--lo", *lo, "balls: smallest endpoint");
    cmd->add_option("--hi", *hi, "balls: largest endpoint");
    cmd->callback([&rep, &app, &seed, seed_opt, mode, len, values, indets, lo, hi] {
      rep.command = "randgen";
      rep.inputs = json{{"mode", *mode}, {"len", *len}, {"seed", seed}};
      std::vector<std::string> lines;
      if (*mode == "uniform") {
        rep.inputs["values"] = *values;
        rep.inputs["indets"] = *indets;
        std::vector<double> vals;
        for (const auto& tok : split_ws(*values)) vals.push_back(std::stod(tok));
        const int k = std::stoi(*indets);
        for (const auto& s : uniform_sequence(vals, k, *len, seed))
          lines.push_back(format_symbol(s));
      } else if (*mode == "weighted") {
        rep.inputs["values"] = *values;
        rep.inputs["indets"] = *indets;
        WeightedAlphabet wa;
        auto split_pair = [](const std::string& tok) {
          const auto c = tok.find(':');
          if (c == std::string::npos)
            throw CLI::ValidationError("--values", "expected value:chance, got '" + tok + "'");
          return std::pair<std::string, double>{tok.substr(0, c),
                                                std::stod(tok.substr(c + 1))};
        };
        for (const auto& tok : split_ws(*values)) {
          const auto [v, p] = split_pair(tok);
          wa.values.emplace_back(std::stod(v), p);
        }
        if (*indets != "1")  // "1" is the uniform-mode default; weighted default is none
          for (const auto& tok : split_ws(*indets)) {
            const auto [t, r] = split_pair(tok);
            wa.indets.emplace_back(std::stol(t), r);
          }
        for (const auto& s : weighted_sequence(wa, *len, seed)) lines.push_back(format_symbol(s));
      } else {
        rep.inputs["lo"] = *lo;
        rep.inputs["hi"] = *hi;
        for (const auto& s : interval_ball_draw(*lo, *hi, *len, seed))
          lines.push_back(format_set(s));
      }
      (void)seed_opt;
      if (app.count("--format") > 0) {
        rep.results["sequence"] = lines;
      } else {
        for (const auto& line : lines) std::cout << line << "\n";
        rep.format = "none";
      }
    });
  }

  // ---- nnalg --------------------------------------------------------------
  {
    auto* cmd = add_cmd("nnalg", "algebra of a+bI numbers and their relatives");
    cmd->require_subcommand(1);
    auto add_sub = [&](const std::string& name, const std::string& desc) {
      CLI::App* s = cmd->add_subcommand(name, desc);
      s->fallthrough();
      return s;
    };
    auto numstr = std::make_shared<std::string>();
    auto denstr = std::make_shared<std::string>();
    auto valstr = std::make_shared<std::string>();
    auto nexp = std::make_shared<int>(2);
    auto coeff2 = std::make_shared<std::string>();
    auto coeff1 = std::make_shared<std::string>();
    auto coeff0 = std::make_shared<std::string>();
    auto data = std::make_shared<std::string>();

    auto binary = [&](const std::string& name, const std::string& desc, auto fn) {
      auto* s = add_sub(name, desc);
      s->add_option("--num", *numstr, "left operand a+bI")->required();
      s->add_option("--den", *denstr, "right operand a+bI")->required();
      s->callback([&rep, numstr, denstr, name, fn] {
        rep.command = "nnalg " + name;
        rep.inputs = json{{"num", *numstr}, {"den", *denstr}};
        rep.results["value"] =
            render_nn(fn(parse_nn(*numstr), parse_nn(*denstr)), rep.precision);
      });
    };
    binary("add", "sum of two a+bI numbers", [](auto u, auto v) { return nn_add(u, v); });
    binary("sub", "difference of two a+bI numbers", [](auto u, auto v) { return nn_sub(u, v); });
    binary("mul", "product of two a+bI numbers", [](auto u, auto v) { return nn_mul(u, v); });
    binary("div", "quotient of two a+bI numbers", [](auto u, auto v) { return nn_div(u, v); });

    {
      auto* s = add_sub("pow", "integer power of an a+bI number");
      s->add_option("--base", *valstr, "base a+bI")->required();
      s->add_option("--n", *nexp, "exponent (n >= 0)")->required();
      s->callback([&rep, valstr, nexp] {
        rep.command = "nnalg pow";
        rep.inputs = json{{"base", *valstr}, {"n", *nexp}};
        rep.results["value"] = render_nn(nn_pow(parse_nn(*valstr), *nexp), rep.precision);
      });
    }
    {
      auto* s = add_sub("sqrt", "all real square roots of an a+bI number");
      s->add_option("--val", *valstr, "radicand a+bI")->required();
      s->callback([&rep, valstr] {
        rep.command = "nnalg sqrt";
        rep.inputs = json{{"val", *valstr}};
        json roots = json::array();
        for (const auto& r : nn_sqrt(parse_nn(*valstr)))
          roots.push_back(render_nn(r, rep.precision));
        rep.results["values"] = roots;
        rep.results["principal"] =
            render_nn(nn_sqrt_principal(parse_nn(*valstr)), rep.precision);
      });
    }
    {
      auto* s = add_sub("nthroot", "all real nth roots of an a+bI number");
      s->add_option("--val", *valstr, "radicand a+bI")->required();
      s->add_option("--n", *nexp, "root index")->required();
      s->callback([&rep, valstr, nexp] {
        rep.command = "nnalg nthroot";
        rep.inputs = json{{"val", *valstr}, {"n", *nexp}};
        json roots = json::array();
        for (const auto& r : nn_nth_root(parse_nn(*valstr), *nexp))
          roots.push_back(render_nn(r, rep.precision));
        rep.results["values"] = roots;
      });
    }
    {
      auto* s = add_sub("quad", "roots and factorings of Ax^2+Bx+C with a+bI coefficients");
      s->add_option("--a", *coeff2, "quadratic coefficient A")->required();
      s->add_option("--b", *coeff1, "linear coefficient B")->required();
      s->add_option("--c", *coeff0, "constant coefficient C")->required();
      s->callback([&rep, coeff2, coeff1, coeff0] {
        rep.command = "nnalg quad";
        rep.inputs = json{{"a", *coeff2}, {"b", *coeff1}, {"c", *coeff0}};
        const NeutroQuadratic q{parse_nn(*coeff2), parse_nn(*coeff1), parse_nn(*coeff0)};
        json roots = json::array();
        for (const auto& r : nn_quadratic_solve(q)) roots.push_back(render_nn(r, rep.precision));
        rep.results["roots"] = roots;
        json facts = json::array();
        for (const auto& f : nn_factorings(q))
          facts.push_back(json{{"leading", render_nn(f.leading, rep.precision)},
                               {"root1", render_nn(f.root1, rep.precision)},
                               {"root2", render_nn(f.root2, rep.precision)}});
        rep.results["factorings"] = facts;
      });
    }
    {
      auto* s = add_sub("csqrt", "both square roots of an ordinary complex number");
      s->add_option("--val", *valstr, "radicand a+bi")->required();
      s->callback([&rep, valstr] {
        rep.command = "nnalg csqrt";
        rep.inputs = json{{"val", *valstr}};
        const NeutroComplex c = parse_ncomplex(*valstr);
        if (c.c != 0 || c.d != 0)
          throw CLI::ValidationError("--val", "csqrt expects a plain complex number a+bi");
        json roots = json::array();
        for (const auto& r : complex_sqrt({c.a, c.b}))
          roots.push_back(render_nc({r.real(), r.imag(), 0, 0}, rep.precision));
        rep.results["values"] = roots;
      });
    }
    {
      auto* s = add_sub("cnthroot", "all n complex nth roots");
      s->add_option("--val", *valstr, "radicand a+bi")->required();
      s->add_option("--n", *nexp, "root index")->required();
      s->callback([&rep, valstr, nexp] {
        rep.command = "nnalg cnthroot";
        rep.inputs = json{{"val", *valstr}, {"n", *nexp}};
        const NeutroComplex c = parse_ncomplex(*valstr);
        if (c.c != 0 || c.d != 0)
          throw CLI::ValidationError("--val", "cnthroot expects a plain complex number a+bi");
        json roots = json::array();
        for (const auto& r : complex_nth_root({c.a, c.b}, *nexp))
          roots.push_back(render_nc({r.real(), r.imag(), 0, 0}, rep.precision));
        rep.results["values"] = roots;
      });
    }
    {
      auto* s = add_sub("ncsqrt", "square roots of an a+bi+cI+diI number");
      s->add_option("--val", *valstr, "radicand a+bi+cI+diI")->required();
      s->callback([&rep, valstr] {
        rep.command = "nnalg ncsqrt";
        rep.inputs = json{{"val", *valstr}};
        json roots = json::array();
        for (const auto& r : ncomplex_sqrt(parse_ncomplex(*valstr)))
          roots.push_back(render_nc(r, rep.precision));
        rep.results["values"] = roots;
      });
    }
    {
      auto* s = add_sub("stats", "mean, median, and stddev of a+bI observations");
      s->add_option("--data", *data, "whitespace-separated a+bI observations")->required();
      s->callback([&rep, data] {
        rep.command = "nnalg stats";
        rep.inputs = json{{"data", *data}};
        NNDataset ds;
        for (const auto& tok : split_ws(*data)) ds.observations.push_back(parse_nn(tok));
        rep.results["n"] = static_cast<int>(ds.observations.size());
        rep.results["mean"] = render_nn(mean_nn(ds), rep.precision);
        rep.results["median"] = render_nn(median_nn(ds), rep.precision);
        rep.results["stddev"] = render_nn(stddev_nn(ds), rep.precision);
      });
    }
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 64;
  } catch (const DomainError& e) {
    rep.results = json::object();
    rep.results["error"] = e.code();
    rep.results["message"] = e.what();
    if (rep.format == "none") rep.format = "json";
    emit(rep);
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 70;
  }
  if (rep.format != "none") emit(rep);
  return 0;
}
