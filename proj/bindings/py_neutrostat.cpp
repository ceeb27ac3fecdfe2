// Python module exposing the main library operations: set values and their
// arithmetic, indeterminacy numbers, descriptive statistics, distributions,
// regression, inference, and the seeded generators.

#include <pybind11/complex.h>
#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>
#include <vector>

#include "neutrostat/descriptive.hpp"
#include "neutrostat/distributions.hpp"
#include "neutrostat/inference.hpp"
#include "neutrostat/neutro_num.hpp"
#include "neutrostat/parse.hpp"
#include "neutrostat/randgen.hpp"
#include "neutrostat/regression.hpp"
#include "neutrostat/setval.hpp"

namespace py = pybind11;
using namespace neutrostat;

namespace {

Dataset make_dataset(const std::vector<SetValue>& obs) { return Dataset{obs, ""}; }

Ranking ranking_from(const std::string& name) {
  if (name == "midpoint") return Ranking::MidpointSort;
  if (name == "given") return Ranking::AsGiven;
  throw py::value_error("ranking must be 'midpoint' or 'given'");
}

QuartileRule rule_from(const std::string& name) {
  if (name == "average") return QuartileRule::AverageAdjacent;
  if (name == "inferior") return QuartileRule::InferiorInteger;
  throw py::value_error("rule must be 'average' or 'inferior'");
}

Alternative alternative_from(const std::string& name) {
  if (name == "upper") return Alternative::GreaterThanSup;
  if (name == "lower") return Alternative::LessThanInf;
  if (name == "outside") return Alternative::Outside;
  throw py::value_error("alternative must be 'upper', 'lower', or 'outside'");
}

FitArithmetic fit_mode_from(const std::string& name) {
  if (name == "textbook") return FitArithmetic::Textbook;
  if (name == "exact") return FitArithmetic::Exact;
  throw py::value_error("mode must be 'textbook' or 'exact'");
}

const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Reject: return "reject";
    case Verdict::FailToReject: return "fail_to_reject";
    default: return "indeterminate";
  }
}

py::dict decision_dict(const Decision& d) {
  py::dict out;
  out["verdict"] = verdict_name(d.verdict);
  out["reject_chance"] = d.reject_chance;
  out["fail_chance"] = d.fail_chance;
  return out;
}

py::list warning_list(const std::vector<Warning>& ws) {
  py::list out;
  for (const Warning& w : ws) {
    py::dict d;
    d["code"] = w.code;
    d["message"] = w.message;
    d["values"] = w.values;
    out.append(d);
  }
  return out;
}

}  // namespace

PYBIND11_MODULE(_neutrostat, m) {
  m.doc() = "set-valued and indeterminacy-aware statistics";

  // Errors carry a stable machine-readable code; it is prefixed to the text.
  static py::exception<DomainError> domain_error(m, "DomainError");
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const DomainError& e) {
      PyErr_SetString(domain_error.ptr(), (e.code() + ": " + e.what()).c_str());
    }
  });

  // ---- set values -------------------------------------------------------
  py::class_<SetValue>(m, "SetValue")
      .def(py::init<double>(), py::arg("value"))
      .def(py::init([](const std::string& text) { return parse_set(text); }),
           py::arg("text"))
      .def_static("interval", &SetValue::interval, py::arg("lo"), py::arg("hi"),
                  py::arg("lo_open") = false, py::arg("hi_open") = false)
      .def_static("finite", &SetValue::finite, py::arg("points"))
      .def_property_readonly("infimum", &SetValue::infimum)
      .def_property_readonly("supremum", &SetValue::supremum)
      .def_property_readonly("inf_attained", &SetValue::inf_attained)
      .def_property_readonly("sup_attained", &SetValue::sup_attained)
      .def_property_readonly("is_crisp", &SetValue::is_crisp)
      .def("crisp_value", &SetValue::crisp_value)
      .def("contains", &SetValue::contains, py::arg("x"))
      .def("midpoint", [](const SetValue& s) { return midpoint(s); })
      .def("__str__", [](const SetValue& s) { return format_set(s); })
      .def("__repr__",
           [](const SetValue& s) { return "SetValue('" + format_set(s) + "')"; })
      .def("__eq__",
           [](const SetValue& a, const SetValue& b) { return a == b; },
           py::is_operator())
      .def("__add__",
           [](const SetValue& a, const SetValue& b) { return add(a, b); },
           py::is_operator())
      .def("__sub__",
           [](const SetValue& a, const SetValue& b) { return sub(a, b); },
           py::is_operator())
      .def("__mul__",
           [](const SetValue& a, const SetValue& b) { return mul(a, b); },
           py::is_operator())
      .def("__truediv__",
           [](const SetValue& a, const SetValue& b) { return neutrostat::div(a, b); },
           py::is_operator())
      .def("__pow__",
           [](const SetValue& s, int n) { return neutrostat::pow(s, n); },
           py::is_operator())
      .def("nth_root", [](const SetValue& s, int n) { return nth_root(s, n); },
           py::arg("n"));
  py::implicitly_convertible<double, SetValue>();
  py::implicitly_convertible<py::str, SetValue>();

  m.def("parse", &parse_set, py::arg("text"), "Parse the set grammar.");
  m.def("format", &format_set, py::arg("value"), "Canonical text form.");

  // ---- indeterminacy numbers a + bI --------------------------------------
  py::class_<NeutroNumber>(m, "NeutroNumber")
      .def(py::init([](double a, double b) { return NeutroNumber{a, b}; }),
           py::arg("a"), py::arg("b") = 0.0)
      .def(py::init([](const std::string& text) { return parse_nn(text); }),
           py::arg("text"))
      .def_readwrite("a", &NeutroNumber::a)
      .def_readwrite("b", &NeutroNumber::b)
      .def("__str__", [](const NeutroNumber& u) { return format_nn(u); })
      .def("__repr__",
           [](const NeutroNumber& u) { return "NeutroNumber('" + format_nn(u) + "')"; })
      .def("__eq__",
           [](const NeutroNumber& u, const NeutroNumber& v) { return u == v; },
           py::is_operator())
      .def("__add__", &nn_add, py::is_operator())
      .def("__sub__", &nn_sub, py::is_operator())
      .def("__mul__", &nn_mul, py::is_operator())
      .def("__truediv__", &nn_div, py::is_operator())
      .def("__pow__", &nn_pow, py::is_operator());
  py::implicitly_convertible<py::str, NeutroNumber>();

  m.def("nn_sqrt", &nn_sqrt, py::arg("u"), "All square roots of a + bI.");
  m.def("nn_sqrt_principal", &nn_sqrt_principal, py::arg("u"));
  m.def("nn_nth_root", &nn_nth_root, py::arg("u"), py::arg("n"));
  m.def("complex_sqrt", &complex_sqrt, py::arg("z"));
  m.def("complex_nth_root", &complex_nth_root, py::arg("z"), py::arg("n"));
  m.def(
      "quadratic_solve",
      [](const NeutroNumber& c2, const NeutroNumber& c1, const NeutroNumber& c0) {
        return nn_quadratic_solve({c2, c1, c0});
      },
      py::arg("coeff2"), py::arg("coeff1"), py::arg("coeff0"),
      "Roots of coeff2*x^2 + coeff1*x + coeff0.");
  m.def(
      "factorings",
      [](const NeutroNumber& c2, const NeutroNumber& c1, const NeutroNumber& c0) {
        py::list out;
        for (const Factoring& f : nn_factorings({c2, c1, c0}))
          out.append(py::make_tuple(f.leading, f.root1, f.root2));
        return out;
      },
      py::arg("coeff2"), py::arg("coeff1"), py::arg("coeff0"),
      "(leading, root1, root2) splits of the quadratic.");

  // ---- descriptive statistics --------------------------------------------
  m.def(
      "mean", [](const std::vector<SetValue>& obs) { return mean_set(make_dataset(obs)); },
      py::arg("observations"));
  m.def(
      "median",
      [](const std::vector<SetValue>& obs, const std::string& ranking) {
        return median_set(make_dataset(obs), ranking_from(ranking));
      },
      py::arg("observations"), py::arg("ranking") = "midpoint");
  m.def(
      "stddev",
      [](const std::vector<SetValue>& obs) { return stddev_set(make_dataset(obs)); },
      py::arg("observations"), "Population standard deviation.");
  m.def(
      "quartiles",
      [](const std::vector<SetValue>& obs, const std::string& rule,
         const std::string& ranking) {
        Quartiles q = quartiles(make_dataset(obs), rule_from(rule), ranking_from(ranking));
        return py::make_tuple(q.q1, q.q2, q.q3);
      },
      py::arg("observations"), py::arg("rule") = "average",
      py::arg("ranking") = "midpoint");
  m.def(
      "freq_table",
      [](const std::vector<std::pair<std::string, SetValue>>& rows) {
        FreqTable t = freq_table(rows);
        py::list out;
        for (const FreqRow& r : t.rows)
          out.append(py::make_tuple(r.category, r.frequency, r.rel_freq));
        return py::make_tuple(out,
                              py::make_tuple(t.total.category, t.total.frequency,
                                             t.total.rel_freq));
      },
      py::arg("rows"),
      "((category, frequency, rel_freq), ...) plus the totals row; relative "
      "frequencies use the constrained bounds.");
  m.def(
      "wrong_obs",
      [](const std::vector<double>& obs, int k, std::optional<std::vector<double>> weights) {
        CombinedStats cs = weights ? wrong_obs_enumerate(obs, k, *weights)
                                   : wrong_obs_enumerate(obs, k);
        py::dict out;
        py::list samples;
        for (const SubsampleStats& s : cs.samples) {
          py::dict row;
          row["wrong"] = s.wrong_obs;
          row["median"] = s.median;
          row["mean"] = s.mean;
          row["stddev"] = s.stddev;
          samples.append(row);
        }
        out["samples"] = samples;
        out["interval"] = py::make_tuple(cs.interval_style.median, cs.interval_style.mean,
                                         cs.interval_style.stddev);
        out["average"] = py::make_tuple(cs.average_style.median, cs.average_style.mean,
                                        cs.average_style.stddev);
        if (cs.weighted_style)
          out["weighted"] = py::make_tuple(cs.weighted_style->median,
                                           cs.weighted_style->mean,
                                           cs.weighted_style->stddev);
        return out;
      },
      py::arg("observations"), py::arg("k"), py::arg("weights") = py::none(),
      "Statistics over every choice of k discarded observations.");
  m.def("nn_mean", [](const std::vector<NeutroNumber>& xs) { return mean_nn({xs}); },
        py::arg("numbers"));
  m.def("nn_median", [](const std::vector<NeutroNumber>& xs) { return median_nn({xs}); },
        py::arg("numbers"));
  m.def("nn_stddev", [](const std::vector<NeutroNumber>& xs) { return stddev_nn({xs}); },
        py::arg("numbers"));

  // ---- distributions -----------------------------------------------------
  m.def(
      "binomial_pmf",
      [](int n, int th, double pS, double pI, double pF, int x, bool normalized) {
        NeutroTriplet t = nbinomial_pmf({n, th, pS, pI, pF}, x);
        if (normalized) t = normalize_triplet(t);
        return py::make_tuple(t.T, t.I, t.F);
      },
      py::arg("n"), py::arg("th"), py::arg("pS"), py::arg("pI"), py::arg("pF"),
      py::arg("x"), py::arg("normalized") = false,
      "(T, I, F) chances for exactly x successes; runs with more than th "
      "indeterminate trials count as indeterminate.");
  m.def(
      "multinomial_pmf",
      [](int n, int th, const std::vector<double>& P, double i, const std::vector<int>& x,
         bool normalized) {
        NeutroTriplet t = nmultinomial_pmf({n, th, P, i}, x);
        if (normalized) t = normalize_triplet(t);
        return py::make_tuple(t.T, t.I, t.F);
      },
      py::arg("n"), py::arg("th"), py::arg("P"), py::arg("i"), py::arg("x"),
      py::arg("normalized") = false);
  m.def(
      "sigma_band",
      [](const SetValue& mu, const SetValue& sigma, int k) {
        return nnormal_sigma_band({mu, sigma}, k);
      },
      py::arg("mu"), py::arg("sigma"), py::arg("k"),
      "Hull of mu +/- k*sigma over both sets.");
  m.def(
      "normal_pdf",
      [](const SetValue& mu, const SetValue& sigma, double x) {
        return nnormal_pdf({mu, sigma}, x);
      },
      py::arg("mu"), py::arg("sigma"), py::arg("x"));

  // ---- regression ---------------------------------------------------------
  py::class_<LinearModel>(m, "LinearModel")
      .def_readonly("intercept_a", &LinearModel::intercept_a)
      .def_readonly("slope_b", &LinearModel::slope_b)
      .def_readonly("n", &LinearModel::n)
      .def("__repr__", [](const LinearModel& lm) {
        return "LinearModel(a=" + format_set(lm.intercept_a) +
               ", b=" + format_set(lm.slope_b) + ")";
      });
  m.def(
      "fit",
      [](const std::vector<std::pair<SetValue, SetValue>>& pts, const std::string& mode) {
        std::vector<SetPoint> sp;
        for (const auto& [x, y] : pts) sp.push_back({x, y});
        return ls_fit(sp, fit_mode_from(mode));
      },
      py::arg("points"), py::arg("mode") = "textbook",
      "Least-squares line through (x, y) set pairs.");
  m.def("predict", &predict, py::arg("model"), py::arg("x"));
  m.def(
      "residuals",
      [](const std::vector<std::pair<SetValue, SetValue>>& pts, const LinearModel& lm) {
        std::vector<SetPoint> sp;
        for (const auto& [x, y] : pts) sp.push_back({x, y});
        return residuals(sp, lm);
      },
      py::arg("points"), py::arg("model"));
  m.def(
      "r_squared",
      [](const std::vector<std::pair<SetValue, SetValue>>& pts, const std::string& mode) {
        std::vector<SetPoint> sp;
        for (const auto& [x, y] : pts) sp.push_back({x, y});
        LinearModel lm = ls_fit(sp, fit_mode_from(mode));
        RSquared r = r_squared(nss_resid_midpoint(sp, lm), nss_to(sp));
        py::dict out;
        out["raw"] = r.raw;
        out["clipped"] = r.clipped;
        out["warnings"] = warning_list(r.warnings);
        return out;
      },
      py::arg("points"), py::arg("mode") = "textbook");
  m.def(
      "correlation",
      [](const std::vector<std::pair<SetValue, SetValue>>& pts) {
        std::vector<SetPoint> sp;
        for (const auto& [x, y] : pts) sp.push_back({x, y});
        Correlation c = correlation(sp);
        py::dict out;
        out["raw"] = c.raw;
        out["clipped"] = c.clipped;
        out["warnings"] = warning_list(c.warnings);
        return out;
      },
      py::arg("points"));

  // ---- inference -----------------------------------------------------------
  m.def("phi", &phi, py::arg("z"), "Standard normal cumulative value.");
  m.def(
      "z_crit",
      [](double level, const std::string& kind) {
        return kind == "central" ? z_crit(Level::central(level))
                                 : z_crit(Level::upper_tail(level));
      },
      py::arg("level"), py::arg("kind") = "central");
  m.def(
      "t_crit",
      [](long df, double level, const std::string& kind) {
        return kind == "central" ? t_crit(df, Level::central(level))
                                 : t_crit(df, Level::upper_tail(level));
      },
      py::arg("df"), py::arg("level"), py::arg("kind") = "central");
  m.def("z_test_stat", &z_test_stat, py::arg("xbar"), py::arg("null_mean"), py::arg("s"),
        py::arg("n"));
  m.def(
      "p_value",
      [](const SetValue& z, const std::string& alternative) {
        return p_value(z, alternative_from(alternative));
      },
      py::arg("z"), py::arg("alternative") = "upper");
  m.def(
      "p_decision",
      [](const SetValue& p, const SetValue& alpha) {
        return decision_dict(p_decision(p, alpha));
      },
      py::arg("p"), py::arg("alpha"));
  m.def(
      "z_decision",
      [](const SetValue& z, const std::string& alternative, double crit) {
        return decision_dict(z_decision(z, alternative_from(alternative), crit));
      },
      py::arg("z"), py::arg("alternative"), py::arg("crit"));
  m.def(
      "ci_mean_z",
      [](const SetValue& xbar, const SetValue& s, const SetValue& n, double level) {
        return ci_mean_z(xbar, s, n, Level::central(level));
      },
      py::arg("xbar"), py::arg("s"), py::arg("n"), py::arg("level") = 0.95);
  m.def(
      "ci_mean_t",
      [](const SetValue& xbar, const SetValue& s, long n, double level) {
        return ci_mean_t(xbar, s, n, Level::central(level));
      },
      py::arg("xbar"), py::arg("s"), py::arg("n"), py::arg("level") = 0.95);
  m.def(
      "ci_proportion",
      [](const SetValue& p, const SetValue& n, double level) {
        ProportionCI ci = ci_proportion(p, n, Level::central(level));
        return py::make_tuple(ci.interval, ci.min_np, ci.min_nq);
      },
      py::arg("p"), py::arg("n"), py::arg("level") = 0.95,
      "(interval, min_np, min_nq); requires both products above 5.");
  m.def(
      "sample_size_mean",
      [](const SetValue& sigma, double bound, double level) {
        SampleSize s = sample_size_mean(sigma, bound, Level::central(level));
        return py::make_tuple(s.n_set, s.n_final, s.degenerate);
      },
      py::arg("sigma"), py::arg("bound"), py::arg("level") = 0.95);
  m.def(
      "sample_size_proportion",
      [](std::optional<SetValue> pi, double bound, double level) {
        SampleSize s = pi ? sample_size_proportion(*pi, bound, Level::central(level))
                          : sample_size_proportion(bound, Level::central(level));
        return py::make_tuple(s.n_set, s.n_final, s.degenerate);
      },
      py::arg("pi") = py::none(), py::arg("bound") = 0.05, py::arg("level") = 0.95);
  m.def("range_sigma_estimate", &range_sigma_estimate, py::arg("high"), py::arg("low"),
        "(high - low) / 4 as a spread estimate.");

  // ---- seeded generators ----------------------------------------------------
  m.def(
      "uniform_sequence",
      [](const std::vector<double>& values, int indet_count, int len, std::uint64_t seed) {
        py::list out;
        for (const NeutroSymbol& s : uniform_sequence(values, indet_count, len, seed))
          out.append(format_symbol(s));
        return out;
      },
      py::arg("values"), py::arg("indet_count"), py::arg("len"), py::arg("seed"),
      "Equiprobable draws over the values plus tagged indeterminacy slots, "
      "formatted as text.");
  m.def(
      "weighted_sequence",
      [](const std::vector<std::pair<double, double>>& values,
         const std::vector<std::pair<long, double>>& indets, int len, std::uint64_t seed) {
        py::list out;
        for (const NeutroSymbol& s : weighted_sequence({values, indets}, len, seed))
          out.append(format_symbol(s));
        return out;
      },
      py::arg("values"), py::arg("indets"), py::arg("len"), py::arg("seed"));
  m.def("interval_ball_draw", &interval_ball_draw, py::arg("lo"), py::arg("hi"),
        py::arg("count"), py::arg("seed"),
        "Uniform draws over all integer intervals [a,b] inside [lo,hi].");
}
