#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <array>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

#include "json.hpp"
#include "neutrostat/parse.hpp"
#include "neutrostat/setval.hpp"

using nlohmann::json;
using namespace neutrostat;

namespace {

struct RunResult {
  int rc = -1;
  std::string out;
};

// Runs the CLI through /bin/sh; `prefix` can set environment variables.
RunResult run(const std::string& args, const std::string& prefix = "") {
  const std::string cmd = prefix + " \"" NEUTROSTAT_CLI_PATH "\" " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  RunResult r;
  std::array<char, 4096> buf;
  std::size_t got;
  while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), got);
  const int status = pclose(pipe);
  r.rc = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

json run_json(const std::string& args, int expect_rc = 0) {
  const RunResult r = run(args);
  CHECK(r.rc == expect_rc);
  return json::parse(r.out);
}

}  // namespace

TEST_CASE("describe reproduces the four-observation example") {
  const json rep = run_json("describe --data \"[6,6] [2,5] [30,30] [18,24]\" --rank given");
  CHECK(rep["command"] == "describe");
  CHECK(rep["inputs"]["data"] == "[6,6] [2,5] [30,30] [18,24]");
  CHECK(rep["results"]["mean"] == "[14,16.25]");
  CHECK(rep["results"]["median"] == "[16,17.5]");
  CHECK(rep["results"]["n"] == 4);
  CHECK(rep["version"] == "0.1.0");
  // midpoint ranking orders [2,5] before [6,6] and changes the median
  const json mid = run_json("describe --data \"[6,6] [2,5] [30,30] [18,24]\"");
  CHECK(mid["results"]["median"] == "[12,15]");
}

TEST_CASE("quartiles reproduce the twelve-observation example") {
  const json rep = run_json(
      "quartiles --data \"1 (2,3) {4,6} 5 [7,10] [7,11] 9 12 14 [14,15] 20 {21}U(22,25]\"");
  CHECK(rep["results"]["q1"] == "{4.5,5.5}");
  CHECK(rep["results"]["q2"] == "[8,10]");
  CHECK(rep["results"]["q3"] == "[14,14.5]");
}

TEST_CASE("binom reproduces the five-trial example") {
  const json rep = run_json("binom --n 5 --th 2 --ps 0.1 --pi 0.2 --pf 0.8 --x 2");
  CHECK(rep["results"]["triplet"]["T"].get<double>() == doctest::Approx(0.0992).epsilon(1e-6));
  CHECK(rep["results"]["triplet"]["I"].get<double>() == doctest::Approx(0.07232).epsilon(1e-6));
  CHECK(rep["results"]["triplet"]["F"].get<double>() == doctest::Approx(1.43899).epsilon(1e-5));
  CHECK(rep["results"]["mode"] == "Paraconsistent");
  CHECK(rep["results"]["sum"].get<double>() == doctest::Approx(1.61051).epsilon(1e-6));
}

TEST_CASE("undefined division exits 2 with the error name in the report") {
  const RunResult r = run("nnalg div --num \"2+3I\" --den \"1-I\"");
  CHECK(r.rc == 2);
  const json rep = json::parse(r.out);
  CHECK(rep["results"]["error"] == "UndefinedDivision");
  CHECK(rep["command"] == "nnalg div");

  const json ok = run_json("nnalg div --num \"2+3I\" --den \"1+I\"");
  CHECK(ok["results"]["value"] == "2+0.5I");
}

TEST_CASE("fit reproduces the six-point table and surfaces the denominator warning") {
  const std::string data =
      "fit --x \"2 [4,5] 1 (6,7) 8 3\" --y \"[1,3] 6 2 (10,13) {14,15} 5\"";
  const json rep = run_json(data);
  CHECK(rep["results"]["slope_b"] == "(0.428571,6.58824)");
  CHECK(rep["results"]["intercept_a"] == "(-22.2157,5.61905)");
  CHECK(rep["results"]["nss_to"] == "(308.222,427.889)");
  CHECK(rep["results"]["r_squared"]["clipped"] == "(0.603636,0.714486)");
  CHECK(rep["results"]["correlation"]["clipped"] == "(0.215663,1]");
  CHECK(rep["results"]["nss_resid_midpoint"].get<double>() ==
        doctest::Approx(122.16).epsilon(1e-3));
  for (const auto& c : rep["results"]["coverage"]) CHECK(c.get<bool>());
  bool found = false;
  for (const auto& w : rep["warnings"])
    if (w["code"] == "EndpointDenominators") {
      found = true;
      // the two denominators behind the r-squared endpoints
      CHECK(w["values"][0].get<double>() == doctest::Approx(308.222).epsilon(1e-4));
      CHECK(w["values"][2].get<double>() == doctest::Approx(427.889).epsilon(1e-4));
    }
  CHECK(found);
}

TEST_CASE("hypothesis test reports the z set, p set, and three-way decisions") {
  const json rep = run_json(
      "test --xbar \"[48,50]\" --null \"[40,41]\" --sd 25 --n 64"
      " --alpha 0.1 --alpha 0.01 --alpha 0.0005");
  CHECK(rep["results"]["z"] == "[2.24,3.2]");
  const json& d = rep["results"]["decisions"];
  REQUIRE(d.size() == 3);
  CHECK(d[0]["critical"]["verdict"] == "Reject");
  CHECK(d[1]["critical"]["verdict"] == "Indeterminate");
  CHECK(d[2]["critical"]["verdict"] == "FailToReject");
  CHECK(d[1]["p_based"]["reject_chance"].get<double>() ==
        doctest::Approx(0.79).epsilon(0.02));
  CHECK(d[0]["z_crit"].get<double>() == 1.28);
}

TEST_CASE("confidence intervals for mean and proportion") {
  CHECK(run_json("ci --kind mean-z --xbar \"[18,20]\" --sd \"[4,5]\" --n 60 --level 0.90")
            ["results"]["interval"] == "[16.9382,21.0618]");
  const json t = run_json("ci --kind mean-t --xbar \"[8,10]\" --sd \"[3,4]\" --n 18");
  CHECK(t["results"]["interval"] == "[6.01067,11.9893]");
  CHECK(t["results"]["t_crit"].get<double>() == 2.11);
  const json p =
      run_json("ci --kind prop --phat \"[0.68,0.75]\" --n \"[200,220]\" --level 0.99");
  CHECK(p["results"]["interval"] == "[0.590626,0.839374]");
  CHECK(p["results"]["min_np"].get<double>() == 136.0);
  CHECK(p["results"]["min_nq"].get<double>() == 50.0);

  const RunResult bad = run("ci --kind prop --phat \"[0.01,0.02]\" --n 100");
  CHECK(bad.rc == 2);
  CHECK(json::parse(bad.out)["results"]["error"] == "PreconditionFailed");
}

TEST_CASE("sample sizes for mean and proportion") {
  const json m = run_json("samplesize --kind mean --sigma \"[87.5,137.5]\" --bound 40");
  CHECK(m["results"]["n_set"] == "[18.3827,45.3939]");
  CHECK(m["results"]["n_final"] == 46);
  const json p = run_json("samplesize --kind prop --bound 0.05");
  CHECK(p["results"]["n_final"] == 385);
  const json r = run_json(
      "samplesize --kind mean --low \"[100,150]\" --high \"[450,550]\" --bound 40");
  CHECK(r["results"]["sigma"] == "[75,112.5]");
}

TEST_CASE("frequency table with constrained relative frequencies") {
  const json rep =
      run_json("freq --data \"50 [60,80] [70,90] [40,50]\" --labels \"none one two three\"");
  REQUIRE(rep["results"]["rows"].size() == 4);
  CHECK(rep["results"]["rows"][0]["rel_freq"] == "[0.185185,0.227273]");
  CHECK(rep["results"]["rows"][1]["rel_freq"] == "[0.24,0.333333]");
  CHECK(rep["results"]["total"]["frequency"] == "[220,270]");
  CHECK(rep["results"]["rows"][2]["category"] == "two");
}

TEST_CASE("normal sigma bands") {
  const json rep = run_json("normal --mu \"[15,17]\" --sigma 2");
  CHECK(rep["results"]["sigma_bands"]["1"] == "[13,19]");
  CHECK(rep["results"]["sigma_bands"]["2"] == "[11,21]");
  CHECK(rep["results"]["sigma_bands"]["3"] == "[9,23]");
}

TEST_CASE("wrongobs combination styles") {
  const json rep = run_json(
      "wrongobs --data \"17 12 5 8 9\" --k 1 --weights \"0.4 0.1 0.3 0.2 0.7\"");
  CHECK(rep["results"]["interval_style"]["median"] == "[8.5,10.5]");
  CHECK(rep["results"]["interval_style"]["mean"] == "[8.5,11.5]");
  CHECK(rep["results"]["average_style"]["mean"].get<double>() == doctest::Approx(10.2));
  CHECK(rep["results"]["weighted_style"]["median"].get<double>() ==
        doctest::Approx(9.35294).epsilon(1e-5));
  REQUIRE(rep["results"]["samples"].size() == 5);
  CHECK(rep["results"]["samples"][0]["wrong"][0].get<double>() == 5.0);
}

TEST_CASE("randgen prints one symbol per line and honors the seed") {
  const RunResult a = run("randgen --mode uniform --seed 7 --len 12");
  const RunResult b = run("randgen --mode uniform --seed 7 --len 12");
  const RunResult c = run("randgen --mode uniform --seed 8 --len 12");
  CHECK(a.rc == 0);
  CHECK(a.out == b.out);
  CHECK(a.out != c.out);
  int lines = 0;
  std::istringstream in(a.out);
  std::string line;
  while (std::getline(in, line)) {
    ++lines;
    const bool digit = line.size() == 1 && line[0] >= '0' && line[0] <= '9';
    CHECK((digit || line == "I"));
  }
  CHECK(lines == 12);

  const RunResult balls = run("randgen --mode balls --lo 1 --hi 5 --seed 3 --len 20");
  std::istringstream bin(balls.out);
  while (std::getline(bin, line)) {
    const SetValue s = parse_set(line);
    CHECK(s.infimum() >= 1.0);
    CHECK(s.supremum() <= 5.0);
  }

  const json rep = json::parse(
      run("randgen --mode weighted --values 1:0.5 --indets 0:0.5 --seed 4 --len 6 --format json")
          .out);
  CHECK(rep["results"]["sequence"].size() == 6);
  for (const auto& sym : rep["results"]["sequence"]) CHECK((sym == "1" || sym == "I"));
}

TEST_CASE("documented reports are byte-identical across runs") {
  const std::vector<std::string> cmds = {
      "describe --data \"[6,6] [2,5] [30,30] [18,24]\" --rank given",
      "binom --n 5 --th 2 --ps 0.1 --pi 0.2 --pf 0.8 --x 2",
      "fit --x \"2 [4,5] 1 (6,7) 8 3\" --y \"[1,3] 6 2 (10,13) {14,15} 5\"",
      "test --xbar \"[48,50]\" --null \"[40,41]\" --sd 25 --n 64 --alpha 0.01",
      "ci --kind prop --phat \"[0.68,0.75]\" --n \"[200,220]\" --level 0.99",
      "samplesize --kind mean --sigma \"[87.5,137.5]\" --bound 40",
      "freq --data \"50 [60,80] [70,90] [40,50]\" --format table",
      "randgen --mode balls --lo 1 --hi 100 --seed 11 --len 25",
  };
  for (const auto& cmd : cmds) {
    const RunResult first = run(cmd);
    const RunResult second = run(cmd);
    CHECK(first.rc == 0);
    CHECK(first.out == second.out);
    CHECK(!first.out.empty());
  }
}

TEST_CASE("parser round-trip corpus") {
  // clang-format off
  const std::vector<std::pair<std::string, std::string>> corpus = {
      {"7", "7"}, {"-3.25", "-3.25"}, {"0", "0"}, {"42", "42"}, {"0.1", "0.1"},
      {"1000000", "1e+06"}, {"1e3", "1000"}, {"2.5e-1", "0.25"},
      {"[2,5]", "[2,5]"}, {"(6,7)", "(6,7)"}, {"(8,8.8]", "(8,8.8]"},
      {"[0.1,0.2)", "[0.1,0.2)"}, {"[-5,-2]", "[-5,-2]"}, {"(-1,0]", "(-1,0]"},
      {"[1.25,2.75]", "[1.25,2.75]"}, {"[-0.5,0.5]", "[-0.5,0.5]"},
      {"[1e0,2e0]", "[1,2]"}, {"[0,0]", "0"}, {"[ 2 , 5 ]", "[2,5]"},
      {"{4,6}", "{4,6}"}, {"{6,4}", "{4,6}"}, {"{5}", "5"}, {"{1,2,3}", "{1,2,3}"},
      {"{10,2,33}", "{2,10,33}"}, {"{-3,-1,0}", "{-3,-1,0}"}, {"{2}U{2}", "2"},
      {"{1}U{2}", "{1,2}"}, {"{1}U[1,2]", "[1,2]"}, {"[1,4]U{2}", "[1,4]"},
      {"{21}U(22,25]", "{21}U(22,25]"}, {"[2,5]U[5,7]", "[2,7]"},
      {"[2,5]U(5,7)", "[2,7)"}, {"[2,5)U(5,7)", "[2,5)U(5,7)"},
      {"(1,2)U(3,4)", "(1,2)U(3,4)"}, {"[1,2]U[1.5,3]", "[1,3]"},
      {"(2,3)U(2.5,4)", "(2,4)"}, {"[1,2]U[3,4]U[5,6]", "[1,2]U[3,4]U[5,6]"},
      {"(0,1)U[1,2]", "(0,2]"}, {"(0,1]U(1,2)", "(0,2)"}, {"[0,1)U{1}", "[0,1]"},
      {"{0.5}U(0.5,1)", "[0.5,1)"}, {"(1,9)U{5}", "(1,9)"}, {"[3,3]U[4,4]", "{3,4}"},
      {"{1}u[2,3]", "{1}U[2,3]"}, {"{1}∪[2,3]", "{1}U[2,3]"},
      {"5+i[0,0.4]", "[5,5.4]"}, {"1+i[-1,1]", "[0,2]"}, {"3+i[0,0]", "3"},
      {"-2+i[0.5,1]", "[-1.5,-1]"}, {"12.5+i[-2.5,2.5]", "[10,15]"},
  };
  // clang-format on
  REQUIRE(corpus.size() == 50);
  for (const auto& [input, canonical] : corpus) {
    CAPTURE(input);
    const SetValue parsed = parse_set(input);
    CHECK(format_set(parsed) == canonical);
    // printing is idempotent: the canonical text parses back to the same set
    CHECK(parse_set(canonical) == parsed);
  }
}

TEST_CASE("file and CSV input modes") {
  {
    std::ofstream f("test_cli_obs.tmp.txt");
    f << "[6,6]\n[2,5]\n\n[30,30]\n[18,24]\n";
  }
  const json file_rep = run_json("describe --file test_cli_obs.tmp.txt --rank given");
  CHECK(file_rep["results"]["median"] == "[16,17.5]");
  std::remove("test_cli_obs.tmp.txt");

  {
    std::ofstream f("test_cli_obs.tmp.csv");
    f << "label,obs\n" << "a,\"[6,6]\"\n" << "b,\"[2,5]\"\n" << "c,30\n" << "d,\"[18,24]\"\n";
  }
  const json csv_rep = run_json("describe --csv test_cli_obs.tmp.csv --col obs --rank given");
  CHECK(csv_rep["results"]["mean"] == "[14,16.25]");
  const json csv_idx = run_json("describe --csv test_cli_obs.tmp.csv --col 1 --rank given");
  CHECK(csv_idx["results"]["mean"] == "[14,16.25]");
  std::remove("test_cli_obs.tmp.csv");
}

TEST_CASE("table format and precision override") {
  const RunResult t = run("describe --data \"[6,6] [2,5] [30,30] [18,24]\" --format table");
  CHECK(t.rc == 0);
  CHECK(t.out.find("results.mean: [14,16.25]") != std::string::npos);
  CHECK(t.out.find("command: describe") != std::string::npos);
  CHECK(t.out.find("{") == std::string::npos);

  const json p6 = run_json("describe --data \"[2,5] 7\"");
  const json p12 = run_json("describe --data \"[2,5] 7\" --precision 12");
  CHECK(p6["results"]["stddev"] == "[0.707107,3.33542]");
  CHECK(p12["results"]["stddev"] == "[0.707106781187,3.33541601603]");
}

TEST_CASE("plots are written for fit and freq") {
  const json f = run_json(
      "fit --x \"2 [4,5] 1 (6,7) 8 3\" --y \"[1,3] 6 2 (10,13) {14,15} 5\""
      " --plot test_cli_fit.tmp.svg");
  CHECK(f["results"]["plot"] == "test_cli_fit.tmp.svg");
  std::ifstream fin("test_cli_fit.tmp.svg");
  std::string fit_svg((std::istreambuf_iterator<char>(fin)), std::istreambuf_iterator<char>());
  CHECK(fit_svg.rfind("<svg", 0) == 0);
  CHECK(fit_svg.find("<polygon") != std::string::npos);  // fitted band
  CHECK(fit_svg.find("<circle") != std::string::npos);   // crisp points
  std::remove("test_cli_fit.tmp.svg");

  run_json("freq --data \"50 [60,80]\" --plot test_cli_freq.tmp.svg");
  std::ifstream hin("test_cli_freq.tmp.svg");
  std::string hist_svg((std::istreambuf_iterator<char>(hin)), std::istreambuf_iterator<char>());
  CHECK(hist_svg.find("url(#hatch)") != std::string::npos);  // set-valued bar
  std::remove("test_cli_freq.tmp.svg");
}

TEST_CASE("exit-code contract") {
  // usage errors
  CHECK(run("").rc == 64);
  CHECK(run("bogus").rc == 64);
  CHECK(run("describe").rc == 64);  // no data source
  CHECK(run("describe --data 1 --file x --format json").rc == 64);  // two sources
  CHECK(run("describe --data 1 --format yaml").rc == 64);
  CHECK(run("binom --n 5").rc == 64);  // missing required flags
  CHECK(run("randgen --mode uniform --len 5 --unknown-flag 1").rc == 64);
  // domain errors carry the error name and never exit 0
  for (const std::string& cmd : {
           std::string("describe --data \"[3,2]\""),
           std::string("nnalg div --num I --den I"),
           std::string("fit --x \"1 1 1\" --y \"1 2 3\""),
           std::string("randgen --mode weighted --values 1:0.4 --seed 1 --len 3"),
           std::string("randgen --mode balls --lo 5 --hi 1 --seed 1 --len 3"),
           std::string("describe --file no-such-file.txt"),
       }) {
    const RunResult r = run(cmd);
    CHECK(r.rc == 2);
    const json rep = json::parse(r.out);
    CHECK(rep["results"].contains("error"));
  }
  // --help exits 0
  CHECK(run("--help >/dev/null").rc == 0);
}

TEST_CASE("NEUTROSTAT_TABLES overrides the embedded critical tables") {
  const std::string dir = "test_cli_tables.tmp";
  std::remove((dir + "/z_crit.csv").c_str());
  std::remove((dir + "/t_table.csv").c_str());
  std::remove(dir.c_str());
#ifdef _WIN32
  _mkdir(dir.c_str());
#else
  system(("mkdir -p " + dir).c_str());
#endif
  {
    std::ifstream zin(NEUTROSTAT_DATA_DIR "/z_crit.csv");
    std::ofstream zout(dir + "/z_crit.csv");
    std::string line;
    while (std::getline(zin, line)) {
      if (line.rfind("1.28,", 0) == 0) line = "1.30,0.10,0.80";
      zout << line << "\n";
    }
    std::ifstream tin(NEUTROSTAT_DATA_DIR "/t_table.csv");
    std::ofstream tout(dir + "/t_table.csv");
    tout << tin.rdbuf();
  }
  const std::string args = "test --xbar \"[48,50]\" --null \"[40,41]\" --sd 25 --n 64 --alpha 0.1";
  const RunResult overridden = run(args, "NEUTROSTAT_TABLES=" + dir);
  CHECK(overridden.rc == 0);
  CHECK(json::parse(overridden.out)["results"]["decisions"][0]["z_crit"].get<double>() == 1.3);
  const RunResult normal = run(args);
  CHECK(json::parse(normal.out)["results"]["decisions"][0]["z_crit"].get<double>() == 1.28);
  const RunResult bad = run(args, "NEUTROSTAT_TABLES=/no-such-table-dir");
  CHECK(bad.rc == 2);
  std::remove((dir + "/z_crit.csv").c_str());
  std::remove((dir + "/t_table.csv").c_str());
  std::remove(dir.c_str());
}
