#include <doctest.h>

#include "scs/bench/compare.hpp"
#include "scs/bench/config.hpp"
#include "scs/bench/results.hpp"
#include "scs/bench/runner.hpp"
#include "scs/bench/verify.hpp"
#include "scs/problems/synthetic.hpp"

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

using namespace scs;
using namespace scs::bench;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "scs_bench_tests";
  fs::create_directories(dir);
  const fs::path p = dir / name;
  fs::remove(p);
  fs::remove(timing_path(p));
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

int cli(const std::string& args, const fs::path& stdout_to = {}) {
  std::string cmd = std::string(SCSBENCH_PATH) + " " + args;
  cmd += stdout_to.empty() ? " > /dev/null" : " > '" + stdout_to.string() + "'";
  cmd += " 2> /dev/null";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

RunConfig quick(const std::string& optimizer, const fs::path& out, long steps = 200) {
  return make_config({{"problem", "l1-quadratic"},
                      {"optimizer", optimizer},
                      {"lr", "0.01"},
                      {"dim", "8"},
                      {"seed", "3"},
                      {"max-steps", std::to_string(steps)},
                      {"out", out.string()}});
}

}  // namespace

TEST_SUITE("bench") {
  TEST_CASE("config text parsing") {
    std::istringstream in("# comment\nlr = 0.01\n--wd=0.002\n\nseed=4\n");
    const KeyValues kv = parse_config_text(in);
    CHECK(kv.at("lr") == "0.01");
    CHECK(kv.at("wd") == "0.002");
    CHECK(kv.size() == 3);
    std::istringstream bad("lr 0.01\n");
    CHECK_THROWS_AS(parse_config_text(bad), ConfigError);
  }

  TEST_CASE("config validation") {
    CHECK_THROWS_AS(make_config({{"problem", "quadratic"}}), ConfigError);  // seed is mandatory
    CHECK_THROWS_AS(make_config({{"seed", "1"}, {"learning-rate", "0.1"}}), ConfigError);
    CHECK_THROWS_AS(make_config({{"seed", "1"}, {"lr", "-1"}}), ConfigError);
    CHECK_THROWS_AS(make_config({{"seed", "1"}, {"lr", "abc"}}), ConfigError);
    CHECK_THROWS_AS(make_config({{"seed", "1"}, {"optimizer", "lion"}}), ConfigError);
    CHECK_THROWS_AS(make_config({{"seed", "1"}, {"problem", "mnist"}}), ConfigError);
    CHECK_THROWS_AS(make_config({{"seed", "1"}, {"batch", "0"}}), ConfigError);
    CHECK_THROWS_AS(make_config({{"seed", "1"}, {"beta2", "1"}}), ConfigError);
    CHECK_THROWS_AS(make_config({{"seed", "1"}, {"adaptive-sampling", "maybe"}}), ConfigError);

    const RunConfig c = make_config({{"seed", "9"},
                                     {"optimizer", "adamw"},
                                     {"lr", "0.002"},
                                     {"wd", "0.01"},
                                     {"beta2", "0.99"},
                                     {"zeta", "1e-7"},
                                     {"eps-stop", "1e-5"},
                                     {"restart-period", "10"},
                                     {"smooth-lambda", "true"},
                                     {"adaptive-sampling", "true"},
                                     {"eps-conf", "0.05"},
                                     {"kappa", "50"},
                                     {"delta0", "0.8"},
                                     {"delta-decay", "0.9"}});
    CHECK(c.optimizer == OptimizerKind::adamw);
    CHECK(c.hyper.eta == 0.002);
    CHECK(c.hyper.lambda_wd == 0.01);
    CHECK(c.hyper.beta2 == 0.99);
    CHECK(c.hyper.zeta == 1e-7);
    CHECK(c.hyper.epsilon_stop == 1e-5);
    CHECK(c.hyper.restart_period == 10);
    CHECK(c.hyper.smooth_lambda);
    CHECK(c.sampler.adaptive);
    CHECK(c.sampler.kappa == 50);
    CHECK(c.seed == 9);
  }

  TEST_CASE("step budget") {
    const auto obj = synthetic_objective("quadratic", 4, 1);
    RunConfig c = make_config({{"seed", "1"}, {"batch", "16"}, {"epochs", "3"}});
    CHECK(steps_per_epoch(*obj, c) == 13);  // ceil(200 / 16)
    CHECK(step_budget(*obj, c) == 39);
    c.max_steps = 20;
    CHECK(step_budget(*obj, c) == 20);
  }

  TEST_CASE("results round trip keeps NaN and flags") {
    const fs::path p = scratch("roundtrip.jsonl");
    const RunConfig c = quick("adam", p);
    {
      ResultsWriter w(p, c);
      RunRecord r;
      r.t = 1;
      r.loss = 0.1 + 0.2;
      r.d_norm = 3.5;
      r.g_norm = 1e-300;
      r.lambda_star = std::nan("");
      r.n_t = 16;
      r.flags = {"sample-cap"};
      w.record(r);
      w.summary(Summary{"l1-quadratic", "adam", 3, 1, "max-steps", "", 0.1 + 0.2});
    }
    const ResultsFile f = read_results(p);
    CHECK(f.problem == "l1-quadratic");
    REQUIRE(f.records.size() == 1);
    CHECK(f.records[0].loss == 0.1 + 0.2);
    CHECK(f.records[0].g_norm == 1e-300);
    CHECK(std::isnan(f.records[0].lambda_star));
    CHECK(f.records[0].flags == std::vector<std::string>{"sample-cap"});
    REQUIRE(f.summary);
    CHECK(*f.summary->final_loss == 0.1 + 0.2);
    CHECK(fs::exists(timing_path(p)));
  }

  TEST_CASE("interrupted results file leaves a parseable prefix") {
    const fs::path p = scratch("torn.jsonl");
    execute_run(quick("scsadamw", p, 50));
    const std::string full = slurp(p);
    // Stop partway through a record line.
    const auto line_start = full.find('\n', full.size() / 2);
    REQUIRE(line_start != std::string::npos);
    const auto cut = line_start + 20;
    std::ofstream(p, std::ios::binary | std::ios::trunc) << full.substr(0, cut);
    const ResultsFile f = read_results(p);
    CHECK_FALSE(f.summary);
    CHECK(f.records.size() > 10);
    for (std::size_t i = 0; i < f.records.size(); ++i) CHECK(f.records[i].t == static_cast<long>(i + 1));
  }

  TEST_CASE("same configuration gives identical bytes") {
    const fs::path a = scratch("det_a.jsonl"), b = scratch("det_b.jsonl");
    RunConfig ca = quick("scsadamw", a, 300);
    RunConfig cb = quick("scsadamw", b, 300);
    cb.source["out"] = ca.source["out"];  // the header echoes the configuration
    execute_run(ca);
    execute_run(cb);
    CHECK(slurp(a) == slurp(b));
  }

  TEST_CASE("compare aligns, truncates and summarises") {
    const fs::path a = scratch("cmp_adam.jsonl"), w = scratch("cmp_adamw.jsonl"), s = scratch("cmp_scs.jsonl");
    execute_run(quick("adam", a, 120));
    execute_run(quick("adamw", w, 100));
    execute_run(quick("scsadamw", s, 120));
    const Comparison cmp = compare_results({a, w, s}, 3.0);
    CHECK(cmp.rows == 100);
    const std::string csv = comparison_csv(cmp);
    std::istringstream lines(csv);
    std::string line, header;
    bool noted = false;
    std::vector<std::string> rows;
    while (std::getline(lines, line)) {
      if (line.rfind("#", 0) == 0) {
        noted |= line.find("truncated to 100") != std::string::npos;
      } else if (header.empty()) {
        header = line;
      } else {
        rows.push_back(line);
      }
    }
    CHECK(noted);
    CHECK(header == "step,adam,adamw,scsadamw");
    REQUIRE(rows.size() == 102);
    CHECK(std::count(rows[0].begin(), rows[0].end(), ',') == 3);

    // Final losses copy each file's summary exactly.
    std::istringstream final_row(rows[100]);
    std::string cell;
    std::getline(final_row, cell, ',');
    CHECK(cell == "final_loss");
    for (const fs::path& p : {a, w, s}) {
      std::getline(final_row, cell, ',');
      CHECK(std::stod(cell) == *read_results(p).summary->final_loss);
    }

    // First step at or below tau, recomputed by scanning the records.
    std::istringstream first_row(rows[101]);
    std::getline(first_row, cell, ',');
    CHECK(cell == "first_step_loss_le_tau");
    for (const fs::path& p : {a, w, s}) {
      std::getline(first_row, cell, ',');
      std::string expected = "NA";
      for (const auto& r : read_results(p).records) {
        if (r.loss <= 3.0) {
          expected = std::to_string(r.t);
          break;
        }
      }
      CHECK(cell == expected);
    }
  }

  TEST_CASE("compare rejects mismatched problems") {
    const fs::path a = scratch("mm_a.jsonl"), b = scratch("mm_b.jsonl");
    execute_run(quick("adam", a, 10));
    RunConfig c = quick("adam", b, 10);
    c.problem = "quadratic";
    execute_run(c);
    CHECK_THROWS_AS(compare_results({a, b}), CompareError);
    CHECK_THROWS_AS(compare_results({a}), CompareError);
  }

  TEST_CASE("verify suites pass and faults are caught") {
    for (const char* suite : {"direction-optimality", "hull-membership", "p-lambda"}) {
      for (const Check& c : run_suite(suite)) CHECK_MESSAGE(c.passed, c.suite << " " << c.name << " " << c.detail);
    }
    CHECK_THROWS_AS(run_suite("nonsense"), std::invalid_argument);

    VerifyOptions broken;
    broken.lambda = fault_lambda("unclamped");
    auto failures = [&](const char* suite) {
      int n = 0;
      for (const Check& c : run_suite(suite, broken)) n += !c.passed;
      return n;
    };
    CHECK(failures("direction-optimality") > 0);
    CHECK(failures("hull-membership") > 0);
    broken.lambda = fault_lambda("swapped");
    CHECK(failures("direction-optimality") > 0);
  }

  TEST_CASE("check lines are JSON") {
    const std::string line = to_json_line(Check{"s", "n", true, 1.5, 2.0, "d"});
    CHECK(line.find("\"passed\":true") != std::string::npos);
    CHECK(line.find("\"suite\":\"s\"") != std::string::npos);
  }

  TEST_CASE("cli run contract") {
    const fs::path out = scratch("cli_run.jsonl");
    CHECK(cli("run --problem l1-quadratic --optimizer scsadamw --lr 0.001 --wd 0.001 --seed 7 --max-steps 5000 --out " +
              out.string()) == 0);
    const ResultsFile f = read_results(out);
    CHECK(f.records.size() <= 5000);
    CHECK(f.summary);

    const fs::path again = scratch("cli_run_again.jsonl");
    const fs::path copy = scratch("cli_run_copy.jsonl");
    fs::copy_file(out, copy);
    fs::remove(out);
    CHECK(cli("run --problem l1-quadratic --optimizer scsadamw --lr 0.001 --wd 0.001 --seed 7 --max-steps 5000 --out " +
              out.string()) == 0);
    CHECK(slurp(out) == slurp(copy));
    (void)again;
  }

  TEST_CASE("cli rejects bad configuration without writing") {
    const fs::path out = scratch("cli_bad.jsonl");
    CHECK(cli("run --problem l1-quadratic --lr -1 --seed 1 --out " + out.string()) == 2);
    CHECK_FALSE(fs::exists(out));
    CHECK(cli("run --problem l1-quadratic --out " + out.string()) == 2);  // no seed
    CHECK(cli("run --seed 1 --optimizer lion") == 2);
    CHECK(cli("run --seed 1 --no-such-flag 3") == 2);
    CHECK(cli("run --seed 1 --problem charlm --corpus /nonexistent/corpus.txt") == 2);
    CHECK_FALSE(fs::exists(out));
  }

  TEST_CASE("cli config file with flag override") {
    const fs::path cfg = scratch("run.cfg");
    const fs::path out = scratch("cli_cfg.jsonl");
    std::ofstream(cfg) << "problem=quadratic\noptimizer=adam\nlr=0.5\nseed=2\nmax-steps=30\ndim=4\nout=" << out.string()
                       << "\n";
    CHECK(cli("run --config " + cfg.string() + " --lr 0.01 --optimizer adamw") == 0);
    const std::string text = slurp(out);
    CHECK(text.find("\"optimizer\":\"adamw\"") != std::string::npos);
    CHECK(text.find("\"lr\":\"0.01\"") != std::string::npos);
    CHECK(read_results(out).records.size() == 30);
    CHECK(cli("run --config " + scratch("missing.cfg").string()) == 2);
  }

  TEST_CASE("cli switches") {
    const fs::path out = scratch("cli_switch.jsonl");
    CHECK(cli("run --problem quadratic --dim 4 --seed 2 --max-steps 5 --adaptive-sampling --smooth-lambda --out " +
              out.string()) == 0);
    const ResultsFile f = read_results(out);
    REQUIRE(f.records.size() == 5);
    CHECK(f.records[0].n_t != 16);
  }

  TEST_CASE("cli numerical abort exits 3 and keeps partial records") {
    const fs::path out = scratch("cli_abort.jsonl");
    CHECK(cli("run --problem rosenbrock --optimizer sgd --lr 10 --seed 1 --max-steps 100 --out " + out.string()) == 3);
    const ResultsFile f = read_results(out);
    REQUIRE(f.summary);
    CHECK(f.summary->stop_reason == "numerical-abort");
  }

  TEST_CASE("cli compare and verify") {
    const fs::path a = scratch("cv_a.jsonl"), b = scratch("cv_b.jsonl"), csv = scratch("cv.csv");
    CHECK(cli("run --problem l1-quadratic --optimizer adam --seed 1 --max-steps 20 --out " + a.string()) == 0);
    CHECK(cli("run --problem l1-quadratic --optimizer adamw --seed 1 --max-steps 20 --out " + b.string()) == 0);
    CHECK(cli("compare " + a.string() + " " + b.string() + " --out " + csv.string()) == 0);
    CHECK(slurp(csv).find("step,adam,adamw") != std::string::npos);
    const fs::path q = scratch("cv_q.jsonl");
    CHECK(cli("run --problem quadratic --optimizer adam --seed 1 --max-steps 20 --out " + q.string()) == 0);
    CHECK(cli("compare " + a.string() + " " + q.string()) == 2);

    const fs::path report = scratch("verify.jsonl");
    CHECK(cli("verify p-lambda", report) == 0);
    CHECK(slurp(report).find("\"suite\":\"p-lambda\"") != std::string::npos);
    CHECK(cli("verify no-such-suite") == 2);
    CHECK(cli("verify hull-membership --fault unclamped") == 1);
  }
}
