// scsbench: run optimizers, compare results files, run the verification suites.

#include "scs/bench/compare.hpp"
#include "scs/bench/config.hpp"
#include "scs/bench/runner.hpp"
#include "scs/bench/verify.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <map>
#include <optional>

namespace {

using namespace scs::bench;

bool is_switch(const std::string& key) { return key == "adaptive-sampling" || key == "smooth-lambda"; }

struct RunArgs {
  std::string config_file;
  std::map<std::string, std::string> values;
  std::map<std::string, CLI::Option*> options;
};

int do_run(const RunArgs& args) {
  KeyValues merged;
  if (!args.config_file.empty()) merged = read_config_file(args.config_file);
  for (const auto& [key, opt] : args.options) {
    if (opt->count() == 0) continue;
    std::string value = args.values.at(key);
    if (is_switch(key) && value.empty()) value = "true";
    merged[key] = value;
  }
  const RunConfig config = make_config(merged);
  RunOutcome outcome;
  try {
    outcome = execute_run(config);
  } catch (const ConfigError&) {
    throw;
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  const Summary& s = outcome.summary;
  nlohmann::json j = {{"problem", s.problem}, {"optimizer", s.optimizer}, {"steps", s.steps},
                      {"stop_reason", s.stop_reason}};
  j["final_loss"] = s.final_loss ? nlohmann::json(*s.final_loss) : nlohmann::json(nullptr);
  if (!s.message.empty()) j["message"] = s.message;
  std::cout << j.dump() << '\n';
  if (outcome.exit_code == kExitNumerical) std::cerr << "scsbench: numerical abort: " << s.message << '\n';
  return outcome.exit_code;
}

int do_compare(const std::vector<std::string>& files, const std::string& out, std::optional<double> tau) {
  std::vector<std::filesystem::path> paths(files.begin(), files.end());
  const Comparison cmp = compare_results(paths, tau);
  const std::string csv = comparison_csv(cmp);
  if (out.empty()) {
    std::cout << csv;
  } else {
    std::ofstream f(out, std::ios::binary | std::ios::trunc);
    if (!f) throw ConfigError("cannot write '" + out + "'");
    f << csv;
  }
  return kExitOk;
}

int do_verify(const std::vector<std::string>& suites, const std::string& fault, std::uint64_t seed) {
  VerifyOptions options;
  options.seed = seed;
  if (!fault.empty()) options.lambda = fault_lambda(fault);
  std::vector<std::string> chosen;
  for (const auto& s : suites) {
    if (s == "all") {
      chosen.insert(chosen.end(), suite_names().begin(), suite_names().end());
    } else if (std::find(suite_names().begin(), suite_names().end(), s) == suite_names().end()) {
      throw ConfigError("unknown verify suite '" + s + "'");
    } else {
      chosen.push_back(s);
    }
  }
  int failed = 0, total = 0;
  for (const auto& suite : chosen) {
    for (const Check& c : run_suite(suite, options)) {
      std::cout << to_json_line(c) << '\n' << std::flush;
      ++total;
      failed += !c.passed;
    }
  }
  std::cerr << "verify: " << (total - failed) << "/" << total << " checks passed\n";
  return failed == 0 ? kExitOk : kExitFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Conjugate-subgradient AdamW benchmark"};
  app.require_subcommand(1);

  RunArgs run_args;
  auto* run = app.add_subcommand("run", "Train one optimizer on one problem and write a results file");
  run->add_option("--config", run_args.config_file, "key=value file; flags given on the command line win");
  for (const auto& key : config_keys()) run_args.values[key];
  for (const auto& key : config_keys()) {
    CLI::Option* opt = run->add_option("--" + key, run_args.values[key]);
    if (is_switch(key)) opt->expected(0, 1);
    run_args.options[key] = opt;
  }

  std::vector<std::string> compare_files;
  std::string compare_out;
  std::optional<double> tau;
  auto* compare = app.add_subcommand("compare", "Step-aligned loss table from results files");
  compare->add_option("files", compare_files, "results files")->required();
  compare->add_option("--out", compare_out, "CSV path (default: stdout)");
  compare->add_option("--tau", tau, "loss threshold for the first-step statistic");

  std::vector<std::string> suites{"all"};
  std::string fault;
  std::uint64_t verify_seed = VerifyOptions{}.seed;
  auto* verify = app.add_subcommand("verify", "Run property suites; one JSON line per check");
  verify->add_option("suites", suites, "suite names or 'all'");
  verify->add_option("--fault", fault, "swap in a broken lambda rule (unclamped, swapped)");
  verify->add_option("--seed", verify_seed, "base seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  try {
    if (*run) return do_run(run_args);
    if (*compare) return do_compare(compare_files, compare_out, tau);
    if (*verify) return do_verify(suites, fault, verify_seed);
  } catch (const ConfigError& e) {
    std::cerr << "scsbench: " << e.what() << '\n';
    return kExitConfig;
  } catch (const CompareError& e) {
    std::cerr << "scsbench: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::invalid_argument& e) {
    std::cerr << "scsbench: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "scsbench: " << e.what() << '\n';
    return kExitFailure;
  }
  return kExitConfig;
}
