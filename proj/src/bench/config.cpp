#include "scs/bench/config.hpp"

#include "scs/problems/charlm.hpp"
#include "scs/problems/synthetic.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>

#ifndef SCS_DATA_DIR
#define SCS_DATA_DIR "data"
#endif

namespace scs::bench {
namespace {

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

double to_double(const std::string& key, const std::string& text) {
  double value = 0;
  const char* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end || !std::isfinite(value)) {
    throw ConfigError("--" + key + ": expected a number, got '" + text + "'");
  }
  return value;
}

long long to_integer(const std::string& key, const std::string& text) {
  long long value = 0;
  const char* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end) throw ConfigError("--" + key + ": expected an integer, got '" + text + "'");
  return value;
}

std::size_t to_count(const std::string& key, const std::string& text) {
  const long long v = to_integer(key, text);
  if (v < 1) throw ConfigError("--" + key + ": must be at least 1");
  return static_cast<std::size_t>(v);
}

bool to_bool(const std::string& key, const std::string& text) {
  if (text.empty() || text == "true" || text == "1" || text == "yes" || text == "on") return true;
  if (text == "false" || text == "0" || text == "no" || text == "off") return false;
  throw ConfigError("--" + key + ": expected true or false, got '" + text + "'");
}

}  // namespace

const std::vector<std::string>& config_keys() {
  static const std::vector<std::string> keys{
      "problem",   "optimizer",   "lr",         "wd",          "beta1",          "beta2",        "zeta",
      "eps-stop",  "eta-th",      "momentum",   "epochs",      "max-steps",      "batch",        "seq-len",
      "adaptive-sampling",        "eps-conf",   "kappa",       "delta0",         "delta-decay",  "delta-min",
      "sample-cap", "smooth-lambda", "restart-period", "seed",  "out",            "corpus",       "dim",
      "layers",    "hidden",      "max-vocab"};
  return keys;
}

KeyValues parse_config_text(std::istream& in) {
  KeyValues out;
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    const std::string t = trim(line);
    if (t.empty() || t.front() == '#') continue;
    const auto eq = t.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("config line " + std::to_string(number) + ": expected key=value, got '" + t + "'");
    }
    std::string key = trim(std::string_view(t).substr(0, eq));
    if (key.rfind("--", 0) == 0) key.erase(0, 2);
    out[key] = trim(std::string_view(t).substr(eq + 1));
  }
  return out;
}

KeyValues read_config_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file '" + path.string() + "'");
  return parse_config_text(in);
}

std::filesystem::path bundled_corpus_path() { return std::filesystem::path(SCS_DATA_DIR) / "tiny_corpus.txt"; }

RunConfig make_config(const KeyValues& values) {
  const auto& known = config_keys();
  for (const auto& [key, value] : values) {
    if (std::find(known.begin(), known.end(), key) == known.end()) throw ConfigError("unknown option --" + key);
  }
  auto get = [&](const char* key) -> const std::string* {
    const auto it = values.find(key);
    return it == values.end() ? nullptr : &it->second;
  };

  RunConfig c;
  c.source = values;
  c.corpus = bundled_corpus_path();
  if (auto v = get("problem")) c.problem = *v;
  if (c.problem != "charlm") {
    const auto& names = synthetic_names();
    if (std::find(names.begin(), names.end(), c.problem) == names.end()) {
      throw ConfigError("unknown problem '" + c.problem + "' (expected charlm, l1-quadratic, hinge-svm, quadratic or rosenbrock)");
    }
  }
  if (auto v = get("optimizer")) {
    try {
      c.optimizer = parse_optimizer(*v);
    } catch (const std::invalid_argument& e) {
      throw ConfigError(e.what());
    }
  }
  if (auto v = get("lr")) c.hyper.eta = to_double("lr", *v);
  if (auto v = get("wd")) c.hyper.lambda_wd = to_double("wd", *v);
  if (auto v = get("beta1")) c.hyper.beta1 = to_double("beta1", *v);
  if (auto v = get("beta2")) c.hyper.beta2 = to_double("beta2", *v);
  if (auto v = get("zeta")) c.hyper.zeta = to_double("zeta", *v);
  if (auto v = get("eps-stop")) c.hyper.epsilon_stop = to_double("eps-stop", *v);
  if (auto v = get("eta-th")) c.hyper.eta_th = to_double("eta-th", *v);
  if (auto v = get("momentum")) c.hyper.theta_momentum = to_double("momentum", *v);
  if (auto v = get("smooth-lambda")) c.hyper.smooth_lambda = to_bool("smooth-lambda", *v);
  if (auto v = get("restart-period")) c.hyper.restart_period = static_cast<long>(to_count("restart-period", *v));
  try {
    c.hyper.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }

  if (auto v = get("epochs")) c.epochs = static_cast<long>(to_count("epochs", *v));
  if (auto v = get("max-steps")) c.max_steps = static_cast<long>(to_count("max-steps", *v));
  if (auto v = get("batch")) c.batch.batch = to_count("batch", *v);
  if (auto v = get("seq-len")) c.batch.seq_len = to_count("seq-len", *v);

  c.sampler.batch = c.batch.batch;
  if (auto v = get("adaptive-sampling")) c.sampler.adaptive = to_bool("adaptive-sampling", *v);
  if (auto v = get("eps-conf")) c.sampler.eps_conf = to_double("eps-conf", *v);
  if (auto v = get("kappa")) c.sampler.kappa = to_double("kappa", *v);
  if (auto v = get("delta0")) c.sampler.delta0 = to_double("delta0", *v);
  if (auto v = get("delta-decay")) c.sampler.delta_decay = to_double("delta-decay", *v);
  if (auto v = get("delta-min")) c.sampler.delta_min = to_double("delta-min", *v);
  if (auto v = get("sample-cap")) c.sampler.cap_multiplier = to_double("sample-cap", *v);
  try {
    c.sampler.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }

  const std::string* seed = get("seed");
  if (seed == nullptr) throw ConfigError("--seed is required");
  const long long s = to_integer("seed", *seed);
  if (s < 0) throw ConfigError("--seed must be non-negative");
  c.seed = static_cast<std::uint64_t>(s);
  c.batch.seed = c.seed;

  if (auto v = get("out")) c.out = *v;
  if (auto v = get("corpus")) c.corpus = *v;
  if (auto v = get("dim")) c.dim = to_count("dim", *v);
  if (auto v = get("layers")) c.layers = to_count("layers", *v);
  if (auto v = get("hidden")) c.hidden = to_count("hidden", *v);
  if (auto v = get("max-vocab")) c.max_vocab = to_count("max-vocab", *v);
  if (c.problem == "rosenbrock" && c.dim < 2) throw ConfigError("--dim must be at least 2 for rosenbrock");
  return c;
}

std::unique_ptr<Objective> make_objective(const RunConfig& config) {
  if (config.problem == "charlm") {
    Corpus corpus;
    try {
      corpus = load_corpus(config.corpus, config.max_vocab);
    } catch (const std::exception& e) {
      throw ConfigError(e.what());
    }
    if (corpus.size() <= config.batch.seq_len) {
      throw ConfigError("corpus '" + config.corpus.string() + "' is too short for --seq-len " +
                        std::to_string(config.batch.seq_len));
    }
    return charlm_objective(std::move(corpus), config.layers, config.hidden, config.batch);
  }
  return synthetic_objective(config.problem, config.dim, config.seed);
}

long steps_per_epoch(const Objective& objective, const RunConfig& config) {
  const std::size_t b = config.batch.batch;
  return std::max<long>(1, static_cast<long>((objective.examples_per_epoch() + b - 1) / b));
}

long step_budget(const Objective& objective, const RunConfig& config) {
  const long per_epoch = steps_per_epoch(objective, config);
  if (config.epochs && config.max_steps) return std::min(*config.max_steps, *config.epochs * per_epoch);
  if (config.epochs) return *config.epochs * per_epoch;
  if (config.max_steps) return *config.max_steps;
  return 1000;
}

}  // namespace scs::bench
