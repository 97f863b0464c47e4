#include "scs/bench/results.hpp"

#include <json.hpp>

#include <cmath>
#include <limits>
#include <stdexcept>

namespace scs::bench {
namespace {

using nlohmann::json;

json number_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

double number_or_nan(const json& j, const char* key) {
  const auto it = j.find(key);
  if (it == j.end() || it->is_null()) return std::numeric_limits<double>::quiet_NaN();
  return it->get<double>();
}

}  // namespace

std::filesystem::path timing_path(const std::filesystem::path& results) {
  std::filesystem::path p = results;
  p += ".timing.csv";
  return p;
}

ResultsWriter::ResultsWriter(const std::filesystem::path& path, const RunConfig& config)
    : out_(path, std::ios::binary | std::ios::trunc), timing_(timing_path(path), std::ios::trunc) {
  if (!out_) throw std::runtime_error("cannot open results file '" + path.string() + "' for writing");
  json cfg = json::object();
  for (const auto& [k, v] : config.source) cfg[k] = v;
  json header = {{"type", "header"},
                 {"problem", config.problem},
                 {"optimizer", std::string(to_string(config.optimizer))},
                 {"seed", config.seed},
                 {"config", cfg}};
  out_ << header.dump() << '\n' << std::flush;
  if (timing_) timing_ << "t,wall_ms\n";
}

void ResultsWriter::record(const RunRecord& rec) {
  json j = {{"type", "record"},
            {"t", rec.t},
            {"epoch", rec.epoch},
            {"loss", number_or_null(rec.loss)},
            {"d_norm", number_or_null(rec.d_norm)},
            {"g_norm", number_or_null(rec.g_norm)},
            {"lambda_star", number_or_null(rec.lambda_star)},
            {"n_t", rec.n_t},
            {"flags", rec.flags}};
  out_ << j.dump() << '\n' << std::flush;
  if (timing_) timing_ << rec.t << ',' << rec.wall_ms << '\n';
}

void ResultsWriter::summary(const Summary& s) {
  json j = {{"type", "summary"},
            {"problem", s.problem},
            {"optimizer", s.optimizer},
            {"seed", s.seed},
            {"steps", s.steps},
            {"stop_reason", s.stop_reason},
            {"message", s.message},
            {"final_loss", s.final_loss ? number_or_null(*s.final_loss) : json(nullptr)}};
  out_ << j.dump() << '\n' << std::flush;
}

ResultsFile read_results(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read results file '" + path.string() + "'");
  ResultsFile file;
  bool saw_header = false;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    json j = json::parse(line, nullptr, false);
    if (j.is_discarded()) {
      if (in.peek() == std::char_traits<char>::eof()) break;  // torn final line
      throw std::runtime_error("results file '" + path.string() + "': malformed line");
    }
    const std::string type = j.value("type", "");
    if (type == "header") {
      file.problem = j.value("problem", "");
      file.optimizer = j.value("optimizer", "");
      saw_header = true;
    } else if (type == "record") {
      RunRecord r;
      r.t = j.at("t").get<long>();
      r.epoch = j.value("epoch", 0L);
      r.loss = number_or_nan(j, "loss");
      r.d_norm = number_or_nan(j, "d_norm");
      r.g_norm = number_or_nan(j, "g_norm");
      r.lambda_star = number_or_nan(j, "lambda_star");
      r.n_t = j.value("n_t", std::size_t{0});
      r.flags = j.value("flags", std::vector<std::string>{});
      file.records.push_back(std::move(r));
    } else if (type == "summary") {
      Summary s;
      s.problem = j.value("problem", "");
      s.optimizer = j.value("optimizer", "");
      s.seed = j.value("seed", std::uint64_t{0});
      s.steps = j.value("steps", 0L);
      s.stop_reason = j.value("stop_reason", "");
      s.message = j.value("message", "");
      if (j.contains("final_loss") && !j["final_loss"].is_null()) s.final_loss = j["final_loss"].get<double>();
      file.summary = std::move(s);
    }
  }
  if (!saw_header) throw std::runtime_error("results file '" + path.string() + "' has no header line");
  return file;
}

}  // namespace scs::bench
