#include "scs/bench/compare.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <map>
#include <sstream>

namespace scs::bench {

std::string format_exact(double v) {
  if (std::isnan(v)) return "nan";
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return ec == std::errc() ? std::string(buf, ptr) : std::string("nan");
}

Comparison compare_results(const std::vector<std::filesystem::path>& files, std::optional<double> tau) {
  if (files.size() < 2) throw CompareError("compare needs at least two results files");
  Comparison cmp;
  std::map<std::string, int> seen;
  for (const auto& path : files) {
    ComparedRun run;
    run.path = path;
    try {
      run.results = read_results(path);
    } catch (const std::exception& e) {
      throw CompareError(e.what());
    }
    if (cmp.runs.empty()) {
      cmp.problem = run.results.problem;
    } else if (run.results.problem != cmp.problem) {
      throw CompareError("problem mismatch: '" + path.string() + "' is " + run.results.problem + ", expected " +
                         cmp.problem);
    }
    if (run.results.records.empty()) throw CompareError("results file '" + path.string() + "' has no records");
    ++seen[run.results.optimizer];
    cmp.runs.push_back(std::move(run));
  }
  for (auto& run : cmp.runs) {
    run.column = run.results.optimizer;
    if (seen[run.column] > 1) run.column += "-" + run.path.stem().string();
  }

  if (tau) {
    cmp.tau = *tau;
  } else {
    cmp.tau = -std::numeric_limits<double>::infinity();
    for (const auto& run : cmp.runs) {
      const auto& s = run.results.summary;
      const double last = s && s->final_loss ? *s->final_loss : run.results.records.back().loss;
      if (std::isfinite(last)) cmp.tau = std::max(cmp.tau, last);
    }
  }
  cmp.rows = std::numeric_limits<std::size_t>::max();
  for (auto& run : cmp.runs) {
    cmp.rows = std::min(cmp.rows, run.results.records.size());
    for (const auto& r : run.results.records) {
      if (r.loss <= cmp.tau) {
        run.first_below = r.t;
        break;
      }
    }
  }
  return cmp;
}

std::string comparison_csv(const Comparison& cmp) {
  std::ostringstream out;
  out << "# problem=" << cmp.problem << '\n';
  out << "# aligned_steps=" << cmp.rows << '\n';
  for (const auto& run : cmp.runs) {
    const std::size_t n = run.results.records.size();
    out << "# " << run.column << ": " << run.path.string() << " steps=" << n;
    if (n > cmp.rows) out << " (truncated to " << cmp.rows << ")";
    out << '\n';
  }
  out << "# tau=" << format_exact(cmp.tau) << '\n';

  out << "step";
  for (const auto& run : cmp.runs) out << ',' << run.column;
  out << '\n';
  for (std::size_t i = 0; i < cmp.rows; ++i) {
    out << cmp.runs.front().results.records[i].t;
    for (const auto& run : cmp.runs) out << ',' << format_exact(run.results.records[i].loss);
    out << '\n';
  }

  out << "final_loss";
  for (const auto& run : cmp.runs) {
    const auto& s = run.results.summary;
    out << ',' << (s && s->final_loss ? format_exact(*s->final_loss) : std::string("NA"));
  }
  out << '\n';
  out << "first_step_loss_le_tau";
  for (const auto& run : cmp.runs) {
    out << ',';
    if (run.first_below) out << *run.first_below;
    else out << "NA";
  }
  out << '\n';
  return out.str();
}

}  // namespace scs::bench
