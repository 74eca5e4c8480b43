#include "levyps/experiment/report.hpp"

#include <cmath>

namespace levyps::experiment {

CheckRecord make_record(std::string suite, std::string check, std::string anchor,
                        double statistic, double tolerance, std::optional<double> std_error) {
  CheckRecord r;
  r.suite = std::move(suite);
  r.check = std::move(check);
  r.anchor = std::move(anchor);
  r.statistic = statistic;
  r.tolerance = tolerance;
  r.std_error = std_error;
  r.pass = statistic <= tolerance;  // false for NaN
  return r;
}

std::size_t Report::passed() const noexcept {
  std::size_t n = 0;
  for (const auto& c : checks) n += c.pass ? 1 : 0;
  return n;
}

std::size_t Report::failed() const noexcept { return checks.size() - passed(); }

std::vector<std::string> Report::failing_ids() const {
  std::vector<std::string> out;
  for (const auto& c : checks) {
    if (!c.pass) out.push_back(c.suite + "/" + c.check);
  }
  return out;
}

nlohmann::ordered_json to_json(const Report& report, bool with_wall_clock) {
  using json = nlohmann::ordered_json;
  json checks = json::array();
  for (const auto& c : report.checks) {
    json rec;
    rec["suite"] = c.suite;
    rec["check"] = c.check;
    rec["anchor"] = c.anchor;
    rec["statistic"] = std::isfinite(c.statistic) ? json(c.statistic) : json(nullptr);
    rec["tolerance"] = c.tolerance;
    rec["stderr"] = c.std_error ? json(*c.std_error) : json(nullptr);
    rec["pass"] = c.pass;
    checks.push_back(std::move(rec));
  }
  json out;
  out["schema"] = "levyps.report/1";
  out["summary"] = {{"total", report.checks.size()},
                    {"passed", report.passed()},
                    {"failed", report.failed()}};
  out["checks"] = std::move(checks);
  out["effective_config"] = report.effective_config;
  json files = json::array();
  for (const auto& [name, content] : report.artifacts) files.push_back(name);
  out["artifacts"] = std::move(files);
  if (with_wall_clock) out["wall_clock_seconds"] = report.wall_clock_seconds;
  return out;
}

}  // namespace levyps::experiment
