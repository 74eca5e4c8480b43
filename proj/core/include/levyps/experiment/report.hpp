#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace levyps::experiment {

// One verified identity.  A record passes iff statistic <= tolerance, so the
// verdict is recomputable from the two numbers alone.
struct CheckRecord {
  std::string suite;
  std::string check;
  std::string anchor;  // the identity being checked
  double statistic = 0.0;
  double tolerance = 0.0;
  std::optional<double> std_error;
  bool pass = false;
};

CheckRecord make_record(std::string suite, std::string check, std::string anchor,
                        double statistic, double tolerance,
                        std::optional<double> std_error = std::nullopt);

struct Report {
  std::vector<CheckRecord> checks;
  std::string effective_config;
  double wall_clock_seconds = 0.0;
  // CSV plot data keyed by file name.
  std::map<std::string, std::string> artifacts;

  std::size_t passed() const noexcept;
  std::size_t failed() const noexcept;
  bool all_passed() const noexcept { return failed() == 0; }
  std::vector<std::string> failing_ids() const;
};

// Schema-stable JSON; key order is fixed.  with_wall_clock=false drops the
// only non-deterministic field.
nlohmann::ordered_json to_json(const Report& report, bool with_wall_clock = true);

}  // namespace levyps::experiment
