#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "levyps/model.hpp"
#include "levyps/param_rule.hpp"
#include "levyps/skellam.hpp"

namespace levyps::experiment {

inline constexpr std::string_view kSuites[] = {"charfn",        "units",       "skellam",
                                               "hermite",       "density",     "orthogonality",
                                               "discriminate"};

bool is_suite(std::string_view name) noexcept;  // includes "all"

struct Tolerances {
  double closed_form = 1e-12;
  double mc_sigma = 5.0;  // Monte Carlo comparisons, in standard errors
  friend bool operator==(const Tolerances&, const Tolerances&) = default;
};

struct GaussianSection {
  ParamRule drift{ParamRule::Constant{0.0}};
  ParamRule q{ParamRule::Power{2.0}};
};
struct LpPoissonSection {
  ParamRule rates{ParamRule::Power{1.0}};
};
struct BernoulliSection {
  double rate = 1.0;
  ParamRule probs{ParamRule::Geometric{0.5}};
};
struct SkellamSection {
  ParamRule lambda{ParamRule::Constant{0.5}};
};
struct DiscriminateSection {
  // Unset means "same as skellam.lambda"; the echo always writes it out.
  std::optional<ParamRule> lambda_b;
  std::size_t grid_points = 64;
};

struct ExperimentConfig {
  std::string suite = "all";
  std::size_t K = 8;
  std::vector<double> grid{0.5, 1.0};
  std::size_t M = 100000;
  std::uint64_t seed = 1;
  unsigned threads = 1;
  std::string out = "levyps-out";

  GaussianSection gaussian;
  LpPoissonSection lp_poisson;
  BernoulliSection bernoulli;
  SkellamSection skellam;
  DiscriminateSection discriminate;

  Tolerances tolerance;
  std::map<std::string, Tolerances> overrides;  // per suite

  Tolerances tolerances_for(std::string_view suite) const;
  std::vector<std::string> selected_suites() const;

  GaussianDiagonal gaussian_model() const;
  LpCompoundPoisson lp_poisson_model() const;
  BernoulliCompound bernoulli_model() const;
  SkellamFamily skellam_model() const;
  skellam::LambdaProfile profile_a() const;
  skellam::LambdaProfile profile_b() const;
};

// Parses a YAML document.  Unknown keys, malformed values and invalid
// parameters raise ConfigError naming the field and line.
ExperimentConfig parse_config(std::string_view text);
ExperimentConfig load_config(const std::string& path);

// Checks cross-field constraints (K >= 1, grid, rule expansion, ranges).
void validate(const ExperimentConfig& config);

// Canonical YAML with every default explicit; parse_config(print(c))
// prints identically.
std::string print_effective_config(const ExperimentConfig& config);

}  // namespace levyps::experiment
