#include "levyps/experiment/config.hpp"

#include <yaml-cpp/yaml.h>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "levyps/errors.hpp"

namespace levyps::experiment {
namespace {

int line_of(const YAML::Node& node) { return node.Mark().line >= 0 ? node.Mark().line + 1 : 0; }

void reject_unknown(const YAML::Node& map, const std::set<std::string>& allowed,
                    const std::string& prefix) {
  if (!map.IsMap()) throw ConfigError(prefix, line_of(map), "expected a mapping");
  for (const auto& kv : map) {
    const auto key = kv.first.as<std::string>();
    if (!allowed.count(key)) {
      throw ConfigError(prefix.empty() ? key : prefix + "." + key, line_of(kv.first),
                        "unknown key");
    }
  }
}

template <class T>
T scalar(const YAML::Node& node, const std::string& field) {
  if (!node.IsScalar()) throw ConfigError(field, line_of(node), "expected a scalar");
  try {
    return node.as<T>();
  } catch (const YAML::Exception&) {
    throw ConfigError(field, line_of(node), "cannot parse '" + node.Scalar() + "'");
  }
}

double number(const YAML::Node& node, const std::string& field) {
  const double v = scalar<double>(node, field);
  if (!std::isfinite(v)) throw ConfigError(field, line_of(node), "must be finite");
  return v;
}

std::size_t positive_count(const YAML::Node& node, const std::string& field) {
  const auto v = scalar<long long>(node, field);
  if (v < 1) throw ConfigError(field, line_of(node), "must be >= 1, got " + std::to_string(v));
  return static_cast<std::size_t>(v);
}

ParamRule rule(const YAML::Node& node, const std::string& field) {
  try {
    if (node.IsSequence()) {
      std::vector<double> values;
      for (const auto& item : node) values.push_back(number(item, field));
      if (values.empty()) throw std::invalid_argument("empty list");
      return ParamRule(ParamRule::List{std::move(values)});
    }
    return ParamRule::parse(scalar<std::string>(node, field));
  } catch (const std::invalid_argument& e) {
    throw ConfigError(field, line_of(node), e.what());
  }
}

Tolerances tolerances(const YAML::Node& node, const std::string& prefix, Tolerances base) {
  if (node["closed_form"]) {
    base.closed_form = number(node["closed_form"], prefix + ".closed_form");
    if (!(base.closed_form >= 0.0)) {
      throw ConfigError(prefix + ".closed_form", line_of(node["closed_form"]), "must be >= 0");
    }
  }
  if (node["mc_sigma"]) {
    base.mc_sigma = number(node["mc_sigma"], prefix + ".mc_sigma");
    if (!(base.mc_sigma > 0.0)) {
      throw ConfigError(prefix + ".mc_sigma", line_of(node["mc_sigma"]), "must be > 0");
    }
  }
  return base;
}

std::string quoted(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

// Wraps model construction so parameter violations surface as config errors.
template <class F>
auto build(const std::string& field, F&& f) {
  try {
    return f();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(field, 0, e.what());
  }
}

}  // namespace

bool is_suite(std::string_view name) noexcept {
  return name == "all" || std::find(std::begin(kSuites), std::end(kSuites), name) != std::end(kSuites);
}

Tolerances ExperimentConfig::tolerances_for(std::string_view name) const {
  auto it = overrides.find(std::string(name));
  return it == overrides.end() ? tolerance : it->second;
}

std::vector<std::string> ExperimentConfig::selected_suites() const {
  if (suite == "all") return {std::begin(kSuites), std::end(kSuites)};
  return {suite};
}

GaussianDiagonal ExperimentConfig::gaussian_model() const {
  auto drift = build("gaussian.drift", [&] { return gaussian.drift.expand(Truncation(K)); });
  auto q = build("gaussian.q", [&] { return gaussian.q.expand(Truncation(K)); });
  return build("gaussian.q", [&] { return GaussianDiagonal(std::move(drift), std::move(q)); });
}

LpCompoundPoisson ExperimentConfig::lp_poisson_model() const {
  return build("lp_poisson.rates",
               [&] { return LpCompoundPoisson(lp_poisson.rates.expand(Truncation(K))); });
}

BernoulliCompound ExperimentConfig::bernoulli_model() const {
  if (!(bernoulli.rate >= 0.0)) throw ConfigError("bernoulli.rate", 0, "must be >= 0");
  return build("bernoulli.probs", [&] {
    return BernoulliCompound(bernoulli.rate, bernoulli.probs.expand(Truncation(K)));
  });
}

SkellamFamily ExperimentConfig::skellam_model() const {
  return build("skellam.lambda",
               [&] { return SkellamFamily(skellam.lambda.expand(Truncation(K))); });
}

skellam::LambdaProfile ExperimentConfig::profile_a() const {
  return build("skellam.lambda", [&] {
    return skellam::LambdaProfile(skellam.lambda.expand(Truncation(K)));
  });
}

skellam::LambdaProfile ExperimentConfig::profile_b() const {
  const ParamRule& r = discriminate.lambda_b ? *discriminate.lambda_b : skellam.lambda;
  return build("discriminate.lambda_b",
               [&] { return skellam::LambdaProfile(r.expand(Truncation(K))); });
}

ExperimentConfig parse_config(std::string_view text) {
  YAML::Node root;
  try {
    root = YAML::Load(std::string(text));
  } catch (const YAML::ParserException& e) {
    throw ConfigError("", e.mark.line + 1, e.msg);
  }
  ExperimentConfig cfg;
  if (!root || root.IsNull()) {
    validate(cfg);
    return cfg;
  }
  reject_unknown(root,
                 {"suite", "K", "M", "grid", "seed", "threads", "out", "gaussian", "lp_poisson",
                  "bernoulli", "skellam", "discriminate", "tolerance"},
                 "");

  if (auto n = root["suite"]) {
    cfg.suite = scalar<std::string>(n, "suite");
    if (!is_suite(cfg.suite)) throw ConfigError("suite", line_of(n), "unknown suite '" + cfg.suite + "'");
  }
  if (auto n = root["K"]) cfg.K = positive_count(n, "K");
  if (auto n = root["M"]) cfg.M = positive_count(n, "M");
  if (auto n = root["grid"]) {
    if (!n.IsSequence()) throw ConfigError("grid", line_of(n), "expected a list of times");
    cfg.grid.clear();
    for (const auto& item : n) cfg.grid.push_back(number(item, "grid"));
    double prev = 0.0;
    for (double t : cfg.grid) {
      if (!(t > prev)) {
        throw ConfigError("grid", line_of(n), "times must be positive and strictly increasing");
      }
      prev = t;
    }
    if (cfg.grid.empty()) throw ConfigError("grid", line_of(n), "at least one time required");
  }
  if (auto n = root["seed"]) cfg.seed = scalar<std::uint64_t>(n, "seed");
  if (auto n = root["threads"]) {
    cfg.threads = static_cast<unsigned>(positive_count(n, "threads"));
  }
  if (auto n = root["out"]) cfg.out = scalar<std::string>(n, "out");

  if (auto n = root["gaussian"]) {
    reject_unknown(n, {"drift", "q"}, "gaussian");
    if (n["drift"]) cfg.gaussian.drift = rule(n["drift"], "gaussian.drift");
    if (n["q"]) cfg.gaussian.q = rule(n["q"], "gaussian.q");
  }
  if (auto n = root["lp_poisson"]) {
    reject_unknown(n, {"rates"}, "lp_poisson");
    if (n["rates"]) cfg.lp_poisson.rates = rule(n["rates"], "lp_poisson.rates");
  }
  if (auto n = root["bernoulli"]) {
    reject_unknown(n, {"rate", "probs"}, "bernoulli");
    if (n["rate"]) cfg.bernoulli.rate = number(n["rate"], "bernoulli.rate");
    if (n["probs"]) cfg.bernoulli.probs = rule(n["probs"], "bernoulli.probs");
  }
  if (auto n = root["skellam"]) {
    reject_unknown(n, {"lambda"}, "skellam");
    if (n["lambda"]) cfg.skellam.lambda = rule(n["lambda"], "skellam.lambda");
  }
  if (auto n = root["discriminate"]) {
    reject_unknown(n, {"lambda_b", "grid_points"}, "discriminate");
    if (n["lambda_b"]) cfg.discriminate.lambda_b = rule(n["lambda_b"], "discriminate.lambda_b");
    if (n["grid_points"]) {
      cfg.discriminate.grid_points = positive_count(n["grid_points"], "discriminate.grid_points");
    }
  }
  if (auto n = root["tolerance"]) {
    reject_unknown(n, {"closed_form", "mc_sigma", "suites"}, "tolerance");
    cfg.tolerance = tolerances(n, "tolerance", cfg.tolerance);
    if (auto s = n["suites"]) {
      if (!s.IsMap()) throw ConfigError("tolerance.suites", line_of(s), "expected a mapping");
      for (const auto& kv : s) {
        const auto name = kv.first.as<std::string>();
        const std::string prefix = "tolerance.suites." + name;
        if (name == "all" || !is_suite(name)) {
          throw ConfigError(prefix, line_of(kv.first), "unknown suite");
        }
        reject_unknown(kv.second, {"closed_form", "mc_sigma"}, prefix);
        cfg.overrides[name] = tolerances(kv.second, prefix, cfg.tolerance);
      }
    }
  }
  try {
    validate(cfg);
  } catch (const ConfigError& e) {
    if (e.line() != 0) throw;
    // Cross-field errors: point at the named key when the document has it.
    YAML::Node node = root;
    std::string_view rest = e.field();
    while (node && node.IsMap() && !rest.empty()) {
      const auto dot = rest.find('.');
      node = node[std::string(rest.substr(0, dot))];
      rest = dot == std::string_view::npos ? std::string_view{} : rest.substr(dot + 1);
    }
    throw ConfigError(e.field(), node && rest.empty() ? line_of(node) : 0, e.detail());
  }
  return cfg;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("", 0, "cannot open " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

void validate(const ExperimentConfig& c) {
  if (c.K < 1) throw ConfigError("K", 0, "must be >= 1");
  if (c.M < 1) throw ConfigError("M", 0, "must be >= 1");
  if (c.grid.empty()) throw ConfigError("grid", 0, "at least one time required");
  if (!is_suite(c.suite)) throw ConfigError("suite", 0, "unknown suite '" + c.suite + "'");
  (void)c.gaussian_model();
  (void)c.lp_poisson_model();
  (void)c.bernoulli_model();
  (void)c.skellam_model();
  (void)c.profile_b();
}

std::string print_effective_config(const ExperimentConfig& c) {
  std::ostringstream o;
  o << "suite: " << c.suite << "\n";
  o << "K: " << c.K << "\n";
  o << "M: " << c.M << "\n";
  o << "grid: [";
  for (std::size_t i = 0; i < c.grid.size(); ++i) o << (i ? ", " : "") << format_double(c.grid[i]);
  o << "]\n";
  o << "seed: " << c.seed << "\n";
  o << "threads: " << c.threads << "\n";
  o << "out: " << quoted(c.out) << "\n";
  o << "gaussian:\n  drift: " << c.gaussian.drift.to_string() << "\n  q: " << c.gaussian.q.to_string()
    << "\n";
  o << "lp_poisson:\n  rates: " << c.lp_poisson.rates.to_string() << "\n";
  o << "bernoulli:\n  rate: " << format_double(c.bernoulli.rate)
    << "\n  probs: " << c.bernoulli.probs.to_string() << "\n";
  o << "skellam:\n  lambda: " << c.skellam.lambda.to_string() << "\n";
  o << "discriminate:\n  lambda_b: "
    << (c.discriminate.lambda_b ? *c.discriminate.lambda_b : c.skellam.lambda).to_string()
    << "\n  grid_points: " << c.discriminate.grid_points << "\n";
  o << "tolerance:\n  closed_form: " << format_double(c.tolerance.closed_form)
    << "\n  mc_sigma: " << format_double(c.tolerance.mc_sigma) << "\n";
  if (!c.overrides.empty()) {
    o << "  suites:\n";
    for (const auto& [name, tol] : c.overrides) {
      o << "    " << name << ":\n      closed_form: " << format_double(tol.closed_form)
        << "\n      mc_sigma: " << format_double(tol.mc_sigma) << "\n";
    }
  }
  return o.str();
}

}  // namespace levyps::experiment
