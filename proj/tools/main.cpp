#include <cstdint>
#include <exception>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "levyps/errors.hpp"
#include "levyps/experiment/config.hpp"
#include "levyps/experiment/suites.hpp"

namespace fs = std::filesystem;
using namespace levyps::experiment;

namespace {

struct Overrides {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out;
  std::optional<std::string> suite;
};

ExperimentConfig resolve(const Overrides& o) {
  ExperimentConfig config = o.config_path.empty() ? ExperimentConfig{} : load_config(o.config_path);
  if (o.seed) config.seed = *o.seed;
  if (o.out) config.out = *o.out;
  if (o.suite) {
    if (!is_suite(*o.suite)) throw levyps::ConfigError("suite", 0, "unknown suite \"" + *o.suite + "\"");
    config.suite = *o.suite;
  }
  validate(config);
  return config;
}

void write_file(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
}

int run_command(const Overrides& o) {
  const auto config = resolve(o);
  const auto report = run(config);

  const fs::path dir(config.out);
  fs::create_directories(dir);
  write_file(dir / "report.json", to_json(report).dump(2) + "\n");
  for (const auto& [name, csv] : report.artifacts) write_file(dir / name, csv);

  std::cout << report.passed() << " passed, " << report.failed() << " failed ("
            << report.wall_clock_seconds << " s); report in " << (dir / "report.json").string()
            << "\n";
  if (report.all_passed()) return 0;
  std::cerr << "failing checks:\n";
  for (const auto& id : report.failing_ids()) std::cerr << "  " << id << "\n";
  return 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Truncated Levy product systems: simulation and identity checks"};
  app.require_subcommand(1);

  Overrides o;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", o.config_path, "YAML experiment config")->check(CLI::ExistingFile);
    sub->add_option("--seed", o.seed, "master seed (overrides config)");
    sub->add_option("--out", o.out, "output directory (overrides config)");
    sub->add_option("--suite", o.suite, "suite name or 'all' (overrides config)");
  };

  auto* run_cmd = app.add_subcommand("run", "run the selected suites and write the report");
  add_common(run_cmd);
  auto* echo_cmd = app.add_subcommand("echo-config", "print the effective config with defaults");
  add_common(echo_cmd);
  auto* list_cmd = app.add_subcommand("list-suites", "list suite names");

  CLI11_PARSE(app, argc, argv);

  try {
    if (list_cmd->parsed()) {
      for (const auto& name : kSuites) std::cout << name << "\n";
      return 0;
    }
    if (echo_cmd->parsed()) {
      std::cout << print_effective_config(resolve(o));
      return 0;
    }
    return run_command(o);
  } catch (const levyps::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const levyps::CapacityError& e) {
    std::cerr << "capacity error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  }
}
