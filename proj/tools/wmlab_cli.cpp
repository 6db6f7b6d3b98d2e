// wmlab command-line runner.
//
//   wmlab run <config> [--seed N] [--workers K] [--out DIR] [--print-config]
//   wmlab ratio-table <csv> --targets 0.01,0.05,0.10
//   wmlab bench-transform --dims 1024,4096,16384 --element-bytes 4|8
//   wmlab print-config <config>
//
// Exit codes: 0 success, 1 runtime failure, 2 invalid input.

#include <cstdint>
#include <exception>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "wmlab/bench/config.hpp"
#include "wmlab/bench/overhead.hpp"
#include "wmlab/bench/ratio_table.hpp"
#include "wmlab/bench/scenarios.hpp"

namespace {

constexpr int kExitRuntime = 1;
constexpr int kExitInvalid = 2;

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"latent watermarking lab: removal games, attacks and the transform defense"};
  app.set_version_flag("--version", std::string(WMLAB_VERSION));
  app.require_subcommand(1);

  std::string config_path;
  std::optional<std::uint64_t> seed;
  int workers = 0;
  std::optional<std::string> out_dir;
  bool print_config = false;
  auto* run = app.add_subcommand("run", "run a scenario config");
  run->add_option("config", config_path, "scenario config file")->required();
  run->add_option("--seed", seed, "override the master seed");
  run->add_option("--workers", workers, "worker threads (0 = one per core)")->check(CLI::NonNegativeNumber);
  run->add_option("--out", out_dir, "output directory");
  run->add_flag("--print-config", print_config, "print the resolved config before running");

  std::string csv_path;
  std::vector<double> targets{0.01, 0.05, 0.10};
  auto* ratio = app.add_subcommand("ratio-table", "epsilon ratio whitenoise/stealthy per flip target");
  ratio->add_option("csv", csv_path, "bits_vs_distortion CSV")->required();
  ratio->add_option("--targets", targets, "target flip fractions")->delimiter(',');

  std::vector<int> dims{1024, 4096};
  int element_bytes = 8;
  int repetitions = 5;
  std::uint64_t bench_seed = 1;
  auto* bench = app.add_subcommand("bench-transform", "time dense transform apply + invert");
  bench->add_option("--dims", dims, "dimensions")->delimiter(',');
  bench->add_option("--element-bytes", element_bytes, "4 or 8")->check(CLI::IsMember({4, 8}));
  bench->add_option("--repetitions", repetitions, "timed repetitions")->check(CLI::PositiveNumber);
  bench->add_option("--seed", bench_seed, "seed");

  std::string show_path;
  auto* show = app.add_subcommand("print-config", "print the fully resolved config");
  show->add_option("config", show_path, "scenario config file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitInvalid;
  }

  try {
    if (*run) {
      wmlab::ScenarioConfig config;
      try {
        config = wmlab::load_scenario_config(config_path);
      } catch (const wmlab::InvalidArgument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitInvalid;
      }
      if (print_config) std::cout << config.to_text() << '\n';
      const auto result = wmlab::run_scenario(config, {seed, workers, out_dir});
      std::cout << "wrote " << result.csv_path << '\n' << "wrote " << result.json_path << '\n';
      for (const auto& f : result.plot_files) std::cout << "wrote " << f << '\n';
      return 0;
    }
    if (*show) {
      try {
        std::cout << wmlab::load_scenario_config(show_path).to_text();
      } catch (const wmlab::InvalidArgument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitInvalid;
      }
      return 0;
    }
    if (*ratio) {
      wmlab::CsvTable rows;
      try {
        rows = wmlab::ratio_table_csv(wmlab::ratio_table(wmlab::read_csv(csv_path), targets));
      } catch (const wmlab::InvalidArgument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitInvalid;
      }
      std::cout << rows.to_string();
      return 0;
    }
    if (*bench) {
      std::cout << wmlab::overhead_csv(
                       wmlab::transform_overhead_bench(dims, element_bytes, repetitions, bench_seed))
                       .to_string();
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
  return kExitRuntime;
}
