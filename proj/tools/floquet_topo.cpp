// floquet-topo <rabi|ssh|piflux> <experiment> [--config FILE] [key=value ...]

#include <chrono>
#include <iostream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "floquet_topo/cli/experiments.hpp"

namespace {

enum Exit { ok = 0, usage = 2, numerical = 3, io = 4, internal = 1 };

std::string experiment_list() {
  std::string out;
  for (const auto& [model, exps] : ft::cli::experiments())
    for (const auto& [name, _] : exps) out += fmt::format("\n  {} {}", model, name);
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Floquet topology experiments." + experiment_list()};
  std::string model, experiment, config_file, out_dir = ".";
  std::vector<std::string> formats, overrides, sets;
  int threads = 0, grid = 0, steps = 0;
  bool print_config = false;
  app.add_option("model", model, "rabi, ssh or piflux")->required();
  app.add_option("experiment", experiment, "experiment name")->required();
  app.add_option("overrides", overrides, "key=value overrides");
  app.add_option("--config", config_file, "key = value file");
  app.add_option("--set", sets, "key=value override (repeatable)")->allow_extra_args(false);
  app.add_option("--format", formats, "csv, json or svg (repeatable)")->allow_extra_args(false)->check(CLI::IsMember({"csv", "json", "svg"}));
  app.add_option("--out", out_dir, "output directory");
  app.add_option("--threads", threads, "worker threads, 0 for all cores")->check(CLI::NonNegativeNumber);
  app.add_option("--grid", grid, "shorthand for grid=N")->check(CLI::PositiveNumber);
  app.add_option("--steps", steps, "shorthand for steps=N")->check(CLI::PositiveNumber);
  app.add_flag("--print-config", print_config, "print the resolved configuration and exit");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return usage;
  }

  try {
    auto cfg = ft::cli::default_config(model);
    if (!config_file.empty()) cfg.load_file(config_file);
    for (const auto& kv : overrides) cfg.set_assignment(kv);
    for (const auto& kv : sets) cfg.set_assignment(kv);
    if (grid) {
      if (!cfg.has("grid")) throw ft::cli::config_error(fmt::format("--grid does not apply to {}", model));
      cfg.set("grid", std::to_string(grid));
    }
    if (steps) cfg.set("steps", std::to_string(steps));
    if (print_config) {
      std::cout << cfg.dump();
      return ok;
    }
    if (formats.empty()) formats = {"csv"};

    ft::cli::RunOptions opt;
    opt.threads = threads > 0 ? threads : int(std::max(1u, std::thread::hardware_concurrency()));
    const auto t0 = std::chrono::steady_clock::now();
    const auto data = ft::cli::run_experiment(model, experiment, cfg, opt);
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    for (const auto& w : data.warnings) std::cerr << "warning: " << w << "\n";
    for (const auto& p : ft::cli::emit(data, cfg, formats, out_dir)) std::cout << "wrote " << p << "\n";
    std::cout << "summary " << data.summary.dump() << "\n";
    // wall time stays out of the files so they are reproducible
    std::cout << fmt::format("wall_time_s {:.3f}\n", secs);
    return ok;
  } catch (const ft::cli::config_error& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return usage;
  } catch (const ft::domain_error& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return usage;
  } catch (const ft::cli::io_error& e) {
    std::cerr << "i/o error: " << e.what() << "\n";
    return io;
  } catch (const ft::convergence_error& e) {
    std::cerr << "numerical error: " << e.what() << "\n";
    return numerical;
  } catch (const ft::resolution_error& e) {
    std::cerr << "numerical error: " << e.what() << "\n";
    return numerical;
  } catch (const ft::bracket_error& e) {
    std::cerr << "numerical error: " << e.what() << "\n";
    return numerical;
  } catch (const ft::degeneracy_error& e) {
    std::cerr << "numerical error: " << e.what() << "\n";
    return numerical;
  } catch (const ft::undefined_invariant_error& e) {
    std::cerr << "numerical error: " << e.what() << "\n";
    return numerical;
  } catch (const ft::window_error& e) {
    std::cerr << "numerical error: " << e.what() << "\n";
    return numerical;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return internal;
  }
}
