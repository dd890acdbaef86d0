#include <fstream>
#include <iostream>
#include <memory>
#include <string>

#include <CLI11.hpp>

#include "ornet/cli.hpp"

namespace {

struct OutputTarget {
  std::ofstream file;
  std::ostream* stream = &std::cout;

  bool open(const std::string& path) {
    if (path.empty()) return true;
    file.open(path);
    if (!file) return false;
    stream = &file;
    return true;
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Steady-state analysis and slot-level simulation of a "
               "two-relay energy-harvesting network"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_path;
  ornet::cli::RunOptions run_opts;
  int relay = 2;
  double r0_start = 0.1, r0_stop = 4.0, r0_step = 0.05;

  const auto add_common = [&](CLI::App* cmd, bool with_run_opts) {
    cmd->add_option("--config", config_path, "config file path")->required();
    cmd->add_option("--out", out_path, "output CSV path (default stdout)");
    if (with_run_opts) {
      cmd->add_option("--seed", run_opts.seed, "rng seed");
      cmd->add_option("--slots", run_opts.slots, "simulated slots");
      cmd->add_option("--warmup", run_opts.warmup, "discarded leading slots");
    }
  };

  CLI::App* analyze = app.add_subcommand("analyze", "steady-state theory");
  add_common(analyze, false);
  CLI::App* simulate = app.add_subcommand("simulate", "slot-level simulation");
  add_common(simulate, true);
  CLI::App* compare =
      app.add_subcommand("compare", "theory vs simulation, one quantity per row");
  add_common(compare, true);
  CLI::App* sweep =
      app.add_subcommand("sweep", "parameter sweep (config needs sweep_* keys)");
  add_common(sweep, true);
  CLI::App* pdf =
      app.add_subcommand("pdf", "limiting buffer density, theory vs histogram");
  add_common(pdf, true);
  pdf->add_option("--relay", relay, "which relay buffer (1 or 2)")
      ->check(CLI::Range(1, 2));
  CLI::App* optimal =
      app.add_subcommand("optimal-rate", "rate maximizing theoretical throughput");
  add_common(optimal, false);
  optimal->add_option("--r0-start", r0_start, "grid start");
  optimal->add_option("--r0-stop", r0_stop, "grid stop");
  optimal->add_option("--r0-step", r0_step, "grid step");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  OutputTarget out;
  if (!out.open(out_path)) {
    std::cerr << "cannot open output file: " << out_path << '\n';
    return 1;
  }

  try {
    if (sweep->parsed()) {
      const ornet::SweepSpec spec = ornet::load_sweep(config_path);
      return ornet::cli::cmd_sweep(spec, run_opts, *out.stream);
    }
    const ornet::NetworkConfig config = ornet::load_config(config_path);
    if (analyze->parsed())
      return ornet::cli::cmd_analyze(config, *out.stream, std::cerr);
    if (simulate->parsed())
      return ornet::cli::cmd_simulate(config, run_opts, *out.stream);
    if (compare->parsed())
      return ornet::cli::cmd_compare(config, run_opts, *out.stream);
    if (pdf->parsed())
      return ornet::cli::cmd_pdf(config, relay, run_opts, *out.stream,
                                 std::cerr);
    if (optimal->parsed())
      return ornet::cli::cmd_optimal_rate(config, r0_start, r0_stop, r0_step,
                                          *out.stream, std::cerr);
  } catch (const ornet::ParseError& e) {
    if (e.line > 0)
      std::cerr << config_path << ':' << e.line << ": " << e.what() << '\n';
    else
      std::cerr << config_path << ": " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}
