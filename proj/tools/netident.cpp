// Command-line front end for the network identifiability toolkit.

#include <cstdlib>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "netident/cli.hpp"

namespace {

std::uint64_t default_seed() {
  if (const char* env = std::getenv("NETIDENT_SEED")) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0') return v;
    std::cerr << "warning: ignoring non-numeric NETIDENT_SEED\n";
  }
  return 42;
}

int emit(const netident::cli::CmdResult& result) {
  std::cout << result.out;
  std::cerr << result.err;
  return result.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"identifiability analysis of nonlinear acyclic networks"};
  app.require_subcommand(1);

  std::string path;
  netident::cli::CommonOptions options;
  options.seed = default_seed();

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("file", path, "network file")->required();
    cmd->add_option("--seed", options.seed, "random seed (default 42, or NETIDENT_SEED)");
    return cmd;
  };

  CLI::App* validate = add_common(app.add_subcommand(
      "validate", "parse a network file and check every invariant"));

  CLI::App* analyze = add_common(app.add_subcommand(
      "analyze", "per-edge identifiability verdicts with certificates"));
  analyze->add_option("--draws", options.draws, "genericity probe points (default 10)");
  analyze->add_option("--trials", options.trials,
                      "witness verification schedules (default 1000)");
  analyze->add_option("--tol", options.tol,
                      "witness verification tolerance (default 1e-9)");
  analyze->add_flag("--json", options.json, "machine-readable report");

  CLI::App* patterns = add_common(app.add_subcommand(
      "patterns", "enumerate exactly-n-action patterns with their verdicts"));
  patterns->add_option("--limit", options.limit, "maximum patterns (default 64)");

  CLI::App* witness = add_common(app.add_subcommand(
      "witness", "construct and verify an unidentifiability witness"));
  witness->add_option("--kind", options.kind,
                      "UnexcitedSource | UnmeasuredSink | ScalingGamma | "
                      "CollinearNeighbors | CubicBridge")
      ->required();
  witness->add_option("--gamma", options.gamma, "witness parameter");
  witness->add_option("--node", options.node, "node name for node-based kinds");
  witness->add_option("--trials", options.trials, "verification schedules");
  witness->add_option("--tol", options.tol, "verification tolerance");

  CLI::App* simulate = add_common(app.add_subcommand(
      "simulate", "simulate a seeded random excitation and print CSV"));
  simulate->add_option("--horizon", options.horizon, "time steps (default 20)");

  CLI::App* export_cmd = add_common(
      app.add_subcommand("export", "emit the network as Graphviz DOT"));
  export_cmd->add_flag("--dot", "DOT output (the only export format)");

  CLI11_PARSE(app, argc, argv);

  if (validate->parsed()) return emit(netident::cli::cmd_validate(path));
  if (analyze->parsed()) return emit(netident::cli::cmd_analyze(path, options));
  if (patterns->parsed()) return emit(netident::cli::cmd_patterns(path, options));
  if (witness->parsed()) return emit(netident::cli::cmd_witness(path, options));
  if (simulate->parsed()) return emit(netident::cli::cmd_simulate(path, options));
  if (export_cmd->parsed()) return emit(netident::cli::cmd_export(path));
  return 1;
}
