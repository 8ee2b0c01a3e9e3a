// meshplan: plan channels and routes for a mesh scenario and simulate it.
//
//   meshplan run            --scenario FILE [--protocol ccmca|baseline] [--format json|csv] [--out PATH]
//   meshplan sweep-channels --scenario FILE --channels 1,2,3,4,5 [--seeds 1,2,3] [--protocol P] [--format csv|json]
//   meshplan sweep-time     --scenario FILE --horizons 5,10,15,20,25 [--seeds ...] [--protocol P] [--format csv|json]
//   meshplan assign         --scenario FILE [--protocol P] [--format csv|json] [--out PATH]
//
// --preset NAME may replace --scenario. Exit codes: 0 ok, 2 usage, 3 parse,
// 4 validation, 5 contract/domain, 6 I/O.

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "meshplan/error.hpp"
#include "meshplan/pipeline.hpp"
#include "meshplan/report.hpp"
#include "meshplan/scenario.hpp"
#include "meshplan/sweep.hpp"

namespace {

using namespace meshplan;

struct Options {
  std::string scenario_path;
  std::string preset;
  std::string protocol;
  std::vector<int> channels;
  std::vector<double> horizons;
  std::vector<std::uint64_t> seeds;
  std::string out;
  std::string format;
};

Scenario load_scenario(const Options& o) {
  if (!o.preset.empty()) return preset_scenario(o.preset);
  if (o.scenario_path.empty()) throw Error(ErrorKind::Validation, "either --scenario or --preset is required");
  return parse_scenario(o.scenario_path);
}

std::vector<Protocol> protocols(const Options& o) {
  if (o.protocol.empty()) return {Protocol::Ccmca, Protocol::Baseline};
  return {parse_protocol(o.protocol)};
}

std::vector<std::uint64_t> seeds(const Options& o, const Scenario& s) {
  return o.seeds.empty() ? std::vector<std::uint64_t>{s.sim.seed} : o.seeds;
}

void emit(const Options& o, const std::string& text) {
  if (o.out.empty()) {
    std::cout << text;
  } else {
    write_text(o.out, text);
  }
}

void add_common(CLI::App* cmd, Options& o) {
  cmd->add_option("--scenario", o.scenario_path, "Scenario file (JSON)");
  cmd->add_option("--preset", o.preset, "Built-in scenario: paper-ring-4 or paper-table1");
  cmd->add_option("--out", o.out, "Output path (default stdout)");
  cmd->add_option("--format", o.format, "Output format (json for run, csv otherwise)")->check(CLI::IsMember({"csv", "json"}));
}

int run_command(const std::string& name, const Options& o) {
  Scenario scenario = load_scenario(o);
  if (name == "run") {
    const Protocol p = o.protocol.empty() ? Protocol::Ccmca : parse_protocol(o.protocol);
    if (!o.seeds.empty()) scenario.sim.seed = o.seeds.front();
    const Bundle b = run_pipeline(scenario, p);
    emit(o, o.format == "csv" ? to_csv({metrics_row(b)}) : to_json(b).dump(2) + "\n");
    return 0;
  }
  if (name == "assign") {
    const Protocol p = o.protocol.empty() ? Protocol::Ccmca : parse_protocol(o.protocol);
    if (!o.channels.empty()) scenario.algorithm.n_channels = o.channels.front();
    const Plan plan = plan_scenario(scenario, p);
    emit(o, o.format == "json" ? assignment_json(plan.topology, plan.assignment).dump(2) + "\n"
                               : assignment_csv(plan.topology, plan.assignment));
    return 0;
  }
  std::vector<RunRecord> records;
  if (name == "sweep-channels") {
    const std::vector<int> counts = o.channels.empty() ? std::vector<int>{1, 2, 3, 4, 5} : o.channels;
    records = sweep_channels(scenario, counts, protocols(o), seeds(o, scenario));
  } else {
    const std::vector<double> horizons = o.horizons.empty() ? std::vector<double>{5, 10, 15, 20, 25} : o.horizons;
    records = sweep_time(scenario, horizons, protocols(o), seeds(o, scenario));
  }
  const auto rows = metrics_rows(scenario.name, records);
  emit(o, o.format == "json" ? to_json(rows).dump(2) + "\n" : to_csv(rows));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Congestion-aware routing and channel assignment planner for wireless mesh networks"};
  app.require_subcommand(1);
  Options o;

  auto* run = app.add_subcommand("run", "Run the full pipeline once and report the bundle");
  add_common(run, o);
  run->add_option("--protocol", o.protocol, "ccmca or baseline")->check(CLI::IsMember({"ccmca", "baseline"}));
  run->add_option("--seeds", o.seeds, "Seed override (first value used)")->delimiter(',');

  auto* assign = app.add_subcommand("assign", "Plan routes and channels without simulating");
  add_common(assign, o);
  assign->add_option("--protocol", o.protocol, "ccmca or baseline")->check(CLI::IsMember({"ccmca", "baseline"}));
  assign->add_option("--channels", o.channels, "Channel count override")->delimiter(',');

  auto* sweep_ch = app.add_subcommand("sweep-channels", "Sweep the number of channels");
  add_common(sweep_ch, o);
  sweep_ch->add_option("--protocol", o.protocol, "Restrict to one protocol")->check(CLI::IsMember({"ccmca", "baseline"}));
  sweep_ch->add_option("--channels", o.channels, "Channel counts, e.g. 1,2,3,4,5")->delimiter(',');
  sweep_ch->add_option("--seeds", o.seeds, "Seeds; more than one adds mean rows")->delimiter(',');

  auto* sweep_t = app.add_subcommand("sweep-time", "Sweep the simulated horizon in seconds");
  add_common(sweep_t, o);
  sweep_t->add_option("--protocol", o.protocol, "Restrict to one protocol")->check(CLI::IsMember({"ccmca", "baseline"}));
  sweep_t->add_option("--horizons", o.horizons, "Horizons in seconds, e.g. 5,10,15,20,25")->delimiter(',');
  sweep_t->add_option("--seeds", o.seeds, "Seeds; more than one adds mean rows")->delimiter(',');

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  const std::string name = app.get_subcommands().front()->get_name();
  if (o.format.empty()) o.format = name == "run" ? "json" : "csv";
  try {
    return run_command(name, o);
  } catch (const Error& e) {
    std::cerr << "meshplan: " << to_string(e.kind()) << ": " << e.what() << "\n";
    return exit_code(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "meshplan: " << e.what() << "\n";
    return 1;
  }
}
