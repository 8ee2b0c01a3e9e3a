#include "meshplan/pipeline.hpp"

#include <map>
#include <string>
#include <utility>

#include "meshplan/error.hpp"

namespace meshplan {

namespace {

template <typename F>
auto stage(const char* name, F&& fn) -> decltype(fn()) {
  try {
    return fn();
  } catch (const Error& e) {
    if (!e.stage().empty()) throw;
    throw Error(e.kind(), name, e.what());
  }
}

}  // namespace

Protocol parse_protocol(std::string_view name) {
  if (name == "ccmca") return Protocol::Ccmca;
  if (name == "baseline") return Protocol::Baseline;
  throw Error(ErrorKind::Validation, "unknown protocol '" + std::string(name) + "'");
}

std::string_view to_string(Protocol protocol) { return protocol == Protocol::Ccmca ? "ccmca" : "baseline"; }

Plan plan_scenario(const Scenario& scenario, Protocol protocol) {
  stage("scenario", [&] { scenario.validate(); });
  Plan plan;
  plan.topology = stage("topology", [&] { return scenario.build_topology(); });
  plan.map = stage("interference", [&] { return build_interference_map(plan.topology); });
  stage("traffic", [&] { scenario.traffic.validate_against(plan.topology); });

  const AlgorithmParams& a = scenario.algorithm;
  RoutingParams params{a.n_channels, a.channel_capacity_bps, a.threshold_fraction, PathPolicy{a.slack, a.path_cap},
                       a.max_iters};
  plan.routing = stage("routing", [&] { return fixed_point_route(plan.topology, plan.map, scenario.traffic, params); });

  plan.assignment = stage("assignment", [&] {
    if (protocol == Protocol::Baseline) return baseline_assign(plan.map, a.n_channels, scenario.sim.seed);
    const auto order = order_links(plan.routing.estimate.load);
    const auto gains = link_gains(plan.topology);
    return schedule_all_frames(order, plan.map, gains, a.n_channels);
  });
  return plan;
}

Bundle run_pipeline(const Scenario& scenario, Protocol protocol) {
  const Plan plan = plan_scenario(scenario, protocol);

  Bundle b;
  b.scenario = scenario.name;
  b.protocol = protocol;
  b.channels = scenario.algorithm.n_channels;
  b.horizon_s = scenario.sim.horizon_s;
  b.seed = scenario.sim.seed;
  b.capacity = plan.routing.estimate.capacity;
  b.load = plan.routing.estimate.load;
  b.cost = plan.routing.costs.cost;
  b.threshold_fraction = plan.routing.costs.threshold_fraction;
  b.routes = plan.routing.table;
  b.assignment = plan.assignment;

  SimConfig config{scenario.sim.slot_s, scenario.sim.horizon_s, scenario.algorithm.channel_capacity_bps,
                   scenario.sim.queue_packets, scenario.sim.seed};
  b.metrics = stage("simulation",
                    [&] { return run_simulation(plan.topology, plan.map, scenario.traffic, b.routes, b.assignment, config); });

  b.goodput = stage("goodput", [&] {
    std::map<PairKey, double> assigned;
    for (std::size_t i = 0; i < scenario.traffic.size(); ++i) {
      const Flow& f = scenario.traffic[i];
      assigned[{f.src, f.dst}] = f.rate_bps * b.metrics.flows[i].delivery_ratio();
    }
    return goodput(assigned, scenario.traffic);
  });
  return b;
}

}  // namespace meshplan
