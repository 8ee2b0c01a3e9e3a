#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "meshplan/channel.hpp"
#include "meshplan/load.hpp"
#include "meshplan/route.hpp"
#include "meshplan/scenario.hpp"
#include "meshplan/sim.hpp"

namespace meshplan {

enum class Protocol { Ccmca, Baseline };

Protocol parse_protocol(std::string_view name);
std::string_view to_string(Protocol protocol);

// Everything one estimate -> route -> assign -> simulate pass produced.
struct Bundle {
  std::string scenario;
  Protocol protocol = Protocol::Ccmca;
  int channels = 0;
  double horizon_s = 0.0;
  std::uint64_t seed = 0;

  std::vector<double> capacity;
  std::vector<double> load;  // basis of the final route selection
  std::vector<double> cost;
  double threshold_fraction = 0.0;
  RouteTable routes;
  ChannelAssignment assignment;
  SimMetrics metrics;
  GoodputReport goodput;

  friend bool operator==(const Bundle&, const Bundle&) = default;
};

// Topology, interference map, routing and channel assignment; no simulation.
struct Plan {
  Topology topology;
  InterferenceMap map;
  RoutingResult routing;
  ChannelAssignment assignment;
};

Plan plan_scenario(const Scenario& scenario, Protocol protocol);

// Full pipeline. Failures are rethrown tagged with the stage that raised them.
// Goodput takes each pair's assigned bandwidth as its rate scaled by the
// flow's delivery ratio.
Bundle run_pipeline(const Scenario& scenario, Protocol protocol);

}  // namespace meshplan
