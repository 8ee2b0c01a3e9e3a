#pragma once

#include <cstddef>
#include <limits>
#include <vector>

#include "meshplan/load.hpp"
#include "meshplan/mesh.hpp"
#include "meshplan/traffic.hpp"

namespace meshplan {

inline constexpr double kInfiniteCost = std::numeric_limits<double>::infinity();

// Congestion cost of one link. Load is normalised by the link's virtual
// capacity; threshold_fraction is the normalised load threshold.
//   load/capacity >  threshold          -> infinite
//   0 < load/capacity <= threshold      -> 1 + load/capacity
//   load == 0                           -> 1
double link_cost(double load, double capacity, double threshold_fraction);

struct LinkCosts {
  std::vector<double> cost;
  double threshold_fraction = 0.9;
};

LinkCosts compute_link_costs(const std::vector<double>& load, const std::vector<double>& capacity,
                             double threshold_fraction);

double path_cost(const Path& path, const LinkCosts& costs);

struct Route {
  NodeId src = 0;
  NodeId dst = 0;
  bool blocked = false;
  Path path;
  double cost = 0.0;
  friend bool operator==(const Route&, const Route&) = default;
};

struct RouteTable {
  std::vector<Route> routes;  // profile order
  int iterations = 0;
  bool converged = true;
  bool cycled = false;

  bool same_choices(const RouteTable& other) const;
  std::size_t blocked_count() const;
  friend bool operator==(const RouteTable&, const RouteTable&) = default;
};

// Per flow, the minimal-cost acceptable path with every link finite. Equal
// totals keep the lexicographically smallest link sequence.
RouteTable select_routes(const TrafficProfile& profile, const PathSets& paths, const LinkCosts& costs);

// Load when every routed flow sends its whole rate along its selected path.
std::vector<double> routed_link_load(const RouteTable& table, const TrafficProfile& profile, std::size_t link_count);

struct RoutingParams {
  int n_channels = 3;
  double channel_capacity = 10e6;
  double threshold_fraction = 0.9;
  PathPolicy paths;
  int max_iters = 10;
};

struct RoutingResult {
  RouteTable table;
  // capacity/paths from the estimator; load is the basis the final table was
  // selected under.
  LoadEstimate estimate;
  LinkCosts costs;
};

// Starts from the uniform-split estimate, then alternates route selection
// and re-estimation from the selected routes. Stops on a repeated table
// (converged when it repeats the previous one, cycled otherwise) or after
// max_iters re-selections.
RoutingResult fixed_point_route(const Topology& topology, const InterferenceMap& map, const TrafficProfile& profile,
                                const RoutingParams& params);

}  // namespace meshplan
