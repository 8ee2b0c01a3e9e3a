#include "meshplan/route.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "meshplan/error.hpp"

namespace meshplan {

double link_cost(double load, double capacity, double threshold_fraction) {
  if (!(capacity > 0.0)) throw Error(ErrorKind::Domain, "link_cost: capacity must be positive");
  if (!(threshold_fraction > 0.0 && threshold_fraction <= 1.0))
    throw Error(ErrorKind::Domain, "link_cost: threshold fraction must be in (0, 1]");
  if (!(load >= 0.0)) throw Error(ErrorKind::Domain, "link_cost: load must be non-negative");
  const double norm = load / capacity;
  if (norm > threshold_fraction) return kInfiniteCost;
  if (norm > 0.0) return 1.0 + norm;
  return 1.0;
}

LinkCosts compute_link_costs(const std::vector<double>& load, const std::vector<double>& capacity,
                             double threshold_fraction) {
  if (load.size() != capacity.size()) throw Error(ErrorKind::Contract, "load and capacity vectors differ in length");
  LinkCosts costs;
  costs.threshold_fraction = threshold_fraction;
  costs.cost.reserve(load.size());
  for (std::size_t l = 0; l < load.size(); ++l) costs.cost.push_back(link_cost(load[l], capacity[l], threshold_fraction));
  return costs;
}

double path_cost(const Path& path, const LinkCosts& costs) {
  double total = 0.0;
  for (LinkId l : path.links) {
    if (l < 0 || static_cast<std::size_t>(l) >= costs.cost.size())
      throw Error(ErrorKind::Contract, "no cost for link " + std::to_string(l));
    total += costs.cost[static_cast<std::size_t>(l)];
  }
  return total;
}

bool RouteTable::same_choices(const RouteTable& other) const {
  if (routes.size() != other.routes.size()) return false;
  for (std::size_t i = 0; i < routes.size(); ++i) {
    const Route& a = routes[i];
    const Route& b = other.routes[i];
    if (a.blocked != b.blocked || a.path.links != b.path.links) return false;
  }
  return true;
}

std::size_t RouteTable::blocked_count() const {
  return static_cast<std::size_t>(std::count_if(routes.begin(), routes.end(), [](const Route& r) { return r.blocked; }));
}

RouteTable select_routes(const TrafficProfile& profile, const PathSets& paths, const LinkCosts& costs) {
  if (paths.size() != profile.size()) throw Error(ErrorKind::Contract, "path sets do not match the traffic profile");
  RouteTable table;
  table.routes.reserve(profile.size());
  for (std::size_t i = 0; i < profile.size(); ++i) {
    Route route{profile[i].src, profile[i].dst, true, {}, kInfiniteCost};
    // Paths arrive in lexicographic order, so the first strict minimum wins ties.
    for (const auto& p : paths[i]) {
      const double c = path_cost(p, costs);
      if (std::isinf(c)) continue;
      if (route.blocked || c < route.cost) {
        route.blocked = false;
        route.cost = c;
        route.path = p;
      }
    }
    table.routes.push_back(std::move(route));
  }
  return table;
}

std::vector<double> routed_link_load(const RouteTable& table, const TrafficProfile& profile, std::size_t link_count) {
  if (table.routes.size() != profile.size()) throw Error(ErrorKind::Contract, "route table does not match the traffic profile");
  std::vector<double> load(link_count, 0.0);
  for (std::size_t i = 0; i < profile.size(); ++i) {
    const Route& r = table.routes[i];
    if (r.blocked) continue;
    for (LinkId l : r.path.links) load[static_cast<std::size_t>(l)] += profile[i].rate_bps;
  }
  return load;
}

RoutingResult fixed_point_route(const Topology& topology, const InterferenceMap& map, const TrafficProfile& profile,
                                const RoutingParams& params) {
  if (params.max_iters < 1) throw Error(ErrorKind::Config, "max_iters must be >= 1");
  RoutingResult result;
  result.estimate = estimate_loads(topology, map, profile, params.n_channels, params.channel_capacity, params.paths);
  result.costs = compute_link_costs(result.estimate.load, result.estimate.capacity, params.threshold_fraction);
  if (profile.empty()) {
    result.table.iterations = 0;
    return result;
  }

  std::vector<RouteTable> history;
  std::vector<double> basis = result.estimate.load;
  for (;;) {
    LinkCosts costs = compute_link_costs(basis, result.estimate.capacity, params.threshold_fraction);
    RouteTable table = select_routes(profile, result.estimate.paths, costs);

    bool stop = false;
    if (!history.empty() && table.same_choices(history.back())) {
      table.converged = true;
      stop = true;
    } else if (std::any_of(history.begin(), history.end(), [&](const RouteTable& t) { return t.same_choices(table); })) {
      table.converged = false;
      table.cycled = true;
      stop = true;
    } else if (static_cast<int>(history.size()) == params.max_iters) {
      table.converged = false;
      stop = true;
    }

    if (stop) {
      table.iterations = static_cast<int>(history.size());
      result.table = std::move(table);
      result.estimate.load = std::move(basis);
      result.costs = std::move(costs);
      return result;
    }
    basis = routed_link_load(table, profile, topology.link_count());
    history.push_back(std::move(table));
  }
}

}  // namespace meshplan
