#pragma once

#include <map>
#include <utility>
#include <vector>

#include "meshplan/mesh.hpp"
#include "meshplan/traffic.hpp"

namespace meshplan {

// Simple path as the node sequence it visits and the link ids it crosses.
struct Path {
  std::vector<NodeId> nodes;
  std::vector<LinkId> links;

  std::size_t hops() const { return links.size(); }
  bool uses(LinkId l) const;
  friend bool operator==(const Path&, const Path&) = default;
};

// Acceptable paths per flow, indexed like TrafficProfile::flows().
using PathSets = std::vector<std::vector<Path>>;

struct PathPolicy {
  int slack = 1;  // extra hops allowed over the shortest path
  int cap = 32;   // paths kept per pair
};

struct LoadEstimate {
  std::vector<double> capacity;  // per link, bits/s
  std::vector<double> load;      // per link, bits/s
  PathSets paths;
};

// Aggregate channel capacity divided among the links in one interference
// neighbourhood.
double virtual_link_capacity(int n_channels, double channel_capacity, std::size_t n_interferers);

std::vector<double> link_capacities(const InterferenceMap& map, int n_channels, double channel_capacity);

// Simple s->d paths with at most shortest+slack hops, in lexicographic
// link-id order, first `cap` of them. Empty when s and d are disconnected.
std::vector<Path> enumerate_acceptable_paths(const Topology& topology, NodeId s, NodeId d, int slack, int cap);

PathSets enumerate_profile_paths(const Topology& topology, const TrafficProfile& profile, const PathPolicy& policy);

// Uniform multipath split: each of a pair's P paths carries W / P.
std::vector<double> expected_link_load(const PathSets& paths, const TrafficProfile& profile, std::size_t link_count);

LoadEstimate estimate_loads(const Topology& topology, const InterferenceMap& map, const TrafficProfile& profile,
                            int n_channels, double channel_capacity, const PathPolicy& policy);

using PairKey = std::pair<NodeId, NodeId>;

struct PairGoodput {
  NodeId src = 0;
  NodeId dst = 0;
  double assigned = 0.0;
  double demand = 0.0;
  double useful = 0.0;
  friend bool operator==(const PairGoodput&, const PairGoodput&) = default;
};

struct GoodputReport {
  std::vector<PairGoodput> pairs;  // profile order
  double total = 0.0;
  friend bool operator==(const GoodputReport&, const GoodputReport&) = default;
};

// Sum over pairs of assigned bandwidth, each capped at the pair's demand.
GoodputReport goodput(const std::map<PairKey, double>& assigned, const TrafficProfile& profile);

}  // namespace meshplan
