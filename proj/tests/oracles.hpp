#pragma once

// Brute-force reference implementations used only by tests. They read the
// raw topology (positions and link endpoints) and share no code paths with
// the library routines they check.

#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "meshplan/mesh.hpp"
#include "meshplan/traffic.hpp"

namespace oracle {

using meshplan::LinkId;
using meshplan::NodeId;
using meshplan::Topology;

// Every simple path s->d (as link-id sequences), unpruned DFS, then filtered
// to <= shortest+slack hops, sorted lexicographically, truncated to cap.
std::vector<std::vector<LinkId>> all_acceptable_paths(const Topology& topology, NodeId s, NodeId d, int slack, int cap);

// interferers[l] by direct midpoint distance over all link pairs.
std::vector<std::vector<LinkId>> interferers(const Topology& topology);

bool share_endpoint(const Topology& topology, LinkId a, LinkId b);

struct GreedyResult {
  std::vector<int> channel;
  std::vector<int> frame;
  // For each link, the gain sums it saw on its turn.
  std::vector<std::vector<double>> sums;
};

// Independent replay of the frame-by-frame greedy walk.
GreedyResult replay_greedy(const Topology& topology, const std::vector<LinkId>& order, int n_channels);

// Random placement in a square; links from the range rule. Retries until the
// node graph has at most max_links links.
Topology random_topology(std::mt19937_64& rng, int min_nodes, int max_nodes, std::size_t max_links, double side = 600.0);

// Random profile of distinct connected pairs.
meshplan::TrafficProfile random_profile(std::mt19937_64& rng, const Topology& topology, int flows);

bool connected(const Topology& topology, NodeId s, NodeId d);

}  // namespace oracle
