#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace meshplan {

using NodeId = std::int32_t;
using LinkId = std::int32_t;

struct Point {
  double x = 0.0;
  double y = 0.0;
};

double distance(Point a, Point b);

struct MeshNode {
  NodeId id = 0;
  Point position;
  int nic_count = 1;
  bool is_gateway = false;
};

// Undirected radio link between two nodes in transmission range. u < v always.
struct VirtualLink {
  LinkId id = 0;
  NodeId u = 0;
  NodeId v = 0;
  double distance = 0.0;
  double gain = 1.0;

  Point midpoint(std::span<const MeshNode> nodes) const;
  bool touches(NodeId n) const { return u == n || v == n; }
  NodeId other(NodeId n) const { return n == u ? v : u; }
};

struct RadioParams {
  double tx_range = 250.0;
  // interference_range = multiplier * tx_range
  double interference_multiplier = 2.0;
  double gain_ref_distance = 10.0;
  double gain_exponent = 3.0;
};

struct Topology {
  std::vector<MeshNode> nodes;
  std::vector<VirtualLink> links;
  double tx_range = 0.0;
  double interference_range = 0.0;

  std::size_t node_count() const { return nodes.size(); }
  std::size_t link_count() const { return links.size(); }

  // Link ids incident to each node, ascending.
  std::vector<std::vector<LinkId>> incidence() const;
  // Link id joining a and b, or -1.
  LinkId find_link(NodeId a, NodeId b) const;
  std::size_t max_degree() const;
};

enum class TopologyKind { Chain, Ring, Grid, Star, BinaryTree };

TopologyKind parse_topology_kind(std::string_view name);
std::string_view to_string(TopologyKind kind);

// Clamped power-law gain: min(1, (d0 / distance)^alpha).
double link_gain(double distance, double d0, double alpha);

// Builds a topology from explicit node placements; links are all pairs within
// tx_range, ordered by (u, v).
Topology make_topology(std::vector<MeshNode> nodes, const RadioParams& radio);

// Deterministic generator. Chain, ring, grid and star derive links from the
// range rule; binary-tree links are the parent/child edges of a heap layout.
Topology build_topology(TopologyKind kind, int n, double spacing, int nic_count,
                        const RadioParams& radio = {});

struct InterferenceMap {
  // interferers[l]: links whose midpoint is within interference_range of l's
  // midpoint, including l itself. Ascending ids.
  std::vector<std::vector<LinkId>> interferers;
  // neighbors[l]: links sharing an endpoint with l, excluding l. Ascending ids.
  std::vector<std::vector<LinkId>> neighbors;

  std::size_t interferer_count(LinkId l) const { return interferers[static_cast<std::size_t>(l)].size(); }
  bool interferes(LinkId a, LinkId b) const;
};

InterferenceMap build_interference_map(const Topology& topology);

std::vector<double> link_gains(const Topology& topology);

}  // namespace meshplan
