#include "meshplan/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "meshplan/error.hpp"

namespace meshplan {

namespace {

// Placement arithmetic (chords, square roots) lands a few ulps off the
// nominal spacing; accept those as in range.
bool within(double d, double range) { return d <= range + 1e-9 * std::max(1.0, range); }

void check_radio(const RadioParams& radio) {
  if (!(radio.tx_range > 0.0)) throw Error(ErrorKind::Config, "tx_range must be positive");
  if (!(radio.interference_multiplier >= 1.0))
    throw Error(ErrorKind::Config, "interference multiplier must be >= 1");
  if (!(radio.gain_ref_distance > 0.0)) throw Error(ErrorKind::Config, "gain reference distance must be positive");
  if (!(radio.gain_exponent >= 2.0)) throw Error(ErrorKind::Config, "gain exponent must be >= 2");
}

VirtualLink make_link(const std::vector<MeshNode>& nodes, NodeId a, NodeId b, const RadioParams& radio) {
  VirtualLink link;
  link.u = std::min(a, b);
  link.v = std::max(a, b);
  // Snapped to micrometres so geometrically equal links get bit-identical
  // gains (placement trigonometry differs in the last ulps).
  const double d = distance(nodes[static_cast<std::size_t>(link.u)].position,
                            nodes[static_cast<std::size_t>(link.v)].position);
  link.distance = std::round(d * 1e6) / 1e6;
  link.gain = link_gain(link.distance, radio.gain_ref_distance, radio.gain_exponent);
  return link;
}

void check_nodes(const std::vector<MeshNode>& nodes) {
  if (nodes.size() < 2) throw Error(ErrorKind::Config, "topology needs at least 2 nodes");
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (nodes[i].id != static_cast<NodeId>(i))
      throw Error(ErrorKind::Config, "node ids must be dense 0..N-1 (node " + std::to_string(i) + " has id " +
                                         std::to_string(nodes[i].id) + ")");
    if (nodes[i].nic_count < 1)
      throw Error(ErrorKind::Config, "node " + std::to_string(i) + ": nic_count must be >= 1");
  }
}

std::vector<MeshNode> place(const std::vector<Point>& points, int nic_count) {
  std::vector<MeshNode> nodes;
  nodes.reserve(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) {
    nodes.push_back(MeshNode{static_cast<NodeId>(i), points[i], nic_count, i == 0});
  }
  return nodes;
}

}  // namespace

double distance(Point a, Point b) { return std::hypot(a.x - b.x, a.y - b.y); }

Point VirtualLink::midpoint(std::span<const MeshNode> nodes) const {
  const Point a = nodes[static_cast<std::size_t>(u)].position;
  const Point b = nodes[static_cast<std::size_t>(v)].position;
  return {(a.x + b.x) / 2.0, (a.y + b.y) / 2.0};
}

std::vector<std::vector<LinkId>> Topology::incidence() const {
  std::vector<std::vector<LinkId>> out(nodes.size());
  for (const auto& l : links) {
    out[static_cast<std::size_t>(l.u)].push_back(l.id);
    out[static_cast<std::size_t>(l.v)].push_back(l.id);
  }
  return out;
}

LinkId Topology::find_link(NodeId a, NodeId b) const {
  const NodeId u = std::min(a, b);
  const NodeId v = std::max(a, b);
  for (const auto& l : links) {
    if (l.u == u && l.v == v) return l.id;
  }
  return -1;
}

std::size_t Topology::max_degree() const {
  std::size_t best = 0;
  for (const auto& inc : incidence()) best = std::max(best, inc.size());
  return best;
}

TopologyKind parse_topology_kind(std::string_view name) {
  if (name == "chain") return TopologyKind::Chain;
  if (name == "ring") return TopologyKind::Ring;
  if (name == "grid") return TopologyKind::Grid;
  if (name == "star") return TopologyKind::Star;
  if (name == "binary-tree") return TopologyKind::BinaryTree;
  throw Error(ErrorKind::Config, "unsupported topology kind '" + std::string(name) + "'");
}

std::string_view to_string(TopologyKind kind) {
  switch (kind) {
    case TopologyKind::Chain: return "chain";
    case TopologyKind::Ring: return "ring";
    case TopologyKind::Grid: return "grid";
    case TopologyKind::Star: return "star";
    case TopologyKind::BinaryTree: return "binary-tree";
  }
  return "?";
}

double link_gain(double distance, double d0, double alpha) {
  if (!(distance > 0.0)) throw Error(ErrorKind::Domain, "link_gain: distance must be positive");
  if (!(d0 > 0.0)) throw Error(ErrorKind::Domain, "link_gain: reference distance must be positive");
  if (!(alpha >= 2.0)) throw Error(ErrorKind::Domain, "link_gain: exponent must be >= 2");
  return std::min(1.0, std::pow(d0 / distance, alpha));
}

Topology make_topology(std::vector<MeshNode> nodes, const RadioParams& radio) {
  check_radio(radio);
  check_nodes(nodes);
  Topology topo;
  topo.tx_range = radio.tx_range;
  topo.interference_range = radio.tx_range * radio.interference_multiplier;
  for (std::size_t a = 0; a < nodes.size(); ++a) {
    for (std::size_t b = a + 1; b < nodes.size(); ++b) {
      const double d = distance(nodes[a].position, nodes[b].position);
      if (d <= 0.0)
        throw Error(ErrorKind::Config, "nodes " + std::to_string(a) + " and " + std::to_string(b) + " are co-located");
      if (!within(d, radio.tx_range)) continue;
      VirtualLink link = make_link(nodes, static_cast<NodeId>(a), static_cast<NodeId>(b), radio);
      link.id = static_cast<LinkId>(topo.links.size());
      topo.links.push_back(link);
    }
  }
  topo.nodes = std::move(nodes);
  return topo;
}

Topology build_topology(TopologyKind kind, int n, double spacing, int nic_count, const RadioParams& radio) {
  check_radio(radio);
  if (n < 2) throw Error(ErrorKind::Config, "node count must be >= 2");
  if (!(spacing > 0.0)) throw Error(ErrorKind::Config, "spacing must be positive");
  if (!within(spacing, radio.tx_range)) throw Error(ErrorKind::Config, "spacing exceeds tx_range");
  if (nic_count < 1) throw Error(ErrorKind::Config, "nic_count must be >= 1");

  const double pi = std::numbers::pi;
  std::vector<Point> pts;
  pts.reserve(static_cast<std::size_t>(n));

  switch (kind) {
    case TopologyKind::Chain:
      for (int i = 0; i < n; ++i) pts.push_back({i * spacing, 0.0});
      break;
    case TopologyKind::Ring: {
      if (n < 3) throw Error(ErrorKind::Config, "ring needs at least 3 nodes");
      // Circle whose chord between consecutive nodes equals spacing.
      const double r = spacing / (2.0 * std::sin(pi / n));
      for (int i = 0; i < n; ++i) {
        const double a = 2.0 * pi * i / n;
        pts.push_back({r * std::cos(a), r * std::sin(a)});
      }
      break;
    }
    case TopologyKind::Grid: {
      int rows = 0;
      for (int r = 2; r * r <= n; ++r) {
        if (n % r == 0) rows = r;
      }
      if (rows == 0) throw Error(ErrorKind::Config, "grid needs a composite node count, got " + std::to_string(n));
      const int cols = n / rows;
      for (int i = 0; i < n; ++i) pts.push_back({(i % cols) * spacing, (i / cols) * spacing});
      break;
    }
    case TopologyKind::Star: {
      pts.push_back({0.0, 0.0});
      const int leaves = n - 1;
      for (int i = 0; i < leaves; ++i) {
        const double a = 2.0 * pi * i / leaves;
        pts.push_back({spacing * std::cos(a), spacing * std::sin(a)});
      }
      break;
    }
    case TopologyKind::BinaryTree: {
      // Heap layout: level k spreads 2^k slots over one spacing of width. The
      // vertical gap makes level-1 edges exactly `spacing`; deeper edges are
      // shorter.
      const double gap = spacing * std::sqrt(15.0) / 4.0;
      for (int i = 0; i < n; ++i) {
        const int level = static_cast<int>(std::floor(std::log2(i + 1.0)));
        const int width = 1 << level;
        const int slot = i - (width - 1);
        pts.push_back({((slot + 0.5) / width - 0.5) * spacing, level * gap});
      }
      std::vector<MeshNode> nodes = place(pts, nic_count);
      Topology topo;
      topo.tx_range = radio.tx_range;
      topo.interference_range = radio.tx_range * radio.interference_multiplier;
      for (int child = 1; child < n; ++child) {
        VirtualLink link = make_link(nodes, (child - 1) / 2, child, radio);
        link.id = static_cast<LinkId>(topo.links.size());
        topo.links.push_back(link);
      }
      topo.nodes = std::move(nodes);
      return topo;
    }
  }
  return make_topology(place(pts, nic_count), radio);
}

bool InterferenceMap::interferes(LinkId a, LinkId b) const {
  const auto& set = interferers[static_cast<std::size_t>(a)];
  return std::binary_search(set.begin(), set.end(), b);
}

InterferenceMap build_interference_map(const Topology& topology) {
  const std::size_t count = topology.link_count();
  InterferenceMap map;
  map.interferers.assign(count, {});
  map.neighbors.assign(count, {});

  std::vector<Point> mids;
  mids.reserve(count);
  for (const auto& l : topology.links) mids.push_back(l.midpoint(topology.nodes));

  for (std::size_t a = 0; a < count; ++a) {
    map.interferers[a].push_back(static_cast<LinkId>(a));
    for (std::size_t b = a + 1; b < count; ++b) {
      if (within(distance(mids[a], mids[b]), topology.interference_range)) {
        map.interferers[a].push_back(static_cast<LinkId>(b));
        map.interferers[b].push_back(static_cast<LinkId>(a));
      }
    }
  }
  for (auto& set : map.interferers) std::sort(set.begin(), set.end());

  const auto inc = topology.incidence();
  for (const auto& l : topology.links) {
    auto& out = map.neighbors[static_cast<std::size_t>(l.id)];
    for (NodeId end : {l.u, l.v}) {
      for (LinkId other : inc[static_cast<std::size_t>(end)]) {
        if (other != l.id) out.push_back(other);
      }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
  }
  return map;
}

std::vector<double> link_gains(const Topology& topology) {
  std::vector<double> out;
  out.reserve(topology.link_count());
  for (const auto& l : topology.links) out.push_back(l.gain);
  return out;
}

}  // namespace meshplan
