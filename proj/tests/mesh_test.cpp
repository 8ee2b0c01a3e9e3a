#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "meshplan/error.hpp"
#include "meshplan/mesh.hpp"
#include "meshplan/traffic.hpp"
#include "oracles.hpp"

using namespace meshplan;

namespace {

std::vector<std::size_t> degrees(const Topology& t) {
  std::vector<std::size_t> out;
  for (const auto& inc : t.incidence()) out.push_back(inc.size());
  return out;
}

ErrorKind kind_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "expected meshplan::Error";
  return ErrorKind::Io;
}

}  // namespace

TEST(BuildTopology, RingOfFourHasFourLinks) {
  const Topology t = build_topology(TopologyKind::Ring, 4, 250.0, 2);
  ASSERT_EQ(t.node_count(), 4u);
  EXPECT_EQ(t.link_count(), 4u);
  EXPECT_EQ(degrees(t), (std::vector<std::size_t>{2, 2, 2, 2}));
  for (const auto& n : t.nodes) EXPECT_EQ(n.nic_count, 2);
  EXPECT_TRUE(t.nodes[0].is_gateway);
  // Opposite corners are out of range.
  EXPECT_EQ(t.find_link(0, 2), -1);
  EXPECT_EQ(t.find_link(1, 3), -1);
}

TEST(BuildTopology, MinimalChain) {
  const Topology t = build_topology(TopologyKind::Chain, 2, 100.0, 1);
  ASSERT_EQ(t.link_count(), 1u);
  EXPECT_EQ(t.links[0].u, 0);
  EXPECT_EQ(t.links[0].v, 1);
  EXPECT_DOUBLE_EQ(t.links[0].distance, 100.0);
}

TEST(BuildTopology, ThreeByThreeGridHasTwelveLinks) {
  // 3 rows x 2 horizontal + 3 columns x 2 vertical; diagonals (283 m) exceed 250 m.
  const Topology t = build_topology(TopologyKind::Grid, 9, 200.0, 2);
  EXPECT_EQ(t.link_count(), 12u);
  EXPECT_EQ(degrees(t), (std::vector<std::size_t>{2, 3, 2, 3, 4, 3, 2, 3, 2}));
}

TEST(BuildTopology, StarAndBinaryTree) {
  const Topology star = build_topology(TopologyKind::Star, 6, 240.0, 1);
  EXPECT_EQ(star.link_count(), 5u);
  EXPECT_EQ(star.incidence()[0].size(), 5u);

  const Topology tree = build_topology(TopologyKind::BinaryTree, 7, 250.0, 1);
  EXPECT_EQ(tree.link_count(), 6u);
  for (const auto& l : tree.links) EXPECT_EQ(l.u, (l.v - 1) / 2);
}

TEST(BuildTopology, RejectsBadConfigurations) {
  EXPECT_EQ(kind_of([] { parse_topology_kind("hexagon"); }), ErrorKind::Config);
  EXPECT_EQ(kind_of([] { build_topology(TopologyKind::Grid, 7, 200.0, 1); }), ErrorKind::Config);
  EXPECT_EQ(kind_of([] { build_topology(TopologyKind::Chain, 1, 100.0, 1); }), ErrorKind::Config);
  EXPECT_EQ(kind_of([] { build_topology(TopologyKind::Chain, 3, 0.0, 1); }), ErrorKind::Config);
  EXPECT_EQ(kind_of([] { build_topology(TopologyKind::Chain, 3, 100.0, 0); }), ErrorKind::Config);
  EXPECT_EQ(kind_of([] { build_topology(TopologyKind::Chain, 3, 300.0, 1); }), ErrorKind::Config);
}

TEST(BuildTopology, DeterministicAndWithinRange) {
  for (TopologyKind kind :
       {TopologyKind::Chain, TopologyKind::Ring, TopologyKind::Grid, TopologyKind::Star, TopologyKind::BinaryTree}) {
    for (int n : {4, 6, 8, 9, 12, 16}) {
      const Topology a = build_topology(kind, n, 200.0, 2);
      const Topology b = build_topology(kind, n, 200.0, 2);
      ASSERT_EQ(a.link_count(), b.link_count());
      for (std::size_t i = 0; i < a.node_count(); ++i) {
        EXPECT_EQ(a.nodes[i].position.x, b.nodes[i].position.x);
        EXPECT_EQ(a.nodes[i].position.y, b.nodes[i].position.y);
      }
      for (std::size_t i = 0; i < a.link_count(); ++i) {
        EXPECT_EQ(a.links[i].u, b.links[i].u);
        EXPECT_EQ(a.links[i].v, b.links[i].v);
        EXPECT_EQ(a.links[i].gain, b.links[i].gain);
        EXPECT_EQ(a.links[i].id, static_cast<LinkId>(i));
        EXPECT_LE(a.links[i].distance, a.tx_range + 1e-6);
        EXPECT_LT(a.links[i].u, a.links[i].v);
      }
    }
  }
}

TEST(BuildTopology, RangeRuleLinksExactlyPairsInRange) {
  const Topology t = build_topology(TopologyKind::Ring, 12, 100.0, 1);
  std::size_t expected = 0;
  for (std::size_t a = 0; a < t.node_count(); ++a) {
    for (std::size_t b = a + 1; b < t.node_count(); ++b) {
      const bool in_range = distance(t.nodes[a].position, t.nodes[b].position) <= t.tx_range + 1e-6;
      expected += in_range;
      EXPECT_EQ(t.find_link(static_cast<NodeId>(a), static_cast<NodeId>(b)) >= 0, in_range);
    }
  }
  EXPECT_EQ(t.link_count(), expected);
}

TEST(LinkGain, Examples) {
  EXPECT_DOUBLE_EQ(link_gain(10.0, 10.0, 3.0), 1.0);
  EXPECT_DOUBLE_EQ(link_gain(20.0, 10.0, 3.0), 0.125);
  EXPECT_DOUBLE_EQ(link_gain(5.0, 10.0, 3.0), 1.0);
  EXPECT_EQ(kind_of([] { link_gain(0.0, 10.0, 3.0); }), ErrorKind::Domain);
}

TEST(LinkGain, NonIncreasingInDistance) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> dist(0.01, 1000.0);
  std::uniform_real_distribution<double> ref(1.0, 50.0);
  std::uniform_real_distribution<double> expo(2.0, 5.0);
  for (int trial = 0; trial < 200; ++trial) {
    const double d0 = ref(rng);
    const double alpha = expo(rng);
    std::vector<double> ds(50);
    for (auto& d : ds) d = dist(rng);
    std::sort(ds.begin(), ds.end());
    for (std::size_t i = 1; i < ds.size(); ++i) {
      const double g = link_gain(ds[i], d0, alpha);
      EXPECT_LE(g, link_gain(ds[i - 1], d0, alpha));
      EXPECT_GT(g, 0.0);
      EXPECT_LE(g, 1.0);
    }
  }
}

TEST(InterferenceMap, SingleLink) {
  const Topology t = build_topology(TopologyKind::Chain, 2, 100.0, 1);
  const InterferenceMap m = build_interference_map(t);
  EXPECT_EQ(m.interferers[0], std::vector<LinkId>{0});
  EXPECT_TRUE(m.neighbors[0].empty());
}

TEST(InterferenceMap, RingWithinRangeIsAllPairs) {
  const Topology t = build_topology(TopologyKind::Ring, 4, 250.0, 1);
  const InterferenceMap m = build_interference_map(t);
  for (const auto& set : m.interferers) EXPECT_EQ(set, (std::vector<LinkId>{0, 1, 2, 3}));
  // Links: 0=(0,1) 1=(0,3) 2=(1,2) 3=(2,3).
  EXPECT_EQ(m.neighbors[0], (std::vector<LinkId>{1, 2}));
  EXPECT_EQ(m.neighbors[3], (std::vector<LinkId>{1, 2}));
}

TEST(InterferenceMap, GridMatchesBruteForce) {
  const Topology t = build_topology(TopologyKind::Grid, 9, 200.0, 1);
  ASSERT_DOUBLE_EQ(t.interference_range, 2 * t.tx_range);
  EXPECT_EQ(build_interference_map(t).interferers, oracle::interferers(t));
}

TEST(InterferenceMap, SymmetricAndNeighborSetsExact) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 100; ++trial) {
    const Topology t = oracle::random_topology(rng, 3, 14, 40);
    const InterferenceMap m = build_interference_map(t);
    ASSERT_EQ(m.interferers, oracle::interferers(t));
    for (std::size_t a = 0; a < t.link_count(); ++a) {
      const auto la = static_cast<LinkId>(a);
      EXPECT_TRUE(m.interferes(la, la));
      for (std::size_t b = 0; b < t.link_count(); ++b) {
        const auto lb = static_cast<LinkId>(b);
        EXPECT_EQ(m.interferes(la, lb), m.interferes(lb, la));
        const bool adjacent = a != b && oracle::share_endpoint(t, la, lb);
        EXPECT_EQ(std::binary_search(m.neighbors[a].begin(), m.neighbors[a].end(), lb), adjacent);
      }
    }
  }
}

TEST(TrafficProfile, RejectsInvalidFlows) {
  TrafficProfile p;
  p.add(voip_flow(0, 2));
  EXPECT_EQ(kind_of([&] { p.add(voip_flow(0, 2)); }), ErrorKind::Validation);
  EXPECT_EQ(kind_of([&] { p.add(voip_flow(1, 1)); }), ErrorKind::Validation);
  EXPECT_EQ(kind_of([&] { p.add(Flow{0, 1, 0.0, 10, FlowKind::Cbr}); }), ErrorKind::Validation);
  const Topology t = build_topology(TopologyKind::Ring, 4, 250.0, 1);
  p.add(vod_flow(3, 0));
  EXPECT_NO_THROW(p.validate_against(t));
  p.add(voip_flow(0, 99));
  EXPECT_EQ(kind_of([&] { p.validate_against(t); }), ErrorKind::Validation);
}

TEST(TrafficProfile, CodecStandIns) {
  // GSM-AMR 12.2 kb/s -> 244 bits per 20 ms frame; two frames per packet.
  EXPECT_EQ(kVoipPacketBytes * 8, 2 * 244);
  EXPECT_DOUBLE_EQ(kVodRateBps, 150000.0);
  EXPECT_EQ(kVodPacketBytes, 65536);
}
