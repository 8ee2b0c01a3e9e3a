#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "meshplan/mesh.hpp"

namespace meshplan {

enum class FlowKind { Voip, Vod, Cbr };

FlowKind parse_flow_kind(std::string_view name);
std::string_view to_string(FlowKind kind);

// CBR stand-ins for the evaluation's traffic sources.
// VoIP: GSM-AMR 12.2 kb/s, two 20 ms frames (244 bits each) per packet.
inline constexpr double kVoipRateBps = 12200.0;
inline constexpr int kVoipPacketBytes = 61;
// VoD: 150 kb/s with 64 KiB payloads.
inline constexpr double kVodRateBps = 150000.0;
inline constexpr int kVodPacketBytes = 65536;

struct Flow {
  NodeId src = 0;
  NodeId dst = 0;
  double rate_bps = 0.0;  // expected load W for the pair
  int packet_bytes = 0;
  FlowKind kind = FlowKind::Cbr;
};

Flow voip_flow(NodeId src, NodeId dst);
Flow vod_flow(NodeId src, NodeId dst);

// Expected load per communicating pair. Pairs are ordered (s, d) and unique;
// flows keep insertion order, which fixes every per-flow output ordering.
class TrafficProfile {
 public:
  TrafficProfile() = default;
  explicit TrafficProfile(std::vector<Flow> flows);

  void add(const Flow& flow);

  const std::vector<Flow>& flows() const { return flows_; }
  std::size_t size() const { return flows_.size(); }
  bool empty() const { return flows_.empty(); }
  const Flow& operator[](std::size_t i) const { return flows_[i]; }

  // Index of pair (s, d), or -1.
  int find(NodeId s, NodeId d) const;
  double total_load() const;

  // Throws Validation if any endpoint is not a node of the topology.
  void validate_against(const Topology& topology) const;

 private:
  std::vector<Flow> flows_;
};

}  // namespace meshplan
