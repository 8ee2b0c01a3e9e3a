#include "meshplan/traffic.hpp"

#include <string>

#include "meshplan/error.hpp"

namespace meshplan {

namespace {

std::string pair_name(NodeId s, NodeId d) { return "(" + std::to_string(s) + "," + std::to_string(d) + ")"; }

}  // namespace

FlowKind parse_flow_kind(std::string_view name) {
  if (name == "voip") return FlowKind::Voip;
  if (name == "vod") return FlowKind::Vod;
  if (name == "cbr") return FlowKind::Cbr;
  throw Error(ErrorKind::Validation, "unknown flow kind '" + std::string(name) + "'");
}

std::string_view to_string(FlowKind kind) {
  switch (kind) {
    case FlowKind::Voip: return "voip";
    case FlowKind::Vod: return "vod";
    case FlowKind::Cbr: return "cbr";
  }
  return "?";
}

Flow voip_flow(NodeId src, NodeId dst) { return {src, dst, kVoipRateBps, kVoipPacketBytes, FlowKind::Voip}; }

Flow vod_flow(NodeId src, NodeId dst) { return {src, dst, kVodRateBps, kVodPacketBytes, FlowKind::Vod}; }

TrafficProfile::TrafficProfile(std::vector<Flow> flows) {
  for (const auto& f : flows) add(f);
}

void TrafficProfile::add(const Flow& flow) {
  const std::string name = pair_name(flow.src, flow.dst);
  if (flow.src == flow.dst) throw Error(ErrorKind::Validation, "flow " + name + ": source equals destination");
  if (!(flow.rate_bps > 0.0)) throw Error(ErrorKind::Validation, "flow " + name + ": rate must be positive");
  if (flow.packet_bytes < 1) throw Error(ErrorKind::Validation, "flow " + name + ": packet size must be >= 1 byte");
  if (find(flow.src, flow.dst) >= 0) throw Error(ErrorKind::Validation, "duplicate flow " + name);
  flows_.push_back(flow);
}

int TrafficProfile::find(NodeId s, NodeId d) const {
  for (std::size_t i = 0; i < flows_.size(); ++i) {
    if (flows_[i].src == s && flows_[i].dst == d) return static_cast<int>(i);
  }
  return -1;
}

double TrafficProfile::total_load() const {
  double sum = 0.0;
  for (const auto& f : flows_) sum += f.rate_bps;
  return sum;
}

void TrafficProfile::validate_against(const Topology& topology) const {
  const auto n = static_cast<NodeId>(topology.node_count());
  for (const auto& f : flows_) {
    if (f.src < 0 || f.src >= n || f.dst < 0 || f.dst >= n) {
      throw Error(ErrorKind::Validation, "flow " + pair_name(f.src, f.dst) + " references a node outside 0.." +
                                             std::to_string(n - 1));
    }
  }
}

}  // namespace meshplan
