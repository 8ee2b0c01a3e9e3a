#pragma once

#include <cstdint>
#include <deque>
#include <limits>
#include <vector>

#include "meshplan/channel.hpp"
#include "meshplan/mesh.hpp"
#include "meshplan/route.hpp"
#include "meshplan/traffic.hpp"

namespace meshplan {

inline constexpr std::size_t kUnboundedQueue = std::numeric_limits<std::size_t>::max();

struct SimConfig {
  double slot_s = 1e-3;
  double horizon_s = 100.0;
  double channel_capacity_bps = 10e6;
  std::size_t queue_capacity = 64;  // packets per link
  std::uint64_t seed = 1;

  void validate() const;
  std::int64_t slot_count() const;
};

struct FlowStats {
  std::uint64_t generated = 0;
  std::uint64_t delivered = 0;
  std::uint64_t dropped = 0;
  std::uint64_t delivered_bits = 0;
  std::uint64_t delay_slots = 0;  // summed over delivered packets

  double delivery_ratio() const {
    return generated == 0 ? 0.0 : static_cast<double>(delivered) / static_cast<double>(generated);
  }
  friend bool operator==(const FlowStats&, const FlowStats&) = default;
};

struct SimMetrics {
  std::uint64_t generated = 0;
  std::uint64_t delivered = 0;
  std::uint64_t dropped = 0;
  std::uint64_t in_flight = 0;
  std::uint64_t skipped_flows = 0;  // blocked flows that injected nothing
  std::int64_t slots = 0;
  double elapsed_s = 0.0;
  double avg_delay_s = 0.0;
  double pdr = 0.0;
  std::uint64_t throughput_pkts = 0;
  double throughput_bps = 0.0;
  std::vector<FlowStats> flows;  // profile order

  friend bool operator==(const SimMetrics&, const SimMetrics&) = default;
};

// What one link did in the most recent slot.
struct LinkService {
  bool active = false;
  double share_bits = 0.0;   // capacity x slot / co-channel active interferers
  double served_bits = 0.0;
};

// Slotted-time packet simulator. Each slot: flows inject CBR packets onto
// their first hop, links of the current frame serve their FIFO queues at an
// equal share of channel capacity, and completed packets move one hop (they
// become eligible for service in the next slot) or are delivered.
class Simulator {
 public:
  Simulator(const Topology& topology, const InterferenceMap& map, const TrafficProfile& profile,
            const RouteTable& routes, const ChannelAssignment& assignment, const SimConfig& config);

  void step();
  void run_until(std::int64_t slot);
  std::int64_t slot() const { return slot_; }

  SimMetrics metrics() const;
  const std::vector<LinkService>& last_service() const { return service_; }
  std::uint64_t queued() const;

 private:
  struct Packet {
    std::uint32_t flow;
    std::uint32_t hop;
    std::int64_t injected;
    double remaining_bits;
  };

  void inject();
  void serve(std::vector<Packet>& completed);
  void forward(std::vector<Packet>& completed);
  void check_conservation() const;
  bool admit(LinkId l, const Packet& p);

  const Topology& topology_;
  const InterferenceMap& map_;
  const TrafficProfile& profile_;
  const RouteTable& routes_;
  const ChannelAssignment& assignment_;
  SimConfig config_;
  int frames_ = 1;

  std::int64_t slot_ = 0;
  std::vector<double> phase_bits_;
  std::vector<std::deque<Packet>> queues_;
  std::vector<FlowStats> flows_;
  std::vector<LinkService> service_;
  std::uint64_t skipped_ = 0;
};

SimMetrics run_simulation(const Topology& topology, const InterferenceMap& map, const TrafficProfile& profile,
                          const RouteTable& routes, const ChannelAssignment& assignment, const SimConfig& config);

}  // namespace meshplan
