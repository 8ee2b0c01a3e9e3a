#include "meshplan/sim.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include "meshplan/error.hpp"

namespace meshplan {

namespace {

constexpr double kBitEpsilon = 1e-9;

}  // namespace

void SimConfig::validate() const {
  if (!(slot_s > 0.0)) throw Error(ErrorKind::Config, "slot duration must be positive");
  if (!(horizon_s >= slot_s)) throw Error(ErrorKind::Config, "horizon must be at least one slot");
  if (!(channel_capacity_bps > 0.0)) throw Error(ErrorKind::Config, "channel capacity must be positive");
  if (queue_capacity < 1) throw Error(ErrorKind::Config, "queue capacity must be >= 1");
}

std::int64_t SimConfig::slot_count() const { return std::llround(horizon_s / slot_s); }

Simulator::Simulator(const Topology& topology, const InterferenceMap& map, const TrafficProfile& profile,
                     const RouteTable& routes, const ChannelAssignment& assignment, const SimConfig& config)
    : topology_(topology), map_(map), profile_(profile), routes_(routes), assignment_(assignment), config_(config) {
  config_.validate();
  if (routes.routes.size() != profile.size()) throw Error(ErrorKind::Contract, "route table does not cover the profile");
  if (assignment.link_count() != topology.link_count())
    throw Error(ErrorKind::Contract, "channel assignment does not match the topology");
  for (std::size_t i = 0; i < profile.size(); ++i) {
    const Route& r = routes.routes[i];
    if (r.src != profile[i].src || r.dst != profile[i].dst)
      throw Error(ErrorKind::Contract, "route " + std::to_string(i) + " does not match its flow");
    if (r.blocked) {
      ++skipped_;
      continue;
    }
    if (r.path.links.empty()) throw Error(ErrorKind::Contract, "route " + std::to_string(i) + " has no links");
    for (LinkId l : r.path.links) {
      if (l < 0 || static_cast<std::size_t>(l) >= topology.link_count())
        throw Error(ErrorKind::Contract, "route uses unknown link " + std::to_string(l));
      if (!assignment.assigned(l))
        throw Error(ErrorKind::Contract, "route link " + std::to_string(l) + " has no channel assignment");
    }
  }
  frames_ = std::max(1, assignment.frame_count());

  std::mt19937_64 rng(config_.seed);
  for (const auto& f : profile.flows()) {
    const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
    phase_bits_.push_back(u * f.packet_bytes * 8.0);
  }
  queues_.resize(topology.link_count());
  flows_.resize(profile.size());
  service_.resize(topology.link_count());
}

bool Simulator::admit(LinkId l, const Packet& p) {
  auto& q = queues_[static_cast<std::size_t>(l)];
  if (q.size() >= config_.queue_capacity) {
    ++flows_[p.flow].dropped;
    return false;
  }
  q.push_back(p);
  return true;
}

void Simulator::inject() {
  const double per_slot = config_.slot_s;
  for (std::size_t i = 0; i < profile_.size(); ++i) {
    const Route& r = routes_.routes[i];
    if (r.blocked) continue;
    const Flow& f = profile_[i];
    const double bits = f.packet_bytes * 8.0;
    // Cumulative count keeps long runs free of accumulated rounding drift.
    const auto due = static_cast<std::uint64_t>(
        std::floor((phase_bits_[i] + static_cast<double>(slot_ + 1) * f.rate_bps * per_slot) / bits));
    auto& stats = flows_[i];
    while (stats.generated < due) {
      ++stats.generated;
      admit(r.path.links.front(), Packet{static_cast<std::uint32_t>(i), 0, slot_, bits});
    }
  }
}

void Simulator::serve(std::vector<Packet>& completed) {
  const int frame = static_cast<int>(slot_ % frames_);
  std::vector<LinkId> active;
  for (std::size_t l = 0; l < queues_.size(); ++l) {
    service_[l] = LinkService{};
    if (!queues_[l].empty() && assignment_.frame(static_cast<LinkId>(l)) == frame) active.push_back(static_cast<LinkId>(l));
  }
  const double slot_bits = config_.channel_capacity_bps * config_.slot_s;
  for (LinkId l : active) {
    const auto channel = assignment_.channel(l);
    int sharing = 0;
    for (LinkId other : active) {
      if (assignment_.channel(other) == channel && map_.interferes(l, other)) ++sharing;
    }
    auto& svc = service_[static_cast<std::size_t>(l)];
    svc.active = true;
    svc.share_bits = slot_bits / sharing;
    double budget = svc.share_bits;
    auto& q = queues_[static_cast<std::size_t>(l)];
    while (budget > kBitEpsilon && !q.empty()) {
      Packet& head = q.front();
      const double take = std::min(budget, head.remaining_bits);
      head.remaining_bits -= take;
      budget -= take;
      svc.served_bits += take;
      if (head.remaining_bits <= kBitEpsilon) {
        completed.push_back(head);
        q.pop_front();
      }
    }
  }
}

void Simulator::forward(std::vector<Packet>& completed) {
  for (Packet& p : completed) {
    const Route& r = routes_.routes[p.flow];
    auto& stats = flows_[p.flow];
    ++p.hop;
    if (p.hop == r.path.links.size()) {
      ++stats.delivered;
      stats.delivered_bits += static_cast<std::uint64_t>(profile_[p.flow].packet_bytes) * 8U;
      stats.delay_slots += static_cast<std::uint64_t>(slot_ + 1 - p.injected);
      continue;
    }
    p.remaining_bits = profile_[p.flow].packet_bytes * 8.0;
    admit(r.path.links[p.hop], p);
  }
}

std::uint64_t Simulator::queued() const {
  std::uint64_t n = 0;
  for (const auto& q : queues_) n += q.size();
  return n;
}

void Simulator::check_conservation() const {
  std::uint64_t generated = 0;
  std::uint64_t settled = 0;
  for (const auto& f : flows_) {
    generated += f.generated;
    settled += f.delivered + f.dropped;
  }
  if (generated != settled + queued())
    throw Error(ErrorKind::Contract, "packet conservation violated at slot " + std::to_string(slot_));
}

void Simulator::step() {
  std::vector<Packet> completed;
  inject();
  serve(completed);
  forward(completed);
  check_conservation();
  ++slot_;
}

void Simulator::run_until(std::int64_t slot) {
  while (slot_ < slot) step();
}

SimMetrics Simulator::metrics() const {
  SimMetrics m;
  m.flows = flows_;
  m.slots = slot_;
  m.elapsed_s = static_cast<double>(slot_) * config_.slot_s;
  m.skipped_flows = skipped_;
  std::uint64_t delay_slots = 0;
  std::uint64_t bits = 0;
  for (const auto& f : flows_) {
    m.generated += f.generated;
    m.delivered += f.delivered;
    m.dropped += f.dropped;
    delay_slots += f.delay_slots;
    bits += f.delivered_bits;
  }
  m.in_flight = queued();
  m.throughput_pkts = m.delivered;
  if (m.delivered > 0) m.avg_delay_s = static_cast<double>(delay_slots) * config_.slot_s / static_cast<double>(m.delivered);
  if (m.generated > 0) m.pdr = static_cast<double>(m.delivered) / static_cast<double>(m.generated);
  if (m.elapsed_s > 0.0) m.throughput_bps = static_cast<double>(bits) / m.elapsed_s;
  return m;
}

SimMetrics run_simulation(const Topology& topology, const InterferenceMap& map, const TrafficProfile& profile,
                          const RouteTable& routes, const ChannelAssignment& assignment, const SimConfig& config) {
  Simulator sim(topology, map, profile, routes, assignment, config);
  sim.run_until(config.slot_count());
  return sim.metrics();
}

}  // namespace meshplan
