#include "meshplan/channel.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <string>

#include "meshplan/error.hpp"

namespace meshplan {

ChannelAssignment::ChannelAssignment(std::size_t link_count, int n_channels)
    : channel_(link_count), frame_(link_count) {
  if (n_channels < 1) throw Error(ErrorKind::Domain, "channel count must be >= 1");
  members_.resize(static_cast<std::size_t>(n_channels));
}

void ChannelAssignment::assign(LinkId l, ChannelId c, int frame) {
  if (l < 0 || idx(l) >= channel_.size()) throw Error(ErrorKind::Contract, "assign: unknown link " + std::to_string(l));
  if (c < 0 || c >= n_channels()) throw Error(ErrorKind::Contract, "assign: unknown channel " + std::to_string(c));
  if (channel_[idx(l)]) throw Error(ErrorKind::Contract, "assign: link " + std::to_string(l) + " already assigned");
  channel_[idx(l)] = c;
  frame_[idx(l)] = frame;
  members_[static_cast<std::size_t>(c)].push_back(l);
}

bool ChannelAssignment::complete() const {
  return std::all_of(channel_.begin(), channel_.end(), [](const auto& c) { return c.has_value(); });
}

int ChannelAssignment::frame_count() const {
  int n = 0;
  for (const auto& f : frame_) {
    if (f) n = std::max(n, *f + 1);
  }
  return n;
}

std::vector<LinkId> ChannelAssignment::links_in_frame(int frame) const {
  std::vector<LinkId> out;
  for (std::size_t l = 0; l < frame_.size(); ++l) {
    if (frame_[l] == frame) out.push_back(static_cast<LinkId>(l));
  }
  return out;
}

std::vector<LinkId> order_links(std::span<const double> load) {
  std::vector<LinkId> order(load.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](LinkId a, LinkId b) {
    return load[static_cast<std::size_t>(a)] > load[static_cast<std::size_t>(b)];
  });
  return order;
}

bool eligible(LinkId link, const ChannelAssignment& assignment, const InterferenceMap& map, int frame) {
  for (LinkId e : map.neighbors[static_cast<std::size_t>(link)]) {
    if (assignment.assigned(e) && assignment.frame(e) == frame) return false;
  }
  return true;
}

double channel_gain_sum(LinkId link, ChannelId channel, const ChannelAssignment& assignment, const InterferenceMap& map,
                        std::span<const double> gains) {
  if (channel < 0 || channel >= assignment.n_channels())
    throw Error(ErrorKind::Domain, "channel " + std::to_string(channel) + " out of range");
  double sum = 0.0;
  for (LinkId q : assignment.links_on(channel)) {
    if (map.interferes(link, q)) sum += gains[static_cast<std::size_t>(q)];
  }
  return sum;
}

int assign_frame(std::span<const LinkId> order, ChannelAssignment& assignment, const InterferenceMap& map,
                 std::span<const double> gains, int frame) {
  int activated = 0;
  for (LinkId l : order) {
    if (assignment.assigned(l) || !eligible(l, assignment, map, frame)) continue;
    ChannelId best = 0;
    double best_sum = channel_gain_sum(l, 0, assignment, map, gains);
    for (ChannelId c = 1; c < assignment.n_channels(); ++c) {
      const double d = channel_gain_sum(l, c, assignment, map, gains);
      if (d < best_sum) {
        best = c;
        best_sum = d;
      }
    }
    assignment.assign(l, best, frame);
    ++activated;
  }
  return activated;
}

ChannelAssignment schedule_all_frames(std::span<const LinkId> order, const InterferenceMap& map,
                                      std::span<const double> gains, int n_channels) {
  const std::size_t count = map.interferers.size();
  if (order.size() != count || gains.size() != count)
    throw Error(ErrorKind::Contract, "schedule: order/gains must cover every link");
  ChannelAssignment assignment(count, n_channels);
  // Each frame activates at least the first unassigned link in order.
  for (int frame = 0; !assignment.complete(); ++frame) assign_frame(order, assignment, map, gains, frame);
  return assignment;
}

ChannelAssignment baseline_assign(const InterferenceMap& map, int n_channels, std::uint64_t seed) {
  const std::size_t count = map.interferers.size();
  ChannelAssignment assignment(count, n_channels);
  std::mt19937_64 rng(seed);
  std::vector<int> frame(count, -1);
  std::vector<bool> taken;
  for (std::size_t l = 0; l < count; ++l) {
    taken.assign(count + 1, false);
    for (LinkId e : map.neighbors[l]) {
      if (frame[static_cast<std::size_t>(e)] >= 0) taken[static_cast<std::size_t>(frame[static_cast<std::size_t>(e)])] = true;
    }
    frame[l] = static_cast<int>(std::find(taken.begin(), taken.end(), false) - taken.begin());
    const auto c = static_cast<ChannelId>(rng() % static_cast<std::uint64_t>(n_channels));
    assignment.assign(static_cast<LinkId>(l), c, frame[l]);
  }
  return assignment;
}

}  // namespace meshplan
