#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "meshplan/mesh.hpp"

namespace meshplan {

using ChannelId = std::int32_t;

// Per-link channel and activation frame. Exposes the binary V(l, c) view and
// the per-channel link sets the greedy walk works with.
class ChannelAssignment {
 public:
  ChannelAssignment() = default;
  ChannelAssignment(std::size_t link_count, int n_channels);

  std::size_t link_count() const { return channel_.size(); }
  int n_channels() const { return static_cast<int>(members_.size()); }

  bool assigned(LinkId l) const { return channel_[idx(l)].has_value(); }
  std::optional<ChannelId> channel(LinkId l) const { return channel_[idx(l)]; }
  std::optional<int> frame(LinkId l) const { return frame_[idx(l)]; }
  // V(l, c)
  bool uses(LinkId l, ChannelId c) const { return channel_[idx(l)] == c; }
  // S(c), in assignment order.
  const std::vector<LinkId>& links_on(ChannelId c) const { return members_[static_cast<std::size_t>(c)]; }

  void assign(LinkId l, ChannelId c, int frame);

  bool complete() const;
  int frame_count() const;
  std::vector<LinkId> links_in_frame(int frame) const;

  // Compares V and frames; S(c) is derived from V.
  friend bool operator==(const ChannelAssignment& a, const ChannelAssignment& b) {
    return a.channel_ == b.channel_ && a.frame_ == b.frame_ && a.members_.size() == b.members_.size();
  }

 private:
  static std::size_t idx(LinkId l) { return static_cast<std::size_t>(l); }

  std::vector<std::optional<ChannelId>> channel_;
  std::vector<std::optional<int>> frame_;
  std::vector<std::vector<LinkId>> members_;
};

// Descending load, ties by ascending link id.
std::vector<LinkId> order_links(std::span<const double> load);

// True iff no node-adjacent link of `link` was activated in `frame`.
bool eligible(LinkId link, const ChannelAssignment& assignment, const InterferenceMap& map, int frame);

// Sum of gains of the links already on `channel` that interfere with `link`.
double channel_gain_sum(LinkId link, ChannelId channel, const ChannelAssignment& assignment, const InterferenceMap& map,
                        std::span<const double> gains);

// One pass of the greedy walk over the still-unassigned links of `order`.
// Each eligible link takes the channel with the least gain sum (lowest index
// on ties). Returns the number of links activated in this frame.
int assign_frame(std::span<const LinkId> order, ChannelAssignment& assignment, const InterferenceMap& map,
                 std::span<const double> gains, int frame);

// Repeats assign_frame with fresh per-frame eligibility until every link has
// a channel and a frame. Gain sums accumulate across frames.
ChannelAssignment schedule_all_frames(std::span<const LinkId> order, const InterferenceMap& map,
                                      std::span<const double> gains, int n_channels);

// Comparison baseline: seeded uniform channel per link, frames by first-fit
// colouring of the node-adjacency conflict in link-id order.
ChannelAssignment baseline_assign(const InterferenceMap& map, int n_channels, std::uint64_t seed);

}  // namespace meshplan
