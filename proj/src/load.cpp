#include "meshplan/load.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <string>

#include "meshplan/error.hpp"

namespace meshplan {

namespace {

constexpr int kUnreached = std::numeric_limits<int>::max();

std::string pair_name(NodeId s, NodeId d) { return "(" + std::to_string(s) + "," + std::to_string(d) + ")"; }

std::vector<int> hops_to(const Topology& topology, const std::vector<std::vector<LinkId>>& inc, NodeId target) {
  std::vector<int> dist(topology.node_count(), kUnreached);
  std::deque<NodeId> queue{target};
  dist[static_cast<std::size_t>(target)] = 0;
  while (!queue.empty()) {
    const NodeId x = queue.front();
    queue.pop_front();
    for (LinkId l : inc[static_cast<std::size_t>(x)]) {
      const NodeId y = topology.links[static_cast<std::size_t>(l)].other(x);
      if (dist[static_cast<std::size_t>(y)] != kUnreached) continue;
      dist[static_cast<std::size_t>(y)] = dist[static_cast<std::size_t>(x)] + 1;
      queue.push_back(y);
    }
  }
  return dist;
}

class PathSearch {
 public:
  PathSearch(const Topology& topology, NodeId dst, int bound, int cap)
      : topology_(topology), inc_(topology.incidence()), dst_(dst), bound_(bound), cap_(cap),
        visited_(topology.node_count(), false) {}

  std::vector<Path> run(NodeId src) {
    remaining_ = hops_to(topology_, inc_, dst_);
    if (remaining_[static_cast<std::size_t>(src)] == kUnreached) return {};
    bound_ += remaining_[static_cast<std::size_t>(src)];
    current_.nodes.push_back(src);
    visited_[static_cast<std::size_t>(src)] = true;
    extend(src);
    return std::move(found_);
  }

 private:
  // Incident links are visited in ascending id, so completed paths come out in
  // lexicographic link-id order and the search can stop at the cap.
  void extend(NodeId x) {
    for (LinkId l : inc_[static_cast<std::size_t>(x)]) {
      if (static_cast<int>(found_.size()) >= cap_) return;
      const NodeId y = topology_.links[static_cast<std::size_t>(l)].other(x);
      if (visited_[static_cast<std::size_t>(y)]) continue;
      const int used = static_cast<int>(current_.links.size()) + 1;
      const int left = remaining_[static_cast<std::size_t>(y)];
      if (left == kUnreached || used + left > bound_) continue;

      current_.nodes.push_back(y);
      current_.links.push_back(l);
      if (y == dst_) {
        found_.push_back(current_);
      } else {
        visited_[static_cast<std::size_t>(y)] = true;
        extend(y);
        visited_[static_cast<std::size_t>(y)] = false;
      }
      current_.nodes.pop_back();
      current_.links.pop_back();
    }
  }

  const Topology& topology_;
  std::vector<std::vector<LinkId>> inc_;
  NodeId dst_;
  int bound_;  // slack until run() adds the shortest distance
  int cap_;
  std::vector<bool> visited_;
  std::vector<int> remaining_;
  Path current_;
  std::vector<Path> found_;
};

}  // namespace

bool Path::uses(LinkId l) const { return std::find(links.begin(), links.end(), l) != links.end(); }

double virtual_link_capacity(int n_channels, double channel_capacity, std::size_t n_interferers) {
  if (n_channels < 1) throw Error(ErrorKind::Domain, "virtual_link_capacity: n_channels must be >= 1");
  if (!(channel_capacity > 0.0)) throw Error(ErrorKind::Domain, "virtual_link_capacity: channel capacity must be positive");
  if (n_interferers == 0) throw Error(ErrorKind::Domain, "virtual_link_capacity: no interferers (link must count itself)");
  return static_cast<double>(n_channels) * channel_capacity / static_cast<double>(n_interferers);
}

std::vector<double> link_capacities(const InterferenceMap& map, int n_channels, double channel_capacity) {
  std::vector<double> out;
  out.reserve(map.interferers.size());
  for (const auto& set : map.interferers) out.push_back(virtual_link_capacity(n_channels, channel_capacity, set.size()));
  return out;
}

std::vector<Path> enumerate_acceptable_paths(const Topology& topology, NodeId s, NodeId d, int slack, int cap) {
  const auto n = static_cast<NodeId>(topology.node_count());
  if (s < 0 || s >= n || d < 0 || d >= n) throw Error(ErrorKind::Domain, "path endpoints " + pair_name(s, d) + " out of range");
  if (s == d) throw Error(ErrorKind::Domain, "path endpoints must differ");
  if (slack < 0) throw Error(ErrorKind::Domain, "path slack must be >= 0");
  if (cap < 1) throw Error(ErrorKind::Domain, "path cap must be >= 1");
  return PathSearch(topology, d, slack, cap).run(s);
}

PathSets enumerate_profile_paths(const Topology& topology, const TrafficProfile& profile, const PathPolicy& policy) {
  PathSets out;
  out.reserve(profile.size());
  for (const auto& f : profile.flows()) {
    out.push_back(enumerate_acceptable_paths(topology, f.src, f.dst, policy.slack, policy.cap));
  }
  return out;
}

std::vector<double> expected_link_load(const PathSets& paths, const TrafficProfile& profile, std::size_t link_count) {
  if (paths.size() != profile.size()) throw Error(ErrorKind::Contract, "path sets do not match the traffic profile");
  std::vector<double> load(link_count, 0.0);
  std::vector<int> through(link_count, 0);
  for (std::size_t i = 0; i < profile.size(); ++i) {
    const Flow& f = profile[i];
    const auto& set = paths[i];
    if (set.empty()) throw Error(ErrorKind::Unroutable, "flow " + pair_name(f.src, f.dst) + " has no acceptable path");
    std::fill(through.begin(), through.end(), 0);
    for (const auto& p : set) {
      for (LinkId l : p.links) {
        if (l < 0 || static_cast<std::size_t>(l) >= link_count)
          throw Error(ErrorKind::Contract, "path references unknown link " + std::to_string(l));
        ++through[static_cast<std::size_t>(l)];
      }
    }
    const double total = static_cast<double>(set.size());
    for (std::size_t l = 0; l < link_count; ++l) {
      if (through[l] > 0) load[l] += (static_cast<double>(through[l]) / total) * f.rate_bps;
    }
  }
  return load;
}

LoadEstimate estimate_loads(const Topology& topology, const InterferenceMap& map, const TrafficProfile& profile,
                            int n_channels, double channel_capacity, const PathPolicy& policy) {
  LoadEstimate est;
  est.capacity = link_capacities(map, n_channels, channel_capacity);
  est.paths = enumerate_profile_paths(topology, profile, policy);
  est.load = expected_link_load(est.paths, profile, topology.link_count());
  return est;
}

GoodputReport goodput(const std::map<PairKey, double>& assigned, const TrafficProfile& profile) {
  if (assigned.size() != profile.size())
    throw Error(ErrorKind::Contract, "goodput: assigned bandwidth covers " + std::to_string(assigned.size()) +
                                         " pairs, profile has " + std::to_string(profile.size()));
  GoodputReport report;
  for (const auto& f : profile.flows()) {
    const auto it = assigned.find({f.src, f.dst});
    if (it == assigned.end())
      throw Error(ErrorKind::Contract, "goodput: no assigned bandwidth for pair " + pair_name(f.src, f.dst));
    if (!(it->second >= 0.0))
      throw Error(ErrorKind::Contract, "goodput: negative bandwidth for pair " + pair_name(f.src, f.dst));
    PairGoodput g{f.src, f.dst, it->second, f.rate_bps, std::min(it->second, f.rate_bps)};
    report.total += g.useful;
    report.pairs.push_back(g);
  }
  return report;
}

}  // namespace meshplan
