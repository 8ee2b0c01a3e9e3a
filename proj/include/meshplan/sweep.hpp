#pragma once

#include <cstdint>
#include <vector>

#include "meshplan/pipeline.hpp"
#include "meshplan/scenario.hpp"

namespace meshplan {

struct RunRecord {
  int channels = 0;
  double horizon_s = 0.0;
  Protocol protocol = Protocol::Ccmca;
  std::uint64_t seed = 0;
  SimMetrics metrics;
};

// Runs the full pipeline for every (channel count, protocol, seed). Runs
// execute concurrently; results come back in that nesting order.
std::vector<RunRecord> sweep_channels(const Scenario& scenario, const std::vector<int>& channel_counts,
                                      const std::vector<Protocol>& protocols, const std::vector<std::uint64_t>& seeds);

// Same, varying the simulated horizon.
std::vector<RunRecord> sweep_time(const Scenario& scenario, const std::vector<double>& horizons,
                                  const std::vector<Protocol>& protocols, const std::vector<std::uint64_t>& seeds);

}  // namespace meshplan
