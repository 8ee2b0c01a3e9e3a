#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "json.hpp"
#include "meshplan/pipeline.hpp"
#include "meshplan/sweep.hpp"

namespace meshplan {

// One CSV line: either a single run or the mean over a group's seeds.
struct MetricsRow {
  std::string scenario;
  std::string protocol;
  int channels = 0;
  double horizon_s = 0.0;
  std::string seed;  // decimal seed, or "mean"
  bool mean = false;
  double generated = 0.0;
  double delivered = 0.0;
  double dropped = 0.0;
  double avg_delay_s = 0.0;
  double pdr = 0.0;
  double throughput_pkts = 0.0;
};

inline constexpr const char* kMetricsCsvHeader =
    "scenario,protocol,channels,horizon_s,seed,generated,delivered,dropped,avg_delay_s,pdr,throughput_pkts";

MetricsRow metrics_row(const std::string& scenario, Protocol protocol, int channels, double horizon_s,
                       std::uint64_t seed, const SimMetrics& m);
MetricsRow metrics_row(const Bundle& bundle);

// Per-seed rows; groups sharing (channels, horizon, protocol) get a trailing
// mean row when they span more than one seed.
std::vector<MetricsRow> metrics_rows(const std::string& scenario, const std::vector<RunRecord>& records);

std::string to_csv(const std::vector<MetricsRow>& rows);
nlohmann::ordered_json to_json(const std::vector<MetricsRow>& rows);

nlohmann::ordered_json to_json(const Bundle& bundle);
Bundle bundle_from_json(const nlohmann::json& doc);

// Link id, endpoints, channel and frame per link.
std::string assignment_csv(const Topology& topology, const ChannelAssignment& assignment);
nlohmann::ordered_json assignment_json(const Topology& topology, const ChannelAssignment& assignment);

// Throws Io naming the path on failure.
void write_text(const std::filesystem::path& path, const std::string& content);

}  // namespace meshplan
