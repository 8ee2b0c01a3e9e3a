#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "meshplan/mesh.hpp"
#include "meshplan/traffic.hpp"

namespace meshplan {

struct TopologySpec {
  // Generator form; ignored when explicit_nodes is non-empty.
  TopologyKind kind = TopologyKind::Ring;
  int nodes = 4;
  double spacing = 250.0;
  int nic_count = 2;
  std::vector<MeshNode> explicit_nodes;
  double tx_range = 250.0;
};

struct AlgorithmParams {
  int n_channels = 3;
  double channel_capacity_bps = 10e6;
  double threshold_fraction = 0.9;
  int slack = 1;
  int path_cap = 32;
  double gain_ref_distance = 10.0;
  double gain_exponent = 3.0;
  double interference_multiplier = 2.0;
  int max_iters = 10;
};

struct SimParams {
  double slot_s = 1e-3;
  double horizon_s = 100.0;
  std::size_t queue_packets = 64;
  std::uint64_t seed = 1;
};

struct Scenario {
  std::string name = "scenario";
  TopologySpec topology;
  TrafficProfile traffic;
  AlgorithmParams algorithm;
  SimParams sim;

  RadioParams radio() const;
  Topology build_topology() const;
  // Throws Validation naming the offending field.
  void validate() const;
};

// "paper-ring-4": 4-node ring (250 m spacing and range), two VoIP flows and
// one VoD flow. "paper-table1": 50-node ring, 250 m range, same flow mix.
Scenario preset_scenario(std::string_view name);
std::vector<std::string> preset_names();

// JSON document with optional "preset", "name", and sections "topology",
// "traffic", "algorithm", "sim". Section keys override the preset; omitted
// algorithm/sim keys take defaults. Unknown keys are rejected.
Scenario parse_scenario_text(std::string_view text, const std::string& origin = "<scenario>");
Scenario parse_scenario(const std::filesystem::path& path);

}  // namespace meshplan
