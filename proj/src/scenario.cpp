#include "meshplan/scenario.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"
#include "meshplan/error.hpp"

namespace meshplan {

namespace {

using nlohmann::json;

[[noreturn]] void invalid(const std::string& field, const std::string& what) {
  throw Error(ErrorKind::Validation, "field '" + field + "': " + what);
}

void check_keys(const json& obj, const std::string& path, std::initializer_list<std::string_view> allowed) {
  if (!obj.is_object()) invalid(path.empty() ? "<root>" : path, "expected an object");
  for (const auto& [key, _] : obj.items()) {
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end())
      invalid(path.empty() ? key : path + "." + key, "unknown key");
  }
}

std::string join(const std::string& path, std::string_view key) { return path.empty() ? std::string(key) : path + "." + std::string(key); }

double get_number(const json& obj, std::string_view key, const std::string& path, double fallback) {
  const auto it = obj.find(key);
  if (it == obj.end()) return fallback;
  if (!it->is_number()) invalid(join(path, key), "expected a number");
  return it->get<double>();
}

std::int64_t get_integer(const json& obj, std::string_view key, const std::string& path, std::int64_t fallback) {
  const auto it = obj.find(key);
  if (it == obj.end()) return fallback;
  if (!it->is_number_integer()) invalid(join(path, key), "expected an integer");
  return it->get<std::int64_t>();
}

std::string get_string(const json& obj, std::string_view key, const std::string& path, std::string fallback) {
  const auto it = obj.find(key);
  if (it == obj.end()) return fallback;
  if (!it->is_string()) invalid(join(path, key), "expected a string");
  return it->get<std::string>();
}

void parse_topology(const json& j, TopologySpec& spec) {
  const std::string path = "topology";
  check_keys(j, path, {"kind", "nodes", "spacing", "nic_count", "tx_range"});
  spec.tx_range = get_number(j, "tx_range", path, spec.tx_range);
  const auto nodes = j.find("nodes");
  if (nodes != j.end() && nodes->is_array()) {
    if (j.contains("kind") || j.contains("spacing") || j.contains("nic_count"))
      invalid(path, "explicit node lists cannot be combined with generator parameters");
    spec.explicit_nodes.clear();
    for (std::size_t i = 0; i < nodes->size(); ++i) {
      const json& n = (*nodes)[i];
      const std::string np = path + ".nodes[" + std::to_string(i) + "]";
      check_keys(n, np, {"id", "x", "y", "nic_count", "gateway"});
      if (!n.contains("x") || !n.contains("y")) invalid(np, "node needs x and y");
      MeshNode node;
      node.id = static_cast<NodeId>(get_integer(n, "id", np, static_cast<std::int64_t>(i)));
      if (node.id != static_cast<NodeId>(i)) invalid(np + ".id", "node ids must be dense and in order");
      node.position = {get_number(n, "x", np, 0.0), get_number(n, "y", np, 0.0)};
      node.nic_count = static_cast<int>(get_integer(n, "nic_count", np, 1));
      const auto gw = n.find("gateway");
      if (gw != n.end()) {
        if (!gw->is_boolean()) invalid(np + ".gateway", "expected a boolean");
        node.is_gateway = gw->get<bool>();
      }
      spec.explicit_nodes.push_back(node);
    }
    return;
  }
  if (nodes != j.end() && !nodes->is_number_integer()) invalid(path + ".nodes", "expected an integer or a node list");
  spec.explicit_nodes.clear();
  try {
    spec.kind = parse_topology_kind(get_string(j, "kind", path, std::string(to_string(spec.kind))));
  } catch (const Error& e) {
    invalid(path + ".kind", e.what());
  }
  spec.nodes = static_cast<int>(get_integer(j, "nodes", path, spec.nodes));
  spec.spacing = get_number(j, "spacing", path, spec.spacing);
  spec.nic_count = static_cast<int>(get_integer(j, "nic_count", path, spec.nic_count));
}

TrafficProfile parse_traffic(const json& j) {
  const std::string path = "traffic";
  check_keys(j, path, {"flows"});
  const auto flows = j.find("flows");
  if (flows == j.end() || !flows->is_array()) invalid(path + ".flows", "expected a list of flows");
  TrafficProfile profile;
  for (std::size_t i = 0; i < flows->size(); ++i) {
    const json& f = (*flows)[i];
    const std::string fp = path + ".flows[" + std::to_string(i) + "]";
    check_keys(f, fp, {"src", "dst", "kind", "rate_bps", "packet_bytes"});
    if (!f.contains("src") || !f.contains("dst")) invalid(fp, "flow needs src and dst");
    FlowKind kind = FlowKind::Cbr;
    try {
      kind = parse_flow_kind(get_string(f, "kind", fp, "cbr"));
    } catch (const Error& e) {
      invalid(fp + ".kind", e.what());
    }
    const auto src = static_cast<NodeId>(get_integer(f, "src", fp, 0));
    const auto dst = static_cast<NodeId>(get_integer(f, "dst", fp, 0));
    Flow flow = kind == FlowKind::Voip ? voip_flow(src, dst) : kind == FlowKind::Vod ? vod_flow(src, dst) : Flow{src, dst, 0.0, 0, kind};
    if (kind == FlowKind::Cbr && (!f.contains("rate_bps") || !f.contains("packet_bytes")))
      invalid(fp, "cbr flows need rate_bps and packet_bytes");
    flow.rate_bps = get_number(f, "rate_bps", fp, flow.rate_bps);
    flow.packet_bytes = static_cast<int>(get_integer(f, "packet_bytes", fp, flow.packet_bytes));
    try {
      profile.add(flow);
    } catch (const Error& e) {
      invalid(fp, e.what());
    }
  }
  return profile;
}

void parse_algorithm(const json& j, AlgorithmParams& a) {
  const std::string path = "algorithm";
  check_keys(j, path,
             {"channels", "channel_capacity_bps", "threshold_fraction", "slack", "path_cap", "d0", "alpha",
              "interference_multiplier", "max_iters"});
  a.n_channels = static_cast<int>(get_integer(j, "channels", path, a.n_channels));
  a.channel_capacity_bps = get_number(j, "channel_capacity_bps", path, a.channel_capacity_bps);
  a.threshold_fraction = get_number(j, "threshold_fraction", path, a.threshold_fraction);
  a.slack = static_cast<int>(get_integer(j, "slack", path, a.slack));
  a.path_cap = static_cast<int>(get_integer(j, "path_cap", path, a.path_cap));
  a.gain_ref_distance = get_number(j, "d0", path, a.gain_ref_distance);
  a.gain_exponent = get_number(j, "alpha", path, a.gain_exponent);
  a.interference_multiplier = get_number(j, "interference_multiplier", path, a.interference_multiplier);
  a.max_iters = static_cast<int>(get_integer(j, "max_iters", path, a.max_iters));
}

void parse_sim(const json& j, SimParams& s) {
  const std::string path = "sim";
  check_keys(j, path, {"slot_s", "horizon_s", "queue_packets", "seed"});
  s.slot_s = get_number(j, "slot_s", path, s.slot_s);
  s.horizon_s = get_number(j, "horizon_s", path, s.horizon_s);
  const std::int64_t queue = get_integer(j, "queue_packets", path, static_cast<std::int64_t>(s.queue_packets));
  if (queue < 1) invalid(path + ".queue_packets", "must be >= 1");
  s.queue_packets = static_cast<std::size_t>(queue);
  const auto seed = j.find("seed");
  if (seed != j.end()) {
    if (!seed->is_number_unsigned()) invalid(path + ".seed", "expected a non-negative integer");
    s.seed = seed->get<std::uint64_t>();
  }
}

std::size_t line_of(std::string_view text, std::size_t byte) {
  byte = std::min(byte, text.size());
  return 1 + static_cast<std::size_t>(std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(byte), '\n'));
}

}  // namespace

RadioParams Scenario::radio() const {
  return RadioParams{topology.tx_range, algorithm.interference_multiplier, algorithm.gain_ref_distance,
                     algorithm.gain_exponent};
}

Topology Scenario::build_topology() const {
  if (!topology.explicit_nodes.empty()) return make_topology(topology.explicit_nodes, radio());
  return meshplan::build_topology(topology.kind, topology.nodes, topology.spacing, topology.nic_count, radio());
}

void Scenario::validate() const {
  const AlgorithmParams& a = algorithm;
  if (a.n_channels < 1) invalid("algorithm.channels", "must be >= 1");
  if (!(a.channel_capacity_bps > 0.0)) invalid("algorithm.channel_capacity_bps", "must be positive");
  if (!(a.threshold_fraction > 0.0 && a.threshold_fraction <= 1.0))
    invalid("algorithm.threshold_fraction", "must be in (0, 1]");
  if (a.slack < 0) invalid("algorithm.slack", "must be >= 0");
  if (a.path_cap < 1) invalid("algorithm.path_cap", "must be >= 1");
  if (!(a.gain_ref_distance > 0.0)) invalid("algorithm.d0", "must be positive");
  if (!(a.gain_exponent >= 2.0)) invalid("algorithm.alpha", "must be >= 2");
  if (!(a.interference_multiplier >= 1.0)) invalid("algorithm.interference_multiplier", "must be >= 1");
  if (a.max_iters < 1) invalid("algorithm.max_iters", "must be >= 1");

  if (!(sim.slot_s > 0.0)) invalid("sim.slot_s", "must be positive");
  if (!(sim.horizon_s >= sim.slot_s)) invalid("sim.horizon_s", "must be at least one slot");
  if (sim.queue_packets < 1) invalid("sim.queue_packets", "must be >= 1");

  if (!(topology.tx_range > 0.0)) invalid("topology.tx_range", "must be positive");
  const bool explicit_nodes = !topology.explicit_nodes.empty();
  if (!explicit_nodes) {
    if (topology.nodes < 2) invalid("topology.nodes", "must be >= 2");
    if (!(topology.spacing > 0.0)) invalid("topology.spacing", "must be positive");
    if (topology.nic_count < 1) invalid("topology.nic_count", "must be >= 1");
  } else {
    if (topology.explicit_nodes.size() < 2) invalid("topology.nodes", "need at least 2 nodes");
    for (std::size_t i = 0; i < topology.explicit_nodes.size(); ++i) {
      if (topology.explicit_nodes[i].nic_count < 1)
        invalid("topology.nodes[" + std::to_string(i) + "].nic_count", "must be >= 1");
    }
  }
  const auto n = static_cast<NodeId>(explicit_nodes ? topology.explicit_nodes.size()
                                                    : static_cast<std::size_t>(topology.nodes));
  for (std::size_t i = 0; i < traffic.size(); ++i) {
    const Flow& f = traffic[i];
    const std::string fp = "traffic.flows[" + std::to_string(i) + "]";
    if (f.src < 0 || f.src >= n) invalid(fp + ".src", "node " + std::to_string(f.src) + " does not exist");
    if (f.dst < 0 || f.dst >= n) invalid(fp + ".dst", "node " + std::to_string(f.dst) + " does not exist");
  }
}

Scenario preset_scenario(std::string_view name) {
  Scenario s;
  s.name = std::string(name);
  if (name == "paper-ring-4") {
    s.topology = TopologySpec{TopologyKind::Ring, 4, 250.0, 2, {}, 250.0};
    s.traffic.add(voip_flow(0, 2));
    s.traffic.add(voip_flow(1, 3));
    s.traffic.add(vod_flow(2, 0));
    return s;
  }
  if (name == "paper-table1") {
    // 50 nodes around a ring; 72 m spacing spreads them over roughly the
    // 1500 x 300 m area's perimeter.
    s.topology = TopologySpec{TopologyKind::Ring, 50, 72.0, 2, {}, 250.0};
    s.traffic.add(voip_flow(0, 25));
    s.traffic.add(voip_flow(12, 37));
    s.traffic.add(vod_flow(25, 0));
    return s;
  }
  throw Error(ErrorKind::Validation, "field 'preset': unknown preset '" + std::string(name) + "'");
}

std::vector<std::string> preset_names() { return {"paper-ring-4", "paper-table1"}; }

Scenario parse_scenario_text(std::string_view text, const std::string& origin) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::Parse, origin + ":" + std::to_string(line_of(text, e.byte)) + ": " + e.what());
  }
  check_keys(doc, "", {"preset", "name", "topology", "traffic", "algorithm", "sim"});

  Scenario s;
  const std::string preset = get_string(doc, "preset", "", "");
  if (!preset.empty()) s = preset_scenario(preset);
  s.name = get_string(doc, "name", "", preset.empty() ? s.name : preset);

  if (const auto it = doc.find("topology"); it != doc.end()) parse_topology(*it, s.topology);
  if (const auto it = doc.find("traffic"); it != doc.end()) s.traffic = parse_traffic(*it);
  if (const auto it = doc.find("algorithm"); it != doc.end()) parse_algorithm(*it, s.algorithm);
  if (const auto it = doc.find("sim"); it != doc.end()) parse_sim(*it, s.sim);
  if (preset.empty() && !doc.contains("topology")) invalid("topology", "required without a preset");
  s.validate();
  return s;
}

Scenario parse_scenario(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    if (!std::filesystem::exists(path)) throw Error(ErrorKind::NotFound, "scenario file not found: " + path.string());
    throw Error(ErrorKind::Io, "cannot read scenario file: " + path.string());
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_scenario_text(buf.str(), path.string());
}

}  // namespace meshplan
