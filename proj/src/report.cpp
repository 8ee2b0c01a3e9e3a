#include "meshplan/report.hpp"

#include <cmath>
#include <fstream>
#include <map>
#include <tuple>

#include <fmt/format.h>

#include "meshplan/error.hpp"

namespace meshplan {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

// JSON has no infinity; blocked or excluded costs travel as null.
ordered_json number_or_null(double v) { return std::isinf(v) ? ordered_json(nullptr) : ordered_json(v); }
double number_or_inf(const json& j) { return j.is_null() ? kInfiniteCost : j.get<double>(); }

std::string count_field(double v, bool mean) {
  return mean ? fmt::format("{:.6f}", v) : fmt::format("{}", static_cast<std::uint64_t>(v));
}

template <typename T>
T field(const json& doc, const char* key) {
  try {
    return doc.at(key).get<T>();
  } catch (const json::exception& e) {
    throw Error(ErrorKind::Parse, std::string("bundle field '") + key + "': " + e.what());
  }
}

}  // namespace

MetricsRow metrics_row(const std::string& scenario, Protocol protocol, int channels, double horizon_s,
                       std::uint64_t seed, const SimMetrics& m) {
  MetricsRow row;
  row.scenario = scenario;
  row.protocol = std::string(to_string(protocol));
  row.channels = channels;
  row.horizon_s = horizon_s;
  row.seed = std::to_string(seed);
  row.generated = static_cast<double>(m.generated);
  row.delivered = static_cast<double>(m.delivered);
  row.dropped = static_cast<double>(m.dropped);
  row.avg_delay_s = m.avg_delay_s;
  row.pdr = m.pdr;
  row.throughput_pkts = static_cast<double>(m.throughput_pkts);
  return row;
}

MetricsRow metrics_row(const Bundle& b) {
  return metrics_row(b.scenario, b.protocol, b.channels, b.horizon_s, b.seed, b.metrics);
}

std::vector<MetricsRow> metrics_rows(const std::string& scenario, const std::vector<RunRecord>& records) {
  std::vector<MetricsRow> rows;
  std::size_t i = 0;
  while (i < records.size()) {
    std::size_t j = i;
    const auto key = std::make_tuple(records[i].channels, records[i].horizon_s, records[i].protocol);
    MetricsRow mean;
    while (j < records.size() && std::make_tuple(records[j].channels, records[j].horizon_s, records[j].protocol) == key) {
      const RunRecord& r = records[j];
      MetricsRow row = metrics_row(scenario, r.protocol, r.channels, r.horizon_s, r.seed, r.metrics);
      mean.generated += row.generated;
      mean.delivered += row.delivered;
      mean.dropped += row.dropped;
      mean.avg_delay_s += row.avg_delay_s;
      mean.pdr += row.pdr;
      mean.throughput_pkts += row.throughput_pkts;
      rows.push_back(std::move(row));
      ++j;
    }
    const double n = static_cast<double>(j - i);
    if (j - i > 1) {
      mean.scenario = scenario;
      mean.protocol = std::string(to_string(records[i].protocol));
      mean.channels = records[i].channels;
      mean.horizon_s = records[i].horizon_s;
      mean.seed = "mean";
      mean.mean = true;
      mean.generated /= n;
      mean.delivered /= n;
      mean.dropped /= n;
      mean.avg_delay_s /= n;
      mean.pdr /= n;
      mean.throughput_pkts /= n;
      rows.push_back(std::move(mean));
    }
    i = j;
  }
  return rows;
}

std::string to_csv(const std::vector<MetricsRow>& rows) {
  std::string out = std::string(kMetricsCsvHeader) + "\n";
  for (const auto& r : rows) {
    out += fmt::format("{},{},{},{:g},{},{},{},{},{:.9g},{:.9g},{}\n", r.scenario, r.protocol, r.channels, r.horizon_s,
                       r.seed, count_field(r.generated, r.mean), count_field(r.delivered, r.mean),
                       count_field(r.dropped, r.mean), r.avg_delay_s, r.pdr, count_field(r.throughput_pkts, r.mean));
  }
  return out;
}

ordered_json to_json(const std::vector<MetricsRow>& rows) {
  ordered_json out = ordered_json::array();
  for (const auto& r : rows) {
    out.push_back({{"scenario", r.scenario},
                   {"protocol", r.protocol},
                   {"channels", r.channels},
                   {"horizon_s", r.horizon_s},
                   {"seed", r.seed},
                   {"generated", r.generated},
                   {"delivered", r.delivered},
                   {"dropped", r.dropped},
                   {"avg_delay_s", r.avg_delay_s},
                   {"pdr", r.pdr},
                   {"throughput_pkts", r.throughput_pkts}});
  }
  return out;
}

ordered_json to_json(const Bundle& b) {
  ordered_json doc;
  doc["scenario"] = b.scenario;
  doc["protocol"] = std::string(to_string(b.protocol));
  doc["channels"] = b.channels;
  doc["horizon_s"] = b.horizon_s;
  doc["seed"] = b.seed;
  doc["threshold_fraction"] = b.threshold_fraction;

  ordered_json links = ordered_json::array();
  for (std::size_t l = 0; l < b.capacity.size(); ++l) {
    ordered_json row;
    row["link"] = l;
    row["capacity_bps"] = b.capacity[l];
    row["load_bps"] = b.load[l];
    row["cost"] = number_or_null(b.cost[l]);
    const auto c = b.assignment.channel(static_cast<LinkId>(l));
    const auto f = b.assignment.frame(static_cast<LinkId>(l));
    row["channel"] = c ? ordered_json(*c) : ordered_json(nullptr);
    row["frame"] = f ? ordered_json(*f) : ordered_json(nullptr);
    links.push_back(std::move(row));
  }
  doc["links"] = std::move(links);

  ordered_json routes;
  routes["iterations"] = b.routes.iterations;
  routes["converged"] = b.routes.converged;
  routes["cycled"] = b.routes.cycled;
  ordered_json flows = ordered_json::array();
  for (const auto& r : b.routes.routes) {
    flows.push_back({{"src", r.src},
                     {"dst", r.dst},
                     {"blocked", r.blocked},
                     {"cost", number_or_null(r.cost)},
                     {"nodes", r.path.nodes},
                     {"links", r.path.links}});
  }
  routes["flows"] = std::move(flows);
  doc["routes"] = std::move(routes);

  const SimMetrics& m = b.metrics;
  ordered_json metrics;
  metrics["generated"] = m.generated;
  metrics["delivered"] = m.delivered;
  metrics["dropped"] = m.dropped;
  metrics["in_flight"] = m.in_flight;
  metrics["skipped_flows"] = m.skipped_flows;
  metrics["slots"] = m.slots;
  metrics["elapsed_s"] = m.elapsed_s;
  metrics["avg_delay_s"] = m.avg_delay_s;
  metrics["pdr"] = m.pdr;
  metrics["throughput_pkts"] = m.throughput_pkts;
  metrics["throughput_bps"] = m.throughput_bps;
  ordered_json per_flow = ordered_json::array();
  for (const auto& f : m.flows) {
    per_flow.push_back({{"generated", f.generated},
                        {"delivered", f.delivered},
                        {"dropped", f.dropped},
                        {"delivered_bits", f.delivered_bits},
                        {"delay_slots", f.delay_slots}});
  }
  metrics["flows"] = std::move(per_flow);
  doc["metrics"] = std::move(metrics);

  ordered_json pairs = ordered_json::array();
  for (const auto& p : b.goodput.pairs) {
    pairs.push_back({{"src", p.src}, {"dst", p.dst}, {"assigned_bps", p.assigned}, {"demand_bps", p.demand},
                     {"useful_bps", p.useful}});
  }
  doc["goodput"] = {{"total_bps", b.goodput.total}, {"pairs", std::move(pairs)}};
  return doc;
}

Bundle bundle_from_json(const json& doc) {
  Bundle b;
  b.scenario = field<std::string>(doc, "scenario");
  b.protocol = parse_protocol(field<std::string>(doc, "protocol"));
  b.channels = field<int>(doc, "channels");
  b.horizon_s = field<double>(doc, "horizon_s");
  b.seed = field<std::uint64_t>(doc, "seed");
  b.threshold_fraction = field<double>(doc, "threshold_fraction");

  const json& links = doc.at("links");
  b.assignment = ChannelAssignment(links.size(), b.channels);
  for (const json& row : links) {
    b.capacity.push_back(field<double>(row, "capacity_bps"));
    b.load.push_back(field<double>(row, "load_bps"));
    b.cost.push_back(number_or_inf(row.at("cost")));
    if (!row.at("channel").is_null())
      b.assignment.assign(field<LinkId>(row, "link"), field<ChannelId>(row, "channel"), field<int>(row, "frame"));
  }

  const json& routes = doc.at("routes");
  b.routes.iterations = field<int>(routes, "iterations");
  b.routes.converged = field<bool>(routes, "converged");
  b.routes.cycled = field<bool>(routes, "cycled");
  for (const json& r : routes.at("flows")) {
    Route route;
    route.src = field<NodeId>(r, "src");
    route.dst = field<NodeId>(r, "dst");
    route.blocked = field<bool>(r, "blocked");
    route.cost = number_or_inf(r.at("cost"));
    route.path.nodes = field<std::vector<NodeId>>(r, "nodes");
    route.path.links = field<std::vector<LinkId>>(r, "links");
    b.routes.routes.push_back(std::move(route));
  }

  const json& m = doc.at("metrics");
  b.metrics.generated = field<std::uint64_t>(m, "generated");
  b.metrics.delivered = field<std::uint64_t>(m, "delivered");
  b.metrics.dropped = field<std::uint64_t>(m, "dropped");
  b.metrics.in_flight = field<std::uint64_t>(m, "in_flight");
  b.metrics.skipped_flows = field<std::uint64_t>(m, "skipped_flows");
  b.metrics.slots = field<std::int64_t>(m, "slots");
  b.metrics.elapsed_s = field<double>(m, "elapsed_s");
  b.metrics.avg_delay_s = field<double>(m, "avg_delay_s");
  b.metrics.pdr = field<double>(m, "pdr");
  b.metrics.throughput_pkts = field<std::uint64_t>(m, "throughput_pkts");
  b.metrics.throughput_bps = field<double>(m, "throughput_bps");
  for (const json& f : m.at("flows")) {
    b.metrics.flows.push_back(FlowStats{field<std::uint64_t>(f, "generated"), field<std::uint64_t>(f, "delivered"),
                                        field<std::uint64_t>(f, "dropped"), field<std::uint64_t>(f, "delivered_bits"),
                                        field<std::uint64_t>(f, "delay_slots")});
  }

  const json& g = doc.at("goodput");
  b.goodput.total = field<double>(g, "total_bps");
  for (const json& p : g.at("pairs")) {
    b.goodput.pairs.push_back(PairGoodput{field<NodeId>(p, "src"), field<NodeId>(p, "dst"),
                                          field<double>(p, "assigned_bps"), field<double>(p, "demand_bps"),
                                          field<double>(p, "useful_bps")});
  }
  return b;
}

std::string assignment_csv(const Topology& topology, const ChannelAssignment& assignment) {
  std::string out = "link,u,v,channel,frame\n";
  for (const auto& l : topology.links) {
    const auto c = assignment.channel(l.id);
    const auto f = assignment.frame(l.id);
    out += fmt::format("{},{},{},{},{}\n", l.id, l.u, l.v, c ? std::to_string(*c) : "", f ? std::to_string(*f) : "");
  }
  return out;
}

ordered_json assignment_json(const Topology& topology, const ChannelAssignment& assignment) {
  ordered_json doc;
  doc["channels"] = assignment.n_channels();
  doc["frames"] = assignment.frame_count();
  ordered_json links = ordered_json::array();
  for (const auto& l : topology.links) {
    const auto c = assignment.channel(l.id);
    const auto f = assignment.frame(l.id);
    links.push_back({{"link", l.id},
                     {"u", l.u},
                     {"v", l.v},
                     {"channel", c ? ordered_json(*c) : ordered_json(nullptr)},
                     {"frame", f ? ordered_json(*f) : ordered_json(nullptr)}});
  }
  doc["links"] = std::move(links);
  return doc;
}

void write_text(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorKind::Io, "cannot open " + path.string() + " for writing");
  out << content;
  out.flush();
  if (!out) throw Error(ErrorKind::Io, "failed writing " + path.string());
}

}  // namespace meshplan
