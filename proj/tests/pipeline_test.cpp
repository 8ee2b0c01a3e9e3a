#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "meshplan/error.hpp"
#include "meshplan/pipeline.hpp"
#include "meshplan/report.hpp"
#include "meshplan/scenario.hpp"
#include "meshplan/sweep.hpp"

using namespace meshplan;

namespace {

Scenario ring4(double horizon = 2.0) {
  Scenario s = preset_scenario("paper-ring-4");
  s.sim.horizon_s = horizon;
  return s;
}

std::size_t line_count(const std::string& text) { return static_cast<std::size_t>(std::count(text.begin(), text.end(), '\n')); }

}  // namespace

TEST(Pipeline, RingOfFourProducesCompleteBundle) {
  Scenario s = ring4();
  s.algorithm.n_channels = 3;
  for (Protocol p : {Protocol::Ccmca, Protocol::Baseline}) {
    const Bundle b = run_pipeline(s, p);
    EXPECT_EQ(b.channels, 3);
    EXPECT_EQ(b.assignment.link_count(), 4u);
    EXPECT_TRUE(b.assignment.complete());
    ASSERT_EQ(b.routes.routes.size(), 3u);
    EXPECT_EQ(b.routes.blocked_count(), 0u);
    EXPECT_EQ(b.capacity.size(), 4u);
    EXPECT_EQ(b.load.size(), 4u);
    EXPECT_EQ(b.cost.size(), 4u);
    EXPECT_GT(b.metrics.generated, 0u);
    EXPECT_EQ(b.goodput.pairs.size(), 3u);
  }
}

TEST(Pipeline, TwoNodeChainIsLossless) {
  const Scenario s = parse_scenario_text(R"({
    "topology": {"kind": "chain", "nodes": 2, "spacing": 100, "nic_count": 1},
    "traffic": {"flows": [{"src": 0, "dst": 1, "kind": "voip"}]},
    "algorithm": {"channels": 1},
    "sim": {"horizon_s": 5}
  })");
  const Bundle b = run_pipeline(s, Protocol::Ccmca);
  EXPECT_DOUBLE_EQ(b.metrics.pdr, 1.0);
  EXPECT_DOUBLE_EQ(b.goodput.total, kVoipRateBps);
  EXPECT_EQ(b.assignment.channel(0), 0);
}

TEST(Pipeline, DeterministicBundles) {
  const Scenario s = ring4();
  for (Protocol p : {Protocol::Ccmca, Protocol::Baseline}) {
    const Bundle a = run_pipeline(s, p);
    const Bundle b = run_pipeline(s, p);
    EXPECT_EQ(a, b);
    EXPECT_EQ(to_json(a).dump(), to_json(b).dump());
  }
}

TEST(Pipeline, FailuresCarryTheirStage) {
  const Scenario s = parse_scenario_text(R"({
    "topology": {"nodes": [{"x": 0, "y": 0}, {"x": 100, "y": 0}, {"x": 2000, "y": 0}, {"x": 2100, "y": 0}]},
    "traffic": {"flows": [{"src": 0, "dst": 3, "kind": "voip"}]}
  })");
  try {
    run_pipeline(s, Protocol::Ccmca);
    FAIL() << "expected an error";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::Unroutable);
    EXPECT_EQ(e.stage(), "routing");
    EXPECT_EQ(std::string(e.what()).rfind("routing: ", 0), 0u) << e.what();
  }
}

TEST(Report, BundleJsonRoundTrips) {
  Scenario s = ring4();
  s.algorithm.channel_capacity_bps = 2e5;  // congests enough to block a flow
  for (Protocol p : {Protocol::Ccmca, Protocol::Baseline}) {
    const Bundle b = run_pipeline(s, p);
    const std::string text = to_json(b).dump(2);
    const Bundle back = bundle_from_json(nlohmann::json::parse(text));
    EXPECT_EQ(back, b);
    EXPECT_EQ(to_json(back).dump(2), text);
  }
}

TEST(Report, EmptySweepIsHeaderOnly) {
  const auto records = sweep_channels(ring4(), {}, {Protocol::Ccmca, Protocol::Baseline}, {1});
  EXPECT_TRUE(records.empty());
  EXPECT_EQ(to_csv(metrics_rows("x", records)), std::string(kMetricsCsvHeader) + "\n");
}

TEST(Report, ChannelSweepHasOneRowPerRun) {
  const Scenario s = ring4(1.0);
  const auto records = sweep_channels(s, {1, 2, 3, 4, 5}, {Protocol::Ccmca, Protocol::Baseline}, {7});
  ASSERT_EQ(records.size(), 10u);
  const std::string csv = to_csv(metrics_rows(s.name, records));
  EXPECT_EQ(line_count(csv), 11u);
  std::istringstream in(csv);
  std::string header;
  std::getline(in, header);
  EXPECT_EQ(header, kMetricsCsvHeader);
  std::string first;
  std::getline(in, first);
  EXPECT_EQ(first.rfind("paper-ring-4,ccmca,1,1,7,", 0), 0u) << first;
  // Concurrency does not leak into results or their order.
  EXPECT_EQ(csv, to_csv(metrics_rows(s.name, sweep_channels(s, {1, 2, 3, 4, 5},
                                                            {Protocol::Ccmca, Protocol::Baseline}, {7}))));
}

TEST(Report, MultipleSeedsAddMeanRows) {
  const auto records = sweep_channels(ring4(1.0), {2}, {Protocol::Ccmca}, {1, 2, 3});
  const auto rows = metrics_rows("r", records);
  ASSERT_EQ(rows.size(), 4u);
  EXPECT_TRUE(rows.back().mean);
  EXPECT_EQ(rows.back().seed, "mean");
  double sum = 0;
  for (int i = 0; i < 3; ++i) sum += rows[static_cast<std::size_t>(i)].avg_delay_s;
  EXPECT_NEAR(rows.back().avg_delay_s, sum / 3, 1e-15);
}

TEST(Report, TimeSweepGrowsWithHorizon) {
  const auto records = sweep_time(ring4(), {1, 2, 3, 4, 5}, {Protocol::Ccmca, Protocol::Baseline}, {1});
  ASSERT_EQ(records.size(), 10u);
  for (std::size_t i = 0; i + 2 < records.size(); i += 2) {
    EXPECT_LT(records[i].metrics.generated, records[i + 2].metrics.generated);
    EXPECT_DOUBLE_EQ(records[i].horizon_s + 1, records[i + 2].horizon_s);
  }
}

TEST(Report, AssignmentTable) {
  const Plan plan = plan_scenario(ring4(), Protocol::Ccmca);
  const std::string csv = assignment_csv(plan.topology, plan.assignment);
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "link,u,v,channel,frame");
  EXPECT_EQ(line_count(csv), 5u);
  EXPECT_EQ(assignment_json(plan.topology, plan.assignment)["links"].size(), 4u);
}

TEST(Report, WriteFailureNamesThePath) {
  try {
    write_text("/nonexistent/dir/out.csv", "x");
    FAIL() << "expected an error";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::Io);
    EXPECT_NE(std::string(e.what()).find("/nonexistent/dir/out.csv"), std::string::npos);
  }
}
