#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace fs = std::filesystem;

namespace {

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("meshplan_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  fs::path write(const std::string& name, const std::string& text) const {
    const fs::path p = dir_ / name;
    std::ofstream(p) << text;
    return p;
  }

  std::string read(const fs::path& p) const {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
  }

  int run(const std::string& args) const {
    const std::string cmd = std::string(MESHPLAN_CLI) + " " + args + " >" + (dir_ / "stdout").string() + " 2>" +
                            (dir_ / "stderr").string();
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  }

  std::string err() const { return read(dir_ / "stderr"); }
  std::string out() const { return read(dir_ / "stdout"); }

  fs::path short_ring() const {
    return write("ring.json", R"({"preset": "paper-ring-4", "sim": {"horizon_s": 1}})");
  }

  fs::path dir_;
};

}  // namespace

TEST_F(Cli, RunWritesBundleJson) {
  const fs::path out = dir_ / "bundle.json";
  ASSERT_EQ(run("run --scenario " + short_ring().string() + " --out " + out.string()), 0) << err();
  const auto doc = nlohmann::json::parse(read(out));
  EXPECT_EQ(doc["scenario"], "paper-ring-4");
  EXPECT_EQ(doc["protocol"], "ccmca");
  EXPECT_TRUE(doc.contains("metrics"));
  EXPECT_TRUE(doc.contains("goodput"));
}

TEST_F(Cli, SweepIsByteIdenticalAcrossRuns) {
  const fs::path a = dir_ / "a.csv";
  const fs::path b = dir_ / "b.csv";
  const std::string args = "sweep-channels --scenario " + short_ring().string() + " --channels 1,2 --seeds 1,2 --out ";
  ASSERT_EQ(run(args + a.string()), 0) << err();
  ASSERT_EQ(run(args + b.string()), 0) << err();
  const std::string csv = read(a);
  EXPECT_EQ(csv, read(b));
  // 2 counts x 2 protocols x (2 seeds + mean) + header.
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 13);
  EXPECT_EQ(csv.rfind("scenario,protocol,channels,horizon_s,seed,", 0), 0u);
}

TEST_F(Cli, TimeSweepToStdout) {
  ASSERT_EQ(run("sweep-time --scenario " + short_ring().string() + " --horizons 0.5,1 --protocol baseline"), 0)
      << err();
  const std::string csv = out();
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 3);
  EXPECT_NE(csv.find("baseline,3,0.5,1,"), std::string::npos) << csv;
}

TEST_F(Cli, AssignEmitsTable) {
  ASSERT_EQ(run("assign --preset paper-ring-4 --channels 2"), 0) << err();
  EXPECT_EQ(out().rfind("link,u,v,channel,frame\n", 0), 0u);
}

TEST_F(Cli, ExitCodes) {
  EXPECT_EQ(run(""), 2);
  EXPECT_EQ(run("run --protocol nope --preset paper-ring-4"), 2);
  EXPECT_EQ(run("run --scenario " + (dir_ / "missing.json").string()), 6);
  EXPECT_NE(err().find("missing.json"), std::string::npos);
  EXPECT_EQ(run("run --scenario " + write("bad.json", "{ nope").string()), 3);
  EXPECT_EQ(run("run --scenario " +
                write("v.json", R"({"preset": "paper-ring-4", "traffic": {"flows": [{"src": 0, "dst": 99}]}})")
                    .string()),
            4);
  const std::string islands = R"({
    "topology": {"nodes": [{"x": 0, "y": 0}, {"x": 100, "y": 0}, {"x": 2000, "y": 0}, {"x": 2100, "y": 0}]},
    "traffic": {"flows": [{"src": 0, "dst": 3, "kind": "voip"}]}})";
  EXPECT_EQ(run("run --scenario " + write("u.json", islands).string()), 5);
  EXPECT_NE(err().find("routing"), std::string::npos) << err();
  EXPECT_EQ(run("run --scenario " + short_ring().string() + " --out /nonexistent/dir/x.json"), 6);
}
