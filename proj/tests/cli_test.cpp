#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <nlohmann/json.hpp>
#include <sstream>

#include "porac/cli.hpp"
#include "porac/protocol_io.hpp"

namespace porac::cli {
namespace {

struct Invocation {
  int code;
  std::string out;
  std::string err;
};

Invocation invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "porac");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

double value_after(const std::string& text, const std::string& key) {
  const auto pos = text.find(key);
  if (pos == std::string::npos) throw std::runtime_error("missing " + key);
  return std::stod(text.substr(pos + key.size()));
}

std::filesystem::path scratch(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("porac_cli_test_" + name);
}

TEST(Cli, Bound) {
  auto r = invoke({"bound", "3"});
  EXPECT_EQ(r.code, kSuccess);
  EXPECT_EQ(r.out, "2/3 ≈ 0.666667\n");
  r = invoke({"bound", "4"});
  EXPECT_EQ(r.out, "5/8 = 0.625\n");
  EXPECT_EQ(invoke({"bound", "1"}).code, kUsageError);
  EXPECT_EQ(invoke({"bound"}).code, kUsageError);
  EXPECT_EQ(invoke({"bogus"}).code, kUsageError);
}

TEST(Cli, DescribeProbability) {
  EXPECT_EQ(describe_probability(ExactProbability(3, 5)), "3/5 = 0.6");
  EXPECT_EQ(describe_probability(ExactProbability(3, 4)), "3/4 = 0.75");
  EXPECT_EQ(describe_probability(ExactProbability(3, 10)), "3/10 = 0.3");
  EXPECT_EQ(describe_probability(ExactProbability(5, 7)), "5/7 ≈ 0.714286");
}

TEST(Cli, ClassicalExactValues) {
  auto r = invoke({"classical", "3"});
  EXPECT_EQ(r.code, kSuccess);
  EXPECT_EQ(r.out.rfind("2/3\n", 0), 0u) << r.out;
  r = invoke({"classical", "2"});
  EXPECT_EQ(r.out.rfind("3/4\n", 0), 0u) << r.out;
}

TEST(Cli, ClassicalWritesStrategy) {
  const auto path = scratch("strategy.txt");
  ASSERT_EQ(invoke({"classical", "3", "--out", path.string()}).code, kSuccess);
  std::ifstream in(path);
  std::string first;
  std::getline(in, first);
  EXPECT_EQ(first, "d=3");
  std::filesystem::remove(path);
}

TEST(Cli, ClassicalRefusesLongRuns) {
  auto r = invoke({"classical", "4"});
  EXPECT_EQ(r.code, kRefusedLongRun);
  EXPECT_NE(r.err.find("4294967296"), std::string::npos) << r.err;
  EXPECT_EQ(invoke({"classical", "5", "--allow-long"}).code, kRefusedLongRun);
}

TEST(Cli, EvalBuiltins) {
  auto r = invoke({"eval", "builtin:3"});
  EXPECT_EQ(r.code, kSuccess);
  EXPECT_NEAR(value_after(r.out, "success: "), 7.0 / 9.0, 1e-6);
  EXPECT_NEAR(value_after(invoke({"eval", "builtin:4"}).out, "success: "), 0.7405, 1e-3);
  EXPECT_NEAR(value_after(invoke({"eval", "builtin:5"}).out, "success: "), 0.71773, 1e-3);
  EXPECT_NE(r.out.find("  21: "), std::string::npos);
}

TEST(Cli, EvalRejectsInvalidProtocols) {
  auto doc = nlohmann::json::parse(protocol_to_json(builtin_protocol(3)));
  doc["states"]["00"][0] = nlohmann::json::array({2.0, 0.0});
  const auto path = scratch("bad.json");
  std::ofstream(path) << doc.dump();
  auto r = invoke({"eval", path.string()});
  EXPECT_EQ(r.code, kInvalidProtocol);
  EXPECT_NE(r.err.find("state normalization"), std::string::npos) << r.err;

  std::ofstream(path) << "{ truncated";
  EXPECT_EQ(invoke({"eval", path.string()}).code, kInvalidProtocol);
  std::filesystem::remove(path);
  EXPECT_EQ(invoke({"eval", path.string()}).code, kInvalidProtocol);
  EXPECT_EQ(invoke({"eval", "builtin:9"}).code, kUsageError);
}

TEST(Cli, OptimizeIsDeterministicAndWritesFiles) {
  const auto path = scratch("opt3.json");
  auto sidecar = path;
  sidecar.replace_extension(".result.json");
  const auto a = invoke({"optimize", "3", "--restarts", "20", "--seed", "7", "--out", path.string()});
  ASSERT_EQ(a.code, kSuccess) << a.err;
  EXPECT_GE(value_after(a.out, "best: "), 0.7776);
  const auto b = invoke({"optimize", "3", "--restarts", "20", "--seed", "7"});
  EXPECT_EQ(a.out, b.out);

  const auto written = read_protocol_file(path);
  EXPECT_NEAR(success_probability(written), 7.0 / 9.0, 1e-4);
  const auto side = nlohmann::json::parse(std::ifstream(sidecar));
  EXPECT_EQ(side["config"]["restarts"].get<int>(), 20);
  EXPECT_EQ(side["per_restart_values"].size(), 20u);
  std::filesystem::remove(path);
  std::filesystem::remove(sidecar);
}

TEST(Cli, OptimizeFourLevels) {
  const auto r = invoke({"optimize", "4", "--restarts", "40", "--seed", "7"});
  ASSERT_EQ(r.code, kSuccess) << r.err;
  EXPECT_GE(value_after(r.out, "best: "), 0.7400);
}

TEST(Cli, ReportRatios) {
  const auto rows = build_report({3, 4, 5}, QuantumSource::automatic);
  ASSERT_EQ(rows.size(), 3u);
  EXPECT_NEAR(rows[0].ratio, 1.167, 2e-3);
  EXPECT_NEAR(rows[1].ratio, 1.185, 2e-3);
  EXPECT_NEAR(rows[2].ratio, 1.196, 2e-3);
  for (const auto& row : rows) EXPECT_EQ(row.ratio, row.quantum / row.classical.value());
}

TEST(Cli, ReportCsv) {
  const auto r = invoke({"report", "--d-list", "3,4,5", "--format", "csv"});
  ASSERT_EQ(r.code, kSuccess) << r.err;
  EXPECT_EQ(r.out.rfind("d,classical,quantum,ratio\r\n", 0), 0u);
  std::istringstream lines(r.out);
  std::string line;
  int count = 0;
  while (std::getline(lines, line)) {
    ++count;
    EXPECT_EQ(std::count(line.begin(), line.end(), ','), 3) << line;
  }
  EXPECT_EQ(count, 4);
  EXPECT_NE(r.out.find("3,0.666667,0.777778,1.16667\r\n"), std::string::npos) << r.out;
}

TEST(Cli, ReportOptimizedQubit) {
  const auto r = invoke({"report", "--d-list", "2", "--format", "csv"});
  ASSERT_EQ(r.code, kSuccess) << r.err;
  const auto row = r.out.substr(r.out.find("\r\n") + 2);
  const double ratio = std::stod(row.substr(row.rfind(',') + 1));
  EXPECT_NEAR(ratio, 1.138, 2e-3);
}

TEST(Cli, ReportMarkdownAndErrors) {
  const auto r = invoke({"report", "--d-list", "3", "--format", "md"});
  EXPECT_EQ(r.code, kSuccess);
  EXPECT_NE(r.out.find("| 3 | 2/3 ≈ 0.666667 | 0.777778 |"), std::string::npos) << r.out;
  EXPECT_EQ(invoke({"report", "--d-list", "3,x"}).code, kUsageError);
  EXPECT_EQ(invoke({"report", "--format", "xml"}).code, kUsageError);
}

}  // namespace
}  // namespace porac::cli
