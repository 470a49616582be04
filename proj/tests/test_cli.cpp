#include <cmath>
#include <filesystem>
#include <sstream>

#include <gtest/gtest.h>

#include "spinent_cli.hpp"
#include "test_util.hpp"

namespace spinent::cli {
namespace {

namespace fs = std::filesystem;

struct Outcome {
  int code;
  std::string out, err;
};

Outcome call(const std::vector<std::string>& args) {
  std::ostringstream o, e;
  const int code = run(args, o, e);
  return {code, o.str(), e.str()};
}

using Grid = std::vector<std::vector<std::string>>;

Grid parse_csv(const std::string& text) {
  Grid g;
  std::stringstream ss(text);
  for (std::string line; std::getline(ss, line);) {
    std::vector<std::string> row;
    std::stringstream ls(line);
    for (std::string c; std::getline(ls, c, ',');) row.push_back(c);
    if (!line.empty() && line.back() == ',') row.emplace_back();
    g.push_back(row);
  }
  return g;
}

std::string cell(const Grid& g, std::size_t row, const std::string& col) {
  const auto& head = g.at(0);
  const auto it = std::find(head.begin(), head.end(), col);
  if (it == head.end()) throw std::runtime_error("no column " + col);
  return g.at(row).at(static_cast<std::size_t>(it - head.begin()));
}

std::string sample(const std::string& name) { return std::string(SPINENT_SAMPLES_DIR) + "/" + name; }

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "spinent_cli_tests";
  fs::create_directories(dir);
  const fs::path p = dir / name;
  fs::remove(p);
  return p;
}

TEST(Cli, SingleSqueezedSum) {
  const Outcome o = call({"evaluate", "--preset", "single_squeezed_tripartite", "--r", "0.5", "--criteria", "cv_sum"});
  ASSERT_EQ(o.code, 0) << o.err;
  const Grid g = parse_csv(o.out);
  ASSERT_EQ(g.size(), 2u);
  EXPECT_NEAR(std::stod(cell(g, 1, "lhs")), 1.5 + (4.0 / 3.0) * std::exp(-1.0) + 1.0 / 6.0, 1e-9);
  EXPECT_NEAR(std::stod(cell(g, 1, "rhs")), 2.0, 1e-12);
  EXPECT_EQ(cell(g, 1, "verdict"), "inconclusive");
  EXPECT_EQ(cell(g, 1, "criterion_id"), "cv_sum");
}

TEST(Cli, GhzNetworkStokes) {
  const Outcome o = call({"evaluate", "--preset", "cv_ghz", "--r-grid", "0,1", "--criteria", "c1,c3", "--gains",
                          "1,0.95,0.95,1,-0.49,-0.49"});
  ASSERT_EQ(o.code, 0) << o.err;
  const Grid g = parse_csv(o.out);
  ASSERT_EQ(g.size(), 5u);
  EXPECT_EQ(cell(g, 1, "verdict"), "inconclusive");
  EXPECT_EQ(cell(g, 3, "verdict"), "full_inseparability");
  EXPECT_EQ(cell(g, 3, "conditional"), "false");
  EXPECT_NE(cell(g, 3, "flags").find("linearized"), std::string::npos);
  EXPECT_EQ(cell(g, 3, "validity"), "1;1;1");
}

TEST(Cli, LargeSpinGivesConditionalGenuine) {
  const Outcome o = call({"evaluate", "--preset", "cv_ghz", "--r", "1", "--criteria", "c1", "--gains",
                          "1,0.95,0.95,1,-0.49,-0.49", "--large-spin"});
  ASSERT_EQ(o.code, 0) << o.err;
  const Grid g = parse_csv(o.out);
  EXPECT_EQ(cell(g, 1, "verdict"), "genuine_entanglement");
  EXPECT_EQ(cell(g, 1, "conditional"), "true");
}

TEST(Cli, StateCriterion5) {
  const Outcome o = call({"evaluate", "--state", "w", "--criteria", "c5"});
  ASSERT_EQ(o.code, 0) << o.err;
  const Grid g = parse_csv(o.out);
  ASSERT_EQ(g.size(), 3u);
  EXPECT_EQ(cell(g, 1, "r"), "");
  EXPECT_EQ(cell(g, 1, "criterion_id"), "c5");
  EXPECT_EQ(cell(g, 2, "criterion_id"), "c5_fis");
  EXPECT_EQ(cell(g, 2, "verdict"), "full_inseparability");
  const Outcome ghz = call({"evaluate", "--state", "ghz", "--criteria", "c5"});
  EXPECT_EQ(cell(parse_csv(ghz.out), 1, "verdict"), "genuine_entanglement");
  EXPECT_EQ(call({"evaluate", "--preset", "cv_ghz", "--r", "1", "--criteria", "c5"}).code, 2);
}

TEST(Cli, BadPresetWritesNothing) {
  const fs::path p = scratch("bad.csv");
  const Outcome o = call({"evaluate", "--preset", "nope", "--r", "1", "--criteria", "c1", "--out", p.string()});
  EXPECT_EQ(o.code, 2);
  EXPECT_FALSE(fs::exists(p));
  EXPECT_FALSE(o.err.empty());
}

TEST(Cli, EmptyGridGivesHeaderOnly) {
  const fs::path p = scratch("empty.csv");
  const Outcome o = call({"optimize", "--preset", "cv_ghz", "--r-grid", "", "--out", p.string()});
  ASSERT_EQ(o.code, 0) << o.err;
  EXPECT_EQ(testing::read_file(p.string()), "r,h,g,ratio,verdict\n");
}

TEST(Cli, OptimizeEpr) {
  const Outcome o = call({"optimize", "--preset", "cv_epr", "--r", "2"});
  ASSERT_EQ(o.code, 0) << o.err;
  const Grid g = parse_csv(o.out);
  EXPECT_NEAR(std::stod(cell(g, 1, "h")), 0.70, 0.01);
  EXPECT_NEAR(std::stod(cell(g, 1, "g")), -0.70, 0.01);
  EXPECT_EQ(cell(g, 1, "verdict"), "full_inseparability");
}

TEST(Cli, NetworkFileMatchesPreset) {
  const Outcome a = call({"evaluate", "--network", sample("cv_ghz.net"), "--r", "0.5", "--param", "readout=stokes",
                          "--criteria", "c1", "--gains", "1,0.68,0.68,1,-0.4,-0.4"});
  const Outcome b = call({"evaluate", "--preset", "cv_ghz", "--r", "0.5", "--criteria", "c1", "--gains",
                          "1,0.68,0.68,1,-0.4,-0.4"});
  ASSERT_EQ(a.code, 0) << a.err;
  ASSERT_EQ(b.code, 0) << b.err;
  EXPECT_NEAR(std::stod(cell(parse_csv(a.out), 1, "lhs")), std::stod(cell(parse_csv(b.out), 1, "lhs")), 1e-12);
  EXPECT_NEAR(std::stod(cell(parse_csv(a.out), 1, "rhs")), std::stod(cell(parse_csv(b.out), 1, "rhs")), 1e-12);
}

TEST(Cli, JsonMatchesCsv) {
  const std::vector<std::string> base{"evaluate", "--preset", "cv_epr", "--r-grid", "0.5,1", "--criteria", "c1,c3"};
  auto js = base;
  js.insert(js.end(), {"--format", "json"});
  const Outcome c = call(base), j = call(js);
  ASSERT_EQ(j.code, 0) << j.err;
  const Grid g = parse_csv(c.out);
  const auto arr = nlohmann::json::parse(j.out);
  ASSERT_EQ(arr.size(), g.size() - 1);
  for (std::size_t i = 0; i < arr.size(); ++i) {
    EXPECT_NEAR(arr[i]["lhs"].get<double>(), std::stod(cell(g, i + 1, "lhs")), 1e-12);
    EXPECT_EQ(arr[i]["verdict"].get<std::string>(), cell(g, i + 1, "verdict"));
    EXPECT_EQ(arr[i]["conditional"].get<bool>(), cell(g, i + 1, "conditional") == "true");
  }
}

TEST(Cli, Verify) {
  const Outcome o = call({"verify", "--criteria", "c1,c2", "--trials", "100", "--seed", "5"});
  ASSERT_EQ(o.code, 0) << o.err;
  const Grid g = parse_csv(o.out);
  ASSERT_EQ(g.size(), 3u);
  EXPECT_EQ(cell(g, 1, "status"), "PASS");
  EXPECT_EQ(cell(g, 2, "trials"), "100");
  EXPECT_EQ(call({"verify", "--criteria", "c1,c2", "--trials", "100", "--seed", "5"}).out, o.out);
  EXPECT_EQ(call({"verify", "--trials", "0"}).code, 2);
  EXPECT_EQ(call({"verify", "--criteria", "cv_sum", "--trials", "5"}).code, 2);
}

TEST(Cli, Planar) {
  const Outcome o = call({"planar", "--j-grid", "0.5,1,1.5,2"});
  ASSERT_EQ(o.code, 0) << o.err;
  const Grid g = parse_csv(o.out);
  EXPECT_NEAR(std::stod(cell(g, 1, "C_J")), 0.25, 1e-8);
  const auto golden = testing::read_csv(testing::golden("planar_bound.csv"));
  for (std::size_t i = 2; i < g.size(); ++i) {
    const double j = std::stod(cell(g, i, "J"));
    for (const auto& row : golden)
      if (std::abs(row.at("J") - j) < 1e-12) EXPECT_NEAR(std::stod(cell(g, i, "C_J")), row.at("C_J"), 1e-6);
  }
  const Outcome p = call({"planar", "--pauli"});
  EXPECT_NEAR(std::stod(cell(parse_csv(p.out), 1, "C_J")), 1.0, 1e-8);
  EXPECT_EQ(call({"planar", "--j-grid", "0.3"}).code, 2);
}

TEST(Cli, ConfigErrors) {
  EXPECT_EQ(call({}).code, 2);
  EXPECT_EQ(call({"evaluate", "--preset", "cv_ghz", "--r", "1"}).code, 2);
  EXPECT_EQ(call({"evaluate", "--preset", "cv_ghz", "--r", "1", "--criteria", "c1", "--gains", "1,2"}).code, 2);
  EXPECT_EQ(call({"evaluate", "--preset", "cv_ghz", "--state", "ghz", "--r", "1", "--criteria", "c1"}).code, 2);
  EXPECT_EQ(call({"evaluate", "--preset", "cv_ghz", "--r", "1", "--r-grid", "1,2", "--criteria", "c1"}).code, 2);
  EXPECT_EQ(call({"evaluate", "--preset", "cv_ghz", "--r", "1", "--criteria", "c42"}).code, 2);
  EXPECT_EQ(call({"evaluate", "--preset", "cv_ghz", "--r", "x", "--criteria", "c1"}).code, 2);
  EXPECT_EQ(call({"evaluate", "--preset", "cv_ghz", "--r", "1", "--criteria", "c1", "--format", "xml"}).code, 2);
  EXPECT_EQ(call({"evaluate", "--preset", "cv_ghz", "--r", "1", "--criteria", "c1", "--param", "novalue"}).code, 2);
  EXPECT_EQ(call({"optimize", "--preset", "cv_ghz", "--r", "1", "--objective", "max"}).code, 2);
  EXPECT_EQ(call({"frobnicate"}).code, 2);
}

TEST(Cli, MalformedNetwork) {
  const fs::path p = scratch("broken.net");
  {
    std::ofstream f(p);
    f << "modes 3\nsqueezer mode=7 r=0.5 quadrature=P\n";
  }
  EXPECT_EQ(call({"evaluate", "--network", p.string(), "--criteria", "cv_sum"}).code, 2);
  EXPECT_EQ(call({"evaluate", "--network", (p.parent_path() / "missing.net").string(), "--criteria", "cv_sum"}).code, 2);
}

TEST(Cli, LargeSpinWithoutVariancesIsConfigError) {
  EXPECT_EQ(call({"evaluate", "--network", sample("cv_ghz.net"), "--r", "1", "--criteria", "c1", "--gains",
                  "1,0.95,0.95,1,-0.49,-0.49", "--large-spin"})
                .code,
            2);
}

}  // namespace
}  // namespace spinent::cli
