#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <random>
#include <sys/wait.h>

#include "gcf/conv_scheme.hpp"
#include "gcf/downscale.hpp"
#include "gcf/grid.hpp"
#include "gcf/io.hpp"
#include "support.hpp"

using namespace gcf;
namespace fs = std::filesystem;

namespace {

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() / (std::string("gcf_cli_") + ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  // Exit status of `gcf <args>`; stdout and stderr go to files in the work dir.
  int gcf(const std::string& args) const {
    const std::string cmd = std::string("'") + GCF_CLI_PATH + "' " + args + " > '" + path("stdout.txt") + "' 2> '" +
                            path("stderr.txt") + "'";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  }

  std::string out() const { return io::read_file(path("stdout.txt")); }
  std::string err() const { return io::read_file(path("stderr.txt")); }

  fs::path dir_;
};

}  // namespace

TEST_F(CliTest, HelpAndUsageErrors) {
  EXPECT_EQ(gcf("--help"), 0);
  EXPECT_EQ(gcf(""), 2);
  EXPECT_EQ(gcf("verify-grid"), 2);
  EXPECT_EQ(gcf("find-translations --graph '" + path("missing.json") + "' --out '" + path("f.json") + "'"), 2);
}

TEST_F(CliTest, InferGraphChecksK) {
  SignalMatrix s(5, 4);
  for (std::size_t k = 0; k < s.values.size(); ++k) s.values[k] = static_cast<double>((k * 7) % 5);
  io::save_signals(path("x.csv"), s);
  EXPECT_EQ(gcf("infer-graph --signals '" + path("x.csv") + "' -k 4 --out '" + path("g.json") + "'"), 2);
  EXPECT_EQ(gcf("infer-graph --signals '" + path("x.csv") + "' -k 3 --out '" + path("g.json") + "'"), 0);
  EXPECT_EQ(io::load_graph(path("g.json")).order(), 4u);
}

TEST_F(CliTest, DisconnectedGraphIsValidationError) {
  io::save_graph(path("g.json"), Graph::from_edges(4, std::vector<Edge>{{0, 1}, {2, 3}}));
  EXPECT_EQ(gcf("find-translations --graph '" + path("g.json") + "' --out '" + path("f.json") + "'"), 3);
  EXPECT_NE(err().find("component"), std::string::npos);
}

TEST_F(CliTest, DenseGraphIsValidationError) {
  std::vector<Edge> star;
  for (Vertex v = 1; v < 80; ++v) star.emplace_back(0, v);
  io::save_graph(path("g.json"), Graph::from_edges(80, star));
  EXPECT_EQ(gcf("find-translations --graph '" + path("g.json") + "' --out '" + path("f.json") + "'"), 3);
  EXPECT_NE(err().find("too dense"), std::string::npos);
}

TEST_F(CliTest, GridFamilyFromFile) {
  io::save_graph(path("g.json"), grid_graph(6, 5));
  ASSERT_EQ(gcf("find-translations --graph '" + path("g.json") + "' --out '" + path("f.json") + "'"), 0);
  auto f = io::load_family(path("f.json"));
  EXPECT_EQ(f.kappa, 5u);
  EXPECT_EQ(f.v0, 12);
  const auto offsets = grid_kernel_offsets();
  for (std::size_t p = 0; p < 5; ++p) EXPECT_EQ(f.psi[p], grid_shift(6, 5, offsets[p].first, offsets[p].second));
}

TEST_F(CliTest, AutoSeedMatchesExplicitRerun) {
  std::mt19937 rng(12);
  io::save_graph(path("g.json"), test::random_connected(rng, 12, 30));
  ASSERT_EQ(gcf("find-translations --graph '" + path("g.json") + "' --auto 5 --rng-seed 3 --out '" + path("a.json") + "'"), 0);
  EXPECT_NE(err().find("selected seed"), std::string::npos);
  auto a = io::load_family(path("a.json"));
  ASSERT_EQ(gcf("find-translations --graph '" + path("g.json") + "' --seed " + std::to_string(a.v0) + " --out '" +
                path("b.json") + "'"),
            0);
  EXPECT_EQ(io::read_file(path("a.json")), io::read_file(path("b.json")));
}

TEST_F(CliTest, SixteenGridChain) {
  io::save_graph(path("g.json"), grid_graph(16, 16));
  ASSERT_EQ(gcf("find-translations --graph '" + path("g.json") + "' --threads 3 --out '" + path("f.json") + "'"), 0);
  ASSERT_EQ(gcf("build-scheme --family '" + path("f.json") + "' --out '" + path("s0.json") + "'"), 0);
  EXPECT_EQ(io::load_scheme(path("s0.json")), expected_grid_scheme(16, 16));
  auto st = scheme_stats(io::load_scheme(path("s0.json")));
  EXPECT_NE(out().find("bottoms " + std::to_string(st.bottoms)), std::string::npos);

  ASSERT_EQ(gcf("downscale --graph '" + path("g.json") + "' --family '" + path("f.json") + "' --stride 2 --out '" +
                path("p1.json") + "'"),
            0);
  ASSERT_EQ(gcf("build-scheme --plan '" + path("p1.json") + "' --out '" + path("s1.gsch") + "'"), 0);
  ASSERT_EQ(gcf("downscale --plan '" + path("p1.json") + "' --stride 2 --out '" + path("p2.json") + "'"), 0);
  auto p1 = io::load_plan(path("p1.json"));
  auto p2 = io::load_plan(path("p2.json"));
  EXPECT_EQ(p1.kept.size(), 128u);
  EXPECT_EQ(p2.kept.size(), 64u);
  EXPECT_EQ(p2.level, 2);
  EXPECT_EQ(io::load_scheme(path("s1.gsch")).rows(), 128u);

  ASSERT_EQ(gcf("downscale --graph '" + path("g.json") + "' --family '" + path("f.json") + "' --stride 1 --out '" +
                path("p0.json") + "'"),
            0);
  EXPECT_EQ(io::load_plan(path("p0.json")).kept.size(), 256u);
}

TEST_F(CliTest, VerifyGridRejectsCorruptedScheme) {
  auto s = expected_grid_scheme(6, 5);
  io::save_scheme(path("good.json"), s);
  EXPECT_EQ(gcf("verify-grid 6 5 --scheme '" + path("good.json") + "'"), 0);
  s.index[7][2] = s.index[7][3];
  io::save_scheme(path("bad.json"), s);
  EXPECT_EQ(gcf("verify-grid 6 5 --scheme '" + path("bad.json") + "'"), 3);
  EXPECT_NE(out().find("row 7"), std::string::npos) << out();
  EXPECT_NE(out().find("FAIL"), std::string::npos);
}

TEST_F(CliTest, AugmentCollisionIsInvariantError) {
  ProxyFamily f;
  f.kappa = 2;
  f.v0 = 0;
  f.psi = {{0, 1, 2}, {1, kBottom, 1}};
  f.cost = {0, 0, 0};
  io::save_family(path("f.json"), f);
  SignalMatrix x(1, 3);
  x.values = {1, 2, 3};
  io::save_signals(path("x.csv"), x);
  EXPECT_EQ(gcf("augment --signals '" + path("x.csv") + "' --family '" + path("f.json") + "' --out '" + path("y.csv") + "'"), 4);
  EXPECT_NE(err().find("not injective"), std::string::npos);
}

TEST_F(CliTest, ForwardMatchesLibrary) {
  Graph g = grid_graph(5, 5);
  auto f = propagate(g, find_all_local_translations(g), 12).family;
  auto s = compile_scheme(f);
  io::save_scheme(path("s.gsch"), s);
  ConvLayerParams layer{{0.5, -1, 0.25, 2, -0.75}, 0.125, Activation::kRelu};
  io::save_layer(path("layer.json"), layer);
  SignalMatrix x(3, 25);
  for (std::size_t k = 0; k < x.values.size(); ++k) x.values[k] = static_cast<double>(k % 11) * 0.25 - 1.0;
  io::save_signals(path("x.gsig"), x);
  ASSERT_EQ(gcf("forward --scheme '" + path("s.gsch") + "' --layer '" + path("layer.json") + "' --signals '" +
                path("x.gsig") + "' --out '" + path("y.csv") + "'"),
            0);
  auto y = io::load_signals(path("y.csv"));
  ASSERT_EQ(y.m, 3u);
  for (std::size_t i = 0; i < 3; ++i) {
    auto expected = forward(s, layer, x.row(i));
    for (std::size_t k = 0; k < expected.size(); ++k) EXPECT_EQ(y.at(i, k), expected[k]);
  }
}

TEST_F(CliTest, StatsNeedsSomething) {
  EXPECT_EQ(gcf("stats"), 2);
  io::save_graph(path("g.json"), grid_graph(3, 3));
  EXPECT_EQ(gcf("stats --graph '" + path("g.json") + "'"), 0);
  EXPECT_NE(out().find("edges 12"), std::string::npos);
}
