#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "support.hpp"

namespace fs = std::filesystem;
using gcf::cli::run;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result gcf_run(std::vector<std::string> args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() / ("gcf_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string file(const std::string& name, const std::string& content) const {
    const auto p = dir_ / name;
    std::ofstream(p, std::ios::binary) << content;
    return p.string();
  }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  std::string grid_scheme(std::size_t rows, std::size_t cols) {
    std::ostringstream coords;
    for (std::size_t r = 0; r < rows; ++r) {
      for (std::size_t c = 0; c < cols; ++c) coords << r << ',' << c << '\n';
    }
    const auto csv = file("grid.csv", coords.str());
    EXPECT_EQ(gcf_run({"infer-graph", csv, "--k", "2", "--out", path("grid.edges")}).code, 0);
    EXPECT_EQ(gcf_run({"translate", path("grid.edges"), "--out", path("grid.placements")}).code, 0);
    EXPECT_EQ(gcf_run({"build-layer", path("grid.placements"), "--out", path("grid.scheme")}).code, 0);
    return path("grid.scheme");
  }

  fs::path dir_;
};

const char* kPathPlacements =
    "3 3 1\n"
    "0; 1 1 0 0; slot0=0, slot1=⊥, slot2=1\n"
    "1; 0 0 0 0; slot0=1, slot1=0, slot2=2\n"
    "2; 1 1 0 0; slot0=2, slot1=1, slot2=⊥\n";

// Eight-vertex path data whose label is the sign of a single bump.
std::string separable_csv(std::size_t samples, unsigned seed) {
  std::mt19937 rng(seed);
  std::ostringstream out;
  out << "x0,x1,x2,x3,x4,x5,x6,x7,label\n";
  for (std::size_t i = 0; i < samples; ++i) {
    const auto label = i % 2;
    const auto at = rng() % 8;
    for (std::size_t v = 0; v < 8; ++v) out << (v == at ? (label ? "1" : "-1") : "0") << ',';
    out << label << '\n';
  }
  return out.str();
}

}  // namespace

TEST_F(Cli, InferGraphCollinear) {
  const auto csv = file("line.csv", "0\n1\n2\n");
  const auto r = gcf_run({"infer-graph", csv, "--k", "1", "--out", path("line.edges")});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(slurp(path("line.edges")), "3\n0 1\n1 2\n");
  EXPECT_EQ(gcf_run({"infer-graph", csv, "--k", "1"}).out, "3\n0 1\n1 2\n");
}

TEST_F(Cli, InferGraphErrors) {
  const auto csv = file("line.csv", "0\n1\n2\n");
  const auto big = gcf_run({"infer-graph", csv, "--k", "3"});
  EXPECT_EQ(big.code, 2);
  EXPECT_NE(big.err.find("k < n"), std::string::npos) << big.err;

  const auto missing = gcf_run({"infer-graph", path("nope.csv")});
  EXPECT_EQ(missing.code, 2);
  EXPECT_NE(missing.err.find("nope.csv"), std::string::npos) << missing.err;

  EXPECT_EQ(gcf_run({"infer-graph", csv, "--out", path("no/dir/out.edges")}).code, 2);
  EXPECT_EQ(gcf_run({}).code, 2);
  EXPECT_EQ(gcf_run({"bogus"}).code, 2);
  EXPECT_EQ(gcf_run({"--help"}).code, 0);
}

TEST_F(Cli, TranslatePath) {
  const auto edges = file("path.edges", "3\n0 1\n1 2\n");
  const auto r = gcf_run({"translate", edges, "--out", path("path.placements")});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(slurp(path("path.placements")), kPathPlacements);
  EXPECT_NE(r.out.find("complete placements: 1 of 3"), std::string::npos);

  EXPECT_EQ(gcf_run({"translate", edges, "--report", path("r.txt"), "--out", path("p2")}).out, "");
  EXPECT_EQ(slurp(path("r.txt")), r.out);
}

TEST_F(Cli, TranslateSeedOverrideAndErrors) {
  const auto edges = file("path.edges", "3\n0 1\n1 2\n");
  const auto seeded = gcf_run({"translate", edges, "--seed-vertex", "0"});
  EXPECT_EQ(gcf_run({"translate", edges, "--seed", "0"}).out, seeded.out);
  EXPECT_EQ(seeded.code, 0);
  EXPECT_EQ(seeded.out.substr(0, 6), "3 2 0\n");

  EXPECT_EQ(gcf_run({"translate", edges, "--seed-vertex", "9"}).code, 2);
  EXPECT_EQ(gcf_run({"translate", edges, "--alpha", "-1"}).code, 2);
  const auto split = file("split.edges", "4\n0 1\n2 3\n");
  const auto r = gcf_run({"translate", split});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("not connected"), std::string::npos);
}

TEST_F(Cli, BuildLayerRoundTripAndTranspose) {
  const auto placements = file("path.placements", kPathPlacements);
  EXPECT_EQ(gcf_run({"build-layer", placements, "--out", path("s")}).code, 0);
  EXPECT_EQ(slurp(path("s")), "3 3\n0 0 0\n0 1 2\n1 1 0\n1 0 1\n1 2 2\n2 2 0\n2 1 1\n");
  const auto t = gcf_run({"build-layer", placements, "--transpose"});
  EXPECT_EQ(t.code, 0);
  EXPECT_EQ(t.out.substr(0, t.out.find('\n')), "3 3 transposed");

  const auto bad = file("bad.placements", "3 3 1\n0; 1 1 0 0; slot0=0, slot1=\n");
  const auto r = gcf_run({"build-layer", bad});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("line 2"), std::string::npos) << r.err;
}

TEST_F(Cli, VerifyGrid) {
  const auto scheme = grid_scheme(5, 5);
  const auto ok = gcf_run({"verify-grid", scheme, "--rows", "5", "--cols", "5"});
  EXPECT_EQ(ok.code, 0) << ok.out << ok.err;
  EXPECT_EQ(ok.out.substr(0, 4), "pass");

  auto text = slurp(scheme);
  const auto at = text.find("\n12 7 1\n");
  ASSERT_NE(at, std::string::npos);
  text.replace(at, 8, "\n12 7 4\n");
  const auto at2 = text.find("\n12 17 4\n");
  ASSERT_NE(at2, std::string::npos);
  text.replace(at2, 9, "\n12 17 1\n");
  const auto broken = file("broken.scheme", text);
  const auto fail = gcf_run({"verify-grid", broken, "--rows", "5", "--cols", "5"});
  EXPECT_EQ(fail.code, 1);
  EXPECT_NE(fail.out.find("witness: 12 17 1"), std::string::npos) << fail.out;

  EXPECT_EQ(gcf_run({"verify-grid", scheme, "--rows", "4", "--cols", "5"}).code, 2);
  EXPECT_EQ(gcf_run({"verify-grid", scheme, "--rows", "5"}).code, 2);
}

TEST_F(Cli, TrainSeparableToy) {
  const auto edges = file("p8.edges", "8\n0 1\n1 2\n2 3\n3 4\n4 5\n5 6\n6 7\n");
  ASSERT_EQ(gcf_run({"translate", edges, "--out", path("p8.placements")}).code, 0);
  ASSERT_EQ(gcf_run({"build-layer", path("p8.placements"), "--out", path("p8.scheme")}).code, 0);
  const auto train = file("train.csv", separable_csv(64, 1));
  const auto test = file("test.csv", separable_csv(64, 2));
  const std::vector<std::string> args{"train", path("p8.scheme"), "--graph", edges, "--train", train, "--test", test,
                                      "--lr", "0.1", "--epochs", "50", "--batch", "8", "--seed", "3"};
  auto first = args;
  first.insert(first.end(), {"--out", path("m1.csv"), "--checkpoint", path("ck.txt")});
  const auto r = gcf_run(first);
  ASSERT_EQ(r.code, 0) << r.err;
  const auto metrics = slurp(path("m1.csv"));
  EXPECT_EQ(metrics.substr(0, metrics.find('\n')), "epoch,loss,train_accuracy,test_accuracy");
  const auto last = metrics.substr(metrics.rfind('\n', metrics.size() - 2) + 1);
  EXPECT_EQ(last.substr(last.rfind(',') + 1), "1\n") << last;
  EXPECT_EQ(slurp(path("ck.txt")).substr(0, 12), "gcf-model 1\n");

  auto second = args;
  second.insert(second.end(), {"--out", path("m2.csv")});
  ASSERT_EQ(gcf_run(second).code, 0);
  EXPECT_EQ(slurp(path("m2.csv")), metrics);
}

TEST_F(Cli, TrainErrors) {
  const auto scheme = file("p3.scheme", "3 3\n0 0 0\n0 1 2\n1 1 0\n1 0 1\n1 2 2\n2 2 0\n2 1 1\n");
  const auto good = file("good.csv", "x0,x1,x2,label\n1,0,0,0\n0,0,1,1\n");
  const auto unlabeled = file("nolabel.csv", "x0,x1,x2\n1,0,0\n");
  const auto r = gcf_run({"train", scheme, "--train", unlabeled, "--test", good});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("'label'"), std::string::npos) << r.err;

  const auto other_graph = file("other.edges", "3\n0 2\n");
  EXPECT_EQ(gcf_run({"train", scheme, "--graph", other_graph, "--train", good, "--test", good}).code, 2);
  EXPECT_EQ(gcf_run({"train", scheme, "--train", good, "--test", good, "--dropout", "1.5"}).code, 2);
  EXPECT_EQ(gcf_run({"train", scheme, "--train", good, "--test", good, "--epochs", "2"}).code, 0);
}

TEST_F(Cli, MakeDatasetIsDeterministic) {
  const auto placements = file("path.placements", kPathPlacements);
  const std::vector<std::string> args{"make-dataset", placements, "--classes", "3", "--samples", "4", "--seed", "5"};
  const auto a = gcf_run(args);
  EXPECT_EQ(a.code, 0) << a.err;
  EXPECT_EQ(a.out, gcf_run(args).out);
  EXPECT_EQ(std::count(a.out.begin(), a.out.end(), '\n'), 13);
  EXPECT_EQ(a.out.substr(0, a.out.find('\n')), "x0,x1,x2,label");
}
