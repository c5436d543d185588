#include <gtest/gtest.h>

#include <sstream>

#include "gcf/error.hpp"
#include "gcf/layer.hpp"
#include "support.hpp"

using namespace gcf;
using namespace gcf::testing;

namespace {

WeightSharingScheme grid_scheme(std::size_t rows, std::size_t cols) {
  const auto g = make_grid_graph(rows, cols);
  return build_scheme(propagate(g, init_kernel(g, most_central_vertex(g))));
}

WeightSharingScheme path_scheme() {
  const auto g = path_graph(3);
  return build_scheme(propagate(g, init_kernel(g, 1)));
}

std::string scheme_text(const WeightSharingScheme& s) {
  std::ostringstream out;
  write_scheme(out, s);
  return out.str();
}

WeightSharingScheme parse_scheme(const std::string& text) {
  std::istringstream in(text);
  return read_scheme(in);
}

std::size_t triples_at(const WeightSharingScheme& s, VertexId out) {
  return static_cast<std::size_t>(
      std::count_if(s.triples().begin(), s.triples().end(), [out](const WeightTriple& t) { return t.out == out; }));
}

}  // namespace

TEST(BuildScheme, PathTriples) {
  const auto s = path_scheme();
  EXPECT_EQ(s.kernel_size(), 3u);
  EXPECT_EQ(s.triples(), (std::vector<WeightTriple>{{0, 0, 0}, {0, 1, 2}, {1, 1, 0}, {1, 0, 1}, {1, 2, 2}, {2, 2, 0}, {2, 1, 1}}));
}

TEST(BuildScheme, SingletonKernelIsIdentity) {
  const auto g = make_grid_graph(3, 3);
  const auto s = build_scheme(propagate(g, init_kernel(g, 4, 0)));
  ASSERT_EQ(s.triples().size(), 9u);
  for (VertexId v = 0; v < 9; ++v) EXPECT_EQ(s.triples()[v], (WeightTriple{v, v, 0}));
}

TEST(BuildScheme, GridBorderCounts) {
  const auto s = grid_scheme(4, 4);
  for (const VertexId v : {5u, 6u, 9u, 10u}) EXPECT_EQ(triples_at(s, v), 5u);
  for (const VertexId v : {0u, 3u, 12u, 15u}) EXPECT_LT(triples_at(s, v), 5u);
}

TEST(BuildScheme, TripleCountMatchesLossesAndEdges) {
  std::mt19937_64 rng(6);
  for (int trial = 0; trial < 10; ++trial) {
    const auto g = random_connected_graph(18, 0.2, rng);
    const auto pm = propagate(g, init_kernel(g, most_central_vertex(g)));
    const auto s = build_scheme(pm);
    std::size_t expected = 0;
    for (VertexId v = 0; v < g.size(); ++v) expected += pm.kernel_size() - pm.at(v).lost_slots();
    EXPECT_EQ(s.triples().size(), expected);
    for (const auto& t : s.triples()) EXPECT_TRUE(t.out == t.in || g.has_edge(t.out, t.in));
  }
}

TEST(BuildScheme, IncompleteMapThrows) {
  PlacementMap pm(2, 0, 1);
  pm.set({0, {0}, {}});
  EXPECT_THROW(build_scheme(pm), IncompleteError);
}

TEST(Scheme, InvariantViolations) {
  EXPECT_THROW(WeightSharingScheme(2, 1, {{0, 0, 0}}), ParameterError);
  EXPECT_THROW(WeightSharingScheme(2, 2, {{0, 0, 0}, {1, 1, 0}, {0, 1, 0}}), ParameterError);
  EXPECT_THROW(WeightSharingScheme(2, 2, {{0, 0, 0}, {1, 1, 0}, {0, 1, 1}, {0, 1, 1}}), ParameterError);
  EXPECT_THROW(WeightSharingScheme(2, 2, {{0, 0, 0}, {1, 1, 0}, {0, 2, 1}}), RangeError);
  EXPECT_THROW(WeightSharingScheme(2, 2, {{0, 0, 0}, {1, 1, 0}, {0, 1, 2}}), RangeError);
  // Two outputs may share an input through one weight index: invariants are
  // per kernel center.
  EXPECT_NO_THROW(WeightSharingScheme(2, 2, {{0, 0, 0}, {1, 1, 0}, {0, 1, 1}, {1, 0, 1}}));
}

TEST(Scheme, TransposeIsAnInvolution) {
  const auto s = grid_scheme(4, 5);
  const auto t = s.transposed();
  EXPECT_EQ(t.side(), KernelSide::input);
  EXPECT_EQ(t.triples().size(), s.triples().size());
  EXPECT_EQ(t.transposed(), s);
}

TEST(VerifyGrid, PipelineSchemePasses) {
  const auto check = verify_grid_equivalence(grid_scheme(4, 4), 4, 4);
  EXPECT_TRUE(check.pass) << check.reason;
  EXPECT_FALSE(check.witness);
  const std::vector<std::optional<GridOffset>> plus{GridOffset{0, 0}, GridOffset{-1, 0}, GridOffset{0, -1},
                                                    GridOffset{0, 1}, GridOffset{1, 0}};
  EXPECT_EQ(check.offsets, plus);
  EXPECT_TRUE(verify_grid_equivalence(grid_scheme(4, 4).transposed(), 4, 4).pass);
}

TEST(VerifyGrid, SwappedIndexAtOneVertexIsTheWitness) {
  const auto s = grid_scheme(5, 5);
  auto triples = s.triples();
  // Exchange the "up" and "down" indices of interior vertex 12.
  for (auto& t : triples) {
    if (t.out != 12) continue;
    if (t.weight == 1) {
      t.weight = 4;
    } else if (t.weight == 4) {
      t.weight = 1;
    }
  }
  const WeightSharingScheme broken(25, s.kernel_size(), triples);
  const auto check = verify_grid_equivalence(broken, 5, 5);
  EXPECT_FALSE(check.pass);
  ASSERT_TRUE(check.witness);
  EXPECT_EQ(check.witness->out, 12u);
  EXPECT_TRUE(*check.witness == (WeightTriple{12, 17, 1}) || *check.witness == (WeightTriple{12, 7, 4}));
}

TEST(VerifyGrid, MissingConnectionNamesExpectedTriple) {
  const auto s = grid_scheme(4, 4);
  auto triples = s.triples();
  std::erase(triples, WeightTriple{5, 6, 3});
  const auto check = verify_grid_equivalence(WeightSharingScheme(16, s.kernel_size(), triples), 4, 4);
  EXPECT_FALSE(check.pass);
  ASSERT_TRUE(check.witness);
  EXPECT_EQ(*check.witness, (WeightTriple{5, 6, 3}));
}

TEST(VerifyGrid, PathIsOneDimensionalGrid) {
  for (const std::size_t n : {3u, 4u, 7u}) {
    const auto g = path_graph(n);
    const auto s = build_scheme(propagate(g, init_kernel(g, most_central_vertex(g))));
    const auto check = verify_grid_equivalence(s, 1, n);
    EXPECT_TRUE(check.pass) << check.reason;
    EXPECT_EQ(check.offsets, (std::vector<std::optional<GridOffset>>{GridOffset{0, 0}, GridOffset{0, -1}, GridOffset{0, 1}}));
  }
}

TEST(VerifyGrid, DimensionMismatch) { EXPECT_THROW(verify_grid_equivalence(grid_scheme(4, 4), 3, 5), ParameterError); }

TEST(SchemeFile, PathHasSevenDataLines) {
  const auto text = scheme_text(path_scheme());
  EXPECT_EQ(text, "3 3\n0 0 0\n0 1 2\n1 1 0\n1 0 1\n1 2 2\n2 2 0\n2 1 1\n");
}

TEST(SchemeFile, RoundTrip) {
  for (const auto& s : {grid_scheme(5, 6), grid_scheme(5, 6).transposed(), path_scheme()}) {
    const auto text = scheme_text(s);
    EXPECT_EQ(parse_scheme(text), s);
    EXPECT_EQ(scheme_text(parse_scheme(text)), text);
  }
  EXPECT_EQ(parse_scheme("# comment\n2 1\n1 1 0\n\n0 0 0\n"), WeightSharingScheme(2, 1, {{0, 0, 0}, {1, 1, 0}}));
}

TEST(SchemeFile, Errors) {
  try {
    parse_scheme("2 1\n0 0 0\n1 1 1\n");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 3u);
  }
  EXPECT_THROW(parse_scheme("2 1\n0 0\n"), ParseError);
  EXPECT_THROW(parse_scheme("2 1\n0 5 0\n"), ParseError);
  EXPECT_THROW(parse_scheme("2 1 sideways\n"), ParseError);
  EXPECT_THROW(parse_scheme("2 1\n0 0 0\n"), ParseError);
}
