#include <cmath>
#include <sstream>

#include <gtest/gtest.h>

#include "lrcert/errors.hpp"
#include "lrcert/lattice.hpp"
#include "oracles.hpp"

using namespace lrcert;

namespace {

VertexSet range_set(int lo, int hi) {
  std::vector<Vertex> v;
  for (int i = lo; i <= hi; ++i) v.push_back(i);
  return VertexSet(v);
}

}  // namespace

TEST(Distance, PathOfThree) { EXPECT_EQ(LatticeGraph::chain(3).distance(0, 2), 2); }

TEST(Distance, SingleVertex) { EXPECT_EQ(LatticeGraph::chain(1).distance(0, 0), 0); }

TEST(Distance, FourCycleOppositeCorners) {
  const LatticeGraph g(4, {{0, 1}, {1, 2}, {2, 3}, {3, 0}});
  EXPECT_EQ(g.distance(0, 2), 2);
  EXPECT_EQ(g.distance(1, 3), 2);
  EXPECT_EQ(g.distance(0, 3), 1);
}

TEST(Distance, DisconnectedGraphNamesUnreachablePair) {
  try {
    LatticeGraph g(4, {{0, 1}, {2, 3}});
    FAIL() << "expected GeometryError";
  } catch (const GeometryError& e) {
    const std::string msg = e.what();
    EXPECT_NE(msg.find("0"), std::string::npos);
    EXPECT_NE(msg.find("2"), std::string::npos);
  }
}

TEST(Distance, MatchesFloydWarshallOnRandomGraphs) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 5 + trial;
    const auto edges = oracle::random_connected_graph(rng, n, 0.1);
    const LatticeGraph g(n, edges);
    const auto ref = oracle::floyd_warshall(n, edges);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) ASSERT_EQ(g.distance(i, j), ref[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]);
    }
  }
}

TEST(Distance, MetricAxioms) {
  const auto g = LatticeGraph::grid(2, 4);
  const int n = g.num_vertices();
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      EXPECT_EQ(g.distance(i, j), g.distance(j, i));
      EXPECT_EQ(g.distance(i, j) == 0, i == j);
      for (int k = 0; k < n; ++k) EXPECT_LE(g.distance(i, j), g.distance(i, k) + g.distance(k, j));
    }
  }
  for (const auto& [u, v] : g.edges()) EXPECT_EQ(g.distance(u, v), 1);
}

TEST(Generators, ParseSpecs) {
  EXPECT_EQ(LatticeGraph::from_generator("chain:8").num_vertices(), 8);
  EXPECT_EQ(LatticeGraph::from_generator("grid:2:3").num_vertices(), 9);
  EXPECT_EQ(LatticeGraph::from_generator("tree:2:3").num_vertices(), 15);
  EXPECT_THROW(LatticeGraph::from_generator("ring:5"), GeometryError);
}

TEST(Generators, EdgeList) {
  std::istringstream in("# square\n0 1\n1 2\n\n2 3\n3 0\n");
  const auto g = LatticeGraph::from_edge_list(in);
  EXPECT_EQ(g.num_vertices(), 4);
  EXPECT_EQ(g.distance(0, 2), 2);
  std::istringstream bad("0 x\n");
  EXPECT_THROW(LatticeGraph::from_edge_list(bad), GeometryError);
}

TEST(Sphere, InteriorOfLongPathHasTwoElements) {
  const auto g = LatticeGraph::chain(50);
  EXPECT_EQ(sphere(g, 25, 3).size(), 2u);
}

TEST(Sphere, RadiusZeroIsTheVertex) {
  const auto g = LatticeGraph::grid(2, 3);
  for (int i = 0; i < g.num_vertices(); ++i) EXPECT_EQ(sphere(g, i, 0), VertexSet({i}));
}

TEST(Sphere, BinaryTreeRootAtRadiusTwo) {
  const auto g = LatticeGraph::tree(2, 3);
  EXPECT_EQ(sphere(g, 0, 2), VertexSet({3, 4, 5, 6}));
}

TEST(Shell, WholeGraphAtZero) {
  const auto g = LatticeGraph::chain(6);
  EXPECT_EQ(shell_set(g, g.all_vertices(), 0), g.all_vertices());
}

TEST(Shell, PathUniqueVertex) {
  const auto g = LatticeGraph::chain(6);
  EXPECT_EQ(shell_set(g, VertexSet{0}, 3), VertexSet({3}));
}

TEST(Shell, GridManhattanShell) {
  const auto g = LatticeGraph::grid(2, 5);
  EXPECT_EQ(shell_set(g, VertexSet{12}, 2).size(), 8u);
}

TEST(Shell, EmptyXThrows) {
  const auto g = LatticeGraph::chain(4);
  EXPECT_THROW(shell_set(g, VertexSet{}, 1), GeometryError);
}

TEST(Boundary, SingleVertexWithOutsideNeighbor) {
  const auto g = LatticeGraph::chain(5);
  const auto p = boundary_and_interior(g, VertexSet{2});
  EXPECT_TRUE(p.interior.empty());
  EXPECT_EQ(p.boundary, VertexSet({2}));
}

TEST(Boundary, WholeGraph) {
  const auto g = LatticeGraph::chain(5);
  const auto p = boundary_and_interior(g, g.all_vertices());
  EXPECT_EQ(p.interior, g.all_vertices());
  EXPECT_TRUE(p.boundary.empty());
}

TEST(Boundary, PathBlock) {
  const auto g = LatticeGraph::chain(10);
  const auto p = boundary_and_interior(g, VertexSet{2, 3, 4, 5});
  EXPECT_EQ(p.boundary, VertexSet({2, 5}));
  EXPECT_EQ(p.interior, VertexSet({3, 4}));
}

TEST(Enlargement, Cases) {
  const auto g = LatticeGraph::chain(10);
  EXPECT_EQ(enlargement(g, VertexSet{4}, 0), VertexSet({4}));
  EXPECT_EQ(enlargement(g, VertexSet{0}, g.diameter()), g.all_vertices());
  EXPECT_EQ(enlargement(g, VertexSet{0}, 15), g.all_vertices());
  EXPECT_EQ(enlargement(g, VertexSet{0}, 3), VertexSet({0, 1, 2, 3}));
}

TEST(ShellDecomposition, SingleShell) {
  const auto g = LatticeGraph::chain(8);
  const auto sd = shell_decomposition(g, VertexSet{0}, VertexSet{5});
  EXPECT_EQ(sd.depth(), 0);
  EXPECT_EQ(sd.shells[0], VertexSet({5}));
  EXPECT_EQ(sd.tails[0], VertexSet({5}));
}

TEST(ShellDecomposition, PathTail) {
  const auto g = LatticeGraph::chain(8);
  const auto sd = shell_decomposition(g, VertexSet{0}, VertexSet{5, 6, 7});
  EXPECT_EQ(sd.base_distance, 5);
  ASSERT_EQ(sd.depth(), 2);
  EXPECT_EQ(sd.shells[0], VertexSet({5}));
  EXPECT_EQ(sd.shells[1], VertexSet({6}));
  EXPECT_EQ(sd.shells[2], VertexSet({7}));
  EXPECT_EQ(sd.tails[1], VertexSet({6, 7}));
}

TEST(ShellDecomposition, GridCornerBlock) {
  const auto g = LatticeGraph::grid(2, 5);
  const VertexSet Y{18, 19, 23, 24};
  const auto sd = shell_decomposition(g, VertexSet{0}, Y);
  std::size_t total = 0;
  for (std::size_t l = 0; l < sd.shells.size(); ++l) {
    total += sd.shells[l].size();
    for (Vertex v : sd.shells[l]) EXPECT_EQ(g.distance(v, VertexSet{0}), sd.base_distance + static_cast<int>(l));
  }
  EXPECT_EQ(total, 4u);
  EXPECT_EQ(sd.base_distance, 6);
}

TEST(ShellDecomposition, OverlapThrows) {
  const auto g = LatticeGraph::chain(5);
  EXPECT_THROW(shell_decomposition(g, VertexSet{0, 1}, VertexSet{1, 2}), GeometryError);
}

TEST(ShellCover, RadiusOneAlwaysHolds) {
  const auto g = LatticeGraph::grid(2, 4);
  EXPECT_TRUE(verify_shell_cover(g, VertexSet{5, 6, 9}, 1).holds);
}

TEST(ShellCover, WholeGraphIsVacuous) {
  const auto g = LatticeGraph::grid(2, 3);
  for (int l = 1; l <= g.diameter(); ++l) EXPECT_TRUE(verify_shell_cover(g, g.all_vertices(), l).holds);
}

TEST(Growth, ChainFamily) {
  const auto g = LatticeGraph::chain(40);
  const auto c = fit_growth_constants(g, {GrowthFamily::Chain, std::nullopt, std::nullopt, std::nullopt});
  EXPECT_EQ(c.b, 2.0);
  EXPECT_EQ(c.alpha, 0.0);
}

TEST(Growth, BinaryTreeFamily) {
  const auto g = LatticeGraph::tree(2, 5);
  const auto c = fit_growth_constants(g, {GrowthFamily::Tree, std::nullopt, std::nullopt, 2});
  EXPECT_EQ(c.b, 2.0);
  EXPECT_DOUBLE_EQ(c.alpha, std::log(2.0));
}

TEST(Growth, FractalCoefficient) { EXPECT_DOUBLE_EQ(fractal_growth_coefficient(1.0, 2, 0.5), 2.0); }

TEST(Growth, FractalCoefficientExponentGrouping) {
  // (n-1)! / alpha^(n-1) with n = 3, alpha = 0.5: 2 / 0.25.
  EXPECT_DOUBLE_EQ(fractal_growth_coefficient(1.0, 3, 0.5), 8.0);
}

TEST(Growth, GenericIsSmallestAdmissibleB) {
  const auto g = LatticeGraph::grid(2, 4);
  const double alpha = 0.3;
  const auto c = fit_growth_constants(g, {GrowthFamily::Generic, alpha, std::nullopt, std::nullopt});
  double expected = 0.0;
  for (int i = 0; i < g.num_vertices(); ++i) {
    for (int l = 0; l <= g.diameter(); ++l) {
      expected = std::max(expected, static_cast<double>(sphere(g, i, l).size()) * std::exp(-alpha * l));
    }
  }
  EXPECT_DOUBLE_EQ(c.b, expected);
}

TEST(Growth, GridFamilyOnSquareLattice) {
  const auto g = LatticeGraph::grid(2, 6);
  const auto c = fit_growth_constants(g, {GrowthFamily::Grid, 0.25, 4.0, 2});
  EXPECT_DOUBLE_EQ(c.b, 4.0 / 0.25);
  for (int i = 0; i < g.num_vertices(); ++i) {
    for (int l = 1; l <= g.diameter(); ++l) EXPECT_LE(sphere(g, i, l).size(), c.b * std::exp(c.alpha * l));
  }
}

TEST(Growth, TooSmallGridCoefficientReportsViolation) {
  const auto g = LatticeGraph::grid(2, 6);
  EXPECT_THROW(fit_growth_constants(g, {GrowthFamily::Grid, 2.0, 0.1, 2}), GeometryError);
}
