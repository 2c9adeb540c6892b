#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "lrcert/errors.hpp"
#include "lrcert/lattice.hpp"
#include "lrcert/quantum.hpp"
#include "lrcert/quench.hpp"
#include "oracles.hpp"

using namespace lrcert;

namespace {

// Small hand-rolled generators; each property runs over a fixed seed sequence.
struct Gen {
  std::mt19937_64 rng;
  explicit Gen(std::uint64_t seed) : rng(seed) {}

  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }
  double real(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }

  LatticeGraph graph(int n) {
    const auto edges = oracle::random_connected_graph(rng, n, 0.15);
    return LatticeGraph(n, edges);
  }

  VertexSet subset(int n, int min_size, int max_size) {
    std::vector<Vertex> all(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) all[static_cast<std::size_t>(i)] = i;
    std::shuffle(all.begin(), all.end(), rng);
    all.resize(static_cast<std::size_t>(integer(min_size, max_size)));
    return VertexSet(all);
  }

  Interaction random_interaction(const LatticeGraph& g) {
    Interaction phi(std::vector<int>(static_cast<std::size_t>(g.num_vertices()), 2));
    for (const auto& [u, v] : g.edges()) {
      phi.add_term(VertexSet{u, v}, real(-1.0, 1.0) * ops::kron(ops::sigma_z(), ops::sigma_z()) +
                                        real(-1.0, 1.0) * ops::kron(ops::sigma_x(), ops::sigma_x()));
    }
    for (int i = 0; i < g.num_vertices(); ++i) {
      phi.add_term(VertexSet{i}, real(-1.0, 1.0) * ops::sigma_x() + real(-1.0, 1.0) * ops::sigma_z());
    }
    return phi;
  }
};

constexpr int kCases = 25;

}  // namespace

TEST(Property, EvolutionPreservesNormAndEnergy) {
  Gen gen(101);
  for (int c = 0; c < kCases; ++c) {
    const int n = gen.integer(2, 6);
    const auto g = gen.graph(n);
    const auto phi = gen.random_interaction(g);
    const ProductSpace space(phi.site_dims());
    const auto H = build_hamiltonian(phi, space);
    const auto psi = StateVector::normalized(space, oracle::random_state(gen.rng, space.total_dim()));
    const double t = gen.real(-3.0, 3.0);
    const auto out = evolve(H, psi, t);
    EXPECT_NEAR(out.amplitudes().norm(), 1.0, 1e-10);
    const auto energy = [&](const Vector& v) { return v.dot(H.matrix() * v).real(); };
    EXPECT_NEAR(energy(out.amplitudes()), energy(psi.amplitudes()), 1e-9);
  }
}

TEST(Property, PartialTraceComposes) {
  Gen gen(202);
  for (int c = 0; c < kCases; ++c) {
    const int n = gen.integer(3, 7);
    const ProductSpace space(std::vector<int>(static_cast<std::size_t>(n), 2));
    const auto psi = StateVector::normalized(space, oracle::random_state(gen.rng, space.total_dim()));
    const auto outer = gen.subset(n, 2, n - 1);
    std::vector<Vertex> inner_v(outer.begin(), outer.end());
    std::shuffle(inner_v.begin(), inner_v.end(), gen.rng);
    inner_v.resize(static_cast<std::size_t>(gen.integer(1, static_cast<int>(outer.size()) - 1)));
    const VertexSet inner(inner_v);
    const auto direct = partial_trace(psi, inner);
    const auto nested = partial_trace(partial_trace(psi, outer), inner);
    EXPECT_LT((direct.matrix() - nested.matrix()).cwiseAbs().maxCoeff(), 1e-12);
  }
}

TEST(Property, TraceNormTriangleAndUnitaryInvariance) {
  Gen gen(303);
  for (int c = 0; c < kCases; ++c) {
    const auto dim = static_cast<std::size_t>(gen.integer(2, 8));
    const Matrix a = oracle::random_density(gen.rng, dim) - oracle::random_density(gen.rng, dim);
    const Matrix b = oracle::random_density(gen.rng, dim) - oracle::random_density(gen.rng, dim);
    EXPECT_LE(trace_norm(a + b), trace_norm(a) + trace_norm(b) + 1e-12);
    const Matrix u = oracle::haar_unitary(gen.rng, dim);
    EXPECT_NEAR(trace_norm(u * a * u.adjoint()), trace_norm(a), 1e-10);
  }
}

TEST(Property, EntropyUnitaryInvariantAndBounded) {
  Gen gen(404);
  for (int c = 0; c < kCases; ++c) {
    const auto dim = static_cast<std::size_t>(gen.integer(2, 8));
    const Matrix rho = oracle::random_density(gen.rng, dim);
    const Matrix u = oracle::haar_unitary(gen.rng, dim);
    const double s = von_neumann_entropy(DensityMatrix::single_system(rho));
    const double su = von_neumann_entropy(DensityMatrix::single_system(u * rho * u.adjoint()));
    EXPECT_NEAR(s, su, 1e-9);
    EXPECT_GE(s, -1e-12);
    EXPECT_LE(s, std::log2(static_cast<double>(dim)) + 1e-12);
  }
}

TEST(Property, ContinuityBoundsHoldOnRandomPairs) {
  Gen gen(505);
  for (int c = 0; c < 200; ++c) {
    const auto dim = static_cast<std::size_t>(gen.integer(2, 8));
    const Matrix r1 = oracle::random_density(gen.rng, dim);
    Matrix r2 = oracle::random_density(gen.rng, dim);
    if (c % 2 == 0) {
      const double w = gen.real(0.0, 0.2);
      r2 = (1.0 - w) * r1 + w * r2;
    }
    const double T = trace_norm(r1 - r2);
    const double dS = std::abs(von_neumann_entropy(DensityMatrix::single_system(r1)) -
                               von_neumann_entropy(DensityMatrix::single_system(r2)));
    EXPECT_LE(dS, audenaert_rhs(T, dim) + 1e-10);
  }
}

TEST(Property, BinaryEntropySquareRootBound) {
  Gen gen(606);
  for (int c = 0; c < 1000; ++c) {
    const double x = gen.real(0.0, 1.0);
    EXPECT_LE(binary_entropy(x), 2.0 * std::sqrt(x) + 1e-15);
  }
}

TEST(Property, ReducedDistanceIsAMetricOnBranches) {
  Gen gen(707);
  for (int c = 0; c < 10; ++c) {
    const int n = gen.integer(4, 6);
    const auto g = LatticeGraph::chain(n);
    const auto phi = gen.random_interaction(g);
    const ProductSpace space(phi.site_dims());
    const auto psi = StateVector::normalized(space, oracle::random_state(gen.rng, space.total_dim()));
    const Matrix u = oracle::haar_unitary(gen.rng, 2);
    const QuenchScenario s(g, phi, psi, VertexSet{0}, StateQuench{u, VertexSet{0}}, DecayFunction::power_law(2.0), 1.0);
    const VertexSet Y{n - 2, n - 1};
    const double t = gen.real(0.0, 2.0);
    const auto b = evolve_branches(s, t);
    const auto r0 = partial_trace(b.unperturbed, Y).matrix();
    const auto r1 = partial_trace(b.quenched, Y).matrix();
    const auto r2 = partial_trace(evolve(build_hamiltonian(phi, space), psi, t + 0.3), Y).matrix();
    EXPECT_NEAR(reduced_distance(b, Y), trace_norm(r1 - r0), 1e-12);
    EXPECT_NEAR(trace_norm(r0 - r1), trace_norm(r1 - r0), 1e-12);
    EXPECT_LE(trace_norm(r0 - r2), trace_norm(r0 - r1) + trace_norm(r1 - r2) + 1e-12);
    EXPECT_LE(std::abs(entropy_variation(b, Y)), audenaert_rhs(reduced_distance(b, Y), 4) + 1e-10);
    EXPECT_NEAR(reduced_distance(s, Y, 0.0), 0.0, 1e-12);
  }
}

TEST(Property, ShellDecompositionPartitionsY) {
  Gen gen(808);
  for (int c = 0; c < kCases; ++c) {
    const int n = gen.integer(6, 30);
    const auto g = gen.graph(n);
    const auto X = gen.subset(n, 1, 3);
    std::vector<Vertex> rest;
    for (int v = 0; v < n; ++v) {
      if (!X.contains(v)) rest.push_back(v);
    }
    std::shuffle(rest.begin(), rest.end(), gen.rng);
    rest.resize(static_cast<std::size_t>(gen.integer(1, static_cast<int>(rest.size()))));
    const VertexSet Y(rest);
    const auto sd = shell_decomposition(g, X, Y);
    std::size_t total = 0;
    for (std::size_t l = 0; l < sd.shells.size(); ++l) {
      total += sd.shells[l].size();
      for (Vertex v : sd.shells[l]) EXPECT_EQ(g.distance(v, X), sd.base_distance + static_cast<int>(l));
    }
    EXPECT_EQ(total, Y.size());
    EXPECT_EQ(sd.tails.front(), Y);
    EXPECT_EQ(sd.base_distance, g.distance(X, Y));
  }
}

TEST(Property, BoundaryAndInteriorPartitionX) {
  Gen gen(909);
  for (int c = 0; c < kCases; ++c) {
    const int n = gen.integer(3, 30);
    const auto g = gen.graph(n);
    const auto X = gen.subset(n, 1, n);
    const auto p = boundary_and_interior(g, X);
    EXPECT_EQ(p.boundary.size() + p.interior.size(), X.size());
    for (Vertex v : p.interior) {
      EXPECT_TRUE(X.contains(v));
      EXPECT_FALSE(p.boundary.contains(v));
    }
    for (Vertex v : p.boundary) EXPECT_TRUE(X.contains(v));
  }
}

TEST(Property, GenericGrowthConstantsDominateSpheres) {
  Gen gen(1010);
  for (int c = 0; c < kCases; ++c) {
    const int n = gen.integer(3, 30);
    const auto g = gen.graph(n);
    const double alpha = gen.real(0.0, 1.0);
    const auto k = fit_growth_constants(g, {GrowthFamily::Generic, alpha, std::nullopt, std::nullopt});
    for (int i = 0; i < n; ++i) {
      for (int l = 0; l <= g.diameter(); ++l) {
        EXPECT_LE(static_cast<double>(sphere(g, i, l).size()), k.b * std::exp(alpha * l) * (1.0 + 1e-12));
      }
    }
  }
}
