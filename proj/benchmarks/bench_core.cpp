#include <benchmark/benchmark.h>

#include "lrcert/bounds.hpp"
#include "lrcert/decay.hpp"
#include "lrcert/interaction.hpp"
#include "lrcert/lattice.hpp"
#include "lrcert/quantum.hpp"
#include "lrcert/quench.hpp"

using namespace lrcert;

static void BM_DistanceMatrixGrid(benchmark::State& state) {
  const int side = static_cast<int>(state.range(0));
  for (auto _ : state) {
    auto g = LatticeGraph::grid(2, side);
    benchmark::DoNotOptimize(g.diameter());
  }
}
BENCHMARK(BM_DistanceMatrixGrid)->Arg(8)->Arg(16)->Arg(32);

static void BM_CMu(benchmark::State& state) {
  const auto g = LatticeGraph::chain(static_cast<int>(state.range(0)));
  const auto F = DecayFunction::power_law(2.0);
  for (auto _ : state) benchmark::DoNotOptimize(c_mu(g, F, 1.0));
}
BENCHMARK(BM_CMu)->Arg(8)->Arg(32)->Arg(64);

static void BM_PropagatorBuild(benchmark::State& state) {
  const auto g = LatticeGraph::chain(static_cast<int>(state.range(0)));
  const auto phi = Interaction::transverse_field_ising(g, 1.0, 1.0);
  const ProductSpace space(phi.site_dims());
  const Matrix h = build_hamiltonian(phi, space).matrix();
  for (auto _ : state) {
    Propagator p(h);
    benchmark::DoNotOptimize(p.energies()(0));
  }
}
BENCHMARK(BM_PropagatorBuild)->Arg(6)->Arg(8)->Arg(10)->Unit(benchmark::kMillisecond);

static void BM_Evolve(benchmark::State& state) {
  const auto g = LatticeGraph::chain(static_cast<int>(state.range(0)));
  const auto phi = Interaction::transverse_field_ising(g, 1.0, 1.0);
  const ProductSpace space(phi.site_dims());
  const Propagator p(build_hamiltonian(phi, space).matrix());
  const auto psi = all_down_state(space);
  double t = 0.0;
  for (auto _ : state) {
    t += 0.01;
    benchmark::DoNotOptimize(p.evolve(psi, t));
  }
}
BENCHMARK(BM_Evolve)->Arg(8)->Arg(10);

static void BM_PartialTrace(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const ProductSpace space(std::vector<int>(static_cast<std::size_t>(n), 2));
  Vector amps = Vector::Ones(static_cast<Eigen::Index>(space.total_dim()));
  const auto psi = StateVector::normalized(space, amps);
  std::vector<Vertex> keep;
  for (int i = n / 2; i < n; ++i) keep.push_back(i);
  const VertexSet Y(keep);
  for (auto _ : state) benchmark::DoNotOptimize(partial_trace(psi, Y));
}
BENCHMARK(BM_PartialTrace)->Arg(8)->Arg(10)->Arg(12);

static void BM_Lemma1Sweep(benchmark::State& state) {
  auto g = LatticeGraph::chain(8);
  auto phi = Interaction::transverse_field_ising(g, 1.0, 1.0);
  const ProductSpace space(phi.site_dims());
  auto psi = all_down_state(space);
  const QuenchScenario s(g, phi, psi, VertexSet{0}, HamiltonianQuench{ops::sigma_x(), VertexSet{0}},
                         DecayFunction::power_law(2.0), 1.0);
  const std::vector<VertexSet> regions{VertexSet{4, 5, 6, 7}};
  std::vector<double> t(41);
  for (int i = 0; i < 41; ++i) t[static_cast<std::size_t>(i)] = 0.05 * i;
  for (auto _ : state) benchmark::DoNotOptimize(certify_lemma1(s, regions, t));
}
BENCHMARK(BM_Lemma1Sweep)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
