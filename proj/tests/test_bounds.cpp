#include <cmath>
#include <numeric>

#include <gtest/gtest.h>

#include "lrcert/bounds.hpp"
#include "lrcert/errors.hpp"

using namespace lrcert;

namespace {

LRConstants lr_of(double f, double c, double mu, double v) {
  LRConstants lr;
  lr.f_norm = f;
  lr.c_mu = c;
  lr.mu = mu;
  lr.v_mu = v;
  return lr;
}

QuenchScenario chain_scenario(int n, double J, double h, int q, double mu, Matrix op = ops::sigma_x()) {
  auto g = LatticeGraph::chain(n);
  auto phi = Interaction::transverse_field_ising(g, J, h);
  ProductSpace space(phi.site_dims());
  auto psi = all_down_state(space);
  Quench quench = q == 1 ? Quench(HamiltonianQuench{op, VertexSet{0}}) : Quench(StateQuench{op, VertexSet{0}});
  return QuenchScenario(g, phi, psi, VertexSet{0}, quench, DecayFunction::power_law(2.0), mu);
}

std::vector<double> linspace(double a, double b, int count) {
  std::vector<double> out;
  for (int i = 0; i < count; ++i) out.push_back(a + (b - a) * i / (count - 1));
  return out;
}

std::vector<VertexSet> tails(int n, const std::vector<int>& from) {
  std::vector<VertexSet> out;
  for (int d : from) {
    std::vector<Vertex> v(static_cast<std::size_t>(n - d));
    std::iota(v.begin(), v.end(), d);
    out.emplace_back(v);
  }
  return out;
}

GrowthConstants chain_growth() {
  GrowthConstants g;
  g.b = 2.0;
  g.alpha = 0.0;
  g.family = GrowthFamily::Chain;
  return g;
}

}  // namespace

TEST(Lemma1Constants, ZeroPerturbationGivesZeroC1) {
  EXPECT_EQ(lemma1_c1(0.0, lr_of(2.0, 2.0, 1.0, 0.0), 1), 0.0);
}

TEST(Lemma1Constants, C2Example) { EXPECT_DOUBLE_EQ(lemma1_c2(lr_of(2.0, 2.0, 1.0, 1.0), 1), 2.0); }

TEST(Lemma1Constants, C1IsLinearInPerturbationNorm) {
  const auto lr = lr_of(3.0, 1.5, 0.7, 2.2);
  EXPECT_DOUBLE_EQ(lemma1_c1(2.0, lr, 2), 2.0 * lemma1_c1(1.0, lr, 2));
}

TEST(Lemma1Constants, ZeroVelocityWithPerturbationIsUndefined) {
  EXPECT_THROW(lemma1_c1(1.0, lr_of(1.0, 1.0, 1.0, 0.0), 1), DomainError);
}

TEST(Lemma1Rhs, ArithmeticExample) {
  const auto lr = lr_of(2.0, 2.0, 1.0, 1.0);
  EXPECT_NEAR(lemma1_rhs(2.0, lr, 3, 1.0), 0.27067, 1e-5);
}

TEST(Lemma1Rhs, DecaysByEMuPerUnitDistance) {
  const auto lr = lr_of(1.0, 1.0, 0.8, 1.3);
  for (int d = 1; d < 6; ++d) {
    EXPECT_NEAR(lemma1_rhs(1.7, lr, d + 1, 0.4) / lemma1_rhs(1.7, lr, d, 0.4), std::exp(-0.8), 1e-12);
  }
  EXPECT_THROW(lemma1_rhs(1.0, lr, 0, 0.0), DomainError);
}

TEST(VPrime, ReducesToVelocityWithoutGrowth) {
  EXPECT_DOUBLE_EQ(v_prime(1.3, 0.0, 2.5), 2.5);
  EXPECT_THROW(v_prime(0.5, 0.5, 1.0), RegimeError);
  EXPECT_THROW(v_prime(0.4, 0.5, 1.0), RegimeError);
}

TEST(Gamma, ArithmeticExample) {
  const double expected = 4.0 / (1.0 - std::exp(-1.0)) * (2.0 + 1.0);
  EXPECT_NEAR(gamma_coefficient(1.0, 2.0, 1, 2.0, 2), expected, 1e-12);
  EXPECT_NEAR(expected, 18.9836, 2e-4);
}

TEST(Gamma, MonotoneInGrowthAndDimension) {
  EXPECT_LT(gamma_coefficient(0.5, 1.0, 2, 2.0, 2), gamma_coefficient(0.5, 1.0, 2, 3.0, 2));
  EXPECT_LT(gamma_coefficient(0.5, 1.0, 2, 2.0, 2), gamma_coefficient(0.5, 1.0, 2, 2.0, 3));
  EXPECT_EQ(gamma_coefficient(0.0, 1.0, 2, 2.0, 2), 0.0);
}

TEST(TheoremRhs, ArithmeticExample) {
  const auto lr = lr_of(1.0, 1.0, 2.0, 1.0);
  const auto v = theorem_rhs(18.9836, lr, 0.0, 5, 1.0);
  EXPECT_NEAR(v.value, 18.9836 * std::exp(-4.0), 1e-14);
  EXPECT_NEAR(v.value, 0.34773, 5e-5);
  EXPECT_TRUE(v.valid);
}

TEST(TheoremRhs, ValidityFlagFollowsTheCone) {
  const auto lr = lr_of(1.0, 1.0, 2.0, 1.0);
  EXPECT_TRUE(theorem_rhs(1.0, lr, 0.5, 3, 1.0).valid);   // v' = 4/3
  EXPECT_FALSE(theorem_rhs(1.0, lr, 0.5, 3, 3.0).valid);  // v'|t| = 4
  EXPECT_FALSE(theorem_rhs(1.0, lr, 0.0, 2, 2.0).valid);  // boundary d = v'|t| is excluded
}

TEST(TheoremRhs, DecaysByHalfMuPerUnitDistance) {
  const auto lr = lr_of(1.0, 1.0, 1.4, 0.3);
  for (int d = 1; d < 6; ++d) {
    const double r = theorem_rhs(2.0, lr, 0.2, d + 1, 0.5).value / theorem_rhs(2.0, lr, 0.2, d, 0.5).value;
    EXPECT_NEAR(r, std::exp(-0.7), 1e-12);
  }
}

TEST(CertifyLemma1, DecoupledSystemHasZeroLhs) {
  for (int q : {1, 2}) {
    const auto s = chain_scenario(6, 0.0, 1.0, q, 1.0);
    const auto r = certify_lemma1(s, tails(6, {2, 3}), linspace(0.0, 2.0, 9));
    EXPECT_EQ(r.points.size(), 18u);
    for (const auto& p : r.points) EXPECT_NEAR(p.lhs, 0.0, 1e-12);
    EXPECT_TRUE(r.certified());
  }
}

TEST(CertifyLemma1, TimeZeroLhsVanishes) {
  for (int q : {1, 2}) {
    const auto s = chain_scenario(6, 1.0, 1.0, q, 1.0);
    const auto r = certify_lemma1(s, tails(6, {2, 4}), {0.0});
    for (const auto& p : r.points) EXPECT_NEAR(p.lhs, 0.0, 1e-12);
  }
}

TEST(CertifyLemma1, EightSiteChainSweepHasNoViolations) {
  for (double mu : {0.5, 1.0}) {
    for (int q : {1, 2}) {
      const auto s = chain_scenario(8, 1.0, 1.0, q, mu);
      const auto r = certify_lemma1(s, tails(8, {3, 4, 5, 6}), linspace(0.0, 2.0, 11));
      EXPECT_EQ(r.violations(), 0u) << "mu=" << mu << " q=" << q << " min margin " << r.min_margin();
      for (const auto& p : r.points) {
        EXPECT_GE(p.lhs, 0.0);
        EXPECT_LE(p.lhs, 2.0 + 1e-12);
        EXPECT_DOUBLE_EQ(p.margin, p.rhs - p.lhs);
      }
    }
  }
}

TEST(CertifyTheorem, RegimeIsEnforced) {
  const auto s = chain_scenario(5, 1.0, 1.0, 1, 0.5);
  GrowthConstants g = chain_growth();
  g.alpha = 0.25;
  EXPECT_THROW(certify_theorem(s, tails(5, {3}), {0.0}, g), RegimeError);
  g.alpha = 0.3;
  EXPECT_THROW(certify_theorem(s, tails(5, {3}), {0.0}, g), RegimeError);
}

TEST(CertifyTheorem, DecoupledSystemHasZeroEntropyChange) {
  const auto s = chain_scenario(6, 0.0, 1.0, 2, 1.0);
  const auto r = certify_theorem(s, tails(6, {2, 3}), linspace(0.0, 1.0, 5), chain_growth());
  for (const auto& p : r.points) EXPECT_NEAR(p.lhs, 0.0, 1e-12);
}

TEST(CertifyTheorem, EightSiteChainSweepHasNoViolations) {
  for (double mu : {0.5, 1.0}) {
    for (int q : {1, 2}) {
      const auto s = chain_scenario(8, 1.0, 1.0, q, mu);
      const auto r = certify_theorem(s, tails(8, {3, 4, 5, 6}), linspace(0.0, 2.0, 11), chain_growth());
      EXPECT_EQ(r.violations(), 0u);
      for (const auto& p : r.points) {
        ASSERT_TRUE(p.alicki_gate.has_value());
        if (p.t == 0.0) {
          EXPECT_TRUE(p.valid);
          EXPECT_NEAR(p.lhs, 0.0, 1e-10);
        }
      }
    }
  }
}

TEST(BoundConstants, InvariantUnderVertexRelabeling) {
  // Reversing a chain maps site 0 to site n-1; X and Y follow the relabeling.
  const int n = 6;
  const auto g = LatticeGraph::chain(n);
  std::vector<std::pair<Vertex, Vertex>> edges;
  for (const auto& [u, v] : g.edges()) edges.emplace_back(n - 1 - u, n - 1 - v);
  const LatticeGraph rev(n, edges);
  const auto F = DecayFunction::power_law(2.0);
  for (int q : {1, 2}) {
    auto make = [&](const LatticeGraph& graph, Vertex x) {
      auto phi = Interaction::transverse_field_ising(graph, 1.0, 0.6);
      ProductSpace space(phi.site_dims());
      Quench quench = q == 1 ? Quench(HamiltonianQuench{ops::sigma_x(), VertexSet{x}})
                             : Quench(StateQuench{ops::sigma_x(), VertexSet{x}});
      return QuenchScenario(graph, phi, all_down_state(space), VertexSet{x}, quench, F, 1.0);
    };
    const auto a = make(g, 0);
    const auto b = make(rev, n - 1);
    const auto lra = compute_lr_constants(a.graph(), a.interaction(), F, 1.0);
    const auto lrb = compute_lr_constants(b.graph(), b.interaction(), F, 1.0);
    const auto ca = compute_bound_constants(a, lra, VertexSet{3, 4, 5}, chain_growth());
    const auto cb = compute_bound_constants(b, lrb, VertexSet{0, 1, 2}, chain_growth());
    EXPECT_NEAR(ca.c(q), cb.c(q), 1e-12);
    EXPECT_NEAR(ca.gamma(q), cb.gamma(q), 1e-12);
  }
}

TEST(AreaLaw, EnvelopeAtTimeZeroAndXIndependenceOfGrowth) {
  const auto lr = lr_of(1.0, 1.0, 1.0, 2.0);
  EXPECT_NEAR(area_law_envelope(lr, 3.0, 2, 0.0, 0.5), 0.5 + 3.0 * std::exp(-2.0), 1e-14);
  const double a = area_law_envelope(lr, 3.0, 4, 0.5, 0.5) - 0.5;
  const double b = area_law_envelope(lr, 3.0, 4, 1.0, 0.5) - 0.5;
  EXPECT_NEAR(b / a, std::exp(1.0 * 2.0 * 0.5), 1e-12);
  EXPECT_THROW(area_law_envelope(lr, 3.0, 1, 1.0, 0.5), RegimeError);
}

TEST(AreaLaw, RequiresEigenstate) {
  const auto s = chain_scenario(6, 1.0, 1.0, 1, 1.0, 0.5 * ops::sigma_z());
  EXPECT_THROW(certify_area_law(s, 1, 1.0, {1, 2, 3}, {0.0}, chain_growth()), RegimeError);
}

TEST(AreaLaw, GroundStateQuenchCertified) {
  auto g = LatticeGraph::chain(6);
  auto phi = Interaction::transverse_field_ising(g, 1.0, 0.7);
  ProductSpace space(phi.site_dims());
  const Propagator h(build_hamiltonian(phi, space).matrix());
  const QuenchScenario s(g, phi, ground_state(h, space), VertexSet{0}, HamiltonianQuench{0.5 * ops::sigma_z(), VertexSet{0}},
                         DecayFunction::power_law(2.0), 1.0);
  const auto prof = entanglement_profile(s, {1, 2, 3, 4}, {0.0});
  const double c0 = prof.unperturbed.values.maxCoeff();
  const auto r = certify_area_law(s, 1, c0, {1, 2, 3, 4}, linspace(0.0, 0.2, 5), chain_growth());
  EXPECT_GT(r.valid_points(), 0u);
  EXPECT_EQ(r.violations(), 0u);
}

namespace {

HolevoEnsemble ensemble(double J, const std::vector<HolevoLetter>& letters, int n = 6) {
  auto g = LatticeGraph::chain(n);
  auto phi = Interaction::transverse_field_ising(g, J, 1.0);
  ProductSpace space(phi.site_dims());
  return HolevoEnsemble(g, phi, all_down_state(space), VertexSet{0}, letters, DecayFunction::power_law(2.0), 1.0);
}

HolevoLetter state_letter(double p, const Matrix& u) { return {p, StateQuench{u, VertexSet{0}}}; }

}  // namespace

TEST(Holevo, SingleLetterCarriesNothing) {
  const auto e = ensemble(1.0, {state_letter(1.0, ops::sigma_x())});
  for (double t : {0.0, 0.7, 1.5}) EXPECT_NEAR(holevo_capacity(e, VertexSet{3, 4, 5}, t), 0.0, 1e-10);
}

TEST(Holevo, IdenticalLettersCarryNothing) {
  const auto e = ensemble(1.0, {state_letter(0.3, ops::sigma_x()), state_letter(0.7, ops::sigma_x())});
  EXPECT_NEAR(holevo_capacity(e, VertexSet{3, 4, 5}, 1.2), 0.0, 1e-10);
}

TEST(Holevo, DecoupledSystemCarriesNothing) {
  const auto e = ensemble(0.0, {state_letter(0.5, ops::identity()), state_letter(0.5, ops::sigma_x())});
  for (double t : {0.5, 2.0}) EXPECT_NEAR(holevo_capacity(e, VertexSet{2, 3, 4, 5}, t), 0.0, 1e-10);
}

TEST(Holevo, BoundedByAlphabetSizeAndSpread) {
  const auto e = ensemble(1.0, {state_letter(0.25, ops::identity()), state_letter(0.25, ops::sigma_x()),
                                state_letter(0.25, ops::sigma_y()), state_letter(0.25, ops::sigma_z())});
  for (double t : {0.5, 1.0, 2.0, 3.0}) {
    const double c = holevo_capacity(e, VertexSet{1, 2}, t);
    EXPECT_GE(c, -1e-12);
    EXPECT_LE(c, 2.0 + 1e-12);
    EXPECT_LE(c, holevo_entropy_spread(e, VertexSet{1, 2}, t) + 1e-12);
  }
}

TEST(Holevo, ProbabilitiesMustSumToOne) {
  EXPECT_THROW(ensemble(1.0, {state_letter(0.4, ops::identity()), state_letter(0.4, ops::sigma_x())}), DomainError);
}

TEST(Holevo, CertifiedOnCoupledChain) {
  const auto e = ensemble(1.0, {state_letter(0.5, ops::identity()), state_letter(0.5, ops::sigma_x())});
  const auto r = certify_holevo(e, tails(6, {3, 4}), linspace(0.0, 2.0, 9), chain_growth());
  EXPECT_EQ(r.violations(), 0u);
  for (const auto& p : r.points) {
    EXPECT_LE(p.lhs, 1.0 + 1e-12);
    EXPECT_LE(p.rhs, 1.0 + 1e-12);
  }
}
