#pragma once

#include <memory>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "lrcert/decay.hpp"
#include "lrcert/interaction.hpp"
#include "lrcert/lattice.hpp"
#include "lrcert/quantum.hpp"

namespace lrcert {

/// Branch index: 0 unperturbed, 1 quenched Hamiltonian H+W, 2 quenched state U_X ψ.
enum class Branch : int { Unperturbed = 0, Hamiltonian = 1, State = 2 };

/// Self-adjoint perturbation W, added to H from t = 0 on.
struct HamiltonianQuench {
  Matrix W;
  VertexSet support;
};

/// Unitary U_X applied to the initial state.
struct StateQuench {
  Matrix U;
  VertexSet support;
};

using Quench = std::variant<HamiltonianQuench, StateQuench>;

/// Immutable quench setup with cached eigendecompositions of H and (for q=1) H+W.
/// Copies share the cached propagators.
class QuenchScenario {
 public:
  /// `unperturbed` may carry an existing eigendecomposition of H_Λ to share.
  QuenchScenario(LatticeGraph graph, Interaction interaction, StateVector psi0, VertexSet X,
                 Quench quench, DecayFunction F, double mu,
                 std::shared_ptr<const Propagator> unperturbed = nullptr);

  std::shared_ptr<const Propagator> shared_unperturbed_propagator() const noexcept { return h_; }

  /// Same dynamics, different μ (propagators are shared, not recomputed).
  QuenchScenario with_mu(double mu) const;

  Branch branch() const noexcept { return branch_; }
  int q() const noexcept { return static_cast<int>(branch_); }
  const LatticeGraph& graph() const noexcept { return *graph_; }
  const Interaction& interaction() const noexcept { return *interaction_; }
  const ProductSpace& space() const noexcept { return psi0_.space(); }
  const StateVector& psi0() const noexcept { return psi0_; }
  const VertexSet& X() const noexcept { return X_; }
  const Quench& quench() const noexcept { return quench_; }
  const DecayFunction& decay() const noexcept { return F_; }
  double mu() const noexcept { return mu_; }

  /// ‖W‖ for q=1 (spectral norm on the support), 0 for q=2.
  double perturbation_norm() const;

  const Propagator& unperturbed_propagator() const noexcept { return *h_; }
  /// H+W for q=1; H for q=2.
  const Propagator& quenched_propagator() const noexcept { return *hq_; }
  /// ψ for q=1, U_X ψ for q=2.
  const StateVector& quenched_initial_state() const noexcept { return psi_q0_; }

 private:
  std::shared_ptr<const LatticeGraph> graph_;
  std::shared_ptr<const Interaction> interaction_;
  StateVector psi0_;
  StateVector psi_q0_;
  VertexSet X_;
  Quench quench_;
  DecayFunction F_;
  double mu_;
  Branch branch_;
  std::shared_ptr<const Propagator> h_;
  std::shared_ptr<const Propagator> hq_;
};

struct BranchStates {
  StateVector unperturbed;  ///< ψ⁰(t)
  StateVector quenched;     ///< ψ^q(t)
  Branch branch;
};

BranchStates evolve_branches(const QuenchScenario& s, double t);

/// ‖ρ⁰_Y(t) - ρ^q_Y(t)‖₁. Throws GeometryError when d(X,Y) = 0.
double reduced_distance(const QuenchScenario& s, const VertexSet& Y, double t);
double reduced_distance(const BranchStates& states, const VertexSet& Y);

/// ΔS_q(t) = S(ρ⁰_Y(t)) - S(ρ^q_Y(t)) in bits.
double entropy_variation(const QuenchScenario& s, const VertexSet& Y, double t);
double entropy_variation(const BranchStates& states, const VertexSet& Y);

/// E(x,t) with rows indexed by x and columns by t.
struct EntropyProfile {
  std::vector<double> t_grid;
  std::vector<int> x_grid;
  Eigen::MatrixXd values;
  Branch branch = Branch::Unperturbed;
};

struct EntanglementProfiles {
  EntropyProfile unperturbed;
  EntropyProfile quenched;
  Eigen::MatrixXd difference;  ///< |E⁰ - E^q|
};

/// Entropy of the bipartition X̃_x | Λ \ X̃_x for each (x, t). Every x must leave the
/// complement non-empty (GeometryError otherwise).
EntanglementProfiles entanglement_profile(const QuenchScenario& s, const std::vector<int>& x_grid,
                                          const std::vector<double>& t_grid, int workers = 1);

/// Product state with every site in its highest basis state (|↓⟩ for spin-1/2).
StateVector all_down_state(const ProductSpace& space);
StateVector ground_state(const Propagator& h, const ProductSpace& space);

}  // namespace lrcert
