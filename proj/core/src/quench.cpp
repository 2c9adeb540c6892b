#include "lrcert/quench.hpp"

#include <cmath>

#include <fmt/format.h>

#include "lrcert/errors.hpp"
#include "lrcert/parallel.hpp"

namespace lrcert {

namespace {

Vector apply_local(const Matrix& local, const VertexSet& support, const StateVector& psi) {
  const SubsystemSplit split(psi.space().site_dims(), support);
  const auto k = static_cast<Eigen::Index>(split.kept_dim());
  if (local.rows() != k || local.cols() != k) throw DimensionError("local operator has the wrong dimension");
  const auto& in = psi.amplitudes();
  Vector out = Vector::Zero(in.size());
  Vector block(k);
  for (std::size_t r = 0; r < split.rest_dim(); ++r) {
    for (Eigen::Index a = 0; a < k; ++a) block(a) = in(static_cast<Eigen::Index>(split.flat_index(static_cast<std::size_t>(a), r)));
    const Vector image = local * block;
    for (Eigen::Index a = 0; a < k; ++a) out(static_cast<Eigen::Index>(split.flat_index(static_cast<std::size_t>(a), r))) = image(a);
  }
  return out;
}

void require_probe(const QuenchScenario& s, const VertexSet& Y) {
  if (Y.empty()) throw GeometryError("probe region is empty");
  s.graph().require_members(Y, "probe region");
  if (s.graph().distance(s.X(), Y) <= 0) {
    throw GeometryError(fmt::format("probe region {} overlaps quench region {}", to_string(Y), to_string(s.X())));
  }
}

}  // namespace

QuenchScenario::QuenchScenario(LatticeGraph graph, Interaction interaction, StateVector psi0, VertexSet X,
                               Quench quench, DecayFunction F, double mu, std::shared_ptr<const Propagator> unperturbed)
    : graph_(std::make_shared<const LatticeGraph>(std::move(graph))),
      interaction_(std::make_shared<const Interaction>(std::move(interaction))),
      psi0_(std::move(psi0)),
      psi_q0_(psi0_),
      X_(std::move(X)),
      quench_(std::move(quench)),
      F_(std::move(F)),
      mu_(mu),
      branch_(std::holds_alternative<HamiltonianQuench>(quench_) ? Branch::Hamiltonian : Branch::State) {
  if (!(mu_ > 0.0)) throw DomainError("mu must be positive");
  if (graph_->num_vertices() != interaction_->num_sites()) throw DimensionError("graph and interaction disagree on the number of sites");
  if (interaction_->site_dims() != psi0_.space().site_dims()) throw DimensionError("interaction and state disagree on local dimensions");
  if (X_.empty()) throw GeometryError("quench region is empty");
  graph_->require_members(X_, "quench region");

  const auto& space = psi0_.space();
  const Matrix h = build_hamiltonian(*interaction_, space).matrix();
  h_ = unperturbed ? std::move(unperturbed) : std::make_shared<const Propagator>(h);
  if (h_->dim() != space.total_dim()) throw DimensionError("shared propagator has the wrong dimension");

  if (const auto* hq = std::get_if<HamiltonianQuench>(&quench_)) {
    if (!hq->support.is_subset_of(X_)) throw GeometryError("perturbation W must be supported inside X");
    const HermitianOperator w(hq->W, hq->support, space.site_dims());
    hq_ = std::make_shared<const Propagator>(h + embed_matrix(w.matrix(), hq->support, space));
  } else {
    const auto& sq = std::get<StateQuench>(quench_);
    if (!sq.support.is_subset_of(X_)) throw GeometryError("unitary U_X must be supported inside X");
    const auto d = static_cast<Eigen::Index>(space.dim_of(sq.support));
    if (sq.U.rows() != d || sq.U.cols() != d) throw DimensionError("U_X has the wrong dimension for its support");
    if ((sq.U.adjoint() * sq.U - Matrix::Identity(d, d)).cwiseAbs().maxCoeff() > 1e-10) {
      throw InvalidStateError("U_X is not unitary");
    }
    hq_ = h_;
    psi_q0_ = StateVector::normalized(space, apply_local(sq.U, sq.support, psi0_));
  }
}

QuenchScenario QuenchScenario::with_mu(double mu) const {
  if (!(mu > 0.0)) throw DomainError("mu must be positive");
  QuenchScenario copy = *this;
  copy.mu_ = mu;
  return copy;
}

double QuenchScenario::perturbation_norm() const {
  if (const auto* hq = std::get_if<HamiltonianQuench>(&quench_)) return hermitian_norm(hq->W);
  return 0.0;
}

BranchStates evolve_branches(const QuenchScenario& s, double t) {
  return {s.unperturbed_propagator().evolve(s.psi0(), t), s.quenched_propagator().evolve(s.quenched_initial_state(), t),
          s.branch()};
}

double reduced_distance(const BranchStates& states, const VertexSet& Y) {
  const auto rho0 = partial_trace(states.unperturbed, Y);
  const auto rhoq = partial_trace(states.quenched, Y);
  return trace_norm(rho0.matrix() - rhoq.matrix());
}

double reduced_distance(const QuenchScenario& s, const VertexSet& Y, double t) {
  require_probe(s, Y);
  return reduced_distance(evolve_branches(s, t), Y);
}

double entropy_variation(const BranchStates& states, const VertexSet& Y) {
  return entanglement_entropy(states.unperturbed, Y) - entanglement_entropy(states.quenched, Y);
}

double entropy_variation(const QuenchScenario& s, const VertexSet& Y, double t) {
  require_probe(s, Y);
  return entropy_variation(evolve_branches(s, t), Y);
}

EntanglementProfiles entanglement_profile(const QuenchScenario& s, const std::vector<int>& x_grid,
                                          const std::vector<double>& t_grid, int workers) {
  std::vector<VertexSet> regions;
  for (int x : x_grid) {
    auto region = enlargement(s.graph(), s.X(), x);
    if (static_cast<int>(region.size()) >= s.graph().num_vertices()) {
      throw GeometryError(fmt::format("x = {} leaves no complement for the bipartition", x));
    }
    regions.push_back(std::move(region));
  }
  const auto nx = static_cast<Eigen::Index>(x_grid.size());
  const auto nt = static_cast<Eigen::Index>(t_grid.size());
  EntanglementProfiles out;
  out.unperturbed = {t_grid, x_grid, Eigen::MatrixXd::Zero(nx, nt), Branch::Unperturbed};
  out.quenched = {t_grid, x_grid, Eigen::MatrixXd::Zero(nx, nt), s.branch()};
  parallel_for(t_grid.size(), workers, [&](std::size_t ti) {
    const auto states = evolve_branches(s, t_grid[ti]);
    for (std::size_t xi = 0; xi < regions.size(); ++xi) {
      const auto r = static_cast<Eigen::Index>(xi);
      const auto c = static_cast<Eigen::Index>(ti);
      out.unperturbed.values(r, c) = entanglement_entropy(states.unperturbed, regions[xi]);
      out.quenched.values(r, c) = entanglement_entropy(states.quenched, regions[xi]);
    }
  });
  out.difference = (out.unperturbed.values - out.quenched.values).cwiseAbs();
  return out;
}

StateVector all_down_state(const ProductSpace& space) { return StateVector::basis_state(space, space.total_dim() - 1); }

StateVector ground_state(const Propagator& h, const ProductSpace& space) {
  return StateVector::normalized(space, h.ground_state());
}

}  // namespace lrcert
