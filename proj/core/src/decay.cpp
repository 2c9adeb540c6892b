#include "lrcert/decay.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <fmt/format.h>

#include "lrcert/errors.hpp"

namespace lrcert {

namespace {

std::vector<double> decay_table(const DecayFunction& F, int max_distance) {
  std::vector<double> out(static_cast<std::size_t>(max_distance) + 1);
  for (int x = 0; x <= max_distance; ++x) out[static_cast<std::size_t>(x)] = F(x);
  return out;
}

double operator_norm(const Matrix& m) {
  if (m.size() == 0) return 0.0;
  if ((m - m.adjoint()).cwiseAbs().maxCoeff() <= 1e-12) return hermitian_norm(m);
  Eigen::BDCSVD<Matrix> svd(m);
  return svd.singularValues()(0);
}

}  // namespace

DecayFunction DecayFunction::power_law(double exponent) {
  if (!(exponent > 0.0) || !std::isfinite(exponent)) throw DomainError("power-law exponent must be positive");
  return DecayFunction(Form::PowerLaw, exponent, {});
}

DecayFunction DecayFunction::exponential(double rate) {
  if (!(rate > 0.0) || !std::isfinite(rate)) throw DomainError("exponential decay rate must be positive");
  return DecayFunction(Form::Exponential, rate, {});
}

DecayFunction DecayFunction::tabulated(std::vector<double> values) {
  if (values.empty()) throw DomainError("tabulated decay function needs at least one value");
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!(values[i] > 0.0) || !std::isfinite(values[i])) throw DomainError("tabulated decay values must be positive");
    if (i > 0 && values[i] > values[i - 1]) throw DomainError("tabulated decay values must be non-increasing");
  }
  return DecayFunction(Form::Tabulated, 0.0, std::move(values));
}

double DecayFunction::operator()(int x) const {
  if (x < 0) throw DomainError("decay function evaluated at a negative distance");
  switch (form_) {
    case Form::PowerLaw: return std::pow(1.0 + x, -param_);
    case Form::Exponential: return std::exp(-param_ * x);
    case Form::Tabulated: return table_[std::min(static_cast<std::size_t>(x), table_.size() - 1)];
  }
  return 0.0;
}

std::string DecayFunction::describe() const {
  switch (form_) {
    case Form::PowerLaw: return fmt::format("(1+x)^(-{})", param_);
    case Form::Exponential: return fmt::format("exp(-{} x)", param_);
    case Form::Tabulated: return fmt::format("tabulated[{}]", table_.size());
  }
  return {};
}

std::string_view to_string(DecayFunction::Form f) {
  switch (f) {
    case DecayFunction::Form::PowerLaw: return "power-law";
    case DecayFunction::Form::Exponential: return "exponential";
    case DecayFunction::Form::Tabulated: return "tabulated";
  }
  return "";
}

double f_norm(const LatticeGraph& g, const DecayFunction& F) {
  const auto table = decay_table(F, g.diameter());
  const auto& d = g.distances();
  double best = 0.0;
  for (Vertex i = 0; i < g.num_vertices(); ++i) {
    double row = 0.0;
    for (Vertex j = 0; j < g.num_vertices(); ++j) row += table[static_cast<std::size_t>(d(i, j))];
    best = std::max(best, row);
  }
  return best;
}

double c_mu(const LatticeGraph& g, const DecayFunction& F, double mu) {
  if (!(mu > 0.0)) throw DomainError("mu must be positive");
  const int diam = g.diameter();
  const auto table = decay_table(F, diam);
  // Excess path length d(i,k)+d(k,j)-d(i,j) lies in [0, 2 diam].
  std::vector<double> excess(static_cast<std::size_t>(2 * diam) + 1);
  for (std::size_t e = 0; e < excess.size(); ++e) excess[e] = std::exp(-mu * static_cast<double>(e));

  const auto& d = g.distances();
  const int n = g.num_vertices();
  double best = 0.0;
  for (Vertex i = 0; i < n; ++i) {
    for (Vertex j = i; j < n; ++j) {
      const int dij = d(i, j);
      double sum = 0.0;
      for (Vertex k = 0; k < n; ++k) {
        const int dik = d(i, k);
        const int dkj = d(k, j);
        sum += excess[static_cast<std::size_t>(dik + dkj - dij)] * table[static_cast<std::size_t>(dik)] *
               table[static_cast<std::size_t>(dkj)];
      }
      best = std::max(best, sum / table[static_cast<std::size_t>(dij)]);
    }
  }
  return best;
}

double phi_norm(const LatticeGraph& g, const Interaction& interaction, const DecayFunction& F, double mu) {
  if (!(mu > 0.0)) throw DomainError("mu must be positive");
  if (interaction.num_sites() != g.num_vertices()) throw DimensionError("interaction and graph disagree on the number of sites");
  const auto n = static_cast<std::size_t>(g.num_vertices());
  std::vector<double> pair_sum(n * n, 0.0);
  for (const auto& term : interaction.terms()) {
    g.require_members(term.support, "interaction term");
    const double norm = hermitian_norm(term.matrix);
    if (norm == 0.0) continue;
    for (Vertex i : term.support) {
      for (Vertex j : term.support) pair_sum[static_cast<std::size_t>(i) * n + static_cast<std::size_t>(j)] += norm;
    }
  }
  double best = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const double s = pair_sum[i * n + j];
      if (s == 0.0) continue;
      const int dij = g.distances()(static_cast<Vertex>(i), static_cast<Vertex>(j));
      best = std::max(best, s / (std::exp(-mu * dij) * F(dij)));
    }
  }
  return best;
}

double lr_velocity(double phi_norm, double c_mu, double mu) {
  if (!(mu > 0.0)) throw DomainError("mu must be positive");
  return 2.0 * phi_norm * c_mu / mu;
}

LRConstants compute_lr_constants(const LatticeGraph& g, const Interaction& interaction, const DecayFunction& F,
                                 double mu) {
  LRConstants c;
  c.mu = mu;
  c.f_norm = f_norm(g, F);
  c.c_mu = c_mu(g, F, mu);
  c.phi_norm = phi_norm(g, interaction, F, mu);
  c.v_mu = lr_velocity(c.phi_norm, c.c_mu, mu);
  return c;
}

double lr_commutator_rhs(const LRConstants& c, double norm_a, double norm_b, int boundary_a, int boundary_b,
                         int dist_xy, double t) {
  if (dist_xy <= 0) throw DomainError("commutator bound needs d(X,Y) > 0");
  const double prefactor = 2.0 * norm_a * norm_b * c.f_norm / c.c_mu * std::min(boundary_a, boundary_b);
  if (prefactor == 0.0) return 0.0;
  return prefactor * std::exp(-c.mu * (dist_xy - c.v_mu * std::abs(t)));
}

LrCheck check_lr_bound(const LatticeGraph& g, const Interaction& interaction, const ProductSpace& space,
                       const DecayFunction& F, double mu, const LocalObservable& a, const LocalObservable& b,
                       const std::vector<double>& t_grid) {
  const Propagator propagator(build_hamiltonian(interaction, space).matrix());
  return check_lr_bound(g, interaction, space, propagator, compute_lr_constants(g, interaction, F, mu), a, b, t_grid);
}

LrCheck check_lr_bound(const LatticeGraph& g, const Interaction& interaction, const ProductSpace& space,
                       const Propagator& propagator, const LRConstants& constants, const LocalObservable& a,
                       const LocalObservable& b, const std::vector<double>& t_grid) {
  g.require_members(a.support, "observable A");
  g.require_members(b.support, "observable B");
  LrCheck out;
  out.constants = constants;
  out.dist_xy = g.distance(a.support, b.support);
  if (out.dist_xy <= 0) throw GeometryError("commutator check needs d(X,Y) > 0");
  out.boundary_a = static_cast<int>(phi_boundary(interaction, a.support).size());
  out.boundary_b = static_cast<int>(phi_boundary(interaction, b.support).size());
  out.norm_a = operator_norm(a.matrix);
  out.norm_b = operator_norm(b.matrix);

  const Matrix big_a = embed_matrix(a.matrix, a.support, space);
  const Matrix big_b = embed_matrix(b.matrix, b.support, space);
  const Matrix a_eig = propagator.to_eigenbasis(big_a);
  for (double t : t_grid) {
    const Matrix at = propagator.heisenberg_from_eigenbasis(a_eig, t);
    const Matrix comm = at * big_b - big_b * at;
    LrCheckPoint p;
    p.t = t;
    // [A,B] is anti-Hermitian for Hermitian A and B; i[A,B] is then Hermitian.
    const Matrix herm = Complex(0.0, 1.0) * comm;
    p.lhs = operator_norm(herm);
    p.rhs = lr_commutator_rhs(constants, out.norm_a, out.norm_b, out.boundary_a, out.boundary_b, out.dist_xy, t);
    out.points.push_back(p);
  }
  return out;
}

}  // namespace lrcert
