#include "lrcert/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <fmt/format.h>

#include "lrcert/errors.hpp"
#include "lrcert/parallel.hpp"

namespace lrcert {

namespace {

void require_probe(const QuenchScenario& s, const VertexSet& Y) {
  if (Y.empty()) throw GeometryError("probe region is empty");
  s.graph().require_members(Y, "probe region");
  if (s.graph().distance(s.X(), Y) <= 0) {
    throw GeometryError(fmt::format("probe region {} is not separated from quench region {}", to_string(Y), to_string(s.X())));
  }
}

int min_phi_boundary(const QuenchScenario& s, const VertexSet& Y) {
  const auto bx = phi_boundary(s.interaction(), s.X()).size();
  const auto by = phi_boundary(s.interaction(), Y).size();
  return static_cast<int>(std::min(bx, by));
}

void require_theorem_regime(double mu, double alpha) {
  if (!(mu > 2.0 * alpha)) {
    throw RegimeError(fmt::format("entropy bound needs mu > 2 alpha, got mu = {} and alpha = {}", mu, alpha));
  }
}

// γ e^{-(μ/2)(d - v'|t|)} without the d > 0 precondition.
double theorem_envelope(double gamma, double mu, double vp, int dist, double t) {
  return gamma * std::exp(-0.5 * mu * (dist - vp * std::abs(t)));
}

PointRecord make_point(ReportKind kind, double mu, int q, int region, int distance, double t, double lhs, double rhs,
                       bool valid) {
  PointRecord p;
  p.kind = kind;
  p.mu = mu;
  p.q = q;
  p.region = region;
  p.distance = distance;
  p.t = t;
  p.lhs = lhs;
  p.rhs = rhs;
  p.margin = rhs - lhs;
  p.valid = valid;
  return p;
}

// Mean and variance of H in ψ, from the eigenbasis weights.
bool is_eigenstate(const Propagator& h, const StateVector& psi) {
  const Vector c = h.eigenvectors().adjoint() * psi.amplitudes();
  double mean = 0.0;
  double second = 0.0;
  for (Eigen::Index k = 0; k < c.size(); ++k) {
    const double w = std::norm(c(k));
    mean += w * h.energies()(k);
    second += w * h.energies()(k) * h.energies()(k);
  }
  const double variance = std::max(0.0, second - mean * mean);
  return std::sqrt(variance) <= 1e-7 * std::max(1.0, std::abs(mean));
}

}  // namespace

double BoundConstants::gamma(int q) const {
  const auto& g = q == 1 ? gamma1 : gamma2;
  if (!g) throw RegimeError("gamma is only defined for mu > 2 alpha");
  return *g;
}

double lemma1_c1(double norm_w, const LRConstants& lr, int phi_boundary_min) {
  if (norm_w == 0.0 || phi_boundary_min == 0) return 0.0;
  if (!(lr.v_mu > 0.0)) throw DomainError("c1 is undefined when v_mu = 0 and the perturbation is non-zero");
  return 2.0 * norm_w * lr.f_norm / (lr.mu * lr.v_mu * lr.c_mu) * phi_boundary_min;
}

double lemma1_c2(const LRConstants& lr, int phi_boundary_min) { return 2.0 * lr.f_norm / lr.c_mu * phi_boundary_min; }

Lemma1Constants lemma1_constants(const QuenchScenario& s, const LRConstants& lr, const VertexSet& Y) {
  require_probe(s, Y);
  Lemma1Constants out;
  out.phi_boundary_min = min_phi_boundary(s, Y);
  out.norm_w = s.perturbation_norm();
  out.c1 = lemma1_c1(out.norm_w, lr, out.phi_boundary_min);
  out.c2 = lemma1_c2(lr, out.phi_boundary_min);
  return out;
}

Lemma1Constants lemma1_constants(const QuenchScenario& s, const VertexSet& Y) {
  return lemma1_constants(s, compute_lr_constants(s.graph(), s.interaction(), s.decay(), s.mu()), Y);
}

double lemma1_rhs(double c_q, const LRConstants& lr, int dist_xy, double t) {
  if (dist_xy <= 0) throw DomainError("Lemma-1 bound needs d(X,Y) > 0");
  if (c_q == 0.0) return 0.0;
  return c_q * std::exp(-lr.mu * (dist_xy - lr.v_mu * std::abs(t)));
}

double v_prime(double mu, double alpha, double v_mu) {
  if (!(mu > alpha)) throw RegimeError(fmt::format("v' needs mu > alpha, got mu = {} and alpha = {}", mu, alpha));
  return mu / (mu - alpha) * v_mu;
}

double gamma_coefficient(double c_q, double mu, int boundary_x, double b, int D) {
  if (c_q < 0.0) throw DomainError("c_q must be non-negative");
  if (!(mu > 0.0)) throw DomainError("mu must be positive");
  if (D < 1) throw DomainError("local dimension must be >= 1");
  const double root = std::sqrt(c_q);
  return 4.0 * root / (1.0 - std::exp(-0.5 * mu)) * (boundary_x * root * b * std::log2(static_cast<double>(D)) + 1.0);
}

BoundConstants compute_bound_constants(const QuenchScenario& s, const LRConstants& lr, const VertexSet& Y,
                                       const GrowthConstants& growth) {
  require_probe(s, Y);
  BoundConstants out;
  out.lr = lr;
  out.growth = growth;
  const auto shells = shell_decomposition(s.graph(), s.X(), Y);
  for (const auto& tail : shells.tails) out.phi_boundary_min = std::max(out.phi_boundary_min, min_phi_boundary(s, tail));
  out.norm_w = s.perturbation_norm();
  out.c1 = lemma1_c1(out.norm_w, lr, out.phi_boundary_min);
  out.c2 = lemma1_c2(lr, out.phi_boundary_min);
  out.boundary_x = static_cast<int>(boundary_and_interior(s.graph(), s.X()).boundary.size());
  out.D = s.space().max_local_dim();
  if (lr.mu > growth.alpha) out.v_prime = v_prime(lr.mu, growth.alpha, lr.v_mu);
  if (lr.mu > 2.0 * growth.alpha) {
    out.gamma1 = gamma_coefficient(out.c1, lr.mu, out.boundary_x, growth.b, out.D);
    out.gamma2 = gamma_coefficient(out.c2, lr.mu, out.boundary_x, growth.b, out.D);
  }
  return out;
}

TheoremConstants theorem_constants(const QuenchScenario& s, const VertexSet& Y, const GrowthConstants& growth) {
  require_theorem_regime(s.mu(), growth.alpha);
  const auto lr = compute_lr_constants(s.graph(), s.interaction(), s.decay(), s.mu());
  const auto bc = compute_bound_constants(s, lr, Y, growth);
  return {*bc.gamma1, *bc.gamma2, *bc.v_prime};
}

TheoremValue theorem_rhs(double gamma, const LRConstants& lr, double alpha, int dist_xy, double t) {
  if (dist_xy <= 0) throw DomainError("entropy bound needs d(X,Y) > 0");
  const double vp = v_prime(lr.mu, alpha, lr.v_mu);
  return {theorem_envelope(gamma, lr.mu, vp, dist_xy, t), dist_xy > vp * std::abs(t)};
}

std::string_view to_string(ReportKind k) {
  switch (k) {
    case ReportKind::Lemma1: return "lemma1";
    case ReportKind::Theorem1: return "theorem1";
    case ReportKind::LiebRobinson: return "lr";
    case ReportKind::Holevo: return "holevo";
    case ReportKind::AreaLaw: return "arealaw";
    case ReportKind::LightCone: return "lightcone";
  }
  return "";
}

std::size_t CertificationReport::violations() const {
  return static_cast<std::size_t>(std::count_if(points.begin(), points.end(), [](const PointRecord& p) {
    return p.valid && !(p.margin >= -kMarginTolerance);
  }));
}

std::size_t CertificationReport::valid_points() const {
  return static_cast<std::size_t>(std::count_if(points.begin(), points.end(), [](const PointRecord& p) { return p.valid; }));
}

double CertificationReport::min_margin() const {
  double best = std::numeric_limits<double>::infinity();
  for (const auto& p : points) {
    if (p.valid) best = std::min(best, p.margin);
  }
  return best;
}

void CertificationReport::merge(const CertificationReport& other) {
  const int shift = static_cast<int>(regions.size());
  regions.insert(regions.end(), other.regions.begin(), other.regions.end());
  for (auto p : other.points) {
    p.region += shift;
    points.push_back(p);
  }
  for (auto c : other.constants) {
    c.region += shift;
    constants.push_back(c);
  }
  for (const auto& m : other.metadata) {
    if (std::find(metadata.begin(), metadata.end(), m) == metadata.end()) metadata.push_back(m);
  }
}

CertificationReport certify_lemma1(const QuenchScenario& s, const std::vector<VertexSet>& regions,
                                   const std::vector<double>& t_grid, int workers) {
  const auto lr = compute_lr_constants(s.graph(), s.interaction(), s.decay(), s.mu());
  CertificationReport report;
  report.kind = ReportKind::Lemma1;
  report.regions = regions;
  std::vector<int> dist;
  std::vector<double> cq;
  for (std::size_t r = 0; r < regions.size(); ++r) {
    const auto l1 = lemma1_constants(s, lr, regions[r]);
    dist.push_back(s.graph().distance(s.X(), regions[r]));
    cq.push_back(s.q() == 1 ? l1.c1 : l1.c2);
    BoundConstants bc;
    bc.lr = lr;
    bc.c1 = l1.c1;
    bc.c2 = l1.c2;
    bc.phi_boundary_min = l1.phi_boundary_min;
    bc.norm_w = l1.norm_w;
    bc.boundary_x = static_cast<int>(boundary_and_interior(s.graph(), s.X()).boundary.size());
    bc.D = s.space().max_local_dim();
    report.constants.push_back({s.mu(), static_cast<int>(r), bc});
  }

  std::vector<PointRecord> points(regions.size() * t_grid.size());
  parallel_for(t_grid.size(), workers, [&](std::size_t ti) {
    const double t = t_grid[ti];
    const auto states = evolve_branches(s, t);
    for (std::size_t r = 0; r < regions.size(); ++r) {
      const double lhs = reduced_distance(states, regions[r]);
      const double rhs = lemma1_rhs(cq[r], lr, dist[r], t);
      points[r * t_grid.size() + ti] = make_point(ReportKind::Lemma1, s.mu(), s.q(), static_cast<int>(r), dist[r], t, lhs, rhs, true);
    }
  });
  report.points = std::move(points);
  return report;
}

CertificationReport certify_theorem(const QuenchScenario& s, const std::vector<VertexSet>& regions,
                                    const std::vector<double>& t_grid, const GrowthConstants& growth, int workers) {
  require_theorem_regime(s.mu(), growth.alpha);
  const auto lr = compute_lr_constants(s.graph(), s.interaction(), s.decay(), s.mu());
  CertificationReport report;
  report.kind = ReportKind::Theorem1;
  report.regions = regions;
  std::vector<int> dist;
  std::vector<double> gamma;
  std::vector<ShellDecomposition> shells;
  for (std::size_t r = 0; r < regions.size(); ++r) {
    const auto bc = compute_bound_constants(s, lr, regions[r], growth);
    dist.push_back(s.graph().distance(s.X(), regions[r]));
    gamma.push_back(bc.gamma(s.q()));
    shells.push_back(shell_decomposition(s.graph(), s.X(), regions[r]));
    report.constants.push_back({s.mu(), static_cast<int>(r), bc});
  }

  std::vector<PointRecord> points(regions.size() * t_grid.size());
  parallel_for(t_grid.size(), workers, [&](std::size_t ti) {
    const double t = t_grid[ti];
    const auto states = evolve_branches(s, t);
    for (std::size_t r = 0; r < regions.size(); ++r) {
      const double lhs = std::abs(entropy_variation(states, regions[r]));
      const auto rhs = theorem_rhs(gamma[r], lr, growth.alpha, dist[r], t);
      auto p = make_point(ReportKind::Theorem1, s.mu(), s.q(), static_cast<int>(r), dist[r], t, lhs, rhs.value, rhs.valid);
      // The conditional-entropy continuity step is applied on tails 0..N-1.
      bool gate = true;
      const auto& sh = shells[r];
      for (int l = 0; l < sh.depth(); ++l) {
        if (reduced_distance(states, sh.tails[static_cast<std::size_t>(l)]) >= 1.0) {
          gate = false;
          break;
        }
      }
      p.alicki_gate = gate;
      points[r * t_grid.size() + ti] = p;
    }
  });
  report.points = std::move(points);
  return report;
}

CertificationReport certify_lr(const QuenchScenario& s, const LocalObservable& a, const LocalObservable& b,
                               const std::vector<double>& t_grid) {
  const auto lr = compute_lr_constants(s.graph(), s.interaction(), s.decay(), s.mu());
  const auto check = check_lr_bound(s.graph(), s.interaction(), s.space(), s.unperturbed_propagator(), lr, a, b, t_grid);
  CertificationReport report;
  report.kind = ReportKind::LiebRobinson;
  report.regions = {b.support};
  BoundConstants bc;
  bc.lr = lr;
  bc.phi_boundary_min = std::min(check.boundary_a, check.boundary_b);
  bc.D = s.space().max_local_dim();
  report.constants.push_back({s.mu(), 0, bc});
  report.metadata.emplace_back("observable_a_support", to_string(a.support));
  report.metadata.emplace_back("observable_b_support", to_string(b.support));
  for (const auto& p : check.points) {
    report.points.push_back(make_point(ReportKind::LiebRobinson, s.mu(), 0, 0, check.dist_xy, p.t, p.lhs, p.rhs, true));
  }
  return report;
}

LightconeResult certify_lightcone(const QuenchScenario& s, const std::vector<int>& x_grid,
                                  const std::vector<double>& t_grid, const GrowthConstants& growth, int workers) {
  require_theorem_regime(s.mu(), growth.alpha);
  const auto lr = compute_lr_constants(s.graph(), s.interaction(), s.decay(), s.mu());
  LightconeResult out;
  out.profiles = entanglement_profile(s, x_grid, t_grid, workers);
  out.v_prime = v_prime(lr.mu, growth.alpha, lr.v_mu);
  auto& report = out.report;
  report.kind = ReportKind::LightCone;
  const auto all = s.graph().all_vertices();
  for (std::size_t xi = 0; xi < x_grid.size(); ++xi) {
    const int x = x_grid[xi];
    const auto Y = set_difference(all, enlargement(s.graph(), s.X(), x));
    const auto bc = compute_bound_constants(s, lr, Y, growth);
    report.regions.push_back(Y);
    report.constants.push_back({s.mu(), static_cast<int>(xi), bc});
    const double gamma = bc.gamma(s.q());
    for (std::size_t ti = 0; ti < t_grid.size(); ++ti) {
      const double t = t_grid[ti];
      const double lhs = out.profiles.difference(static_cast<Eigen::Index>(xi), static_cast<Eigen::Index>(ti));
      const double rhs = theorem_envelope(gamma, lr.mu, out.v_prime, x, t);
      const bool valid = x > out.v_prime * std::abs(t);
      report.points.push_back(make_point(ReportKind::LightCone, s.mu(), s.q(), static_cast<int>(xi), x, t, lhs, rhs, valid));
    }
  }
  report.metadata.emplace_back("distance_column", "x");
  return out;
}

double area_law_envelope(const LRConstants& lr, double gamma1, int x0, double t, double c0) {
  if (!(x0 > lr.v_mu * std::abs(t))) {
    throw RegimeError(fmt::format("area-law envelope needs x0 > v_mu |t|, got x0 = {} and v_mu |t| = {}", x0, lr.v_mu * std::abs(t)));
  }
  return c0 + gamma1 * std::exp(-lr.mu * x0) * std::exp(lr.mu * lr.v_mu * std::abs(t));
}

CertificationReport certify_area_law(const QuenchScenario& s, int x0, double c0, const std::vector<int>& x_grid,
                                     const std::vector<double>& t_grid, const GrowthConstants& growth, int workers) {
  if (s.branch() != Branch::Hamiltonian) throw RegimeError("area-law envelope applies to Hamiltonian quenches (q=1)");
  if (!is_eigenstate(s.unperturbed_propagator(), s.psi0())) {
    throw RegimeError("area-law envelope needs an eigenstate of H as initial state");
  }
  require_theorem_regime(s.mu(), growth.alpha);
  const auto lr = compute_lr_constants(s.graph(), s.interaction(), s.decay(), s.mu());

  std::vector<int> xs;
  for (int x : x_grid) {
    if (x >= x0) xs.push_back(x);
  }
  CertificationReport report;
  report.kind = ReportKind::AreaLaw;
  if (xs.empty()) return report;

  const auto profiles = entanglement_profile(s, xs, t_grid, workers);
  const auto all = s.graph().all_vertices();
  double gamma1 = 0.0;
  for (std::size_t xi = 0; xi < xs.size(); ++xi) {
    const auto Y = set_difference(all, enlargement(s.graph(), s.X(), xs[xi]));
    const auto bc = compute_bound_constants(s, lr, Y, growth);
    gamma1 = std::max(gamma1, *bc.gamma1);
    report.regions.push_back(Y);
    report.constants.push_back({s.mu(), static_cast<int>(xi), bc});
  }
  report.metadata.emplace_back("x0", std::to_string(x0));
  report.metadata.emplace_back("c0", fmt::format("{:.17g}", c0));
  report.metadata.emplace_back("distance_column", "x");
  for (std::size_t xi = 0; xi < xs.size(); ++xi) {
    for (std::size_t ti = 0; ti < t_grid.size(); ++ti) {
      const double t = t_grid[ti];
      const bool valid = x0 > lr.v_mu * std::abs(t);
      const double rhs = valid ? area_law_envelope(lr, gamma1, x0, t, c0)
                               : c0 + gamma1 * std::exp(-lr.mu * x0) * std::exp(lr.mu * lr.v_mu * std::abs(t));
      const double lhs = profiles.quenched.values(static_cast<Eigen::Index>(xi), static_cast<Eigen::Index>(ti));
      report.points.push_back(make_point(ReportKind::AreaLaw, s.mu(), 1, static_cast<int>(xi), xs[xi], t, lhs, rhs, valid));
    }
  }
  return report;
}

HolevoEnsemble::HolevoEnsemble(LatticeGraph graph, Interaction interaction, StateVector psi0, VertexSet X,
                               std::vector<HolevoLetter> letters, DecayFunction F, double mu) {
  if (letters.empty()) throw DomainError("Holevo ensemble needs at least one letter");
  double total = 0.0;
  for (const auto& l : letters) {
    if (!(l.p >= 0.0)) throw DomainError("letter probabilities must be non-negative");
    total += l.p;
  }
  if (std::abs(total - 1.0) > 1e-12) throw DomainError(fmt::format("letter probabilities sum to {}, not 1", total));
  std::shared_ptr<const Propagator> shared;
  for (auto& l : letters) {
    scenarios_.emplace_back(graph, interaction, psi0, X, l.encoding, F, mu, shared);
    shared = scenarios_.back().shared_unperturbed_propagator();
    p_.push_back(l.p);
  }
}

std::vector<DensityMatrix> HolevoEnsemble::reduced_states(const VertexSet& Y, double t) const {
  std::vector<DensityMatrix> out;
  out.reserve(scenarios_.size());
  for (const auto& s : scenarios_) {
    out.push_back(partial_trace(s.quenched_propagator().evolve(s.quenched_initial_state(), t), Y));
  }
  return out;
}

namespace {

struct HolevoTerms {
  double mixture_entropy = 0.0;
  std::vector<double> letter_entropies;
};

HolevoTerms holevo_terms(const HolevoEnsemble& e, const VertexSet& Y, double t) {
  const auto rhos = e.reduced_states(Y, t);
  Matrix mix = Matrix::Zero(rhos.front().matrix().rows(), rhos.front().matrix().cols());
  HolevoTerms out;
  for (std::size_t i = 0; i < rhos.size(); ++i) {
    mix += e.probabilities()[i] * rhos[i].matrix();
    out.letter_entropies.push_back(von_neumann_entropy(rhos[i]));
  }
  out.mixture_entropy = von_neumann_entropy(DensityMatrix::trusted(rhos.front().sites(), rhos.front().dims(), std::move(mix)));
  return out;
}

}  // namespace

double holevo_capacity(const HolevoEnsemble& e, const VertexSet& Y, double t) {
  const auto terms = holevo_terms(e, Y, t);
  double c = terms.mixture_entropy;
  for (std::size_t i = 0; i < terms.letter_entropies.size(); ++i) c -= e.probabilities()[i] * terms.letter_entropies[i];
  return c;
}

double holevo_entropy_spread(const HolevoEnsemble& e, const VertexSet& Y, double t) {
  const auto terms = holevo_terms(e, Y, t);
  double spread = 0.0;
  for (std::size_t i = 0; i < terms.letter_entropies.size(); ++i) {
    spread += e.probabilities()[i] * std::abs(terms.mixture_entropy - terms.letter_entropies[i]);
  }
  return spread;
}

TheoremValue holevo_rhs(const HolevoEnsemble& e, const VertexSet& Y, const GrowthConstants& growth, double t) {
  const auto& ref = e.reference();
  require_theorem_regime(ref.mu(), growth.alpha);
  const auto lr = compute_lr_constants(ref.graph(), ref.interaction(), ref.decay(), ref.mu());
  double gamma = 0.0;
  for (const auto& s : e.scenarios()) gamma = std::max(gamma, compute_bound_constants(s, lr, Y, growth).gamma(s.q()));
  const int d = ref.graph().distance(ref.X(), Y);
  auto v = theorem_rhs(gamma, lr, growth.alpha, d, t);
  v.value *= 2.0;
  return v;
}

CertificationReport certify_holevo(const HolevoEnsemble& e, const std::vector<VertexSet>& regions,
                                   const std::vector<double>& t_grid, const GrowthConstants& growth, int workers) {
  const auto& ref = e.reference();
  require_theorem_regime(ref.mu(), growth.alpha);
  const auto lr = compute_lr_constants(ref.graph(), ref.interaction(), ref.decay(), ref.mu());
  const double cap = std::log2(static_cast<double>(e.size()));
  int q = e.scenarios().front().q();
  for (const auto& s : e.scenarios()) {
    if (s.q() != q) q = 0;
  }

  CertificationReport report;
  report.kind = ReportKind::Holevo;
  report.regions = regions;
  for (std::size_t r = 0; r < regions.size(); ++r) {
    require_probe(ref, regions[r]);
    report.constants.push_back({ref.mu(), static_cast<int>(r), compute_bound_constants(ref, lr, regions[r], growth)});
  }
  report.metadata.emplace_back("letters", std::to_string(e.size()));
  report.metadata.emplace_back("capacity_cap_bits", fmt::format("{:.17g}", cap));

  std::vector<PointRecord> points(regions.size() * t_grid.size());
  parallel_for(t_grid.size(), workers, [&](std::size_t ti) {
    const double t = t_grid[ti];
    for (std::size_t r = 0; r < regions.size(); ++r) {
      const double lhs = holevo_capacity(e, regions[r], t);
      const auto bound = holevo_rhs(e, regions[r], growth, t);
      const double rhs = bound.valid ? std::min(cap, bound.value) : cap;
      const int d = ref.graph().distance(ref.X(), regions[r]);
      points[r * t_grid.size() + ti] = make_point(ReportKind::Holevo, ref.mu(), q, static_cast<int>(r), d, t, lhs, rhs, true);
    }
  });
  report.points = std::move(points);
  return report;
}

}  // namespace lrcert
