#pragma once

#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "lrcert/decay.hpp"
#include "lrcert/lattice.hpp"
#include "lrcert/quench.hpp"

namespace lrcert {

/// Margins below -kMarginTolerance count as violations.
inline constexpr double kMarginTolerance = 1e-9;

/// Every scalar entering the quench bounds for one (scenario, Y, μ).
struct BoundConstants {
  LRConstants lr;
  double c1 = 0.0;
  double c2 = 0.0;
  std::optional<double> gamma1;   ///< present when μ > 2α
  std::optional<double> gamma2;
  std::optional<double> v_prime;  ///< present when μ > α
  GrowthConstants growth;
  int boundary_x = 0;        ///< |∂X|
  int phi_boundary_min = 0;  ///< min{|∂_Φ X|, |∂_Φ Y|}
  int D = 0;                 ///< max local dimension
  double norm_w = 0.0;       ///< ‖W‖

  double c(int q) const { return q == 1 ? c1 : c2; }
  double gamma(int q) const;
};

struct Lemma1Constants {
  double c1 = 0.0;
  double c2 = 0.0;
  int phi_boundary_min = 0;
  double norm_w = 0.0;
};

/// c1 = 2‖W‖‖F‖ min / (μ v_μ C_μ). Throws DomainError if v_μ = 0 while ‖W‖ > 0.
double lemma1_c1(double norm_w, const LRConstants& lr, int phi_boundary_min);
/// c2 = 2‖F‖ min / C_μ.
double lemma1_c2(const LRConstants& lr, int phi_boundary_min);

Lemma1Constants lemma1_constants(const QuenchScenario& s, const LRConstants& lr, const VertexSet& Y);
Lemma1Constants lemma1_constants(const QuenchScenario& s, const VertexSet& Y);

/// c_q e^{-μ (d - v_μ |t|)}.
double lemma1_rhs(double c_q, const LRConstants& lr, int dist_xy, double t);

/// v'_μ = μ v_μ / (μ - α). RegimeError when μ <= α.
double v_prime(double mu, double alpha, double v_mu);

/// γ = 4 √c (1 - e^{-μ/2})^{-1} (|∂X| √c b log2 D + 1).
double gamma_coefficient(double c_q, double mu, int boundary_x, double b, int D);

/// Constants for Y. The Φ-boundary count used in c_q is the largest min{|∂_Φ X|, |∂_Φ Ỹ_l|}
/// over the tails of Y's shell decomposition, so that c_q bounds every tail. γ and v' are
/// only filled inside their regimes.
BoundConstants compute_bound_constants(const QuenchScenario& s, const LRConstants& lr, const VertexSet& Y,
                                       const GrowthConstants& growth);

struct TheoremConstants {
  double gamma1 = 0.0;
  double gamma2 = 0.0;
  double v_prime = 0.0;
};

/// RegimeError when μ <= 2α.
TheoremConstants theorem_constants(const QuenchScenario& s, const VertexSet& Y, const GrowthConstants& growth);

struct TheoremValue {
  double value = 0.0;
  bool valid = false;  ///< d > μ/(μ-α) v_μ |t|
};

/// γ e^{-(μ/2)(d - v'|t|)} and the validity flag.
TheoremValue theorem_rhs(double gamma, const LRConstants& lr, double alpha, int dist_xy, double t);

enum class ReportKind { Lemma1, Theorem1, LiebRobinson, Holevo, AreaLaw, LightCone };
std::string_view to_string(ReportKind k);

struct PointRecord {
  ReportKind kind = ReportKind::Lemma1;
  double mu = 0.0;
  int q = 0;
  int region = 0;    ///< index into the report's region list
  int distance = 0;  ///< d(X,Y), or x for profile-based reports
  double t = 0.0;
  double lhs = 0.0;
  double rhs = 0.0;
  double margin = 0.0;
  bool valid = true;
  std::optional<bool> alicki_gate;  ///< theorem only: every tail had trace distance < 1
};

struct ConstantsEntry {
  double mu = 0.0;
  int region = 0;
  BoundConstants constants;
};

struct CertificationReport {
  ReportKind kind = ReportKind::Lemma1;
  std::vector<VertexSet> regions;
  std::vector<PointRecord> points;
  std::vector<ConstantsEntry> constants;
  std::vector<std::pair<std::string, std::string>> metadata;

  std::size_t violations() const;
  std::size_t valid_points() const;
  bool certified() const { return violations() == 0; }
  /// Smallest margin among valid points (+inf when there are none).
  double min_margin() const;

  /// Appends another report's points, regions and constants (region indices are shifted).
  void merge(const CertificationReport& other);
};

/// Lemma-1 sweep: lhs = ‖ρ⁰_Y - ρ^q_Y‖₁, rhs = c_q e^{-μ(d - v|t|)}.
CertificationReport certify_lemma1(const QuenchScenario& s, const std::vector<VertexSet>& regions,
                                   const std::vector<double>& t_grid, int workers = 1);

/// Theorem sweep: lhs = |ΔS_q|, rhs = γ_q e^{-(μ/2)(d - v'|t|)}; points outside
/// d > v'|t| are recorded with valid = false. RegimeError when μ <= 2α.
CertificationReport certify_theorem(const QuenchScenario& s, const std::vector<VertexSet>& regions,
                                    const std::vector<double>& t_grid, const GrowthConstants& growth,
                                    int workers = 1);

/// Commutator bound sweep for A on X and B on Y.
CertificationReport certify_lr(const QuenchScenario& s, const LocalObservable& a, const LocalObservable& b,
                               const std::vector<double>& t_grid);

struct LightconeResult {
  EntanglementProfiles profiles;
  CertificationReport report;
  double v_prime = 0.0;
};

/// |E⁰ - E^q|(x,t) against theorem_rhs evaluated at d = x; valid where x > v'|t|.
LightconeResult certify_lightcone(const QuenchScenario& s, const std::vector<int>& x_grid,
                                  const std::vector<double>& t_grid, const GrowthConstants& growth,
                                  int workers = 1);

/// c0 + γ₁ e^{-μ x0} e^{μ v_μ |t|}. RegimeError when x0 <= v_μ |t|.
double area_law_envelope(const LRConstants& lr, double gamma1, int x0, double t, double c0);

/// Checks E_1(x,t) <= envelope for x >= x0. Requires q=1 and an eigenstate of H_Λ as initial
/// state (RegimeError otherwise). Points with x0 <= v_μ|t| are marked invalid.
CertificationReport certify_area_law(const QuenchScenario& s, int x0, double c0, const std::vector<int>& x_grid,
                                     const std::vector<double>& t_grid, const GrowthConstants& growth,
                                     int workers = 1);

/// One letter of a classical alphabet encoded on region X.
struct HolevoLetter {
  double p = 0.0;
  Quench encoding;
};

/// Ensemble of quenches of the same initial state, all supported on X.
class HolevoEnsemble {
 public:
  /// Throws DomainError if the probabilities are negative or do not sum to 1 (within 1e-12).
  HolevoEnsemble(LatticeGraph graph, Interaction interaction, StateVector psi0, VertexSet X,
                 std::vector<HolevoLetter> letters, DecayFunction F, double mu);

  const std::vector<QuenchScenario>& scenarios() const noexcept { return scenarios_; }
  const std::vector<double>& probabilities() const noexcept { return p_; }
  std::size_t size() const noexcept { return p_.size(); }
  const QuenchScenario& reference() const { return scenarios_.front(); }

  /// ρ_{Y,i}(t) for every letter.
  std::vector<DensityMatrix> reduced_states(const VertexSet& Y, double t) const;

 private:
  std::vector<QuenchScenario> scenarios_;
  std::vector<double> p_;
};

/// C(t) = S(Σ p_i ρ_{Y,i}(t)) - Σ p_i S(ρ_{Y,i}(t)).
double holevo_capacity(const HolevoEnsemble& e, const VertexSet& Y, double t);

/// Σ_i p_i |S(ρ̄) - S(ρ_{Y,i})|.
double holevo_entropy_spread(const HolevoEnsemble& e, const VertexSet& Y, double t);

/// Holevo bound derived from the entropy-variation bound: every ρ_{Y,i} and their mixture lie
/// within the Lemma-1 trace-distance envelope of ρ⁰_Y on every tail, so
/// C(t) <= 2 max_i γ_{q_i} e^{-(μ/2)(d - v'|t|)}. `valid` marks the regime d > v'|t|.
TheoremValue holevo_rhs(const HolevoEnsemble& e, const VertexSet& Y, const GrowthConstants& growth, double t);

/// lhs = C(t); rhs = min(log2 m, derived bound) inside the regime and log2 m outside.
/// Every point is counted.
CertificationReport certify_holevo(const HolevoEnsemble& e, const std::vector<VertexSet>& regions,
                                   const std::vector<double>& t_grid, const GrowthConstants& growth,
                                   int workers = 1);

}  // namespace lrcert
