#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "lrcert/interaction.hpp"
#include "lrcert/lattice.hpp"
#include "lrcert/quantum.hpp"

namespace lrcert {

/// Positive non-increasing function F on [0, ∞), evaluated at integer distances.
class DecayFunction {
 public:
  enum class Form { PowerLaw, Exponential, Tabulated };

  /// (1+x)^(-exponent)
  static DecayFunction power_law(double exponent);
  /// e^(-rate x)
  static DecayFunction exponential(double rate);
  /// values[x] for x < size, last value beyond. Must be positive and non-increasing.
  static DecayFunction tabulated(std::vector<double> values);

  double operator()(int x) const;

  Form form() const noexcept { return form_; }
  double parameter() const noexcept { return param_; }
  const std::vector<double>& table() const noexcept { return table_; }
  std::string describe() const;

  bool operator==(const DecayFunction&) const = default;

 private:
  DecayFunction(Form form, double param, std::vector<double> table)
      : form_(form), param_(param), table_(std::move(table)) {}

  Form form_;
  double param_;
  std::vector<double> table_;
};

std::string_view to_string(DecayFunction::Form f);

/// Lieb-Robinson constants truncated to the finite instance (maxima replace suprema).
struct LRConstants {
  double f_norm = 0.0;    ///< ‖F‖
  double c_mu = 0.0;      ///< C_μ
  double phi_norm = 0.0;  ///< ‖Φ‖_μ
  double mu = 0.0;
  double v_mu = 0.0;      ///< 2 ‖Φ‖_μ C_μ / μ
};

/// max_i Σ_j F(d(i,j)).
double f_norm(const LatticeGraph& g, const DecayFunction& F);

/// max_{i,j} Σ_k e^{-μ[d(i,k)+d(k,j)-d(i,j)]} F(d(i,k)) F(d(k,j)) / F(d(i,j)).
double c_mu(const LatticeGraph& g, const DecayFunction& F, double mu);

/// max_{i,j} Σ_{X ∋ i,j} ‖Φ(X)‖ / (e^{-μ d(i,j)} F(d(i,j))).
double phi_norm(const LatticeGraph& g, const Interaction& interaction, const DecayFunction& F, double mu);

double lr_velocity(double phi_norm, double c_mu, double mu);

LRConstants compute_lr_constants(const LatticeGraph& g, const Interaction& interaction,
                                 const DecayFunction& F, double mu);

/// (2 ‖A‖ ‖B‖ ‖F‖ / C_μ) min{bA, bB} e^{-μ (d(X,Y) - v_μ |t|)}.
double lr_commutator_rhs(const LRConstants& c, double norm_a, double norm_b, int boundary_a,
                         int boundary_b, int dist_xy, double t);

struct LocalObservable {
  Matrix matrix;
  VertexSet support;
};

struct LrCheckPoint {
  double t = 0.0;
  double lhs = 0.0;  ///< ‖[A(t), B]‖
  double rhs = 0.0;
};

struct LrCheck {
  LRConstants constants;
  int dist_xy = 0;
  int boundary_a = 0;  ///< |∂_Φ X|
  int boundary_b = 0;  ///< |∂_Φ Y|
  double norm_a = 0.0;
  double norm_b = 0.0;
  std::vector<LrCheckPoint> points;
};

/// Evaluates ‖[A(t),B]‖ by exact evolution under H_Λ and the commutator bound on a time grid.
LrCheck check_lr_bound(const LatticeGraph& g, const Interaction& interaction, const ProductSpace& space,
                       const DecayFunction& F, double mu, const LocalObservable& a,
                       const LocalObservable& b, const std::vector<double>& t_grid);

/// Same, reusing an existing propagator for H_Λ.
LrCheck check_lr_bound(const LatticeGraph& g, const Interaction& interaction, const ProductSpace& space,
                       const Propagator& propagator, const LRConstants& constants,
                       const LocalObservable& a, const LocalObservable& b,
                       const std::vector<double>& t_grid);

}  // namespace lrcert
