#pragma once

#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "lrcert/lattice.hpp"

namespace lrcert {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

namespace ops {
Matrix identity(int dim = 2);
Matrix sigma_x();
Matrix sigma_y();
Matrix sigma_z();
/// `identity`, `sigma_x`, `sigma_y`, `sigma_z` (also `x`, `y`, `z`, `id`).
Matrix named(std::string_view name);
/// Kronecker product with the first argument as the most significant factor.
Matrix kron(const Matrix& a, const Matrix& b);
/// Tensor power: the same single-site operator on `sites` consecutive factors.
Matrix kron_power(const Matrix& single, int sites);
}  // namespace ops

/// Φ(X) restricted to its support. Factors are ordered by ascending vertex id.
struct InteractionTerm {
  VertexSet support;
  Matrix matrix;
};

/// Finite-range interaction: the list of non-zero terms plus local dimensions.
class Interaction {
 public:
  Interaction() = default;
  explicit Interaction(std::vector<int> site_dims);

  /// Validates support range, matrix shape and Hermiticity (within 1e-10).
  void add_term(VertexSet support, Matrix matrix);

  const std::vector<int>& site_dims() const noexcept { return site_dims_; }
  const std::vector<InteractionTerm>& terms() const noexcept { return terms_; }
  int num_sites() const noexcept { return static_cast<int>(site_dims_.size()); }
  int max_local_dim() const;

  /// J σᶻσᶻ on every edge plus h σˣ on every vertex.
  static Interaction transverse_field_ising(const LatticeGraph& g, double J, double h);
  /// J (σˣσˣ + σʸσʸ + σᶻσᶻ) on every edge plus h σᶻ on every vertex.
  static Interaction heisenberg(const LatticeGraph& g, double J, double h);

 private:
  std::vector<int> site_dims_;
  std::vector<InteractionTerm> terms_;
};

/// Spectral norm of a Hermitian matrix (largest |eigenvalue|).
double hermitian_norm(const Matrix& m);

/// ∂_Φ X: sites of X lying in the support of a non-zero term that reaches outside X.
VertexSet phi_boundary(const Interaction& interaction, const VertexSet& X);

}  // namespace lrcert
