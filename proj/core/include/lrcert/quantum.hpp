#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "lrcert/interaction.hpp"
#include "lrcert/lattice.hpp"

namespace lrcert {

/// Tensor product of local spaces, one factor per vertex in vertex-id order.
/// Vertex 0 is the most significant factor of the flat index.
class ProductSpace {
 public:
  static constexpr std::size_t kDefaultDimensionCap = std::size_t{1} << 12;

  explicit ProductSpace(std::vector<int> site_dims, std::size_t dimension_cap = kDefaultDimensionCap);

  const std::vector<int>& site_dims() const noexcept { return site_dims_; }
  int num_sites() const noexcept { return static_cast<int>(site_dims_.size()); }
  std::size_t total_dim() const noexcept { return total_dim_; }
  int max_local_dim() const noexcept { return max_local_dim_; }
  std::size_t dimension_cap() const noexcept { return cap_; }
  /// Product of local dimensions over `sites`.
  std::size_t dim_of(const VertexSet& sites) const;

  bool operator==(const ProductSpace& o) const { return site_dims_ == o.site_dims_; }

 private:
  std::vector<int> site_dims_;
  std::size_t total_dim_ = 1;
  int max_local_dim_ = 1;
  std::size_t cap_;
};

/// Splits flat indices of a product space into (kept, rest) sub-indices.
/// Both sub-indices follow the same most-significant-first convention restricted to their sites.
class SubsystemSplit {
 public:
  SubsystemSplit(const std::vector<int>& site_dims, const VertexSet& kept);

  std::size_t kept_dim() const noexcept { return kept_dim_; }
  std::size_t rest_dim() const noexcept { return rest_dim_; }
  std::size_t kept_index(std::size_t flat) const noexcept { return kept_[flat]; }
  std::size_t rest_index(std::size_t flat) const noexcept { return rest_[flat]; }
  std::size_t flat_index(std::size_t kept, std::size_t rest) const noexcept {
    return kept_offsets_[kept] + rest_offsets_[rest];
  }

 private:
  std::size_t kept_dim_ = 1;
  std::size_t rest_dim_ = 1;
  std::vector<std::size_t> kept_;
  std::vector<std::size_t> rest_;
  std::vector<std::size_t> kept_offsets_;
  std::vector<std::size_t> rest_offsets_;
};

class StateVector {
 public:
  /// Throws InvalidStateError unless the norm is 1 within 1e-10.
  StateVector(ProductSpace space, Vector amplitudes);

  /// Normalizes first; throws on a zero vector.
  static StateVector normalized(ProductSpace space, Vector amplitudes);
  static StateVector basis_state(ProductSpace space, std::size_t index);
  /// Tensor product of one local vector per site.
  static StateVector product(ProductSpace space, const std::vector<Vector>& local);

  const ProductSpace& space() const noexcept { return space_; }
  const Vector& amplitudes() const noexcept { return amps_; }

 private:
  ProductSpace space_;
  Vector amps_;
};

/// Density matrix over an ordered list of sites.
class DensityMatrix {
 public:
  /// Validates Hermiticity, unit trace (1e-10) and eigenvalues >= -1e-10.
  DensityMatrix(std::vector<Vertex> sites, std::vector<int> dims, Matrix rho);

  /// Skips validation; for matrices that are density matrices by construction.
  static DensityMatrix trusted(std::vector<Vertex> sites, std::vector<int> dims, Matrix rho);
  /// Convenience for a single abstract system of dimension rho.rows().
  static DensityMatrix single_system(Matrix rho);
  static DensityMatrix pure(const StateVector& psi);

  const std::vector<Vertex>& sites() const noexcept { return sites_; }
  const std::vector<int>& dims() const noexcept { return dims_; }
  const Matrix& matrix() const noexcept { return rho_; }
  std::size_t dim() const noexcept { return static_cast<std::size_t>(rho_.rows()); }

 private:
  DensityMatrix() = default;
  std::vector<Vertex> sites_;
  std::vector<int> dims_;
  Matrix rho_;
};

/// Operator on the sites of `support`, matrix ordered by ascending vertex id.
class HermitianOperator {
 public:
  /// Validates Hermiticity within 1e-10 and the shape against `support_dims`.
  HermitianOperator(Matrix entries, VertexSet support, const std::vector<int>& site_dims);

  const Matrix& matrix() const noexcept { return m_; }
  const VertexSet& support() const noexcept { return support_; }
  double norm() const { return hermitian_norm(m_); }

 private:
  Matrix m_;
  VertexSet support_;
};

/// Returns `local` ⊗ 𝟙 on the full space, factors placed at the support's vertex ids.
/// Works for any square matrix (Hermitian terms, unitaries, observables).
Matrix embed_matrix(const Matrix& local, const VertexSet& support, const ProductSpace& space);
HermitianOperator embed_operator(const HermitianOperator& term, const ProductSpace& space);

/// H = Σ_X Φ(X) ⊗ 𝟙.
HermitianOperator build_hamiltonian(const Interaction& interaction, const ProductSpace& space);

/// Cached eigendecomposition H = V E V† used for exact evolution at many times.
/// Immutable after construction; safe to share across threads.
class Propagator {
 public:
  explicit Propagator(const Matrix& hamiltonian);

  std::size_t dim() const noexcept { return static_cast<std::size_t>(energies_.size()); }
  const Eigen::VectorXd& energies() const noexcept { return energies_; }
  const Matrix& eigenvectors() const noexcept { return vectors_; }

  /// e^{-iHt} ψ.
  Vector evolve(const Vector& psi, double t) const;
  StateVector evolve(const StateVector& psi, double t) const;

  /// V† A V.
  Matrix to_eigenbasis(const Matrix& a) const;
  /// Heisenberg picture A(t) = e^{iHt} A e^{-iHt}, given A already in the eigenbasis.
  Matrix heisenberg_from_eigenbasis(const Matrix& a_eig, double t) const;
  Matrix heisenberg(const Matrix& a, double t) const;

  /// Lowest-energy eigenvector.
  Vector ground_state() const;

 private:
  Eigen::VectorXd energies_;
  Matrix vectors_;
  // Set when the Hamiltonian is real symmetric; halves the cost of the basis changes.
  std::optional<Eigen::MatrixXd> real_vectors_;
};

/// One-shot e^{-iHt} ψ.
StateVector evolve(const HermitianOperator& H, const StateVector& psi, double t);

/// Tr over the complement of `keep`. Throws on an empty or out-of-range keep set.
DensityMatrix partial_trace(const StateVector& psi, const VertexSet& keep);
/// Tr over rho's sites not in `keep`; `keep` must be a subset of rho.sites().
DensityMatrix partial_trace(const DensityMatrix& rho, const VertexSet& keep);

/// Sum of singular values.
double trace_norm(const Matrix& a);

/// Entropy in bits of a spectrum: eigenvalues at or below 1e-12 contribute 0,
/// values below -1e-8 throw InvalidStateError.
double entropy_of_spectrum(const Eigen::VectorXd& eigenvalues);
double von_neumann_entropy(const DensityMatrix& rho);

/// S(ρ_XY) - S(ρ_Y). X and Y must partition rho's sites.
double conditional_entropy(const DensityMatrix& rho_xy, const VertexSet& X, const VertexSet& Y);

/// Entropy of the reduced state on `keep` of a pure state; uses the smaller side's Gram matrix.
double entanglement_entropy(const StateVector& psi, const VertexSet& keep);

/// h(x) = -x log2 x - (1-x) log2 (1-x). Throws DomainError outside [0,1].
double binary_entropy(double x);

/// (T/2) log2(dim-1) + h(T/2).
double audenaert_rhs(double trace_distance, std::size_t dim);

/// 4T log2(dimX) + 2h(T), only defined for T < 1 (ValidityError otherwise).
double alicki_rhs(double trace_distance, std::size_t dim_x);

struct TelescopingResult {
  double total = 0.0;         ///< S(ρ_Y)
  std::vector<double> parts;  ///< S_{Y_l | Ỹ_{l+1}} for l = 0..N-1, then S(ρ_{Y_N})
  double residual = 0.0;      ///< |total - Σ parts|
};

/// Splits S(ρ_Y) into conditional entropies along a shell decomposition of Y.
/// Throws GeometryError if the shells do not partition rho_y's sites, and
/// InvalidStateError if the parts fail to sum to the total within 1e-9.
TelescopingResult telescoping_entropy(const DensityMatrix& rho_y, const ShellDecomposition& shells);

}  // namespace lrcert
