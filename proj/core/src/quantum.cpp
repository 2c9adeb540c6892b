#include "lrcert/quantum.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <fmt/format.h>

#include "lrcert/errors.hpp"

namespace lrcert {

namespace {

constexpr double kHermitianTol = 1e-10;
constexpr double kEntropyZero = 1e-12;
constexpr double kNegativeEigenvalue = -1e-8;

double hermiticity_defect(const Matrix& m) { return m.size() == 0 ? 0.0 : (m - m.adjoint()).cwiseAbs().maxCoeff(); }

std::vector<int> dims_of(const std::vector<int>& site_dims, const VertexSet& sites) {
  std::vector<int> out;
  out.reserve(sites.size());
  for (Vertex v : sites) out.push_back(site_dims[static_cast<std::size_t>(v)]);
  return out;
}

void require_sites(const VertexSet& sites, int num_sites, std::string_view what) {
  for (Vertex v : sites) {
    if (v < 0 || v >= num_sites) {
      throw DimensionError(fmt::format("{} {} references a site outside 0..{}", what, to_string(sites), num_sites - 1));
    }
  }
}

// Adds scale * (local ⊗ 𝟙) to target.
void add_embedded(Matrix& target, const Matrix& local, const VertexSet& support, const ProductSpace& space,
                  Complex scale = 1.0) {
  require_sites(support, space.num_sites(), "operator support");
  const auto expected = static_cast<Eigen::Index>(space.dim_of(support));
  if (local.rows() != expected || local.cols() != expected) {
    throw DimensionError(fmt::format("operator on {} must be {}x{}, got {}x{}", to_string(support), expected, expected,
                                     local.rows(), local.cols()));
  }
  const SubsystemSplit split(space.site_dims(), support);
  const auto k = split.kept_dim();
  for (std::size_t r = 0; r < split.rest_dim(); ++r) {
    for (std::size_t a = 0; a < k; ++a) {
      const auto row = static_cast<Eigen::Index>(split.flat_index(a, r));
      for (std::size_t b = 0; b < k; ++b) {
        const Complex v = local(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b));
        if (v != Complex(0.0)) target(row, static_cast<Eigen::Index>(split.flat_index(b, r))) += scale * v;
      }
    }
  }
}

Eigen::VectorXd hermitian_eigenvalues(const Matrix& m) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(m, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw InvalidStateError("eigendecomposition failed");
  return es.eigenvalues();
}

// Coefficient matrix M(k, r) = ψ[flat(k, r)], so that ρ_keep = M M†.
Matrix coefficient_matrix(const StateVector& psi, const VertexSet& keep) {
  const SubsystemSplit split(psi.space().site_dims(), keep);
  Matrix m(static_cast<Eigen::Index>(split.kept_dim()), static_cast<Eigen::Index>(split.rest_dim()));
  const auto& amps = psi.amplitudes();
  for (std::size_t f = 0; f < psi.space().total_dim(); ++f) {
    m(static_cast<Eigen::Index>(split.kept_index(f)), static_cast<Eigen::Index>(split.rest_index(f))) =
        amps(static_cast<Eigen::Index>(f));
  }
  return m;
}

}  // namespace

ProductSpace::ProductSpace(std::vector<int> site_dims, std::size_t dimension_cap)
    : site_dims_(std::move(site_dims)), cap_(dimension_cap) {
  if (site_dims_.empty()) throw DimensionError("product space needs at least one site");
  for (int d : site_dims_) {
    if (d < 1) throw DimensionError("local dimensions must be >= 1");
    if (total_dim_ > cap_ / static_cast<std::size_t>(d)) {
      throw DimensionError(fmt::format("total dimension exceeds the cap of {}", cap_));
    }
    total_dim_ *= static_cast<std::size_t>(d);
    max_local_dim_ = std::max(max_local_dim_, d);
  }
}

std::size_t ProductSpace::dim_of(const VertexSet& sites) const {
  require_sites(sites, num_sites(), "site set");
  std::size_t d = 1;
  for (Vertex v : sites) d *= static_cast<std::size_t>(site_dims_[static_cast<std::size_t>(v)]);
  return d;
}

SubsystemSplit::SubsystemSplit(const std::vector<int>& site_dims, const VertexSet& kept) {
  const auto n = site_dims.size();
  std::vector<bool> is_kept(n, false);
  for (Vertex v : kept) {
    if (v < 0 || static_cast<std::size_t>(v) >= n) throw DimensionError("kept site outside the space");
    is_kept[static_cast<std::size_t>(v)] = true;
  }
  // Strides in the flat, kept and rest indices (last site least significant).
  std::vector<std::size_t> flat_stride(n), sub_stride(n);
  std::size_t flat = 1;
  for (std::size_t s = n; s-- > 0;) {
    flat_stride[s] = flat;
    flat *= static_cast<std::size_t>(site_dims[s]);
    if (is_kept[s]) {
      sub_stride[s] = kept_dim_;
      kept_dim_ *= static_cast<std::size_t>(site_dims[s]);
    } else {
      sub_stride[s] = rest_dim_;
      rest_dim_ *= static_cast<std::size_t>(site_dims[s]);
    }
  }
  kept_.assign(flat, 0);
  rest_.assign(flat, 0);
  kept_offsets_.assign(kept_dim_, 0);
  rest_offsets_.assign(rest_dim_, 0);
  for (std::size_t f = 0; f < flat; ++f) {
    std::size_t k = 0;
    std::size_t r = 0;
    for (std::size_t s = 0; s < n; ++s) {
      const std::size_t digit = (f / flat_stride[s]) % static_cast<std::size_t>(site_dims[s]);
      (is_kept[s] ? k : r) += digit * sub_stride[s];
    }
    kept_[f] = k;
    rest_[f] = r;
    // Offsets are the flat contributions of each side; f = kept_offsets[k] + rest_offsets[r].
    if (r == 0) kept_offsets_[k] = f;
    if (k == 0) rest_offsets_[r] = f;
  }
}

StateVector::StateVector(ProductSpace space, Vector amplitudes) : space_(std::move(space)), amps_(std::move(amplitudes)) {
  if (static_cast<std::size_t>(amps_.size()) != space_.total_dim()) {
    throw DimensionError(fmt::format("state has {} amplitudes, space dimension is {}", amps_.size(), space_.total_dim()));
  }
  if (std::abs(amps_.norm() - 1.0) > 1e-10) {
    throw InvalidStateError(fmt::format("state norm is {}, expected 1", amps_.norm()));
  }
}

StateVector StateVector::normalized(ProductSpace space, Vector amplitudes) {
  const double n = amplitudes.norm();
  if (!(n > 0.0)) throw InvalidStateError("cannot normalize a zero vector");
  return StateVector(std::move(space), amplitudes / n);
}

StateVector StateVector::basis_state(ProductSpace space, std::size_t index) {
  if (index >= space.total_dim()) throw DimensionError("basis index outside the space");
  Vector v = Vector::Zero(static_cast<Eigen::Index>(space.total_dim()));
  v(static_cast<Eigen::Index>(index)) = 1.0;
  return StateVector(std::move(space), std::move(v));
}

StateVector StateVector::product(ProductSpace space, const std::vector<Vector>& local) {
  if (local.size() != space.site_dims().size()) throw DimensionError("one local vector per site required");
  Vector v = Vector::Ones(1);
  for (std::size_t s = 0; s < local.size(); ++s) {
    if (local[s].size() != space.site_dims()[s]) throw DimensionError(fmt::format("local vector {} has wrong size", s));
    Vector next(v.size() * local[s].size());
    for (Eigen::Index i = 0; i < v.size(); ++i) next.segment(i * local[s].size(), local[s].size()) = v(i) * local[s];
    v = std::move(next);
  }
  return normalized(std::move(space), std::move(v));
}

DensityMatrix::DensityMatrix(std::vector<Vertex> sites, std::vector<int> dims, Matrix rho)
    : sites_(std::move(sites)), dims_(std::move(dims)), rho_(std::move(rho)) {
  if (sites_.size() != dims_.size()) throw DimensionError("one dimension per site required");
  Eigen::Index d = 1;
  for (int x : dims_) d *= x;
  if (rho_.rows() != d || rho_.cols() != d) {
    throw DimensionError(fmt::format("density matrix must be {}x{}, got {}x{}", d, d, rho_.rows(), rho_.cols()));
  }
  if (hermiticity_defect(rho_) > kHermitianTol) throw InvalidStateError("density matrix is not Hermitian");
  if (std::abs(rho_.trace() - Complex(1.0)) > kHermitianTol) {
    throw InvalidStateError(fmt::format("density matrix trace is {}", rho_.trace().real()));
  }
  if (hermitian_eigenvalues(rho_).minCoeff() < -kHermitianTol) {
    throw InvalidStateError("density matrix has a negative eigenvalue");
  }
}

DensityMatrix DensityMatrix::trusted(std::vector<Vertex> sites, std::vector<int> dims, Matrix rho) {
  DensityMatrix out;
  out.sites_ = std::move(sites);
  out.dims_ = std::move(dims);
  out.rho_ = std::move(rho);
  return out;
}

DensityMatrix DensityMatrix::single_system(Matrix rho) {
  const int d = static_cast<int>(rho.rows());
  return DensityMatrix({0}, {d}, std::move(rho));
}

DensityMatrix DensityMatrix::pure(const StateVector& psi) {
  std::vector<Vertex> sites(psi.space().site_dims().size());
  for (std::size_t i = 0; i < sites.size(); ++i) sites[i] = static_cast<Vertex>(i);
  return trusted(std::move(sites), psi.space().site_dims(), psi.amplitudes() * psi.amplitudes().adjoint());
}

HermitianOperator::HermitianOperator(Matrix entries, VertexSet support, const std::vector<int>& site_dims)
    : m_(std::move(entries)), support_(std::move(support)) {
  require_sites(support_, static_cast<int>(site_dims.size()), "operator support");
  Eigen::Index d = 1;
  for (Vertex v : support_) d *= site_dims[static_cast<std::size_t>(v)];
  if (m_.rows() != d || m_.cols() != d) {
    throw DimensionError(fmt::format("operator on {} must be {}x{}, got {}x{}", to_string(support_), d, d, m_.rows(), m_.cols()));
  }
  if (hermiticity_defect(m_) > kHermitianTol) throw InvalidStateError("operator is not Hermitian");
}

Matrix embed_matrix(const Matrix& local, const VertexSet& support, const ProductSpace& space) {
  const auto dim = static_cast<Eigen::Index>(space.total_dim());
  Matrix out = Matrix::Zero(dim, dim);
  add_embedded(out, local, support, space);
  return out;
}

HermitianOperator embed_operator(const HermitianOperator& term, const ProductSpace& space) {
  std::vector<Vertex> all(static_cast<std::size_t>(space.num_sites()));
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = static_cast<Vertex>(i);
  return HermitianOperator(embed_matrix(term.matrix(), term.support(), space), VertexSet(std::move(all)), space.site_dims());
}

HermitianOperator build_hamiltonian(const Interaction& interaction, const ProductSpace& space) {
  if (interaction.site_dims() != space.site_dims()) throw DimensionError("interaction and space disagree on local dimensions");
  const auto dim = static_cast<Eigen::Index>(space.total_dim());
  Matrix h = Matrix::Zero(dim, dim);
  for (const auto& term : interaction.terms()) add_embedded(h, term.matrix, term.support, space);
  std::vector<Vertex> all(static_cast<std::size_t>(space.num_sites()));
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = static_cast<Vertex>(i);
  return HermitianOperator(std::move(h), VertexSet(std::move(all)), space.site_dims());
}

Propagator::Propagator(const Matrix& hamiltonian) {
  if (hamiltonian.rows() != hamiltonian.cols()) throw DimensionError("Hamiltonian must be square");
  const double scale = std::max(1.0, hamiltonian.size() ? hamiltonian.cwiseAbs().maxCoeff() : 0.0);
  if (hermiticity_defect(hamiltonian) > kHermitianTol * scale) {
    throw InvalidStateError("cannot diagonalize a non-Hermitian Hamiltonian");
  }
  const bool is_real = hamiltonian.size() == 0 || hamiltonian.imag().cwiseAbs().maxCoeff() == 0.0;
  if (is_real) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(hamiltonian.real());
    if (es.info() != Eigen::Success) throw InvalidStateError("eigendecomposition failed");
    energies_ = es.eigenvalues();
    real_vectors_ = es.eigenvectors();
    vectors_ = real_vectors_->cast<Complex>();
  } else {
    Eigen::SelfAdjointEigenSolver<Matrix> es(hamiltonian);
    if (es.info() != Eigen::Success) throw InvalidStateError("eigendecomposition failed");
    energies_ = es.eigenvalues();
    vectors_ = es.eigenvectors();
  }
}

Vector Propagator::evolve(const Vector& psi, double t) const {
  if (static_cast<std::size_t>(psi.size()) != dim()) throw DimensionError("state and Hamiltonian dimensions differ");
  Vector c = real_vectors_ ? Vector(real_vectors_->transpose() * psi) : Vector(vectors_.adjoint() * psi);
  for (Eigen::Index k = 0; k < c.size(); ++k) c(k) *= std::polar(1.0, -energies_(k) * t);
  return real_vectors_ ? Vector(*real_vectors_ * c) : Vector(vectors_ * c);
}

StateVector Propagator::evolve(const StateVector& psi, double t) const {
  return StateVector::normalized(psi.space(), evolve(psi.amplitudes(), t));
}

Matrix Propagator::to_eigenbasis(const Matrix& a) const {
  if (static_cast<std::size_t>(a.rows()) != dim() || a.rows() != a.cols()) throw DimensionError("operator dimension mismatch");
  if (real_vectors_) return real_vectors_->transpose() * a * *real_vectors_;
  return vectors_.adjoint() * a * vectors_;
}

Matrix Propagator::heisenberg_from_eigenbasis(const Matrix& a_eig, double t) const {
  const auto n = static_cast<Eigen::Index>(dim());
  Vector phase(n);
  for (Eigen::Index k = 0; k < n; ++k) phase(k) = std::polar(1.0, energies_(k) * t);
  Matrix rotated = phase.asDiagonal() * a_eig * phase.conjugate().asDiagonal();
  if (real_vectors_) return *real_vectors_ * rotated * real_vectors_->transpose();
  return vectors_ * rotated * vectors_.adjoint();
}

Matrix Propagator::heisenberg(const Matrix& a, double t) const { return heisenberg_from_eigenbasis(to_eigenbasis(a), t); }

Vector Propagator::ground_state() const {
  if (dim() == 0) throw DimensionError("empty Hamiltonian");
  return vectors_.col(0);
}

StateVector evolve(const HermitianOperator& H, const StateVector& psi, double t) {
  return Propagator(H.matrix()).evolve(psi, t);
}

DensityMatrix partial_trace(const StateVector& psi, const VertexSet& keep) {
  if (keep.empty()) throw DimensionError("partial trace needs a non-empty kept set");
  require_sites(keep, psi.space().num_sites(), "kept set");
  const Matrix m = coefficient_matrix(psi, keep);
  return DensityMatrix::trusted(keep.ids(), dims_of(psi.space().site_dims(), keep), m * m.adjoint());
}

DensityMatrix partial_trace(const DensityMatrix& rho, const VertexSet& keep) {
  if (keep.empty()) throw DimensionError("partial trace needs a non-empty kept set");
  std::vector<Vertex> positions;
  for (Vertex v : keep) {
    const auto it = std::find(rho.sites().begin(), rho.sites().end(), v);
    if (it == rho.sites().end()) {
      throw DimensionError(fmt::format("kept site {} is not a site of the density matrix", v));
    }
    positions.push_back(static_cast<Vertex>(it - rho.sites().begin()));
  }
  const VertexSet local(positions);
  const SubsystemSplit split(rho.dims(), local);
  const auto k = static_cast<Eigen::Index>(split.kept_dim());
  Matrix out = Matrix::Zero(k, k);
  const Matrix& full = rho.matrix();
  for (std::size_t r = 0; r < split.rest_dim(); ++r) {
    for (Eigen::Index a = 0; a < k; ++a) {
      const auto row = static_cast<Eigen::Index>(split.flat_index(static_cast<std::size_t>(a), r));
      for (Eigen::Index b = 0; b < k; ++b) {
        out(a, b) += full(row, static_cast<Eigen::Index>(split.flat_index(static_cast<std::size_t>(b), r)));
      }
    }
  }
  // Result sites follow rho's own site order.
  std::vector<Vertex> sites;
  std::vector<int> dims;
  for (Vertex p : local) {
    sites.push_back(rho.sites()[static_cast<std::size_t>(p)]);
    dims.push_back(rho.dims()[static_cast<std::size_t>(p)]);
  }
  return DensityMatrix::trusted(std::move(sites), std::move(dims), std::move(out));
}

double trace_norm(const Matrix& a) {
  if (a.size() == 0) return 0.0;
  if (a.rows() == a.cols()) {
    const double scale = std::max(1.0, a.cwiseAbs().maxCoeff());
    if (hermiticity_defect(a) <= 1e-14 * scale) return hermitian_eigenvalues(0.5 * (a + a.adjoint())).cwiseAbs().sum();
  }
  Eigen::BDCSVD<Matrix> svd(a);
  return svd.singularValues().sum();
}

double entropy_of_spectrum(const Eigen::VectorXd& eigenvalues) {
  double s = 0.0;
  for (double lambda : eigenvalues) {
    if (lambda < kNegativeEigenvalue) {
      throw InvalidStateError(fmt::format("density matrix has eigenvalue {} below -1e-8", lambda));
    }
    if (lambda <= kEntropyZero) continue;
    s -= lambda * std::log2(lambda);
  }
  return s;
}

double von_neumann_entropy(const DensityMatrix& rho) { return entropy_of_spectrum(hermitian_eigenvalues(rho.matrix())); }

double conditional_entropy(const DensityMatrix& rho_xy, const VertexSet& X, const VertexSet& Y) {
  const VertexSet sites(rho_xy.sites());
  if (X.intersects(Y) || set_union(X, Y) != sites) {
    throw GeometryError(fmt::format("{} | {} does not partition the sites {}", to_string(X), to_string(Y), to_string(sites)));
  }
  const double s_xy = von_neumann_entropy(rho_xy);
  if (Y.empty()) return s_xy;
  if (X.empty()) return 0.0;
  return s_xy - von_neumann_entropy(partial_trace(rho_xy, Y));
}

double entanglement_entropy(const StateVector& psi, const VertexSet& keep) {
  require_sites(keep, psi.space().num_sites(), "kept set");
  if (keep.empty() || keep.size() == psi.space().site_dims().size()) return 0.0;
  const Matrix m = coefficient_matrix(psi, keep);
  const Matrix gram = m.rows() <= m.cols() ? Matrix(m * m.adjoint()) : Matrix(m.adjoint() * m);
  return entropy_of_spectrum(hermitian_eigenvalues(gram));
}

double binary_entropy(double x) {
  if (!(x >= 0.0 && x <= 1.0)) throw DomainError(fmt::format("binary entropy argument {} outside [0,1]", x));
  if (x == 0.0 || x == 1.0) return 0.0;
  return -x * std::log2(x) - (1.0 - x) * std::log2(1.0 - x);
}

double audenaert_rhs(double trace_distance, std::size_t dim) {
  if (!(trace_distance >= 0.0) || trace_distance > 2.0 + 1e-12) {
    throw DomainError(fmt::format("trace distance {} outside [0,2]", trace_distance));
  }
  if (dim < 2) throw DomainError("dimension must be >= 2");
  const double half = std::min(trace_distance, 2.0) / 2.0;
  return half * std::log2(static_cast<double>(dim - 1)) + binary_entropy(half);
}

double alicki_rhs(double trace_distance, std::size_t dim_x) {
  if (!(trace_distance >= 0.0)) throw DomainError("trace distance must be non-negative");
  if (trace_distance >= 1.0) {
    throw ValidityError(fmt::format("conditional-entropy continuity needs trace distance < 1, got {}", trace_distance));
  }
  if (dim_x < 2) throw DomainError("dimension must be >= 2");
  return 4.0 * trace_distance * std::log2(static_cast<double>(dim_x)) + 2.0 * binary_entropy(trace_distance);
}

TelescopingResult telescoping_entropy(const DensityMatrix& rho_y, const ShellDecomposition& shells) {
  if (shells.shells.empty() || shells.tails.size() != shells.shells.size()) throw GeometryError("empty shell decomposition");
  VertexSet covered;
  std::size_t count = 0;
  for (const auto& s : shells.shells) {
    covered = set_union(covered, s);
    count += s.size();
  }
  const VertexSet sites(rho_y.sites());
  if (covered != sites || count != sites.size()) {
    throw GeometryError(fmt::format("shells do not partition the sites {}", to_string(sites)));
  }

  TelescopingResult out;
  out.total = von_neumann_entropy(rho_y);
  const int n = shells.depth();
  for (int l = 0; l < n; ++l) {
    const auto& tail = shells.tails[static_cast<std::size_t>(l)];
    const DensityMatrix rho_tail = l == 0 ? rho_y : partial_trace(rho_y, tail);
    out.parts.push_back(conditional_entropy(rho_tail, shells.shells[static_cast<std::size_t>(l)],
                                            shells.tails[static_cast<std::size_t>(l) + 1]));
  }
  const auto& last = shells.tails.back();
  out.parts.push_back(n == 0 ? out.total : von_neumann_entropy(partial_trace(rho_y, last)));
  double sum = 0.0;
  for (double p : out.parts) sum += p;
  out.residual = std::abs(out.total - sum);
  if (out.residual > 1e-9) {
    throw InvalidStateError(fmt::format("telescoping sum misses S(rho_Y) by {}", out.residual));
  }
  return out;
}

}  // namespace lrcert
