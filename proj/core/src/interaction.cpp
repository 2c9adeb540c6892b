#include "lrcert/interaction.hpp"

#include <algorithm>

#include <Eigen/Eigenvalues>
#include <fmt/format.h>

#include "lrcert/errors.hpp"

namespace lrcert {

namespace ops {

Matrix identity(int dim) { return Matrix::Identity(dim, dim); }

Matrix sigma_x() {
  Matrix m(2, 2);
  m << 0, 1, 1, 0;
  return m;
}

Matrix sigma_y() {
  const Complex i(0.0, 1.0);
  Matrix m(2, 2);
  m << 0, -i, i, 0;
  return m;
}

Matrix sigma_z() {
  Matrix m(2, 2);
  m << 1, 0, 0, -1;
  return m;
}

Matrix named(std::string_view name) {
  if (name == "identity" || name == "id") return identity(2);
  if (name == "sigma_x" || name == "x") return sigma_x();
  if (name == "sigma_y" || name == "y") return sigma_y();
  if (name == "sigma_z" || name == "z") return sigma_z();
  throw DomainError(fmt::format("unknown operator name '{}'", name));
}

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

Matrix kron_power(const Matrix& single, int sites) {
  Matrix out = Matrix::Identity(1, 1);
  for (int k = 0; k < sites; ++k) out = kron(out, single);
  return out;
}

}  // namespace ops

Interaction::Interaction(std::vector<int> site_dims) : site_dims_(std::move(site_dims)) {
  for (int d : site_dims_) {
    if (d < 1) throw DimensionError("local dimensions must be >= 1");
  }
}

int Interaction::max_local_dim() const {
  return site_dims_.empty() ? 1 : *std::max_element(site_dims_.begin(), site_dims_.end());
}

void Interaction::add_term(VertexSet support, Matrix matrix) {
  if (support.empty()) throw DimensionError("interaction term with empty support");
  Eigen::Index dim = 1;
  for (Vertex v : support) {
    if (v < 0 || v >= num_sites()) {
      throw DimensionError(fmt::format("interaction term support {} exceeds the {} sites", to_string(support), num_sites()));
    }
    dim *= site_dims_[static_cast<std::size_t>(v)];
  }
  if (matrix.rows() != dim || matrix.cols() != dim) {
    throw DimensionError(fmt::format("term on {} must be {}x{}, got {}x{}", to_string(support), dim, dim,
                                     matrix.rows(), matrix.cols()));
  }
  if ((matrix - matrix.adjoint()).cwiseAbs().maxCoeff() > 1e-10) {
    throw InvalidStateError(fmt::format("term on {} is not Hermitian", to_string(support)));
  }
  terms_.push_back({std::move(support), std::move(matrix)});
}

Interaction Interaction::transverse_field_ising(const LatticeGraph& g, double J, double h) {
  Interaction out(std::vector<int>(static_cast<std::size_t>(g.num_vertices()), 2));
  const Matrix zz = ops::kron(ops::sigma_z(), ops::sigma_z());
  if (J != 0.0) {
    for (auto [u, v] : g.edges()) out.add_term(VertexSet{u, v}, J * zz);
  }
  if (h != 0.0) {
    for (Vertex i = 0; i < g.num_vertices(); ++i) out.add_term(VertexSet{i}, h * ops::sigma_x());
  }
  return out;
}

Interaction Interaction::heisenberg(const LatticeGraph& g, double J, double h) {
  Interaction out(std::vector<int>(static_cast<std::size_t>(g.num_vertices()), 2));
  const Matrix bond = ops::kron(ops::sigma_x(), ops::sigma_x()) + ops::kron(ops::sigma_y(), ops::sigma_y()) +
                      ops::kron(ops::sigma_z(), ops::sigma_z());
  if (J != 0.0) {
    for (auto [u, v] : g.edges()) out.add_term(VertexSet{u, v}, J * bond);
  }
  if (h != 0.0) {
    for (Vertex i = 0; i < g.num_vertices(); ++i) out.add_term(VertexSet{i}, h * ops::sigma_z());
  }
  return out;
}

double hermitian_norm(const Matrix& m) {
  if (m.size() == 0) return 0.0;
  Eigen::SelfAdjointEigenSolver<Matrix> es(m, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw InvalidStateError("eigendecomposition failed");
  return es.eigenvalues().cwiseAbs().maxCoeff();
}

VertexSet phi_boundary(const Interaction& interaction, const VertexSet& X) {
  std::vector<Vertex> out;
  for (const auto& term : interaction.terms()) {
    if (term.matrix.cwiseAbs().maxCoeff() == 0.0) continue;
    if (term.support.is_subset_of(X)) continue;
    for (Vertex v : term.support) {
      if (X.contains(v)) out.push_back(v);
    }
  }
  return VertexSet(std::move(out));
}

}  // namespace lrcert
