#pragma once

#include <cstdint>
#include <initializer_list>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace lrcert {

using Vertex = int;

/// Sorted, duplicate-free list of vertex ids.
class VertexSet {
 public:
  VertexSet() = default;
  VertexSet(std::initializer_list<Vertex> ids);
  explicit VertexSet(std::vector<Vertex> ids);

  const std::vector<Vertex>& ids() const noexcept { return ids_; }
  std::size_t size() const noexcept { return ids_.size(); }
  bool empty() const noexcept { return ids_.empty(); }
  bool contains(Vertex v) const noexcept;

  auto begin() const noexcept { return ids_.begin(); }
  auto end() const noexcept { return ids_.end(); }

  bool is_subset_of(const VertexSet& other) const;
  bool intersects(const VertexSet& other) const;

  friend VertexSet set_union(const VertexSet& a, const VertexSet& b);
  friend VertexSet set_intersection(const VertexSet& a, const VertexSet& b);
  friend VertexSet set_difference(const VertexSet& a, const VertexSet& b);

  bool operator==(const VertexSet&) const = default;

 private:
  std::vector<Vertex> ids_;
};

VertexSet set_union(const VertexSet& a, const VertexSet& b);
VertexSet set_intersection(const VertexSet& a, const VertexSet& b);
VertexSet set_difference(const VertexSet& a, const VertexSet& b);

std::string to_string(const VertexSet& s);

/// Dense row-major matrix of hop distances.
class DistanceMatrix {
 public:
  DistanceMatrix() = default;
  DistanceMatrix(int n, std::vector<int> entries) : n_(n), d_(std::move(entries)) {}

  int size() const noexcept { return n_; }
  int operator()(Vertex i, Vertex j) const noexcept {
    return d_[static_cast<std::size_t>(i) * static_cast<std::size_t>(n_) + static_cast<std::size_t>(j)];
  }
  const std::vector<int>& data() const noexcept { return d_; }

 private:
  int n_ = 0;
  std::vector<int> d_;
};

/// Finite connected graph with its hop metric. Vertex ids are 0..n-1.
class LatticeGraph {
 public:
  /// Throws GeometryError if the graph is disconnected, has self-loops or out-of-range endpoints.
  LatticeGraph(int num_vertices, std::vector<std::pair<Vertex, Vertex>> edges);

  /// Path 0-1-...-(L-1).
  static LatticeGraph chain(int length);
  /// Hypercubic grid with `dim` dimensions and `side` sites per dimension, open boundaries.
  static LatticeGraph grid(int dim, int side);
  /// Rooted tree in which every non-leaf vertex has `branches` children; depth 0 is a single root.
  static LatticeGraph tree(int branches, int depth);
  /// Generator spec: `chain:L`, `grid:n:L`, or `tree:n:depth`.
  static LatticeGraph from_generator(std::string_view spec);
  /// One `u v` pair per line; blank lines and lines starting with '#' are ignored.
  /// Vertex ids must be dense non-negative integers.
  static LatticeGraph from_edge_list(std::istream& in);

  int num_vertices() const noexcept { return n_; }
  const std::vector<std::pair<Vertex, Vertex>>& edges() const noexcept { return edges_; }
  const std::vector<Vertex>& neighbors(Vertex v) const { return adjacency_.at(static_cast<std::size_t>(v)); }
  const DistanceMatrix& distances() const noexcept { return dist_; }

  int distance(Vertex i, Vertex j) const;
  /// min over x in X of d(j, x).
  int distance(Vertex j, const VertexSet& X) const;
  /// min over pairs.
  int distance(const VertexSet& X, const VertexSet& Y) const;

  int diameter() const noexcept { return diameter_; }
  /// max over j of d(j, X).
  int eccentricity(const VertexSet& X) const;

  bool contains(Vertex v) const noexcept { return v >= 0 && v < n_; }
  void require_members(const VertexSet& s, std::string_view what) const;
  VertexSet all_vertices() const;

 private:
  int n_;
  std::vector<std::pair<Vertex, Vertex>> edges_;
  std::vector<std::vector<Vertex>> adjacency_;
  DistanceMatrix dist_;
  int diameter_ = 0;
};

/// All-pairs hop distances by breadth-first search from every vertex.
/// Throws GeometryError naming an unreachable pair when the graph is disconnected.
DistanceMatrix distance_matrix(int num_vertices, const std::vector<std::vector<Vertex>>& adjacency);
inline const DistanceMatrix& distance_matrix(const LatticeGraph& g) { return g.distances(); }

/// R_l(i) = { j : d(i,j) = l }.
VertexSet sphere(const LatticeGraph& g, Vertex i, int l);

/// X_l = { j : d(j,X) = l }.
VertexSet shell_set(const LatticeGraph& g, const VertexSet& X, int l);

struct BoundaryPartition {
  VertexSet interior;
  VertexSet boundary;
};

/// Int(X) = { i in X : R_1(i) subset of X }, boundary = X \ Int(X).
BoundaryPartition boundary_and_interior(const LatticeGraph& g, const VertexSet& X);

/// Union of X_l for l = 0..x.
VertexSet enlargement(const LatticeGraph& g, const VertexSet& X, int x);

/// Partition of a probe region Y into shells Y_l = Y ∩ X_{d(X,Y)+l} and their tails.
struct ShellDecomposition {
  int base_distance = 0;             ///< d(X,Y)
  std::vector<VertexSet> shells;     ///< Y_0..Y_N (some may be empty in the middle)
  std::vector<VertexSet> tails;      ///< Ỹ_l = union of Y_m for m >= l

  int depth() const noexcept { return static_cast<int>(shells.size()) - 1; }  ///< N
};

/// Throws GeometryError when d(X,Y) = 0.
ShellDecomposition shell_decomposition(const LatticeGraph& g, const VertexSet& X, const VertexSet& Y);

struct ShellCoverResult {
  bool holds = true;
  std::optional<Vertex> counterexample;
};

/// Checks X_l ⊆ ∪_{i ∈ ∂X} R_l(i).
ShellCoverResult verify_shell_cover(const LatticeGraph& g, const VertexSet& X, int l);

enum class GrowthFamily { Chain, Grid, Tree, Generic };

std::string_view to_string(GrowthFamily f);
GrowthFamily parse_growth_family(std::string_view s);

/// Sphere-growth constants: |R_l(i)| <= b e^{alpha l}.
struct GrowthConstants {
  double b = 0.0;
  double alpha = 0.0;
  GrowthFamily family = GrowthFamily::Generic;
  std::optional<double> a;  ///< fractal coefficient, grid family only
  std::optional<int> n;     ///< fractal dimension (grid) or branch count (tree)
};

struct GrowthRequest {
  GrowthFamily family = GrowthFamily::Generic;
  std::optional<double> alpha;  ///< required for grid and generic
  std::optional<double> a;      ///< grid: fitted on the instance when absent
  std::optional<int> n;         ///< grid: dimension; tree: branches
};

/// b = a (n-1)! / alpha^(n-1).
double fractal_growth_coefficient(double a, int n, double alpha);

/// Returns constants for the requested family and verifies |R_l(i)| <= b e^{alpha l}
/// on every vertex and radius of the instance (l >= 1 for the grid family, whose growth
/// law is only stated for l > 0). Throws GeometryError with the violating (i, l).
GrowthConstants fit_growth_constants(const LatticeGraph& g, const GrowthRequest& request);

/// Largest |R_l(i)| e^{-alpha l} over the instance, with its arg-max.
struct GrowthWitness {
  double ratio = 0.0;
  Vertex vertex = 0;
  int radius = 0;
};
GrowthWitness max_growth_ratio(const LatticeGraph& g, double alpha, int min_radius = 0);

}  // namespace lrcert
