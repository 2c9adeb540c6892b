#include "lrcert/lattice.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <deque>
#include <istream>
#include <iterator>
#include <limits>
#include <set>
#include <sstream>

#include <fmt/format.h>
#include <fmt/ranges.h>

#include "lrcert/errors.hpp"

namespace lrcert {

namespace {

VertexSet from_sorted(std::vector<Vertex> ids) { return VertexSet(std::move(ids)); }

int parse_int(std::string_view s, std::string_view what) {
  int value = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw GeometryError(fmt::format("invalid {} '{}'", what, s));
  }
  return value;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= s.size(); ++i) {
    if (i == s.size() || s[i] == sep) {
      out.push_back(s.substr(start, i - start));
      start = i + 1;
    }
  }
  return out;
}

}  // namespace

VertexSet::VertexSet(std::initializer_list<Vertex> ids) : VertexSet(std::vector<Vertex>(ids)) {}

VertexSet::VertexSet(std::vector<Vertex> ids) : ids_(std::move(ids)) {
  std::sort(ids_.begin(), ids_.end());
  ids_.erase(std::unique(ids_.begin(), ids_.end()), ids_.end());
}

bool VertexSet::contains(Vertex v) const noexcept { return std::binary_search(ids_.begin(), ids_.end(), v); }

bool VertexSet::is_subset_of(const VertexSet& other) const {
  return std::includes(other.ids_.begin(), other.ids_.end(), ids_.begin(), ids_.end());
}

bool VertexSet::intersects(const VertexSet& other) const { return !set_intersection(*this, other).empty(); }

VertexSet set_union(const VertexSet& a, const VertexSet& b) {
  std::vector<Vertex> out;
  std::set_union(a.ids_.begin(), a.ids_.end(), b.ids_.begin(), b.ids_.end(), std::back_inserter(out));
  return from_sorted(std::move(out));
}

VertexSet set_intersection(const VertexSet& a, const VertexSet& b) {
  std::vector<Vertex> out;
  std::set_intersection(a.ids_.begin(), a.ids_.end(), b.ids_.begin(), b.ids_.end(), std::back_inserter(out));
  return from_sorted(std::move(out));
}

VertexSet set_difference(const VertexSet& a, const VertexSet& b) {
  std::vector<Vertex> out;
  std::set_difference(a.ids_.begin(), a.ids_.end(), b.ids_.begin(), b.ids_.end(), std::back_inserter(out));
  return from_sorted(std::move(out));
}

std::string to_string(const VertexSet& s) { return fmt::format("{{{}}}", fmt::join(s.ids(), ",")); }

DistanceMatrix distance_matrix(int num_vertices, const std::vector<std::vector<Vertex>>& adjacency) {
  const auto n = static_cast<std::size_t>(num_vertices);
  std::vector<int> d(n * n, -1);
  std::vector<Vertex> queue(n);
  for (std::size_t src = 0; src < n; ++src) {
    int* row = d.data() + src * n;
    std::size_t head = 0;
    std::size_t tail = 0;
    row[src] = 0;
    queue[tail++] = static_cast<Vertex>(src);
    while (head < tail) {
      const Vertex u = queue[head++];
      for (Vertex w : adjacency[static_cast<std::size_t>(u)]) {
        if (row[w] < 0) {
          row[w] = row[u] + 1;
          queue[tail++] = w;
        }
      }
    }
    if (tail != n) {
      for (std::size_t j = 0; j < n; ++j) {
        if (row[j] < 0) throw GeometryError(fmt::format("graph is disconnected: vertex {} cannot reach vertex {}", src, j));
      }
    }
  }
  return DistanceMatrix(num_vertices, std::move(d));
}

LatticeGraph::LatticeGraph(int num_vertices, std::vector<std::pair<Vertex, Vertex>> edges) : n_(num_vertices) {
  if (n_ <= 0) throw GeometryError("graph needs at least one vertex");
  std::set<std::pair<Vertex, Vertex>> unique;
  for (auto [u, v] : edges) {
    if (u < 0 || v < 0 || u >= n_ || v >= n_) {
      throw GeometryError(fmt::format("edge ({}, {}) references a vertex outside 0..{}", u, v, n_ - 1));
    }
    if (u == v) throw GeometryError(fmt::format("self-loop at vertex {}", u));
    unique.emplace(std::min(u, v), std::max(u, v));
  }
  edges_.assign(unique.begin(), unique.end());
  adjacency_.resize(static_cast<std::size_t>(n_));
  for (auto [u, v] : edges_) {
    adjacency_[static_cast<std::size_t>(u)].push_back(v);
    adjacency_[static_cast<std::size_t>(v)].push_back(u);
  }
  for (auto& nb : adjacency_) std::sort(nb.begin(), nb.end());
  dist_ = distance_matrix(n_, adjacency_);
  diameter_ = *std::max_element(dist_.data().begin(), dist_.data().end());
}

LatticeGraph LatticeGraph::chain(int length) {
  if (length < 1) throw GeometryError("chain length must be >= 1");
  std::vector<std::pair<Vertex, Vertex>> edges;
  for (int i = 0; i + 1 < length; ++i) edges.emplace_back(i, i + 1);
  return LatticeGraph(length, std::move(edges));
}

LatticeGraph LatticeGraph::grid(int dim, int side) {
  if (dim < 1 || side < 1) throw GeometryError("grid needs dimension >= 1 and side >= 1");
  long long total = 1;
  for (int k = 0; k < dim; ++k) {
    total *= side;
    if (total > 1'000'000) throw GeometryError("grid too large");
  }
  const int n = static_cast<int>(total);
  std::vector<std::pair<Vertex, Vertex>> edges;
  // Row-major coordinates: the last coordinate varies fastest.
  for (int v = 0; v < n; ++v) {
    int stride = 1;
    for (int k = 0; k < dim; ++k) {
      const int coord = (v / stride) % side;
      if (coord + 1 < side) edges.emplace_back(v, v + stride);
      stride *= side;
    }
  }
  return LatticeGraph(n, std::move(edges));
}

LatticeGraph LatticeGraph::tree(int branches, int depth) {
  if (branches < 1 || depth < 0) throw GeometryError("tree needs branches >= 1 and depth >= 0");
  std::vector<std::pair<Vertex, Vertex>> edges;
  // Breadth-first numbering: children of v are v*branches + 1 .. v*branches + branches.
  long long count = 1;
  long long level = 1;
  for (int d = 0; d < depth; ++d) {
    level *= branches;
    count += level;
    if (count > 1'000'000) throw GeometryError("tree too large");
  }
  const int n = static_cast<int>(count);
  for (int v = 1; v < n; ++v) edges.emplace_back((v - 1) / branches, v);
  return LatticeGraph(n, std::move(edges));
}

LatticeGraph LatticeGraph::from_generator(std::string_view spec) {
  const auto parts = split(spec, ':');
  const auto name = parts.front();
  if (name == "chain" && parts.size() == 2) return chain(parse_int(parts[1], "chain length"));
  if (name == "grid" && parts.size() == 3) {
    return grid(parse_int(parts[1], "grid dimension"), parse_int(parts[2], "grid side"));
  }
  if (name == "tree" && parts.size() == 3) {
    return tree(parse_int(parts[1], "tree branch count"), parse_int(parts[2], "tree depth"));
  }
  throw GeometryError(fmt::format("unknown lattice generator '{}' (expected chain:L, grid:n:L or tree:n:depth)", spec));
}

LatticeGraph LatticeGraph::from_edge_list(std::istream& in) {
  std::vector<std::pair<Vertex, Vertex>> edges;
  int max_id = -1;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream ls(line);
    long long u = 0;
    long long v = 0;
    std::string extra;
    if (!(ls >> u >> v) || (ls >> extra)) {
      throw GeometryError(fmt::format("edge list line {}: expected 'u v', got '{}'", lineno, line));
    }
    if (u < 0 || v < 0 || u > std::numeric_limits<int>::max() || v > std::numeric_limits<int>::max()) {
      throw GeometryError(fmt::format("edge list line {}: vertex ids must be non-negative ints", lineno));
    }
    edges.emplace_back(static_cast<Vertex>(u), static_cast<Vertex>(v));
    max_id = std::max({max_id, static_cast<int>(u), static_cast<int>(v)});
  }
  if (max_id < 0) throw GeometryError("edge list is empty");
  return LatticeGraph(max_id + 1, std::move(edges));
}

int LatticeGraph::distance(Vertex i, Vertex j) const {
  if (!contains(i) || !contains(j)) throw GeometryError(fmt::format("vertex pair ({}, {}) not in graph", i, j));
  return dist_(i, j);
}

int LatticeGraph::distance(Vertex j, const VertexSet& X) const {
  if (X.empty()) throw GeometryError("distance to an empty set");
  int best = std::numeric_limits<int>::max();
  for (Vertex x : X) best = std::min(best, distance(j, x));
  return best;
}

int LatticeGraph::distance(const VertexSet& X, const VertexSet& Y) const {
  if (Y.empty()) throw GeometryError("distance to an empty set");
  int best = std::numeric_limits<int>::max();
  for (Vertex y : Y) best = std::min(best, distance(y, X));
  return best;
}

int LatticeGraph::eccentricity(const VertexSet& X) const {
  int worst = 0;
  for (Vertex j = 0; j < n_; ++j) worst = std::max(worst, distance(j, X));
  return worst;
}

void LatticeGraph::require_members(const VertexSet& s, std::string_view what) const {
  for (Vertex v : s) {
    if (!contains(v)) throw GeometryError(fmt::format("{} references vertex {} outside 0..{}", what, v, n_ - 1));
  }
}

VertexSet LatticeGraph::all_vertices() const {
  std::vector<Vertex> ids(static_cast<std::size_t>(n_));
  for (int i = 0; i < n_; ++i) ids[static_cast<std::size_t>(i)] = i;
  return VertexSet(std::move(ids));
}

VertexSet sphere(const LatticeGraph& g, Vertex i, int l) {
  if (!g.contains(i)) throw GeometryError(fmt::format("vertex {} not in graph", i));
  if (l < 0) throw DomainError("sphere radius must be non-negative");
  std::vector<Vertex> out;
  for (Vertex j = 0; j < g.num_vertices(); ++j) {
    if (g.distances()(i, j) == l) out.push_back(j);
  }
  return VertexSet(std::move(out));
}

VertexSet shell_set(const LatticeGraph& g, const VertexSet& X, int l) {
  if (X.empty()) throw GeometryError("shell of an empty set");
  if (l < 0) throw DomainError("shell index must be non-negative");
  g.require_members(X, "shell base set");
  std::vector<Vertex> out;
  for (Vertex j = 0; j < g.num_vertices(); ++j) {
    if (g.distance(j, X) == l) out.push_back(j);
  }
  return VertexSet(std::move(out));
}

BoundaryPartition boundary_and_interior(const LatticeGraph& g, const VertexSet& X) {
  if (X.empty()) throw GeometryError("boundary of an empty set");
  g.require_members(X, "boundary set");
  std::vector<Vertex> interior;
  std::vector<Vertex> boundary;
  for (Vertex i : X) {
    const auto& nb = g.neighbors(i);
    const bool inside = std::all_of(nb.begin(), nb.end(), [&](Vertex j) { return X.contains(j); });
    (inside ? interior : boundary).push_back(i);
  }
  return {VertexSet(std::move(interior)), VertexSet(std::move(boundary))};
}

VertexSet enlargement(const LatticeGraph& g, const VertexSet& X, int x) {
  if (X.empty()) throw GeometryError("enlargement of an empty set");
  if (x < 0) throw DomainError("enlargement radius must be non-negative");
  g.require_members(X, "enlargement base set");
  std::vector<Vertex> out;
  for (Vertex j = 0; j < g.num_vertices(); ++j) {
    if (g.distance(j, X) <= x) out.push_back(j);
  }
  return VertexSet(std::move(out));
}

ShellDecomposition shell_decomposition(const LatticeGraph& g, const VertexSet& X, const VertexSet& Y) {
  if (X.empty() || Y.empty()) throw GeometryError("shell decomposition needs non-empty X and Y");
  g.require_members(X, "quench region");
  g.require_members(Y, "probe region");
  const int base = g.distance(X, Y);
  if (base == 0) throw GeometryError(fmt::format("d(X,Y) = 0 for X={} and Y={}", to_string(X), to_string(Y)));

  int depth = 0;
  for (Vertex y : Y) depth = std::max(depth, g.distance(y, X) - base);

  std::vector<std::vector<Vertex>> members(static_cast<std::size_t>(depth) + 1);
  for (Vertex y : Y) members[static_cast<std::size_t>(g.distance(y, X) - base)].push_back(y);

  ShellDecomposition out;
  out.base_distance = base;
  for (auto& m : members) out.shells.emplace_back(std::move(m));
  out.tails.resize(out.shells.size());
  VertexSet acc;
  for (std::size_t l = out.shells.size(); l-- > 0;) {
    acc = set_union(acc, out.shells[l]);
    out.tails[l] = acc;
  }
  return out;
}

ShellCoverResult verify_shell_cover(const LatticeGraph& g, const VertexSet& X, int l) {
  if (l <= 0) throw DomainError("shell cover radius must be positive");
  const auto boundary = boundary_and_interior(g, X).boundary;
  for (Vertex j : shell_set(g, X, l)) {
    const bool covered = std::any_of(boundary.begin(), boundary.end(), [&](Vertex i) { return g.distance(i, j) == l; });
    if (!covered) return {false, j};
  }
  return {true, std::nullopt};
}

std::string_view to_string(GrowthFamily f) {
  switch (f) {
    case GrowthFamily::Chain: return "chain";
    case GrowthFamily::Grid: return "grid";
    case GrowthFamily::Tree: return "tree";
    case GrowthFamily::Generic: return "generic";
  }
  return "generic";
}

GrowthFamily parse_growth_family(std::string_view s) {
  if (s == "chain") return GrowthFamily::Chain;
  if (s == "grid") return GrowthFamily::Grid;
  if (s == "tree") return GrowthFamily::Tree;
  if (s == "generic") return GrowthFamily::Generic;
  throw DomainError(fmt::format("unknown growth family '{}'", s));
}

double fractal_growth_coefficient(double a, int n, double alpha) {
  if (!(a > 0.0)) throw DomainError("fractal coefficient a must be positive");
  if (n < 1) throw DomainError("fractal dimension n must be >= 1");
  if (!(alpha > 0.0)) throw DomainError("fractal growth needs alpha > 0");
  return a * std::tgamma(static_cast<double>(n)) / std::pow(alpha, n - 1);
}

GrowthWitness max_growth_ratio(const LatticeGraph& g, double alpha, int min_radius) {
  GrowthWitness w;
  const int n = g.num_vertices();
  std::vector<int> counts(static_cast<std::size_t>(g.diameter()) + 1);
  for (Vertex i = 0; i < n; ++i) {
    std::fill(counts.begin(), counts.end(), 0);
    for (Vertex j = 0; j < n; ++j) ++counts[static_cast<std::size_t>(g.distances()(i, j))];
    for (int l = min_radius; l <= g.diameter(); ++l) {
      const int c = counts[static_cast<std::size_t>(l)];
      if (c == 0) continue;
      const double ratio = c * std::exp(-alpha * l);
      if (ratio > w.ratio) w = {ratio, i, l};
    }
  }
  return w;
}

GrowthConstants fit_growth_constants(const LatticeGraph& g, const GrowthRequest& request) {
  GrowthConstants out;
  out.family = request.family;
  int min_radius = 0;
  switch (request.family) {
    case GrowthFamily::Chain:
      out.b = 2.0;
      out.alpha = 0.0;
      break;
    case GrowthFamily::Tree: {
      if (!request.n || *request.n < 1) throw DomainError("tree growth needs a branch count n >= 1");
      out.n = request.n;
      out.b = 2.0;
      out.alpha = std::log(static_cast<double>(*request.n));
      break;
    }
    case GrowthFamily::Grid: {
      if (!request.n || *request.n < 1) throw DomainError("grid growth needs a dimension n >= 1");
      if (!request.alpha || !(*request.alpha > 0.0)) throw DomainError("grid growth needs alpha > 0");
      const int n = *request.n;
      double a = 0.0;
      if (request.a) {
        a = *request.a;
      } else {
        // Smallest a with |R_l(i)| <= a l^(n-1) for l > 0 on the instance.
        std::vector<int> counts(static_cast<std::size_t>(g.diameter()) + 1);
        for (Vertex i = 0; i < g.num_vertices(); ++i) {
          std::fill(counts.begin(), counts.end(), 0);
          for (Vertex j = 0; j < g.num_vertices(); ++j) ++counts[static_cast<std::size_t>(g.distances()(i, j))];
          for (int l = 1; l <= g.diameter(); ++l) {
            a = std::max(a, counts[static_cast<std::size_t>(l)] / std::pow(static_cast<double>(l), n - 1));
          }
        }
        if (a == 0.0) a = 1.0;  // single vertex: no l > 0 spheres
      }
      out.a = a;
      out.n = n;
      out.alpha = *request.alpha;
      out.b = fractal_growth_coefficient(a, n, out.alpha);
      min_radius = 1;
      break;
    }
    case GrowthFamily::Generic: {
      const double alpha = request.alpha.value_or(0.0);
      if (!std::isfinite(alpha) || alpha < 0.0) {
        const auto w = max_growth_ratio(g, 0.0);
        throw DomainError(fmt::format("alpha = {} admits no growth bound; largest sphere is R_{}({}) with {} vertices",
                                      alpha, w.radius, w.vertex, w.ratio));
      }
      out.alpha = alpha;
      out.b = max_growth_ratio(g, alpha).ratio;
      break;
    }
  }

  // Exhaustive check of |R_l(i)| <= b e^{alpha l}.
  const auto w = max_growth_ratio(g, out.alpha, min_radius);
  if (w.ratio > out.b * (1.0 + 1e-12)) {
    const auto size = sphere(g, w.vertex, w.radius).size();
    throw GeometryError(fmt::format("growth bound b={} alpha={} ({} family) violated at vertex {} radius {}: |R_l(i)| = {}",
                                    out.b, out.alpha, to_string(out.family), w.vertex, w.radius, size));
  }
  return out;
}

}  // namespace lrcert
