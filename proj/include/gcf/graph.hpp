#pragma once

#include <compare>
#include <cstddef>
#include <iosfwd>
#include <limits>
#include <span>
#include <vector>

namespace gcf {

using VertexId = std::size_t;

/// The loss symbol: image of a vertex whose signal entry disappears.
/// Orders after every real vertex id.
inline constexpr VertexId kLost = std::numeric_limits<VertexId>::max();

constexpr bool is_lost(VertexId v) noexcept { return v == kLost; }

/// Hop count of a vertex that cannot be reached.
inline constexpr std::size_t kUnreachable = std::numeric_limits<std::size_t>::max();

struct Edge {
  VertexId u = 0;
  VertexId v = 0;

  auto operator<=>(const Edge&) const = default;
};

/// Undirected simple graph over vertices 0..n-1 in CSR form.
///
/// Immutable once built: no self-loops, no duplicate edges, symmetric
/// adjacency, and each neighbor list sorted ascending.
class Graph {
 public:
  Graph() = default;
  explicit Graph(std::size_t n);

  /// Throws RangeError for ids >= n and ParameterError for self-loops.
  /// Duplicate and reversed edges collapse to a single undirected edge.
  Graph(std::size_t n, std::span<const Edge> edges);

  std::size_t size() const noexcept { return offsets_.empty() ? 0 : offsets_.size() - 1; }
  std::size_t edge_count() const noexcept { return targets_.size() / 2; }

  std::span<const VertexId> neighbors(VertexId v) const {
    return {targets_.data() + offsets_[v], targets_.data() + offsets_[v + 1]};
  }
  std::size_t degree(VertexId v) const { return offsets_[v + 1] - offsets_[v]; }

  /// Binary search in the sorted neighbor list of u.
  bool has_edge(VertexId u, VertexId v) const;

  /// Canonical edge list: u < v, sorted lexicographically.
  std::vector<Edge> edges() const;

  friend bool operator==(const Graph&, const Graph&) = default;

 private:
  std::vector<std::size_t> offsets_;
  std::vector<VertexId> targets_;
};

/// 4-connected rows x cols grid; vertex (r, c) has id r * cols + c.
Graph make_grid_graph(std::size_t rows, std::size_t cols);

/// Points in d-dimensional space, one per vertex.
class CoordinateSet {
 public:
  CoordinateSet() = default;

  /// All rows must share the same dimension d >= 1 and hold finite values.
  explicit CoordinateSet(const std::vector<std::vector<double>>& rows);

  std::size_t size() const noexcept { return dim_ == 0 ? 0 : values_.size() / dim_; }
  std::size_t dimension() const noexcept { return dim_; }
  std::span<const double> point(std::size_t i) const { return {values_.data() + i * dim_, dim_}; }

 private:
  std::size_t dim_ = 0;
  std::vector<double> values_;
};

/// Edge-list text: first line `n`, then one `u v` pair per line. Lines whose
/// first non-blank character is `#` are comments.
Graph load_edge_list(std::istream& in);
void write_edge_list(std::ostream& out, const Graph& g);

/// Comma-separated coordinates, one row per vertex. A first row whose first
/// field is not numeric is treated as a header.
CoordinateSet load_coordinates_csv(std::istream& in);

/// Links every vertex to its k nearest neighbors (Euclidean, ties to the
/// smaller id) and symmetrizes by union.
Graph infer_knn_graph(const CoordinateSet& coords, std::size_t k);

std::vector<std::size_t> bfs_distances(const Graph& g, VertexId source);

bool is_connected(const Graph& g);

}  // namespace gcf
