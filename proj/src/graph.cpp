#include "gcf/graph.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <istream>
#include <numeric>
#include <ostream>
#include <string>

#include "gcf/error.hpp"
#include "text_util.hpp"

namespace gcf {

Graph::Graph(std::size_t n) : offsets_(n + 1, 0) {}

Graph::Graph(std::size_t n, std::span<const Edge> edges) : offsets_(n + 1, 0) {
  std::vector<Edge> directed;
  directed.reserve(edges.size() * 2);
  for (const auto& e : edges) {
    if (e.u >= n || e.v >= n) {
      throw RangeError("edge {" + std::to_string(e.u) + "," + std::to_string(e.v) +
                       "} references a vertex >= n=" + std::to_string(n));
    }
    if (e.u == e.v) throw ParameterError("self-loop at vertex " + std::to_string(e.u));
    directed.push_back({e.u, e.v});
    directed.push_back({e.v, e.u});
  }
  std::sort(directed.begin(), directed.end());
  directed.erase(std::unique(directed.begin(), directed.end()), directed.end());

  targets_.reserve(directed.size());
  for (const auto& e : directed) {
    ++offsets_[e.u + 1];
    targets_.push_back(e.v);
  }
  std::partial_sum(offsets_.begin(), offsets_.end(), offsets_.begin());
}

bool Graph::has_edge(VertexId u, VertexId v) const {
  const auto nbrs = neighbors(u);
  return std::binary_search(nbrs.begin(), nbrs.end(), v);
}

std::vector<Edge> Graph::edges() const {
  std::vector<Edge> out;
  out.reserve(edge_count());
  for (VertexId u = 0; u < size(); ++u) {
    for (const auto v : neighbors(u)) {
      if (u < v) out.push_back({u, v});
    }
  }
  return out;
}

Graph make_grid_graph(std::size_t rows, std::size_t cols) {
  std::vector<Edge> edges;
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) {
      const VertexId id = r * cols + c;
      if (c + 1 < cols) edges.push_back({id, id + 1});
      if (r + 1 < rows) edges.push_back({id, id + cols});
    }
  }
  return Graph(rows * cols, edges);
}

CoordinateSet::CoordinateSet(const std::vector<std::vector<double>>& rows) {
  if (rows.empty()) return;
  dim_ = rows.front().size();
  if (dim_ == 0) throw DimensionError("coordinates must have dimension >= 1");
  values_.reserve(rows.size() * dim_);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != dim_) {
      throw DimensionError("point " + std::to_string(i) + " has dimension " +
                           std::to_string(rows[i].size()) + ", expected " + std::to_string(dim_));
    }
    for (const double x : rows[i]) {
      if (!std::isfinite(x)) throw DimensionError("point " + std::to_string(i) + " is not finite");
      values_.push_back(x);
    }
  }
}

Graph load_edge_list(std::istream& in) {
  detail::LineReader reader(in);
  std::string_view line;
  if (!reader.next(line)) throw ParseError("missing vertex count", reader.line_number());
  const auto header = detail::split_ws(line);
  if (header.size() != 1) throw ParseError("expected a single vertex count", reader.line_number());
  const std::size_t n = detail::parse_size(header[0], "vertex count", reader.line_number());

  std::vector<Edge> edges;
  while (reader.next(line)) {
    const auto at = reader.line_number();
    const auto tokens = detail::split_ws(line);
    if (tokens.size() != 2) throw ParseError("expected 'u v'", at);
    const auto u = detail::parse_size(tokens[0], "vertex id", at);
    const auto v = detail::parse_size(tokens[1], "vertex id", at);
    if (u >= n || v >= n) {
      throw RangeError("line " + std::to_string(at) + ": vertex id " + std::to_string(std::max(u, v)) +
                       " >= n=" + std::to_string(n));
    }
    if (u == v) {
      throw ParseError("self-loop at vertex " + std::to_string(u), at);
    }
    edges.push_back({u, v});
  }
  return Graph(n, edges);
}

void write_edge_list(std::ostream& out, const Graph& g) {
  out << g.size() << '\n';
  for (const auto& e : g.edges()) out << e.u << ' ' << e.v << '\n';
}

CoordinateSet load_coordinates_csv(std::istream& in) {
  detail::LineReader reader(in);
  std::vector<std::vector<double>> rows;
  std::string_view line;
  bool first = true;
  while (reader.next(line)) {
    const auto fields = detail::split(line, ',');
    double probe = 0.0;
    if (first && !detail::try_parse_double(fields.front(), probe)) {
      first = false;
      continue;
    }
    first = false;
    std::vector<double> row;
    row.reserve(fields.size());
    for (const auto f : fields) row.push_back(detail::parse_double(f, "coordinate", reader.line_number()));
    if (!rows.empty() && row.size() != rows.front().size()) {
      throw ParseError("expected " + std::to_string(rows.front().size()) + " columns, got " +
                           std::to_string(row.size()),
                       reader.line_number());
    }
    rows.push_back(std::move(row));
  }
  return CoordinateSet(rows);
}

Graph infer_knn_graph(const CoordinateSet& coords, std::size_t k) {
  const std::size_t n = coords.size();
  if (n < 2) throw ParameterError("k-NN inference needs at least 2 points, got " + std::to_string(n));
  if (k == 0 || k >= n) {
    throw ParameterError("k must satisfy 0 < k < n (k=" + std::to_string(k) + ", n=" + std::to_string(n) + ")");
  }

  std::vector<Edge> edges;
  edges.reserve(n * k);
  std::vector<std::pair<double, VertexId>> candidates;
  for (VertexId i = 0; i < n; ++i) {
    const auto p = coords.point(i);
    candidates.clear();
    for (VertexId j = 0; j < n; ++j) {
      if (j == i) continue;
      const auto q = coords.point(j);
      double d2 = 0.0;
      for (std::size_t a = 0; a < p.size(); ++a) d2 += (p[a] - q[a]) * (p[a] - q[a]);
      candidates.emplace_back(d2, j);
    }
    std::partial_sort(candidates.begin(), candidates.begin() + static_cast<std::ptrdiff_t>(k),
                      candidates.end());
    for (std::size_t r = 0; r < k; ++r) edges.push_back({i, candidates[r].second});
  }
  return Graph(n, edges);
}

std::vector<std::size_t> bfs_distances(const Graph& g, VertexId source) {
  if (source >= g.size()) throw RangeError("source " + std::to_string(source) + " out of range");
  std::vector<std::size_t> dist(g.size(), kUnreachable);
  std::deque<VertexId> queue{source};
  dist[source] = 0;
  while (!queue.empty()) {
    const auto u = queue.front();
    queue.pop_front();
    for (const auto v : g.neighbors(u)) {
      if (dist[v] == kUnreachable) {
        dist[v] = dist[u] + 1;
        queue.push_back(v);
      }
    }
  }
  return dist;
}

bool is_connected(const Graph& g) {
  if (g.size() == 0) return true;
  const auto dist = bfs_distances(g, 0);
  return std::none_of(dist.begin(), dist.end(), [](std::size_t d) { return d == kUnreachable; });
}

}  // namespace gcf
