#pragma once

// Graph generators and brute-force oracles shared by the unit tests and the
// acceptance runner. The oracles favor obviousness over speed.

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <random>
#include <span>
#include <vector>

#include "gcf/graph.hpp"
#include "gcf/propagation.hpp"
#include "gcf/translations.hpp"

namespace gcf::testing {

inline Graph path_graph(std::size_t n) {
  std::vector<Edge> e;
  for (VertexId v = 0; v + 1 < n; ++v) e.push_back({v, v + 1});
  return Graph(n, e);
}

inline Graph cycle_graph(std::size_t n) {
  std::vector<Edge> e;
  for (VertexId v = 0; v < n; ++v) e.push_back({v, (v + 1) % n});
  return Graph(n, e);
}

inline Graph star_graph(std::size_t n, VertexId center = 0) {
  std::vector<Edge> e;
  for (VertexId v = 0; v < n; ++v) {
    if (v != center) e.push_back({center, v});
  }
  return Graph(n, e);
}

inline Graph complete_graph(std::size_t n) {
  std::vector<Edge> e;
  for (VertexId u = 0; u < n; ++u) {
    for (VertexId v = u + 1; v < n; ++v) e.push_back({u, v});
  }
  return Graph(n, e);
}

/// G(n, p) resampled until connected.
inline Graph random_connected_graph(std::size_t n, double p, std::mt19937_64& rng) {
  std::bernoulli_distribution coin(p);
  for (;;) {
    std::vector<Edge> e;
    for (VertexId u = 0; u < n; ++u) {
      for (VertexId v = u + 1; v < n; ++v) {
        if (coin(rng)) e.push_back({u, v});
      }
    }
    Graph g(n, e);
    if (is_connected(g)) return g;
  }
}

inline std::vector<std::vector<double>> grid_coordinates(std::size_t rows, std::size_t cols) {
  std::vector<std::vector<double>> pts;
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) pts.push_back({static_cast<double>(r), static_cast<double>(c)});
  }
  return pts;
}

/// k-NN graph of uniform points in the unit square, redrawn until connected.
inline Graph random_geometric_graph(std::size_t n, std::size_t k, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (;;) {
    std::vector<std::vector<double>> pts(n);
    for (auto& p : pts) p = {unit(rng), unit(rng)};
    auto g = infer_knn_graph(CoordinateSet(pts), k);
    if (is_connected(g)) return g;
  }
}

/// Full sort of every other point by (distance, id); union of the first k.
inline Graph knn_oracle(const std::vector<std::vector<double>>& pts, std::size_t k) {
  std::vector<Edge> e;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    std::vector<std::pair<double, std::size_t>> others;
    for (std::size_t j = 0; j < pts.size(); ++j) {
      if (j == i) continue;
      double d = 0.0;
      for (std::size_t c = 0; c < pts[i].size(); ++c) d += (pts[i][c] - pts[j][c]) * (pts[i][c] - pts[j][c]);
      others.emplace_back(d, j);
    }
    std::sort(others.begin(), others.end());
    for (std::size_t r = 0; r < k; ++r) e.push_back({std::min(i, others[r].second), std::max(i, others[r].second)});
  }
  return Graph(pts.size(), e);
}

/// SNP violations by checking every pair of mapped domain vertices directly.
inline std::size_t snp_oracle(const Graph& g, const Translation& t) {
  std::size_t count = 0;
  const auto entries = t.entries();
  for (std::size_t a = 0; a < entries.size(); ++a) {
    for (std::size_t b = a + 1; b < entries.size(); ++b) {
      const auto [u, fu] = entries[a];
      const auto [v, fv] = entries[b];
      if (is_lost(fu) || is_lost(fv)) continue;
      if (g.has_edge(u, v) != g.has_edge(fu, fv)) ++count;
    }
  }
  return count;
}

/// Best placement reachable at every vertex by composing local translations
/// along any simple path from the seed. Exponential; small graphs only.
inline std::vector<KernelPlacement> best_over_simple_paths(const Graph& g, const KernelPlacement& seed,
                                                           const ScoreWeights& weights = {}) {
  std::vector<KernelPlacement> best(g.size());
  std::vector<char> reached(g.size(), 0);
  std::vector<char> on_path(g.size(), 0);
  std::function<void(const KernelPlacement&)> walk = [&](const KernelPlacement& p) {
    const auto v = p.center;
    if (!reached[v] || placement_less(p, best[v])) {
      best[v] = p;
      reached[v] = 1;
    }
    on_path[v] = 1;
    for (const auto w : g.neighbors(v)) {
      if (!on_path[w]) walk(translate_placement(p, find_local_translation(g, p, w, weights)));
    }
    on_path[v] = 0;
  };
  walk(seed);
  return best;
}

/// Largest relative error between analytic gradients and central differences
/// of `loss` with respect to every entry of `params`.
inline double max_relative_error(std::span<double> params, std::span<const double> analytic,
                                 const std::function<double()>& loss, double step = 1e-5) {
  double worst = 0.0;
  for (std::size_t i = 0; i < params.size(); ++i) {
    const double saved = params[i];
    params[i] = saved + step;
    const double up = loss();
    params[i] = saved - step;
    const double down = loss();
    params[i] = saved;
    const double numeric = (up - down) / (2.0 * step);
    const double scale = std::max({std::abs(analytic[i]), std::abs(numeric), 1e-6});
    worst = std::max(worst, std::abs(analytic[i] - numeric) / scale);
  }
  return worst;
}

}  // namespace gcf::testing
