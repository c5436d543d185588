#include "gcf/propagation.hpp"

#include <algorithm>
#include <limits>
#include <set>
#include <string>

#include "gcf/error.hpp"
#include "gcf/parallel.hpp"

namespace gcf {
namespace {

std::vector<std::size_t> distance_sums(const Graph& g, unsigned threads) {
  std::vector<std::size_t> sums(g.size(), 0);
  std::vector<char> reachable(g.size(), 1);
  parallel_for(g.size(), threads, [&](std::size_t v) {
    for (const auto d : bfs_distances(g, v)) {
      if (d == kUnreachable) {
        reachable[v] = 0;
        return;
      }
      sums[v] += d;
    }
  });
  if (std::find(reachable.begin(), reachable.end(), 0) != reachable.end()) {
    throw ConnectivityError("closeness centrality requires a connected graph");
  }
  return sums;
}

struct PlacementOrder {
  bool operator()(const KernelPlacement& a, const KernelPlacement& b) const { return placement_less(a, b); }
};

}  // namespace

std::vector<double> closeness_centrality(const Graph& g, unsigned threads) {
  const auto sums = distance_sums(g, threads);
  std::vector<double> out(sums.size());
  std::transform(sums.begin(), sums.end(), out.begin(), [](std::size_t s) {
    return s == 0 ? std::numeric_limits<double>::infinity() : 1.0 / static_cast<double>(s);
  });
  return out;
}

VertexId most_central_vertex(const Graph& g, unsigned threads) {
  if (g.size() == 0) throw ParameterError("empty graph has no central vertex");
  const auto sums = distance_sums(g, threads);
  // Smallest distance sum is largest centrality; min_element keeps the first.
  return static_cast<VertexId>(std::min_element(sums.begin(), sums.end()) - sums.begin());
}

KernelPlacement init_kernel(const Graph& g, VertexId center, std::size_t radius) {
  if (center >= g.size()) throw RangeError("kernel center " + std::to_string(center) + " out of range");
  const auto dist = bfs_distances(g, center);
  std::vector<std::pair<std::size_t, VertexId>> members;
  for (VertexId v = 0; v < g.size(); ++v) {
    if (dist[v] <= radius) members.emplace_back(dist[v], v);
  }
  std::sort(members.begin(), members.end());
  KernelPlacement p;
  p.center = center;
  for (const auto& [d, v] : members) p.slots.push_back(v);
  return p;
}

PlacementMap::PlacementMap(std::size_t n, VertexId seed, std::size_t kernel_size)
    : seed_(seed), kernel_size_(kernel_size), placements_(n) {
  if (seed >= n) throw RangeError("seed vertex " + std::to_string(seed) + " out of range");
  if (kernel_size == 0) throw ParameterError("kernel must have at least one slot");
}

const KernelPlacement& PlacementMap::at(VertexId v) const {
  if (!contains(v)) throw IncompleteError("no placement for vertex " + std::to_string(v));
  return *placements_[v];
}

void PlacementMap::set(KernelPlacement p) {
  if (p.slots.size() != kernel_size_) {
    throw ParameterError("placement at " + std::to_string(p.center) + " has " + std::to_string(p.slots.size()) +
                         " slots, expected " + std::to_string(kernel_size_));
  }
  p.validate(size());
  const auto c = p.center;
  placements_[c] = std::move(p);
}

std::size_t PlacementMap::placed_count() const {
  return static_cast<std::size_t>(
      std::count_if(placements_.begin(), placements_.end(), [](const auto& p) { return p.has_value(); }));
}

PlacementMap propagate(const Graph& g, const KernelPlacement& seed_kernel, const PropagationOptions& options) {
  seed_kernel.validate(g.size());
  if (!is_connected(g)) throw ConnectivityError("kernel propagation requires a connected graph");

  KernelPlacement seed = seed_kernel;
  seed.score = {};
  const std::size_t n = g.size();
  PlacementMap result(n, seed.center, seed.kernel_size());

  std::vector<std::optional<KernelPlacement>> best(n);
  std::vector<char> settled(n, 0);
  std::set<KernelPlacement, PlacementOrder> frontier;
  best[seed.center] = seed;
  frontier.insert(seed);

  std::vector<VertexId> targets;
  std::vector<KernelPlacement> candidates;
  while (!frontier.empty()) {
    const KernelPlacement current = *frontier.begin();
    frontier.erase(frontier.begin());
    const VertexId u = current.center;
    settled[u] = 1;
    result.set(current);

    targets.clear();
    for (const auto w : g.neighbors(u)) {
      if (!settled[w]) targets.push_back(w);
    }
    candidates.assign(targets.size(), KernelPlacement{});
    parallel_for(targets.size(), options.threads, [&](std::size_t i) {
      candidates[i] = translate_placement(current, find_local_translation(g, current, targets[i], options.weights));
    });

    for (std::size_t i = 0; i < targets.size(); ++i) {
      auto& slot = best[targets[i]];
      if (slot && !placement_less(candidates[i], *slot)) continue;
      if (slot) frontier.erase(*slot);
      slot = std::move(candidates[i]);
      frontier.insert(*slot);
    }
  }
  return result;
}

bool is_fixed_point(const Graph& g, const PlacementMap& pm, const ScoreWeights& weights) {
  if (!pm.contains(pm.seed()) || pm.at(pm.seed()).score.total != 0.0) return false;
  for (VertexId u = 0; u < g.size(); ++u) {
    if (!pm.contains(u)) continue;
    const auto& placement = pm.at(u);
    for (const auto w : g.neighbors(u)) {
      const auto candidate = translate_placement(placement, find_local_translation(g, placement, w, weights));
      if (!pm.contains(w) || compare_scores(candidate.score, pm.at(w).score) < 0) return false;
    }
  }
  return true;
}

PlacementReport placement_report(const PlacementMap& pm) {
  PlacementReport report;
  report.vertex_count = pm.size();
  for (VertexId v = 0; v < pm.size(); ++v) {
    if (!pm.contains(v)) continue;
    const auto& p = pm.at(v);
    const auto lost = p.lost_slots();
    report.entries.push_back({v, p.score.total, lost});
    ++report.score_histogram[p.score.total];
    if (lost == 0) ++report.complete_placements;
  }
  return report;
}

}  // namespace gcf
