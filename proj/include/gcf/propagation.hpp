#pragma once

#include <cstddef>
#include <iosfwd>
#include <map>
#include <optional>
#include <vector>

#include "gcf/graph.hpp"
#include "gcf/translations.hpp"

namespace gcf {

/// Closeness centrality 1 / sum of hop distances. Throws ConnectivityError
/// on disconnected graphs. A lone vertex gets +infinity.
std::vector<double> closeness_centrality(const Graph& g, unsigned threads = 0);

/// Argmax of closeness centrality, smallest id on ties.
VertexId most_central_vertex(const Graph& g, unsigned threads = 0);

/// Kernel centered at `center` covering every vertex within `radius` hops,
/// slots ordered by (hop distance, vertex id).
KernelPlacement init_kernel(const Graph& g, VertexId center, std::size_t radius = 1);

/// Best kernel placement per center vertex.
class PlacementMap {
 public:
  PlacementMap() = default;
  PlacementMap(std::size_t n, VertexId seed, std::size_t kernel_size);

  std::size_t size() const noexcept { return placements_.size(); }
  VertexId seed() const noexcept { return seed_; }
  std::size_t kernel_size() const noexcept { return kernel_size_; }

  bool contains(VertexId v) const { return v < placements_.size() && placements_[v].has_value(); }
  /// Throws IncompleteError when no placement is stored for v.
  const KernelPlacement& at(VertexId v) const;
  /// Stores p under p.center, replacing any previous placement.
  void set(KernelPlacement p);

  std::size_t placed_count() const;
  bool complete() const { return placed_count() == size(); }

  bool operator==(const PlacementMap&) const = default;

 private:
  VertexId seed_ = 0;
  std::size_t kernel_size_ = 0;
  std::vector<std::optional<KernelPlacement>> placements_;
};

struct PropagationOptions {
  ScoreWeights weights;
  unsigned threads = 0;  ///< 0 = default_thread_count()
};

/// Best-first settlement of kernel placements from the seed kernel.
///
/// The unsettled vertex with the smallest placement (placement_less) is
/// settled next; each of its unsettled neighbors receives the settled kernel
/// moved by find_local_translation, with scores accumulated along the way.
/// Local translations of one settlement are evaluated on `threads` workers;
/// the result does not depend on the worker count.
PlacementMap propagate(const Graph& g, const KernelPlacement& seed_kernel, const PropagationOptions& options = {});

/// True when relaxing every edge once more from `pm` would not yield a
/// strictly better score for any vertex.
bool is_fixed_point(const Graph& g, const PlacementMap& pm, const ScoreWeights& weights = {});

struct PlacementReport {
  struct Entry {
    VertexId center = 0;
    double score = 0.0;
    std::size_t losses = 0;
  };

  std::size_t vertex_count = 0;
  std::vector<Entry> entries;
  std::map<double, std::size_t> score_histogram;
  std::size_t complete_placements = 0;
};

PlacementReport placement_report(const PlacementMap& pm);
void write_report(std::ostream& out, const PlacementReport& report);

/// Placement file: header `n K seed`, then one line per placement
///   `center; total losses snp turns; slot0=v, slot1=v|⊥, ...`
void write_placements(std::ostream& out, const PlacementMap& pm);
PlacementMap read_placements(std::istream& in);

}  // namespace gcf
