#pragma once

#include <compare>
#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "gcf/graph.hpp"

namespace gcf {

/// Relative cost of the two ways a kernel deforms under a translation.
struct ScoreWeights {
  double loss = 1.0;  ///< per vertex mapped to the loss symbol
  double snp = 1.0;   ///< per pair whose adjacency is not preserved
};

/// Deformation of a kernel under one translation, or accumulated along a
/// path of translations.
///
/// `total` is `loss * losses + snp * snp_violations`. `turns` counts moves
/// that bend or reverse (see turn_count) and only breaks ties.
struct DeformationScore {
  std::size_t losses = 0;
  std::size_t snp_violations = 0;
  std::size_t turns = 0;
  double total = 0.0;

  static DeformationScore from_counts(std::size_t losses, std::size_t snp_violations,
                                      std::size_t turns, const ScoreWeights& weights) {
    return {losses, snp_violations, turns,
            weights.loss * static_cast<double>(losses) + weights.snp * static_cast<double>(snp_violations)};
  }

  DeformationScore& operator+=(const DeformationScore& other) {
    losses += other.losses;
    snp_violations += other.snp_violations;
    turns += other.turns;
    total += other.total;
    return *this;
  }

  bool operator==(const DeformationScore&) const = default;
};

/// Selection order among candidates: smaller total first, then fewer SNP
/// violations, then fewer turns.
std::weak_ordering compare_scores(const DeformationScore& a, const DeformationScore& b);

/// Partial vertex map psi: domain -> V u {kLost}, stored sorted by domain.
class Translation {
 public:
  Translation() = default;

  /// Throws ParameterError if a domain vertex repeats.
  explicit Translation(std::vector<std::pair<VertexId, VertexId>> mapping);

  std::size_t size() const noexcept { return mapping_.size(); }
  std::span<const std::pair<VertexId, VertexId>> entries() const noexcept { return mapping_; }
  std::vector<VertexId> domain() const;

  /// Image of a domain vertex; throws RangeError for vertices outside the domain.
  VertexId operator()(VertexId v) const;
  bool contains(VertexId v) const;

  bool operator==(const Translation&) const = default;

 private:
  std::vector<std::pair<VertexId, VertexId>> mapping_;
};

bool is_injective(const Translation& t);

bool is_edge_constrained(const Graph& g, const Translation& t);

/// Unordered domain pairs, both images present, whose adjacency differs from
/// the adjacency of their images.
std::size_t snp_violations(const Graph& g, const Translation& t);

/// Chains u -> v -> w with u, v in the domain (w = psi(v), v = psi(u)) that
/// do not run straight: w == u, w adjacent to u, or u and w sharing a common
/// neighbor other than v.
std::size_t turn_count(const Graph& g, const Translation& t);

DeformationScore deformation_score(const Graph& g, const Translation& t, const ScoreWeights& weights = {});

/// A kernel anchored at `center`: slot i holds the vertex carrying weight i,
/// or kLost. Slot 0 always holds the center.
struct KernelPlacement {
  VertexId center = 0;
  std::vector<VertexId> slots;
  DeformationScore score;

  std::size_t kernel_size() const noexcept { return slots.size(); }
  std::size_t lost_slots() const;
  bool complete() const { return lost_slots() == 0; }

  /// Non-lost slot vertices in slot order.
  std::vector<VertexId> support() const;

  /// Throws ParameterError when slot 0 is not the center or slots repeat.
  void validate(std::size_t n) const;

  bool operator==(const KernelPlacement&) const = default;
};

/// Placement order used to keep the best kernel per center: score order,
/// then lexicographically smaller slot sequence (kLost after every id).
bool placement_less(const KernelPlacement& a, const KernelPlacement& b);

struct LocalTranslation {
  Translation translation;
  DeformationScore score;
  /// Image of each domain vertex in the order the domain was given.
  std::vector<VertexId> images;
};

/// Best translation of the placement's support that moves its center onto
/// `target`, a neighbor of the center.
///
/// Every domain vertex maps to an unused neighbor or to kLost; ties after
/// compare_scores go to the lexicographically smallest image sequence in
/// slot order. Exhaustive branch-and-bound search.
LocalTranslation find_local_translation(const Graph& g, const KernelPlacement& placement, VertexId target,
                                        const ScoreWeights& weights = {});

/// Moves every slot of the placement through `step` (lost slots stay lost)
/// and accumulates the step's score.
KernelPlacement translate_placement(const KernelPlacement& placement, const LocalTranslation& step);

/// Largest domain accepted by enumerate_translations_bruteforce.
inline constexpr std::size_t kBruteforceDomainLimit = 12;

/// Every map satisfying the hard constraints of find_local_translation
/// (center -> target, edge-constrained or lost, injective), scored and sorted
/// best first. Test oracle: plain enumeration with no pruning.
std::vector<LocalTranslation> enumerate_translations_bruteforce(const Graph& g, std::span<const VertexId> domain,
                                                                VertexId center, VertexId target,
                                                                const ScoreWeights& weights = {});

}  // namespace gcf
