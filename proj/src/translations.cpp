#include "gcf/translations.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>

#include "gcf/error.hpp"

namespace gcf {
namespace {

void check_weights(const ScoreWeights& w) {
  if (!(std::isfinite(w.loss) && std::isfinite(w.snp) && w.loss >= 0.0 && w.snp >= 0.0)) {
    throw ParameterError("score weights must be finite and non-negative");
  }
}

// u -> v -> w runs straight when u and w are distinct, non-adjacent, and v is
// their only common neighbor.
bool is_straight(const Graph& g, VertexId u, VertexId v, VertexId w) {
  if (u == w || g.has_edge(u, w)) return false;
  const auto a = g.neighbors(u);
  const auto b = g.neighbors(w);
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i] < b[j]) {
      ++i;
    } else if (b[j] < a[i]) {
      ++j;
    } else {
      if (a[i] != v) return false;
      ++i;
      ++j;
    }
  }
  return true;
}

// Depth-first search over images of the domain in slot order. Candidates are
// tried in ascending vertex order with the loss last, so the first complete
// assignment reaching a given score key is the lexicographically smallest.
class LocalSearch {
 public:
  LocalSearch(const Graph& g, std::span<const VertexId> domain, VertexId target, const ScoreWeights& weights)
      : g_(g), domain_(domain), weights_(weights), images_(domain.size(), kLost) {
    images_[0] = target;
  }

  void run() {
    descend(1, DeformationScore{});
  }

  const std::optional<std::vector<VertexId>>& best_images() const { return best_images_; }
  const DeformationScore& best_score() const { return best_score_; }

 private:
  bool used(VertexId x, std::size_t upto) const {
    for (std::size_t j = 0; j < upto; ++j) {
      if (images_[j] == x) return true;
    }
    return false;
  }

  // Score increment from fixing position i to image x, given positions < i.
  DeformationScore increment(std::size_t i, VertexId x) const {
    DeformationScore inc;
    const VertexId u = domain_[i];
    if (is_lost(x)) {
      inc.losses = 1;
    } else {
      for (std::size_t j = 0; j < i; ++j) {
        const VertexId y = images_[j];
        if (is_lost(y)) continue;
        if (g_.has_edge(u, domain_[j]) != g_.has_edge(x, y)) ++inc.snp_violations;
      }
    }
    for (std::size_t j = 0; j < i; ++j) {
      const VertexId y = images_[j];
      // domain_[i] -> x == domain_[j] -> y
      if (!is_lost(x) && !is_lost(y) && x == domain_[j] && !is_straight(g_, u, x, y)) ++inc.turns;
      // domain_[j] -> y == domain_[i] -> x
      if (!is_lost(x) && y == u && !is_straight(g_, domain_[j], u, x)) ++inc.turns;
    }
    inc.total = weights_.loss * static_cast<double>(inc.losses) +
                weights_.snp * static_cast<double>(inc.snp_violations);
    return inc;
  }

  // Sum over unassigned positions of their cheapest option against the
  // assigned prefix; interactions among unassigned positions only add cost.
  double remaining_lower_bound(std::size_t next) const {
    double bound = 0.0;
    for (std::size_t r = next; r < domain_.size(); ++r) {
      double cheapest = weights_.loss;
      for (const VertexId y : g_.neighbors(domain_[r])) {
        if (used(y, next)) continue;
        std::size_t violations = 0;
        for (std::size_t j = 0; j < next; ++j) {
          if (is_lost(images_[j])) continue;
          if (g_.has_edge(domain_[r], domain_[j]) != g_.has_edge(y, images_[j])) ++violations;
        }
        cheapest = std::min(cheapest, weights_.snp * static_cast<double>(violations));
        if (cheapest == 0.0) break;
      }
      bound += cheapest;
    }
    return bound;
  }

  bool dominated(const DeformationScore& partial) const {
    return best_images_ && compare_scores(partial, best_score_) != std::weak_ordering::less;
  }

  void descend(std::size_t i, const DeformationScore& partial) {
    if (dominated(partial)) return;
    if (i == domain_.size()) {
      best_score_ = DeformationScore::from_counts(partial.losses, partial.snp_violations, partial.turns, weights_);
      best_images_ = images_;
      return;
    }
    if (best_images_) {
      const double bound = partial.total + remaining_lower_bound(i);
      if (bound > best_score_.total + 1e-9 * std::max(1.0, best_score_.total)) return;
    }
    for (const VertexId x : g_.neighbors(domain_[i])) {
      if (used(x, i)) continue;
      try_image(i, x, partial);
    }
    try_image(i, kLost, partial);
  }

  void try_image(std::size_t i, VertexId x, const DeformationScore& partial) {
    DeformationScore next = partial;
    const auto inc = increment(i, x);
    next.losses += inc.losses;
    next.snp_violations += inc.snp_violations;
    next.turns += inc.turns;
    next.total = weights_.loss * static_cast<double>(next.losses) +
                 weights_.snp * static_cast<double>(next.snp_violations);
    images_[i] = x;
    descend(i + 1, next);
    images_[i] = kLost;
  }

  const Graph& g_;
  std::span<const VertexId> domain_;
  ScoreWeights weights_;
  std::vector<VertexId> images_;
  std::optional<std::vector<VertexId>> best_images_;
  DeformationScore best_score_;
};

Translation make_translation(std::span<const VertexId> domain, std::span<const VertexId> images) {
  std::vector<std::pair<VertexId, VertexId>> mapping;
  mapping.reserve(domain.size());
  for (std::size_t i = 0; i < domain.size(); ++i) mapping.emplace_back(domain[i], images[i]);
  return Translation(std::move(mapping));
}

}  // namespace

std::weak_ordering compare_scores(const DeformationScore& a, const DeformationScore& b) {
  if (a.total < b.total) return std::weak_ordering::less;
  if (b.total < a.total) return std::weak_ordering::greater;
  if (auto c = a.snp_violations <=> b.snp_violations; c != 0) return c;
  return a.turns <=> b.turns;
}

Translation::Translation(std::vector<std::pair<VertexId, VertexId>> mapping) : mapping_(std::move(mapping)) {
  std::sort(mapping_.begin(), mapping_.end());
  for (std::size_t i = 1; i < mapping_.size(); ++i) {
    if (mapping_[i].first == mapping_[i - 1].first) {
      throw ParameterError("vertex " + std::to_string(mapping_[i].first) + " appears twice in a translation domain");
    }
  }
}

std::vector<VertexId> Translation::domain() const {
  std::vector<VertexId> out;
  out.reserve(mapping_.size());
  for (const auto& [v, image] : mapping_) out.push_back(v);
  return out;
}

bool Translation::contains(VertexId v) const {
  const auto it = std::lower_bound(mapping_.begin(), mapping_.end(), std::pair<VertexId, VertexId>{v, 0});
  return it != mapping_.end() && it->first == v;
}

VertexId Translation::operator()(VertexId v) const {
  const auto it = std::lower_bound(mapping_.begin(), mapping_.end(), std::pair<VertexId, VertexId>{v, 0});
  if (it == mapping_.end() || it->first != v) {
    throw RangeError("vertex " + std::to_string(v) + " is not in the translation domain");
  }
  return it->second;
}

bool is_injective(const Translation& t) {
  std::vector<VertexId> images;
  for (const auto& [v, image] : t.entries()) {
    if (!is_lost(image)) images.push_back(image);
  }
  std::sort(images.begin(), images.end());
  return std::adjacent_find(images.begin(), images.end()) == images.end();
}

bool is_edge_constrained(const Graph& g, const Translation& t) {
  return std::all_of(t.entries().begin(), t.entries().end(), [&](const auto& entry) {
    return is_lost(entry.second) || g.has_edge(entry.first, entry.second);
  });
}

std::size_t snp_violations(const Graph& g, const Translation& t) {
  const auto entries = t.entries();
  std::size_t count = 0;
  for (std::size_t i = 0; i < entries.size(); ++i) {
    if (is_lost(entries[i].second)) continue;
    for (std::size_t j = i + 1; j < entries.size(); ++j) {
      if (is_lost(entries[j].second)) continue;
      if (g.has_edge(entries[i].first, entries[j].first) != g.has_edge(entries[i].second, entries[j].second)) {
        ++count;
      }
    }
  }
  return count;
}

std::size_t turn_count(const Graph& g, const Translation& t) {
  std::size_t count = 0;
  for (const auto& [u, v] : t.entries()) {
    if (is_lost(v) || !t.contains(v)) continue;
    const VertexId w = t(v);
    if (!is_lost(w) && !is_straight(g, u, v, w)) ++count;
  }
  return count;
}

DeformationScore deformation_score(const Graph& g, const Translation& t, const ScoreWeights& weights) {
  check_weights(weights);
  const auto losses = static_cast<std::size_t>(
      std::count_if(t.entries().begin(), t.entries().end(), [](const auto& e) { return is_lost(e.second); }));
  return DeformationScore::from_counts(losses, snp_violations(g, t), turn_count(g, t), weights);
}

std::size_t KernelPlacement::lost_slots() const {
  return static_cast<std::size_t>(std::count(slots.begin(), slots.end(), kLost));
}

std::vector<VertexId> KernelPlacement::support() const {
  std::vector<VertexId> out;
  for (const auto v : slots) {
    if (!is_lost(v)) out.push_back(v);
  }
  return out;
}

void KernelPlacement::validate(std::size_t n) const {
  if (slots.empty() || slots.front() != center) {
    throw ParameterError("slot 0 of a kernel placement must hold its center " + std::to_string(center));
  }
  auto present = support();
  for (const auto v : present) {
    if (v >= n) throw RangeError("placement slot vertex " + std::to_string(v) + " >= n=" + std::to_string(n));
  }
  std::sort(present.begin(), present.end());
  if (std::adjacent_find(present.begin(), present.end()) != present.end()) {
    throw ParameterError("placement centered at " + std::to_string(center) + " repeats a slot vertex");
  }
}

bool placement_less(const KernelPlacement& a, const KernelPlacement& b) {
  if (const auto c = compare_scores(a.score, b.score); c != 0) return c < 0;
  return a.slots < b.slots;
}

LocalTranslation find_local_translation(const Graph& g, const KernelPlacement& placement, VertexId target,
                                        const ScoreWeights& weights) {
  check_weights(weights);
  placement.validate(g.size());
  if (target >= g.size() || !g.has_edge(placement.center, target)) {
    throw AdjacencyError("target " + std::to_string(target) + " is not adjacent to center " +
                         std::to_string(placement.center));
  }
  const auto domain = placement.support();
  LocalSearch search(g, domain, target, weights);
  search.run();
  // Mapping every non-center vertex to the loss symbol is always feasible.
  const auto& images = *search.best_images();
  return {make_translation(domain, images), search.best_score(), images};
}

KernelPlacement translate_placement(const KernelPlacement& placement, const LocalTranslation& step) {
  KernelPlacement out;
  out.center = step.translation(placement.center);
  out.slots.reserve(placement.slots.size());
  for (const auto v : placement.slots) out.slots.push_back(is_lost(v) ? kLost : step.translation(v));
  out.score = placement.score;
  out.score += step.score;
  return out;
}

std::vector<LocalTranslation> enumerate_translations_bruteforce(const Graph& g, std::span<const VertexId> domain,
                                                                VertexId center, VertexId target,
                                                                const ScoreWeights& weights) {
  check_weights(weights);
  if (domain.size() > kBruteforceDomainLimit) {
    throw SizeGuardError("brute-force enumeration limited to " + std::to_string(kBruteforceDomainLimit) +
                         " domain vertices, got " + std::to_string(domain.size()));
  }
  if (std::find(domain.begin(), domain.end(), center) == domain.end()) {
    throw ParameterError("center " + std::to_string(center) + " is not in the domain");
  }
  if (!g.has_edge(center, target)) {
    throw AdjacencyError("target " + std::to_string(target) + " is not adjacent to center " + std::to_string(center));
  }

  // options[i]: admissible images of domain[i] before the injectivity filter.
  std::vector<std::vector<VertexId>> options(domain.size());
  for (std::size_t i = 0; i < domain.size(); ++i) {
    if (domain[i] == center) {
      options[i] = {target};
    } else {
      const auto nbrs = g.neighbors(domain[i]);
      options[i].assign(nbrs.begin(), nbrs.end());
      options[i].push_back(kLost);
    }
  }

  std::vector<LocalTranslation> results;
  std::vector<std::size_t> odometer(domain.size(), 0);
  std::vector<VertexId> images(domain.size());
  while (true) {
    for (std::size_t i = 0; i < domain.size(); ++i) images[i] = options[i][odometer[i]];
    auto t = make_translation(domain, images);
    if (is_injective(t)) {
      auto score = deformation_score(g, t, weights);
      results.push_back({std::move(t), score, images});
    }
    std::size_t pos = 0;
    while (pos < domain.size() && ++odometer[pos] == options[pos].size()) odometer[pos++] = 0;
    if (pos == domain.size()) break;
  }

  std::sort(results.begin(), results.end(), [](const LocalTranslation& a, const LocalTranslation& b) {
    if (const auto c = compare_scores(a.score, b.score); c != 0) return c < 0;
    return a.images < b.images;
  });
  return results;
}

}  // namespace gcf
