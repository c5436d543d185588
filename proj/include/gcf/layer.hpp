#pragma once

#include <compare>
#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "gcf/graph.hpp"
#include "gcf/propagation.hpp"

namespace gcf {

/// Connection from input neuron `in` to output neuron `out` carrying the
/// shared weight `weight`.
struct WeightTriple {
  VertexId out = 0;
  VertexId in = 0;
  std::size_t weight = 0;

  auto operator<=>(const WeightTriple&) const = default;
};

/// Which side of the layer the kernel is centered on. The default places the
/// kernel on the output neuron; the other orientation is the transpose.
enum class KernelSide { output, input };

/// Sparse bipartite connectivity of a convolutional layer.
///
/// With respect to the kernel-centered side c: each (c, weight) and each
/// (c, other) occurs at most once, and (c, c, 0) is present for every c.
/// Triples are kept sorted by (out, weight, in).
class WeightSharingScheme {
 public:
  WeightSharingScheme() = default;

  /// Throws ParameterError / RangeError when an invariant does not hold.
  WeightSharingScheme(std::size_t n, std::size_t kernel_size, std::vector<WeightTriple> triples,
                      KernelSide side = KernelSide::output);

  std::size_t size() const noexcept { return n_; }
  std::size_t kernel_size() const noexcept { return kernel_size_; }
  KernelSide side() const noexcept { return side_; }
  const std::vector<WeightTriple>& triples() const noexcept { return triples_; }

  /// Swaps in/out of every triple and flips the kernel side.
  WeightSharingScheme transposed() const;

  bool operator==(const WeightSharingScheme&) const = default;

 private:
  std::size_t n_ = 0;
  std::size_t kernel_size_ = 0;
  KernelSide side_ = KernelSide::output;
  std::vector<WeightTriple> triples_;
};

/// One triple (c, v, i) per present slot i of the placement centered at c.
/// Throws IncompleteError when a vertex has no placement.
WeightSharingScheme build_scheme(const PlacementMap& pm);

struct GridOffset {
  long row = 0;
  long col = 0;

  auto operator<=>(const GridOffset&) const = default;
};

struct GridCheck {
  bool pass = false;
  /// Offending triple, or for a missing connection the triple that should exist.
  std::optional<WeightTriple> witness;
  std::string reason;
  /// Offset realized by each weight index (absent when the index is unused).
  std::vector<std::optional<GridOffset>> offsets;
};

/// Checks that the scheme is an ordinary 2D convolution with a plus-shaped
/// kernel on the rows x cols 4-connected grid (vertex (r, c) has id r*cols + c):
/// every weight index realizes one fixed offset in {(0,0), (+-1,0), (0,+-1)},
/// distinct indices realize distinct offsets, and every in-bounds offset of
/// every output is connected.
GridCheck verify_grid_equivalence(const WeightSharingScheme& s, std::size_t rows, std::size_t cols);

/// Scheme file: header `n K` (followed by `transposed` for input-centered
/// schemes), then `out in idx` per line, sorted by (out, idx).
void write_scheme(std::ostream& out, const WeightSharingScheme& s);
WeightSharingScheme read_scheme(std::istream& in);

}  // namespace gcf
