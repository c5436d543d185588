#include "gcf/layer.hpp"

#include <algorithm>
#include <array>
#include <istream>
#include <map>
#include <ostream>
#include <string>
#include <tuple>

#include "gcf/error.hpp"
#include "text_util.hpp"

namespace gcf {
namespace {

constexpr std::array<GridOffset, 5> kPlusOffsets{{{0, 0}, {-1, 0}, {0, -1}, {0, 1}, {1, 0}}};

bool is_plus_offset(const GridOffset& o) {
  return std::find(kPlusOffsets.begin(), kPlusOffsets.end(), o) != kPlusOffsets.end();
}

std::string describe(const WeightTriple& t) {
  return "(" + std::to_string(t.out) + ", " + std::to_string(t.in) + ", " + std::to_string(t.weight) + ")";
}

std::string describe(const GridOffset& o) {
  return "(" + std::to_string(o.row) + ", " + std::to_string(o.col) + ")";
}

}  // namespace

WeightSharingScheme::WeightSharingScheme(std::size_t n, std::size_t kernel_size, std::vector<WeightTriple> triples,
                                         KernelSide side)
    : n_(n), kernel_size_(kernel_size), side_(side), triples_(std::move(triples)) {
  if (kernel_size_ == 0) throw ParameterError("a scheme needs at least one weight");
  for (const auto& t : triples_) {
    if (t.out >= n_ || t.in >= n_) throw RangeError("triple " + describe(t) + " references a vertex >= n");
    if (t.weight >= kernel_size_) throw RangeError("triple " + describe(t) + " has weight index >= K");
  }
  std::sort(triples_.begin(), triples_.end(), [](const WeightTriple& a, const WeightTriple& b) {
    return std::tie(a.out, a.weight, a.in) < std::tie(b.out, b.weight, b.in);
  });

  const auto center = [&](const WeightTriple& t) { return side_ == KernelSide::output ? t.out : t.in; };
  const auto other = [&](const WeightTriple& t) { return side_ == KernelSide::output ? t.in : t.out; };

  std::vector<std::pair<VertexId, std::size_t>> by_weight;
  std::vector<std::pair<VertexId, VertexId>> by_vertex;
  by_weight.reserve(triples_.size());
  by_vertex.reserve(triples_.size());
  std::vector<char> has_identity(n_, 0);
  for (const auto& t : triples_) {
    by_weight.emplace_back(center(t), t.weight);
    by_vertex.emplace_back(center(t), other(t));
    if (t.out == t.in && t.weight == 0) has_identity[t.out] = 1;
  }
  std::sort(by_weight.begin(), by_weight.end());
  std::sort(by_vertex.begin(), by_vertex.end());
  if (const auto it = std::adjacent_find(by_weight.begin(), by_weight.end()); it != by_weight.end()) {
    throw ParameterError("kernel at " + std::to_string(it->first) + " uses weight " + std::to_string(it->second) +
                         " twice");
  }
  if (const auto it = std::adjacent_find(by_vertex.begin(), by_vertex.end()); it != by_vertex.end()) {
    throw ParameterError("kernel at " + std::to_string(it->first) + " connects vertex " + std::to_string(it->second) +
                         " twice");
  }
  if (const auto it = std::find(has_identity.begin(), has_identity.end(), 0); it != has_identity.end()) {
    const auto v = static_cast<std::size_t>(it - has_identity.begin());
    throw ParameterError("missing center triple (" + std::to_string(v) + ", " + std::to_string(v) + ", 0)");
  }
}

WeightSharingScheme WeightSharingScheme::transposed() const {
  std::vector<WeightTriple> swapped;
  swapped.reserve(triples_.size());
  for (const auto& t : triples_) swapped.push_back({t.in, t.out, t.weight});
  return WeightSharingScheme(n_, kernel_size_, std::move(swapped),
                             side_ == KernelSide::output ? KernelSide::input : KernelSide::output);
}

WeightSharingScheme build_scheme(const PlacementMap& pm) {
  if (!pm.complete()) {
    throw IncompleteError("placement map covers " + std::to_string(pm.placed_count()) + " of " +
                          std::to_string(pm.size()) + " vertices");
  }
  std::vector<WeightTriple> triples;
  for (VertexId c = 0; c < pm.size(); ++c) {
    const auto& slots = pm.at(c).slots;
    for (std::size_t i = 0; i < slots.size(); ++i) {
      if (!is_lost(slots[i])) triples.push_back({c, slots[i], i});
    }
  }
  return WeightSharingScheme(pm.size(), pm.kernel_size(), std::move(triples));
}

GridCheck verify_grid_equivalence(const WeightSharingScheme& scheme, std::size_t rows, std::size_t cols) {
  if (rows * cols != scheme.size()) {
    throw ParameterError("grid " + std::to_string(rows) + "x" + std::to_string(cols) + " does not match n=" +
                         std::to_string(scheme.size()));
  }
  const auto s = scheme.side() == KernelSide::output ? scheme : scheme.transposed();
  const auto K = s.kernel_size();
  const auto offset_of = [cols](const WeightTriple& t) {
    return GridOffset{static_cast<long>(t.in / cols) - static_cast<long>(t.out / cols),
                      static_cast<long>(t.in % cols) - static_cast<long>(t.out % cols)};
  };

  GridCheck check;
  check.offsets.assign(K, std::nullopt);
  const auto fail = [&check](std::string reason, std::optional<WeightTriple> witness) {
    check.pass = false;
    check.reason = std::move(reason);
    check.witness = witness;
    return check;
  };

  std::vector<std::map<GridOffset, std::size_t>> votes(K);
  for (const auto& t : s.triples()) {
    const auto o = offset_of(t);
    if (!is_plus_offset(o)) return fail("offset " + describe(o) + " is not in the plus-shaped kernel", t);
    ++votes[t.weight][o];
  }
  // Each index takes its most frequent offset, so a single corrupted vertex is
  // reported rather than every vertex that disagrees with it.
  for (std::size_t i = 0; i < K; ++i) {
    std::size_t best = 0;
    for (const auto& [o, count] : votes[i]) {
      if (count > best) {
        best = count;
        check.offsets[i] = o;
      }
    }
  }
  for (const auto& t : s.triples()) {
    if (offset_of(t) != *check.offsets[t.weight]) {
      return fail("weight " + std::to_string(t.weight) + " realizes " + describe(offset_of(t)) + " instead of " +
                      describe(*check.offsets[t.weight]),
                  t);
    }
  }
  for (std::size_t i = 0; i < K; ++i) {
    for (std::size_t j = i + 1; j < K; ++j) {
      if (check.offsets[i] && check.offsets[i] == check.offsets[j]) {
        const auto it = std::find_if(s.triples().begin(), s.triples().end(),
                                     [j](const WeightTriple& t) { return t.weight == j; });
        return fail("weights " + std::to_string(i) + " and " + std::to_string(j) + " share offset " +
                        describe(*check.offsets[i]),
                    *it);
      }
    }
  }

  std::vector<std::size_t> first(s.size() + 1, 0);
  for (const auto& t : s.triples()) ++first[t.out + 1];
  for (std::size_t v = 0; v < s.size(); ++v) first[v + 1] += first[v];
  for (VertexId v = 0; v < s.size(); ++v) {
    const long r = static_cast<long>(v / cols);
    const long c = static_cast<long>(v % cols);
    for (const auto& o : kPlusOffsets) {
      const long rr = r + o.row;
      const long cc = c + o.col;
      if (rr < 0 || cc < 0 || rr >= static_cast<long>(rows) || cc >= static_cast<long>(cols)) continue;
      const auto in = static_cast<VertexId>(rr) * cols + static_cast<VertexId>(cc);
      const auto begin = s.triples().begin() + static_cast<std::ptrdiff_t>(first[v]);
      const auto end = s.triples().begin() + static_cast<std::ptrdiff_t>(first[v + 1]);
      if (std::none_of(begin, end, [in](const WeightTriple& t) { return t.in == in; })) {
        std::size_t weight = K;
        for (std::size_t i = 0; i < K; ++i) {
          if (check.offsets[i] == o) weight = i;
        }
        return fail("output " + std::to_string(v) + " lacks in-bounds offset " + describe(o),
                    WeightTriple{v, in, weight});
      }
    }
  }
  check.pass = true;
  check.reason = "ok";
  return check;
}

void write_scheme(std::ostream& out, const WeightSharingScheme& s) {
  out << s.size() << ' ' << s.kernel_size();
  if (s.side() == KernelSide::input) out << " transposed";
  out << '\n';
  for (const auto& t : s.triples()) out << t.out << ' ' << t.in << ' ' << t.weight << '\n';
}

WeightSharingScheme read_scheme(std::istream& in) {
  detail::LineReader reader(in);
  std::string_view line;
  if (!reader.next(line)) throw ParseError("missing 'n K' header", reader.line_number());
  const auto header = detail::split_ws(line);
  const auto at_header = reader.line_number();
  if (header.size() != 2 && !(header.size() == 3 && header[2] == "transposed")) {
    throw ParseError("expected header 'n K' or 'n K transposed'", at_header);
  }
  const auto n = detail::parse_size(header[0], "vertex count", at_header);
  const auto k = detail::parse_size(header[1], "weight count", at_header);
  const auto side = header.size() == 3 ? KernelSide::input : KernelSide::output;

  std::vector<WeightTriple> triples;
  while (reader.next(line)) {
    const auto at = reader.line_number();
    const auto tokens = detail::split_ws(line);
    if (tokens.size() != 3) throw ParseError("expected 'out in idx'", at);
    WeightTriple t{detail::parse_size(tokens[0], "output vertex", at), detail::parse_size(tokens[1], "input vertex", at),
                   detail::parse_size(tokens[2], "weight index", at)};
    if (t.out >= n || t.in >= n) throw ParseError("vertex id out of range (n=" + std::to_string(n) + ")", at);
    if (t.weight >= k) throw ParseError("weight index " + std::to_string(t.weight) + " >= K=" + std::to_string(k), at);
    triples.push_back(t);
  }
  try {
    return WeightSharingScheme(n, k, std::move(triples), side);
  } catch (const Error& e) {
    throw ParseError(e.what(), 0);
  }
}

}  // namespace gcf
