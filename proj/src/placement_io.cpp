#include <istream>
#include <ostream>
#include <string>

#include "gcf/error.hpp"
#include "gcf/propagation.hpp"
#include "text_util.hpp"

namespace gcf {
namespace {

constexpr std::string_view kLostToken = "⊥";  // ⊥

}  // namespace

void write_placements(std::ostream& out, const PlacementMap& pm) {
  out << pm.size() << ' ' << pm.kernel_size() << ' ' << pm.seed() << '\n';
  for (VertexId v = 0; v < pm.size(); ++v) {
    if (!pm.contains(v)) continue;
    const auto& p = pm.at(v);
    out << p.center << "; " << detail::format_double(p.score.total) << ' ' << p.score.losses << ' '
        << p.score.snp_violations << ' ' << p.score.turns << ';';
    for (std::size_t i = 0; i < p.slots.size(); ++i) {
      out << (i == 0 ? " " : ", ") << "slot" << i << '=';
      if (is_lost(p.slots[i])) {
        out << kLostToken;
      } else {
        out << p.slots[i];
      }
    }
    out << '\n';
  }
}

PlacementMap read_placements(std::istream& in) {
  detail::LineReader reader(in);
  std::string_view line;
  if (!reader.next(line)) throw ParseError("missing 'n K seed' header", reader.line_number());
  const auto header = detail::split_ws(line);
  if (header.size() != 3) throw ParseError("expected header 'n K seed'", reader.line_number());
  const auto at_header = reader.line_number();
  const auto n = detail::parse_size(header[0], "vertex count", at_header);
  const auto k = detail::parse_size(header[1], "kernel size", at_header);
  const auto seed = detail::parse_size(header[2], "seed vertex", at_header);
  if (k == 0 || seed >= n) throw ParseError("invalid header values", at_header);
  PlacementMap pm(n, seed, k);

  while (reader.next(line)) {
    const auto at = reader.line_number();
    const auto parts = detail::split(line, ';');
    if (parts.size() != 3) throw ParseError("expected 'center; score; slots'", at);

    KernelPlacement p;
    p.center = detail::parse_size(parts[0], "center", at);
    if (p.center >= n) throw ParseError("center " + std::to_string(p.center) + " >= n", at);
    if (pm.contains(p.center)) throw ParseError("duplicate placement for center " + std::to_string(p.center), at);

    const auto score = detail::split_ws(parts[1]);
    if (score.size() != 4) throw ParseError("expected score 'total losses snp turns'", at);
    p.score.total = detail::parse_double(score[0], "score total", at);
    p.score.losses = detail::parse_size(score[1], "loss count", at);
    p.score.snp_violations = detail::parse_size(score[2], "SNP violation count", at);
    p.score.turns = detail::parse_size(score[3], "turn count", at);

    const auto fields = detail::split(parts[2], ',');
    if (fields.size() != k) {
      throw ParseError("expected " + std::to_string(k) + " slots, got " + std::to_string(fields.size()), at);
    }
    for (std::size_t i = 0; i < fields.size(); ++i) {
      const std::string prefix = "slot" + std::to_string(i) + "=";
      if (fields[i].substr(0, prefix.size()) != prefix) throw ParseError("expected '" + prefix + "...'", at);
      const auto value = fields[i].substr(prefix.size());
      if (value == kLostToken) {
        p.slots.push_back(kLost);
      } else {
        const auto v = detail::parse_size(value, "slot vertex", at);
        if (v >= n) throw ParseError("slot vertex " + std::to_string(v) + " >= n", at);
        p.slots.push_back(v);
      }
    }
    try {
      pm.set(std::move(p));
    } catch (const ParameterError& e) {
      throw ParseError(e.what(), at);
    }
  }
  return pm;
}

void write_report(std::ostream& out, const PlacementReport& report) {
  out << "vertices: " << report.vertex_count << '\n'
      << "placed: " << report.entries.size() << '\n'
      << "complete placements: " << report.complete_placements << " of " << report.vertex_count << '\n'
      << "score histogram:\n";
  for (const auto& [score, count] : report.score_histogram) {
    out << "  " << detail::format_double(score) << ": " << count << '\n';
  }
  out << "center score losses\n";
  for (const auto& e : report.entries) {
    out << e.center << ' ' << detail::format_double(e.score) << ' ' << e.losses << '\n';
  }
}

}  // namespace gcf
