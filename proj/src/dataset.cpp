#include <algorithm>
#include <cmath>
#include <istream>
#include <numeric>
#include <ostream>
#include <random>
#include <string>

#include "gcf/error.hpp"
#include "gcf/net.hpp"
#include "text_util.hpp"

namespace gcf {

std::size_t Dataset::class_count() const {
  return labels.empty() ? 0 : *std::max_element(labels.begin(), labels.end()) + 1;
}

void Dataset::validate() const {
  if (static_cast<std::size_t>(signals.rows()) != labels.size()) {
    throw DimensionError("dataset has " + std::to_string(signals.rows()) + " rows but " +
                         std::to_string(labels.size()) + " labels");
  }
}

void write_dataset_csv(std::ostream& out, const Dataset& d) {
  d.validate();
  for (std::size_t v = 0; v < d.vertex_count(); ++v) out << 'x' << v << ',';
  out << "label\n";
  for (std::size_t r = 0; r < d.size(); ++r) {
    for (std::size_t v = 0; v < d.vertex_count(); ++v) {
      out << detail::format_double(d.signals(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(v))) << ',';
    }
    out << d.labels[r] << '\n';
  }
}

Dataset read_dataset_csv(std::istream& in) {
  detail::LineReader reader(in);
  std::string_view line;
  if (!reader.next(line)) throw ParseError("missing header line", reader.line_number());
  const auto header = detail::split(line, ',');
  const auto label_at = std::find(header.begin(), header.end(), "label");
  if (label_at == header.end()) throw ParseError("missing column 'label'", reader.line_number());
  if (label_at + 1 != header.end()) throw ParseError("column 'label' must be last", reader.line_number());
  const auto n = header.size() - 1;
  if (n == 0) throw ParseError("no signal columns before 'label'", reader.line_number());

  std::vector<double> values;
  Dataset d;
  while (reader.next(line)) {
    const auto at = reader.line_number();
    const auto fields = detail::split(line, ',');
    if (fields.size() != header.size()) {
      throw ParseError("expected " + std::to_string(header.size()) + " fields, got " + std::to_string(fields.size()), at);
    }
    for (std::size_t v = 0; v < n; ++v) values.push_back(detail::parse_double(fields[v], "signal value", at));
    d.labels.push_back(detail::parse_size(fields[n], "label", at));
  }
  d.signals = Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>(
      values.data(), static_cast<Eigen::Index>(d.labels.size()), static_cast<Eigen::Index>(n));
  return d;
}

Dataset make_translated_dataset(const PlacementMap& pm, const std::vector<std::vector<double>>& templates,
                                std::size_t samples_per_class, double noise_sigma, std::uint64_t seed) {
  if (!pm.complete()) throw IncompleteError("placement map is incomplete");
  if (templates.empty()) throw ParameterError("at least one template is required");
  for (const auto& t : templates) {
    if (t.size() != pm.kernel_size()) {
      throw DimensionError("template has " + std::to_string(t.size()) + " values, kernel has " +
                           std::to_string(pm.kernel_size()) + " slots");
    }
  }
  if (!(noise_sigma >= 0.0) || !std::isfinite(noise_sigma)) throw ParameterError("noise sigma must be finite and >= 0");

  const auto n = pm.size();
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<VertexId> pick(0, n - 1);
  std::normal_distribution<double> noise(0.0, noise_sigma > 0.0 ? noise_sigma : 1.0);

  Dataset d;
  d.signals = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(templates.size() * samples_per_class),
                                    static_cast<Eigen::Index>(n));
  Eigen::Index row = 0;
  for (std::size_t label = 0; label < templates.size(); ++label) {
    for (std::size_t s = 0; s < samples_per_class; ++s, ++row) {
      const auto& slots = pm.at(pick(rng)).slots;
      for (std::size_t i = 0; i < slots.size(); ++i) {
        if (!is_lost(slots[i])) d.signals(row, static_cast<Eigen::Index>(slots[i])) = templates[label][i];
      }
      if (noise_sigma > 0.0) {
        for (Eigen::Index v = 0; v < d.signals.cols(); ++v) d.signals(row, v) += noise(rng);
      }
      d.labels.push_back(label);
    }
  }
  return d;
}

std::vector<std::vector<double>> random_templates(std::size_t count, std::size_t kernel_size, std::uint64_t seed) {
  if (kernel_size == 0) throw ParameterError("templates need at least one slot");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> dist(0.0, 1.0);
  std::vector<std::vector<double>> templates(count, std::vector<double>(kernel_size));
  for (auto& t : templates) {
    for (auto& x : t) x = dist(rng);
    const double mean = std::accumulate(t.begin(), t.end(), 0.0) / static_cast<double>(kernel_size);
    for (auto& x : t) x -= mean;
  }
  return templates;
}

std::pair<Dataset, Dataset> split_dataset(const Dataset& d, double fraction, std::uint64_t seed) {
  d.validate();
  if (!(fraction >= 0.0 && fraction <= 1.0)) throw ParameterError("split fraction must lie in [0, 1]");
  std::vector<std::size_t> order(d.size());
  std::iota(order.begin(), order.end(), 0);
  std::mt19937_64 rng(seed);
  std::shuffle(order.begin(), order.end(), rng);
  const auto cut = static_cast<std::size_t>(std::lround(fraction * static_cast<double>(d.size())));

  const auto take = [&d](std::span<const std::size_t> rows) {
    Dataset part;
    part.signals.resize(static_cast<Eigen::Index>(rows.size()), d.signals.cols());
    for (std::size_t r = 0; r < rows.size(); ++r) {
      part.signals.row(static_cast<Eigen::Index>(r)) = d.signals.row(static_cast<Eigen::Index>(rows[r]));
      part.labels.push_back(d.labels[rows[r]]);
    }
    return part;
  };
  const std::span<const std::size_t> all(order);
  return {take(all.first(cut)), take(all.subspan(cut))};
}

}  // namespace gcf
