#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "gcf/error.hpp"
#include "gcf/graph.hpp"
#include "gcf/layer.hpp"
#include "gcf/net.hpp"
#include "gcf/propagation.hpp"
#include "gcf/translations.hpp"

namespace py = pybind11;
using namespace gcf;

namespace {

// Lost slots cross the boundary as None.
std::vector<std::optional<VertexId>> slots_to_py(const std::vector<VertexId>& slots) {
  std::vector<std::optional<VertexId>> out;
  for (const VertexId v : slots) out.push_back(is_lost(v) ? std::nullopt : std::optional(v));
  return out;
}

std::vector<VertexId> slots_from_py(const std::vector<std::optional<VertexId>>& slots) {
  std::vector<VertexId> out;
  for (const auto& v : slots) out.push_back(v.value_or(kLost));
  return out;
}

template <class T, class Write>
std::string to_text(const T& value, Write write) {
  std::ostringstream out;
  write(out, value);
  return out.str();
}

template <class Read>
auto from_text(const std::string& text, Read read) {
  std::istringstream in(text);
  return read(in);
}

}  // namespace

PYBIND11_MODULE(_gcf, m) {
  m.doc() = "Graph convolutions from translated kernels";

  auto error = py::register_exception<Error>(m, "Error");
  py::register_exception<ParseError>(m, "ParseError", error);
  py::register_exception<RangeError>(m, "RangeError", error);
  py::register_exception<ParameterError>(m, "ParameterError", error);
  py::register_exception<DimensionError>(m, "DimensionError", error);
  py::register_exception<ConnectivityError>(m, "ConnectivityError", error);
  py::register_exception<AdjacencyError>(m, "AdjacencyError", error);
  py::register_exception<SizeGuardError>(m, "SizeGuardError", error);
  py::register_exception<IncompleteError>(m, "IncompleteError", error);
  py::register_exception<DivergenceError>(m, "DivergenceError", error);

  // graph
  py::class_<Graph>(m, "Graph")
      .def(py::init([](std::size_t n, const std::vector<std::pair<VertexId, VertexId>>& edges) {
             std::vector<Edge> e;
             for (const auto& [u, v] : edges) e.push_back({u, v});
             return Graph(n, e);
           }),
           py::arg("n"), py::arg("edges"))
      .def_property_readonly("n", &Graph::size)
      .def_property_readonly("edge_count", &Graph::edge_count)
      .def("neighbors", [](const Graph& g, VertexId v) {
        if (v >= g.size()) throw RangeError("vertex " + std::to_string(v) + " out of range");
        const auto nb = g.neighbors(v);
        return std::vector<VertexId>(nb.begin(), nb.end());
      })
      .def("has_edge", &Graph::has_edge)
      .def("edges", [](const Graph& g) {
        std::vector<std::pair<VertexId, VertexId>> out;
        for (const auto& e : g.edges()) out.emplace_back(e.u, e.v);
        return out;
      })
      .def("__len__", &Graph::size);

  m.def("grid_graph", &make_grid_graph, py::arg("rows"), py::arg("cols"));
  m.def("load_edge_list", [](const std::string& text) { return from_text(text, load_edge_list); });
  m.def("dump_edge_list", [](const Graph& g) { return to_text(g, write_edge_list); });
  m.def("infer_knn_graph",
        [](const std::vector<std::vector<double>>& points, std::size_t k) {
          return infer_knn_graph(CoordinateSet(points), k);
        },
        py::arg("points"), py::arg("k") = 6);
  m.def("bfs_distances", [](const Graph& g, VertexId source) {
    std::vector<std::optional<std::size_t>> out;
    for (const auto d : bfs_distances(g, source)) out.push_back(d == kUnreachable ? std::nullopt : std::optional(d));
    return out;
  });
  m.def("is_connected", &is_connected);

  // translations
  py::class_<ScoreWeights>(m, "ScoreWeights")
      .def(py::init([](double loss, double snp) { return ScoreWeights{loss, snp}; }), py::arg("loss") = 1.0,
           py::arg("snp") = 1.0)
      .def_readwrite("loss", &ScoreWeights::loss)
      .def_readwrite("snp", &ScoreWeights::snp);

  py::class_<DeformationScore>(m, "DeformationScore")
      .def_readonly("losses", &DeformationScore::losses)
      .def_readonly("snp_violations", &DeformationScore::snp_violations)
      .def_readonly("turns", &DeformationScore::turns)
      .def_readonly("total", &DeformationScore::total);

  py::class_<KernelPlacement>(m, "KernelPlacement")
      .def(py::init([](VertexId center, const std::vector<std::optional<VertexId>>& slots) {
             KernelPlacement p{center, slots_from_py(slots), {}};
             return p;
           }),
           py::arg("center"), py::arg("slots"))
      .def_readonly("center", &KernelPlacement::center)
      .def_property_readonly("slots", [](const KernelPlacement& p) { return slots_to_py(p.slots); })
      .def_readonly("score", &KernelPlacement::score)
      .def_property_readonly("kernel_size", &KernelPlacement::kernel_size)
      .def_property_readonly("lost_slots", &KernelPlacement::lost_slots);

  py::class_<LocalTranslation>(m, "LocalTranslation")
      .def_property_readonly("images", [](const LocalTranslation& t) { return slots_to_py(t.images); })
      .def_readonly("score", &LocalTranslation::score);

  m.def("find_local_translation", &find_local_translation, py::arg("graph"), py::arg("placement"),
        py::arg("target"), py::arg("weights") = ScoreWeights{});
  m.def("translate_placement", &translate_placement);

  // propagation
  py::class_<PlacementMap>(m, "PlacementMap")
      .def_property_readonly("n", &PlacementMap::size)
      .def_property_readonly("seed", &PlacementMap::seed)
      .def_property_readonly("kernel_size", &PlacementMap::kernel_size)
      .def_property_readonly("complete", &PlacementMap::complete)
      .def("__getitem__", &PlacementMap::at)
      .def("__len__", &PlacementMap::size);

  m.def("closeness_centrality", &closeness_centrality, py::arg("graph"), py::arg("threads") = 0);
  m.def("most_central_vertex", &most_central_vertex, py::arg("graph"), py::arg("threads") = 0);
  m.def("init_kernel", &init_kernel, py::arg("graph"), py::arg("center"), py::arg("radius") = 1);
  m.def("propagate",
        [](const Graph& g, const KernelPlacement& seed, const ScoreWeights& w, unsigned threads) {
          py::gil_scoped_release release;
          return propagate(g, seed, {w, threads});
        },
        py::arg("graph"), py::arg("seed_kernel"), py::arg("weights") = ScoreWeights{}, py::arg("threads") = 0);
  m.def("is_fixed_point", &is_fixed_point, py::arg("graph"), py::arg("placements"),
        py::arg("weights") = ScoreWeights{});
  m.def("dump_placements", [](const PlacementMap& pm) { return to_text(pm, write_placements); });
  m.def("load_placements", [](const std::string& text) { return from_text(text, read_placements); });

  // layer
  py::enum_<KernelSide>(m, "KernelSide").value("output", KernelSide::output).value("input", KernelSide::input);

  py::class_<WeightSharingScheme>(m, "WeightSharingScheme")
      .def(py::init([](std::size_t n, std::size_t k, const std::vector<std::tuple<VertexId, VertexId, std::size_t>>& t,
                       KernelSide side) {
             std::vector<WeightTriple> triples;
             for (const auto& [out, in, w] : t) triples.push_back({out, in, w});
             return WeightSharingScheme(n, k, std::move(triples), side);
           }),
           py::arg("n"), py::arg("kernel_size"), py::arg("triples"), py::arg("side") = KernelSide::output)
      .def_property_readonly("n", &WeightSharingScheme::size)
      .def_property_readonly("kernel_size", &WeightSharingScheme::kernel_size)
      .def_property_readonly("side", &WeightSharingScheme::side)
      .def_property_readonly("triples",
                             [](const WeightSharingScheme& s) {
                               std::vector<std::tuple<VertexId, VertexId, std::size_t>> out;
                               for (const auto& t : s.triples()) out.emplace_back(t.out, t.in, t.weight);
                               return out;
                             })
      .def("transposed", &WeightSharingScheme::transposed)
      .def("__eq__", [](const WeightSharingScheme& a, const WeightSharingScheme& b) { return a == b; });

  py::class_<GridCheck>(m, "GridCheck")
      .def_readonly("passed", &GridCheck::pass)
      .def_readonly("reason", &GridCheck::reason)
      .def_property_readonly("witness",
                             [](const GridCheck& c) -> std::optional<std::tuple<VertexId, VertexId, std::size_t>> {
                               if (!c.witness) return std::nullopt;
                               return std::tuple(c.witness->out, c.witness->in, c.witness->weight);
                             })
      .def_property_readonly("offsets", [](const GridCheck& c) {
        std::vector<std::optional<std::pair<long, long>>> out;
        for (const auto& o : c.offsets) out.push_back(o ? std::optional(std::pair(o->row, o->col)) : std::nullopt);
        return out;
      });

  m.def("build_scheme", &build_scheme);
  m.def("verify_grid", &verify_grid_equivalence, py::arg("scheme"), py::arg("rows"), py::arg("cols"));
  m.def("dump_scheme", [](const WeightSharingScheme& s) { return to_text(s, write_scheme); });
  m.def("load_scheme", [](const std::string& text) { return from_text(text, read_scheme); });

  // net
  m.def("conv_forward",
        [](const WeightSharingScheme& s, std::vector<double> weights, double bias, const std::vector<double>& x) {
          const ConvLayer layer(std::make_shared<const WeightSharingScheme>(s), std::move(weights), bias);
          return conv_forward(layer, x);
        },
        py::arg("scheme"), py::arg("weights"), py::arg("bias"), py::arg("x"));

  py::class_<NetConfig>(m, "NetConfig")
      .def(py::init<>())
      .def_readwrite("channels", &NetConfig::channels)
      .def_readwrite("hidden", &NetConfig::hidden)
      .def_readwrite("classes", &NetConfig::classes)
      .def_readwrite("dropout", &NetConfig::dropout);

  py::class_<TrainConfig>(m, "TrainConfig")
      .def(py::init<>())
      .def_readwrite("lr", &TrainConfig::lr)
      .def_readwrite("epochs", &TrainConfig::epochs)
      .def_readwrite("batch", &TrainConfig::batch)
      .def_readwrite("seed", &TrainConfig::seed)
      .def_readwrite("dropout", &TrainConfig::dropout);

  py::class_<EpochMetrics>(m, "EpochMetrics")
      .def_readonly("epoch", &EpochMetrics::epoch)
      .def_readonly("loss", &EpochMetrics::loss)
      .def_readonly("train_accuracy", &EpochMetrics::train_accuracy)
      .def_readonly("test_accuracy", &EpochMetrics::test_accuracy);

  py::class_<Dataset>(m, "Dataset")
      .def(py::init([](Eigen::MatrixXd signals, std::vector<std::size_t> labels) {
             Dataset d{std::move(signals), std::move(labels)};
             d.validate();
             return d;
           }),
           py::arg("signals"), py::arg("labels"))
      .def_readonly("signals", &Dataset::signals)
      .def_readonly("labels", &Dataset::labels)
      .def("__len__", &Dataset::size);

  m.def("make_translated_dataset", &make_translated_dataset, py::arg("placements"), py::arg("templates"),
        py::arg("samples_per_class"), py::arg("noise_sigma"), py::arg("seed"));
  m.def("random_templates", &random_templates, py::arg("count"), py::arg("kernel_size"), py::arg("seed"));
  m.def("load_dataset_csv", [](const std::string& text) { return from_text(text, read_dataset_csv); });
  m.def("dump_dataset_csv", [](const Dataset& d) { return to_text(d, write_dataset_csv); });

  py::class_<Model>(m, "Model")
      .def_property_readonly("parameter_count", &Model::parameter_count)
      .def_property_readonly("input_size", &Model::input_size)
      .def_property_readonly("output_size", &Model::output_size)
      .def("logits", py::overload_cast<const Eigen::MatrixXd&>(&Model::forward))
      .def("predict", &Model::predict);

  m.def("make_graph_cnn", &make_graph_cnn, py::arg("scheme"), py::arg("config") = NetConfig{}, py::arg("seed") = 0);
  m.def("make_dense_baseline", &make_dense_baseline, py::arg("n"), py::arg("width"),
        py::arg("config") = NetConfig{}, py::arg("seed") = 0);
  m.def("matched_dense_width", &matched_dense_width);
  m.def("train",
        [](Model& model, const Dataset& train_set, const Dataset& test_set, const TrainConfig& config) {
          py::gil_scoped_release release;
          return train(model, train_set, test_set, config);
        },
        py::arg("model"), py::arg("train_set"), py::arg("test_set"), py::arg("config") = TrainConfig{});
}
