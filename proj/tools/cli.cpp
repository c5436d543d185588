#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>

#include "gcf/error.hpp"
#include "gcf/graph.hpp"
#include "gcf/layer.hpp"
#include "gcf/net.hpp"
#include "gcf/propagation.hpp"

namespace gcf::cli {
namespace {

namespace fs = std::filesystem;

std::ifstream open_input(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open '" + path + "' for reading");
  return in;
}

// Output paths are checked before any work starts; "-" or empty means stdout.
void check_output(const std::string& path) {
  if (path.empty() || path == "-") return;
  const auto parent = fs::path(path).parent_path();
  if (!parent.empty() && !fs::is_directory(parent)) {
    throw Error("output directory '" + parent.string() + "' does not exist");
  }
}

void emit(const std::string& path, const std::string& content, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << content;
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file || !(file << content)) throw Error("cannot write '" + path + "'");
}

template <class Write, class Value>
std::string render(Write write, const Value& value) {
  std::ostringstream s;
  write(s, value);
  return s.str();
}

Graph read_graph(const std::string& path) {
  auto in = open_input(path);
  return load_edge_list(in);
}

struct InferArgs {
  std::string coords;
  std::size_t k = 6;
  std::string out;
};

int infer_graph(const InferArgs& a, std::ostream& out) {
  check_output(a.out);
  auto in = open_input(a.coords);
  const auto g = infer_knn_graph(load_coordinates_csv(in), a.k);
  emit(a.out, render(write_edge_list, g), out);
  return kOk;
}

struct TranslateArgs {
  std::string graph;
  std::size_t radius = 1;
  double alpha = 1.0;
  double beta = 1.0;
  std::optional<VertexId> seed_vertex;
  std::string out;
  std::string report;
};

int translate(const TranslateArgs& a, std::ostream& out) {
  check_output(a.out);
  check_output(a.report);
  const auto g = read_graph(a.graph);
  if (!is_connected(g)) throw ConnectivityError("graph '" + a.graph + "' is not connected");
  const VertexId seed = a.seed_vertex ? *a.seed_vertex : most_central_vertex(g);
  if (seed >= g.size()) throw RangeError("seed vertex " + std::to_string(seed) + " >= n=" + std::to_string(g.size()));
  PropagationOptions options;
  options.weights = {a.alpha, a.beta};
  const auto pm = propagate(g, init_kernel(g, seed, a.radius), options);
  const auto report = render(write_report, placement_report(pm));
  emit(a.out, render(write_placements, pm), out);
  if (!a.report.empty()) {
    emit(a.report, report, out);
  } else if (!a.out.empty() && a.out != "-") {
    out << report;
  }
  return kOk;
}

struct BuildArgs {
  std::string placements;
  bool transpose = false;
  std::string out;
};

int build_layer(const BuildArgs& a, std::ostream& out) {
  check_output(a.out);
  auto in = open_input(a.placements);
  auto scheme = build_scheme(read_placements(in));
  if (a.transpose) scheme = scheme.transposed();
  emit(a.out, render(write_scheme, scheme), out);
  return kOk;
}

struct VerifyArgs {
  std::string scheme;
  std::size_t rows = 0;
  std::size_t cols = 0;
};

int verify_grid(const VerifyArgs& a, std::ostream& out) {
  auto in = open_input(a.scheme);
  const auto check = verify_grid_equivalence(read_scheme(in), a.rows, a.cols);
  if (!check.pass) {
    out << "fail: " << check.reason << '\n';
    if (check.witness) out << "witness: " << check.witness->out << ' ' << check.witness->in << ' ' << check.witness->weight << '\n';
    return kVerificationFailed;
  }
  out << "pass: " << a.rows << 'x' << a.cols << " grid convolution\n";
  for (std::size_t i = 0; i < check.offsets.size(); ++i) {
    out << "weight " << i << ": ";
    if (check.offsets[i]) {
      out << check.offsets[i]->row << ' ' << check.offsets[i]->col << '\n';
    } else {
      out << "unused\n";
    }
  }
  return kOk;
}

struct DatasetArgs {
  std::string placements;
  std::size_t classes = 2;
  std::size_t samples = 100;
  double sigma = 0.1;
  std::uint64_t seed = 0;
  std::string out;
};

int make_dataset(const DatasetArgs& a, std::ostream& out) {
  check_output(a.out);
  auto in = open_input(a.placements);
  const auto pm = read_placements(in);
  // Templates and samples draw from separate streams so either can be varied alone.
  const auto templates = random_templates(a.classes, pm.kernel_size(), a.seed);
  const auto d = make_translated_dataset(pm, templates, a.samples, a.sigma, a.seed + 1);
  emit(a.out, render(write_dataset_csv, d), out);
  return kOk;
}

struct TrainArgs {
  std::string scheme;
  std::string graph;
  std::string train_path;
  std::string test_path;
  TrainConfig config;
  std::optional<double> dropout;
  bool select_lr = false;
  std::size_t channels = NetConfig{}.channels;
  std::size_t hidden = NetConfig{}.hidden;
  std::string out;
  std::string checkpoint;
};

void check_scheme_on_graph(const WeightSharingScheme& s, const Graph& g) {
  if (s.size() != g.size()) {
    throw DimensionError("scheme has " + std::to_string(s.size()) + " vertices, graph has " + std::to_string(g.size()));
  }
  for (const auto& t : s.triples()) {
    if (t.out != t.in && !g.has_edge(t.out, t.in)) {
      throw ParameterError("triple (" + std::to_string(t.out) + ", " + std::to_string(t.in) + ", " +
                           std::to_string(t.weight) + ") is not an edge of the graph");
    }
  }
}

Dataset read_dataset(const std::string& path) {
  auto in = open_input(path);
  try {
    return read_dataset_csv(in);
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.what(), 0);
  }
}

int train_model(TrainArgs a, std::ostream& out) {
  check_output(a.out);
  check_output(a.checkpoint);
  auto in = open_input(a.scheme);
  const auto scheme = read_scheme(in);
  if (!a.graph.empty()) check_scheme_on_graph(scheme, read_graph(a.graph));
  const auto train_set = read_dataset(a.train_path);
  const auto test_set = read_dataset(a.test_path);

  NetConfig net;
  net.channels = a.channels;
  net.hidden = a.hidden;
  net.classes = std::max<std::size_t>({2, train_set.class_count(), test_set.class_count()});
  if (a.dropout) net.dropout = *a.dropout;
  const auto make = [&] { return make_graph_cnn(scheme, net, a.config.seed); };
  if (a.select_lr) {
    const double rates[] = {0.1, 0.01, 0.001};
    a.config.lr = select_learning_rate(make, train_set, rates, a.config);
  }
  auto model = make();
  const auto history = train(model, train_set, test_set, a.config);

  emit(a.out, render(write_metrics_csv, history), out);
  if (!a.checkpoint.empty()) emit(a.checkpoint, render(save_checkpoint, model), out);
  if (!a.out.empty() && a.out != "-") {
    out << "lr " << a.config.lr << ", final test accuracy " << history.back().test_accuracy << '\n';
  }
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Graph convolution via kernel translation"};
  app.name("gcf");
  app.require_subcommand(1);

  InferArgs infer;
  auto* infer_cmd = app.add_subcommand("infer-graph", "k-nearest-neighbor graph from a coordinate CSV");
  infer_cmd->add_option("coords", infer.coords, "Coordinate CSV, one point per row")->required()->check(CLI::ExistingFile);
  infer_cmd->add_option("--k", infer.k, "Neighbors per point")->capture_default_str()->check(CLI::PositiveNumber);
  infer_cmd->add_option("--out", infer.out, "Edge-list output (default stdout)");

  TranslateArgs tr;
  auto* tr_cmd = app.add_subcommand("translate", "Propagate a kernel over every vertex of a graph");
  tr_cmd->add_option("graph", tr.graph, "Edge-list file")->required()->check(CLI::ExistingFile);
  tr_cmd->add_option("--radius", tr.radius, "Kernel radius in hops")->capture_default_str();
  tr_cmd->add_option("--alpha", tr.alpha, "Cost per lost slot")->capture_default_str()->check(CLI::NonNegativeNumber);
  tr_cmd->add_option("--beta", tr.beta, "Cost per neighborhood violation")->capture_default_str()->check(CLI::NonNegativeNumber);
  tr_cmd->add_option("--seed-vertex,--seed", tr.seed_vertex, "Kernel seed (default: most central vertex)");
  tr_cmd->add_option("--out", tr.out, "Placement output (default stdout)");
  tr_cmd->add_option("--report", tr.report, "Report output (default stdout when --out is a file)");

  BuildArgs build;
  auto* build_cmd = app.add_subcommand("build-layer", "Weight-sharing scheme from a placement file");
  build_cmd->add_option("placements", build.placements, "Placement file")->required()->check(CLI::ExistingFile);
  build_cmd->add_flag("--transpose", build.transpose, "Center kernels on the input side");
  build_cmd->add_option("--out", build.out, "Scheme output (default stdout)");

  VerifyArgs verify;
  auto* verify_cmd = app.add_subcommand("verify-grid", "Check a scheme against the plus-shaped grid convolution");
  verify_cmd->add_option("scheme", verify.scheme, "Scheme file")->required()->check(CLI::ExistingFile);
  verify_cmd->add_option("--rows", verify.rows, "Grid rows")->required();
  verify_cmd->add_option("--cols", verify.cols, "Grid columns")->required();

  DatasetArgs data;
  auto* data_cmd = app.add_subcommand("make-dataset", "Synthetic translated-pattern dataset");
  data_cmd->add_option("placements", data.placements, "Placement file")->required()->check(CLI::ExistingFile);
  data_cmd->add_option("--classes", data.classes, "Number of templates")->capture_default_str()->check(CLI::PositiveNumber);
  data_cmd->add_option("--samples", data.samples, "Samples per class")->capture_default_str();
  data_cmd->add_option("--sigma", data.sigma, "Gaussian noise level")->capture_default_str()->check(CLI::NonNegativeNumber);
  data_cmd->add_option("--seed", data.seed, "Random seed")->capture_default_str();
  data_cmd->add_option("--out", data.out, "Dataset CSV output (default stdout)");

  TrainArgs tn;
  auto* train_cmd = app.add_subcommand("train", "Train the graph CNN on dataset CSV files");
  train_cmd->add_option("scheme", tn.scheme, "Scheme file")->required()->check(CLI::ExistingFile);
  train_cmd->add_option("--graph", tn.graph, "Edge-list the scheme must live on")->check(CLI::ExistingFile);
  train_cmd->add_option("--train", tn.train_path, "Training CSV")->required()->check(CLI::ExistingFile);
  train_cmd->add_option("--test", tn.test_path, "Test CSV")->required()->check(CLI::ExistingFile);
  train_cmd->add_option("--lr", tn.config.lr, "Learning rate")->capture_default_str()->check(CLI::NonNegativeNumber);
  train_cmd->add_flag("--select-lr", tn.select_lr, "Grid-search the learning rate over 0.1, 0.01, 0.001");
  train_cmd->add_option("--epochs", tn.config.epochs, "Epochs")->capture_default_str()->check(CLI::PositiveNumber);
  train_cmd->add_option("--batch", tn.config.batch, "Minibatch size")->capture_default_str()->check(CLI::PositiveNumber);
  train_cmd->add_option("--seed", tn.config.seed, "Random seed")->capture_default_str();
  train_cmd->add_option("--dropout", tn.dropout, "Dropout rate in [0, 1)")->check(CLI::Range(0.0, 1.0));
  train_cmd->add_option("--channels", tn.channels, "Convolution channels")->capture_default_str()->check(CLI::PositiveNumber);
  train_cmd->add_option("--hidden", tn.hidden, "Hidden dense width")->capture_default_str()->check(CLI::PositiveNumber);
  train_cmd->add_option("--out", tn.out, "Metrics CSV output (default stdout)");
  train_cmd->add_option("--checkpoint", tn.checkpoint, "Model checkpoint output");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*infer_cmd) return infer_graph(infer, out);
    if (*tr_cmd) return translate(tr, out);
    if (*build_cmd) return build_layer(build, out);
    if (*verify_cmd) return verify_grid(verify, out);
    if (*data_cmd) return make_dataset(data, out);
    if (*train_cmd) {
      tn.config.dropout = tn.dropout;
      return train_model(tn, out);
    }
  } catch (const std::exception& e) {
    err << "gcf: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}

}  // namespace gcf::cli
