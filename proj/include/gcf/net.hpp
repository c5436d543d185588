#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <memory>
#include <optional>
#include <random>
#include <span>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "gcf/graph.hpp"
#include "gcf/layer.hpp"
#include "gcf/propagation.hpp"

namespace gcf {

/// One shared kernel over a weight-sharing scheme: K weights plus a single
/// bias shared by every output, so the parameter count is K + 1 for any n.
struct ConvLayer {
  std::shared_ptr<const WeightSharingScheme> scheme;
  std::vector<double> weights;
  double bias = 0.0;

  ConvLayer() = default;
  ConvLayer(std::shared_ptr<const WeightSharingScheme> s, std::vector<double> w, double b);

  std::size_t parameter_count() const noexcept { return weights.size() + 1; }
};

/// y[out] = bias + sum over triples (out, in, i) of weights[i] * x[in].
std::vector<double> conv_forward(const ConvLayer& layer, std::span<const double> x);

struct ConvGradients {
  std::vector<double> weights;
  double bias = 0.0;
  std::vector<double> input;
};

/// Gradients of <upstream, conv_forward(layer, x)>.
ConvGradients conv_backward(const ConvLayer& layer, std::span<const double> x, std::span<const double> upstream);

// Layers work on row-major batches: one sample per row.

/// C independent kernels over the same scheme; output feature c*n + v is
/// channel c at vertex v.
class GraphConv {
 public:
  explicit GraphConv(std::vector<ConvLayer> channels);

  std::size_t input_size() const { return channels_.front().scheme->size(); }
  std::size_t output_size() const { return channels_.size() * input_size(); }
  const std::vector<ConvLayer>& channels() const noexcept { return channels_; }

  Eigen::MatrixXd forward(const Eigen::MatrixXd& x);
  Eigen::MatrixXd backward(const Eigen::MatrixXd& grad);
  std::vector<std::span<double>> parameters();
  std::vector<std::span<double>> gradients();

 private:
  std::vector<ConvLayer> channels_;
  std::vector<std::vector<double>> weight_grads_;
  std::vector<double> bias_grads_;
  Eigen::MatrixXd input_;
};

/// Fully connected layer: y = x W^T + b.
class Dense {
 public:
  Dense(Eigen::MatrixXd weight, Eigen::VectorXd bias);

  std::size_t input_size() const { return static_cast<std::size_t>(weight_.cols()); }
  std::size_t output_size() const { return static_cast<std::size_t>(weight_.rows()); }
  const Eigen::MatrixXd& weight() const noexcept { return weight_; }
  const Eigen::VectorXd& bias() const noexcept { return bias_; }

  Eigen::MatrixXd forward(const Eigen::MatrixXd& x);
  Eigen::MatrixXd backward(const Eigen::MatrixXd& grad);
  std::vector<std::span<double>> parameters();
  std::vector<std::span<double>> gradients();

 private:
  Eigen::MatrixXd weight_;
  Eigen::VectorXd bias_;
  Eigen::MatrixXd weight_grad_;
  Eigen::VectorXd bias_grad_;
  Eigen::MatrixXd input_;
};

class Relu {
 public:
  Eigen::MatrixXd forward(const Eigen::MatrixXd& x);
  Eigen::MatrixXd backward(const Eigen::MatrixXd& grad) const;

 private:
  Eigen::MatrixXd input_;
};

/// Inverted dropout: training keeps each unit with probability 1 - p and
/// scales it by 1 / (1 - p); inference is the identity.
class Dropout {
 public:
  explicit Dropout(double p);

  double rate() const noexcept { return p_; }
  void set_rate(double p);

  Eigen::MatrixXd forward(const Eigen::MatrixXd& x, bool training, std::mt19937_64& rng);
  Eigen::MatrixXd backward(const Eigen::MatrixXd& grad) const;

 private:
  double p_;
  Eigen::MatrixXd mask_;
};

using Layer = std::variant<GraphConv, Dense, Relu, Dropout>;

/// Feed-forward stack of layers with matching consecutive sizes.
class Model {
 public:
  explicit Model(std::vector<Layer> layers);

  std::size_t input_size() const;
  std::size_t output_size() const;
  std::size_t parameter_count() const;
  const std::vector<Layer>& layers() const noexcept { return layers_; }

  /// Logits for a batch. `rng` is only consulted by dropout in training mode.
  Eigen::MatrixXd forward(const Eigen::MatrixXd& x, bool training, std::mt19937_64& rng);
  Eigen::MatrixXd forward(const Eigen::MatrixXd& x);
  /// Back-propagates d loss / d logits of the last forward call; returns
  /// d loss / d input and leaves parameter gradients in the layers.
  Eigen::MatrixXd backward(const Eigen::MatrixXd& grad);

  std::vector<std::span<double>> parameters();
  std::vector<std::span<double>> gradients();
  void sgd_step(double lr);
  void set_dropout(double p);

  std::vector<std::size_t> predict(const Eigen::MatrixXd& x);

 private:
  std::vector<Layer> layers_;
};

struct NetConfig {
  std::size_t channels = 8;
  std::size_t hidden = 32;
  std::size_t classes = 2;
  double dropout = 0.5;
};

/// [GraphConv(channels), ReLU, Dense(hidden), ReLU, Dropout, Dense(classes)]
/// with He-uniform initialization.
Model make_graph_cnn(const WeightSharingScheme& scheme, const NetConfig& config, std::uint64_t seed);

/// Same stack with the graph convolution replaced by Dense(n -> width).
Model make_dense_baseline(std::size_t n, std::size_t width, const NetConfig& config, std::uint64_t seed);

/// Width for make_dense_baseline whose parameter count is closest to
/// `target_parameters` (smaller width on ties).
std::size_t matched_dense_width(std::size_t n, const NetConfig& config, std::size_t target_parameters);

/// Labeled signals on the vertices: one sample per row.
struct Dataset {
  Eigen::MatrixXd signals;
  std::vector<std::size_t> labels;

  std::size_t size() const noexcept { return labels.size(); }
  std::size_t vertex_count() const noexcept { return static_cast<std::size_t>(signals.cols()); }
  std::size_t class_count() const;
  /// Throws DimensionError when rows and labels disagree.
  void validate() const;
};

/// Header `x0,...,x{n-1},label`, then one row per sample.
void write_dataset_csv(std::ostream& out, const Dataset& d);
Dataset read_dataset_csv(std::istream& in);

/// Samples whose class templates (one value per kernel slot) are written
/// through the placement of a uniformly random vertex, plus Gaussian noise.
/// Lost slots drop their value. Samples are generated class by class.
Dataset make_translated_dataset(const PlacementMap& pm, const std::vector<std::vector<double>>& templates,
                                std::size_t samples_per_class, double noise_sigma, std::uint64_t seed);

/// `count` templates of `kernel_size` standard normal values, each shifted to
/// zero mean so that classes differ in shape rather than in total intensity.
std::vector<std::vector<double>> random_templates(std::size_t count, std::size_t kernel_size, std::uint64_t seed);

/// Deterministic shuffle, then the first `fraction` of rows in `first`.
std::pair<Dataset, Dataset> split_dataset(const Dataset& d, double fraction, std::uint64_t seed);

double accuracy(Model& model, const Dataset& d);

/// Mean softmax cross-entropy of logits against labels, and its gradient.
double softmax_cross_entropy(const Eigen::MatrixXd& logits, std::span<const std::size_t> labels,
                             Eigen::MatrixXd* grad = nullptr);

struct TrainConfig {
  double lr = 0.01;
  std::size_t epochs = 30;
  std::size_t batch = 16;
  std::uint64_t seed = 0;
  std::optional<double> dropout;  ///< overrides the model's dropout rate
};

struct EpochMetrics {
  std::size_t epoch = 0;
  double loss = 0.0;
  double train_accuracy = 0.0;
  double test_accuracy = 0.0;
};

/// Minibatch SGD on softmax cross-entropy, deterministic given the seed.
/// Throws DivergenceError when the epoch loss is not finite.
std::vector<EpochMetrics> train(Model& model, const Dataset& train_set, const Dataset& test_set,
                                const TrainConfig& config);

/// Picks the rate with the best validation accuracy (earliest on ties) by
/// training fresh models on a split of `train_set`.
double select_learning_rate(const std::function<Model()>& make_model, const Dataset& train_set,
                            std::span<const double> rates, const TrainConfig& config,
                            double validation_fraction = 0.2);

void write_metrics_csv(std::ostream& out, const std::vector<EpochMetrics>& history);

/// Plain-text parameter dump with one header line per layer.
void save_checkpoint(std::ostream& out, const Model& model);
/// `scheme` is required when the checkpoint contains a graph convolution.
Model load_checkpoint(std::istream& in, const WeightSharingScheme* scheme);

}  // namespace gcf
