#include "gcf/net.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <numeric>
#include <ostream>
#include <string>

#include "gcf/error.hpp"
#include "text_util.hpp"

namespace gcf {
namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

std::span<double> as_span(Eigen::MatrixXd& m) { return {m.data(), static_cast<std::size_t>(m.size())}; }
std::span<double> as_span(Eigen::VectorXd& v) { return {v.data(), static_cast<std::size_t>(v.size())}; }

void require_columns(const Eigen::MatrixXd& x, std::size_t expected, const char* where) {
  if (static_cast<std::size_t>(x.cols()) != expected) {
    throw DimensionError(std::string(where) + ": expected " + std::to_string(expected) + " features, got " +
                         std::to_string(x.cols()));
  }
}

Eigen::MatrixXd gather_rows(const Eigen::MatrixXd& m, std::span<const std::size_t> rows) {
  Eigen::MatrixXd out(static_cast<Eigen::Index>(rows.size()), m.cols());
  for (std::size_t r = 0; r < rows.size(); ++r) out.row(static_cast<Eigen::Index>(r)) = m.row(static_cast<Eigen::Index>(rows[r]));
  return out;
}

double he_limit(std::size_t fan_in) { return std::sqrt(6.0 / static_cast<double>(fan_in)); }

Dense make_dense(std::size_t in, std::size_t out, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> dist(-he_limit(in), he_limit(in));
  Eigen::MatrixXd w(static_cast<Eigen::Index>(out), static_cast<Eigen::Index>(in));
  for (Eigen::Index r = 0; r < w.rows(); ++r) {
    for (Eigen::Index c = 0; c < w.cols(); ++c) w(r, c) = dist(rng);
  }
  return Dense(std::move(w), Eigen::VectorXd::Zero(static_cast<Eigen::Index>(out)));
}

std::vector<Layer> head(std::size_t features, const NetConfig& config, std::mt19937_64& rng) {
  std::vector<Layer> layers;
  layers.emplace_back(Relu{});
  layers.emplace_back(make_dense(features, config.hidden, rng));
  layers.emplace_back(Relu{});
  layers.emplace_back(Dropout(config.dropout));
  layers.emplace_back(make_dense(config.hidden, config.classes, rng));
  return layers;
}

}  // namespace

ConvLayer::ConvLayer(std::shared_ptr<const WeightSharingScheme> s, std::vector<double> w, double b)
    : scheme(std::move(s)), weights(std::move(w)), bias(b) {
  if (!scheme) throw ParameterError("convolution layer needs a weight-sharing scheme");
  if (weights.size() != scheme->kernel_size()) {
    throw DimensionError("convolution layer has " + std::to_string(weights.size()) + " weights, scheme needs " +
                         std::to_string(scheme->kernel_size()));
  }
}

std::vector<double> conv_forward(const ConvLayer& layer, std::span<const double> x) {
  const auto n = layer.scheme->size();
  if (x.size() != n) {
    throw DimensionError("conv_forward: signal has " + std::to_string(x.size()) + " entries, expected " + std::to_string(n));
  }
  std::vector<double> y(n, layer.bias);
  for (const auto& t : layer.scheme->triples()) y[t.out] += layer.weights[t.weight] * x[t.in];
  return y;
}

ConvGradients conv_backward(const ConvLayer& layer, std::span<const double> x, std::span<const double> upstream) {
  const auto n = layer.scheme->size();
  if (x.size() != n || upstream.size() != n) throw DimensionError("conv_backward: expected vectors of length " + std::to_string(n));
  ConvGradients g;
  g.weights.assign(layer.weights.size(), 0.0);
  g.input.assign(n, 0.0);
  g.bias = std::accumulate(upstream.begin(), upstream.end(), 0.0);
  for (const auto& t : layer.scheme->triples()) {
    g.weights[t.weight] += upstream[t.out] * x[t.in];
    g.input[t.in] += upstream[t.out] * layer.weights[t.weight];
  }
  return g;
}

GraphConv::GraphConv(std::vector<ConvLayer> channels) : channels_(std::move(channels)) {
  if (channels_.empty()) throw ParameterError("graph convolution needs at least one channel");
  for (const auto& c : channels_) {
    if (!c.scheme || c.scheme->size() != channels_.front().scheme->size()) {
      throw DimensionError("all channels must share the vertex count");
    }
    weight_grads_.emplace_back(c.weights.size(), 0.0);
  }
  bias_grads_.assign(channels_.size(), 0.0);
}

Eigen::MatrixXd GraphConv::forward(const Eigen::MatrixXd& x) {
  require_columns(x, input_size(), "graph convolution");
  input_ = x;
  const auto n = static_cast<Eigen::Index>(input_size());
  Eigen::MatrixXd y(x.rows(), static_cast<Eigen::Index>(output_size()));
  for (std::size_t c = 0; c < channels_.size(); ++c) {
    const auto& layer = channels_[c];
    const Eigen::Index base = static_cast<Eigen::Index>(c) * n;
    y.middleCols(base, n).setConstant(layer.bias);
    for (const auto& t : layer.scheme->triples()) {
      y.col(base + static_cast<Eigen::Index>(t.out)) += layer.weights[t.weight] * x.col(static_cast<Eigen::Index>(t.in));
    }
  }
  return y;
}

Eigen::MatrixXd GraphConv::backward(const Eigen::MatrixXd& grad) {
  const auto n = static_cast<Eigen::Index>(input_size());
  Eigen::MatrixXd dx = Eigen::MatrixXd::Zero(input_.rows(), n);
  for (std::size_t c = 0; c < channels_.size(); ++c) {
    const auto& layer = channels_[c];
    const Eigen::Index base = static_cast<Eigen::Index>(c) * n;
    auto& dw = weight_grads_[c];
    std::fill(dw.begin(), dw.end(), 0.0);
    bias_grads_[c] = grad.middleCols(base, n).sum();
    for (const auto& t : layer.scheme->triples()) {
      const auto g = grad.col(base + static_cast<Eigen::Index>(t.out));
      dw[t.weight] += g.dot(input_.col(static_cast<Eigen::Index>(t.in)));
      dx.col(static_cast<Eigen::Index>(t.in)) += layer.weights[t.weight] * g;
    }
  }
  return dx;
}

std::vector<std::span<double>> GraphConv::parameters() {
  std::vector<std::span<double>> out;
  for (auto& c : channels_) {
    out.emplace_back(c.weights);
    out.emplace_back(&c.bias, 1);
  }
  return out;
}

std::vector<std::span<double>> GraphConv::gradients() {
  std::vector<std::span<double>> out;
  for (std::size_t c = 0; c < channels_.size(); ++c) {
    out.emplace_back(weight_grads_[c]);
    out.emplace_back(&bias_grads_[c], 1);
  }
  return out;
}

Dense::Dense(Eigen::MatrixXd weight, Eigen::VectorXd bias)
    : weight_(std::move(weight)),
      bias_(std::move(bias)),
      weight_grad_(Eigen::MatrixXd::Zero(weight_.rows(), weight_.cols())),
      bias_grad_(Eigen::VectorXd::Zero(bias_.size())) {
  if (weight_.rows() != bias_.size() || weight_.size() == 0) throw DimensionError("dense layer weight/bias mismatch");
}

Eigen::MatrixXd Dense::forward(const Eigen::MatrixXd& x) {
  require_columns(x, input_size(), "dense layer");
  input_ = x;
  return (x * weight_.transpose()).rowwise() + bias_.transpose();
}

Eigen::MatrixXd Dense::backward(const Eigen::MatrixXd& grad) {
  weight_grad_ = grad.transpose() * input_;
  bias_grad_ = grad.colwise().sum().transpose();
  return grad * weight_;
}

std::vector<std::span<double>> Dense::parameters() { return {as_span(weight_), as_span(bias_)}; }
std::vector<std::span<double>> Dense::gradients() { return {as_span(weight_grad_), as_span(bias_grad_)}; }

Eigen::MatrixXd Relu::forward(const Eigen::MatrixXd& x) {
  input_ = x;
  return x.cwiseMax(0.0);
}

Eigen::MatrixXd Relu::backward(const Eigen::MatrixXd& grad) const {
  return grad.cwiseProduct((input_.array() > 0.0).cast<double>().matrix());
}

Dropout::Dropout(double p) : p_(0.0) { set_rate(p); }

void Dropout::set_rate(double p) {
  if (!(p >= 0.0 && p < 1.0)) throw ParameterError("dropout rate must lie in [0, 1)");
  p_ = p;
}

Eigen::MatrixXd Dropout::forward(const Eigen::MatrixXd& x, bool training, std::mt19937_64& rng) {
  if (!training || p_ == 0.0) {
    mask_ = Eigen::MatrixXd::Ones(x.rows(), x.cols());
    return x;
  }
  std::bernoulli_distribution keep(1.0 - p_);
  const double scale = 1.0 / (1.0 - p_);
  mask_.resize(x.rows(), x.cols());
  for (Eigen::Index c = 0; c < x.cols(); ++c) {
    for (Eigen::Index r = 0; r < x.rows(); ++r) mask_(r, c) = keep(rng) ? scale : 0.0;
  }
  return x.cwiseProduct(mask_);
}

Eigen::MatrixXd Dropout::backward(const Eigen::MatrixXd& grad) const { return grad.cwiseProduct(mask_); }

Model::Model(std::vector<Layer> layers) : layers_(std::move(layers)) {
  std::optional<std::size_t> width;
  for (const auto& layer : layers_) {
    std::visit(Overloaded{[&](const GraphConv& l) {
                            if (width && *width != l.input_size()) throw DimensionError("layer input size mismatch");
                            width = l.output_size();
                          },
                          [&](const Dense& l) {
                            if (width && *width != l.input_size()) throw DimensionError("layer input size mismatch");
                            width = l.output_size();
                          },
                          [](const auto&) {}},
               layer);
  }
  if (!width) throw ParameterError("a model needs at least one parameterized layer");
}

std::size_t Model::input_size() const {
  for (const auto& layer : layers_) {
    if (const auto* c = std::get_if<GraphConv>(&layer)) return c->input_size();
    if (const auto* d = std::get_if<Dense>(&layer)) return d->input_size();
  }
  return 0;
}

std::size_t Model::output_size() const {
  for (auto it = layers_.rbegin(); it != layers_.rend(); ++it) {
    if (const auto* c = std::get_if<GraphConv>(&*it)) return c->output_size();
    if (const auto* d = std::get_if<Dense>(&*it)) return d->output_size();
  }
  return 0;
}

std::size_t Model::parameter_count() const {
  std::size_t count = 0;
  for (const auto& layer : layers_) {
    if (const auto* c = std::get_if<GraphConv>(&layer)) {
      for (const auto& ch : c->channels()) count += ch.parameter_count();
    } else if (const auto* d = std::get_if<Dense>(&layer)) {
      count += static_cast<std::size_t>(d->weight().size() + d->bias().size());
    }
  }
  return count;
}

Eigen::MatrixXd Model::forward(const Eigen::MatrixXd& x, bool training, std::mt19937_64& rng) {
  require_columns(x, input_size(), "model input");
  Eigen::MatrixXd h = x;
  for (auto& layer : layers_) {
    h = std::visit(Overloaded{[&](Dropout& l) { return l.forward(h, training, rng); },
                              [&](auto& l) -> Eigen::MatrixXd { return l.forward(h); }},
                   layer);
  }
  return h;
}

Eigen::MatrixXd Model::forward(const Eigen::MatrixXd& x) {
  std::mt19937_64 unused(0);
  return forward(x, false, unused);
}

Eigen::MatrixXd Model::backward(const Eigen::MatrixXd& grad) {
  Eigen::MatrixXd g = grad;
  for (auto it = layers_.rbegin(); it != layers_.rend(); ++it) {
    g = std::visit([&](auto& l) -> Eigen::MatrixXd { return l.backward(g); }, *it);
  }
  return g;
}

std::vector<std::span<double>> Model::parameters() {
  std::vector<std::span<double>> out;
  for (auto& layer : layers_) {
    std::visit(Overloaded{[&](GraphConv& l) { for (auto s : l.parameters()) out.push_back(s); },
                          [&](Dense& l) { for (auto s : l.parameters()) out.push_back(s); },
                          [](auto&) {}},
               layer);
  }
  return out;
}

std::vector<std::span<double>> Model::gradients() {
  std::vector<std::span<double>> out;
  for (auto& layer : layers_) {
    std::visit(Overloaded{[&](GraphConv& l) { for (auto s : l.gradients()) out.push_back(s); },
                          [&](Dense& l) { for (auto s : l.gradients()) out.push_back(s); },
                          [](auto&) {}},
               layer);
  }
  return out;
}

void Model::sgd_step(double lr) {
  auto params = parameters();
  const auto grads = gradients();
  for (std::size_t i = 0; i < params.size(); ++i) {
    for (std::size_t j = 0; j < params[i].size(); ++j) params[i][j] -= lr * grads[i][j];
  }
}

void Model::set_dropout(double p) {
  for (auto& layer : layers_) {
    if (auto* d = std::get_if<Dropout>(&layer)) d->set_rate(p);
  }
}

std::vector<std::size_t> Model::predict(const Eigen::MatrixXd& x) {
  const auto logits = forward(x);
  std::vector<std::size_t> out(static_cast<std::size_t>(logits.rows()));
  for (Eigen::Index r = 0; r < logits.rows(); ++r) {
    Eigen::Index best = 0;
    logits.row(r).maxCoeff(&best);
    out[static_cast<std::size_t>(r)] = static_cast<std::size_t>(best);
  }
  return out;
}

Model make_graph_cnn(const WeightSharingScheme& scheme, const NetConfig& config, std::uint64_t seed) {
  if (config.channels == 0 || config.hidden == 0 || config.classes < 2) {
    throw ParameterError("network needs channels >= 1, hidden >= 1 and at least 2 classes");
  }
  std::mt19937_64 rng(seed);
  const auto shared = std::make_shared<const WeightSharingScheme>(scheme);
  const double limit = he_limit(scheme.kernel_size());
  std::uniform_real_distribution<double> dist(-limit, limit);
  std::vector<ConvLayer> channels;
  for (std::size_t c = 0; c < config.channels; ++c) {
    std::vector<double> w(scheme.kernel_size());
    for (auto& x : w) x = dist(rng);
    channels.emplace_back(shared, std::move(w), 0.0);
  }
  std::vector<Layer> layers;
  layers.emplace_back(GraphConv(std::move(channels)));
  for (auto& l : head(config.channels * scheme.size(), config, rng)) layers.push_back(std::move(l));
  return Model(std::move(layers));
}

Model make_dense_baseline(std::size_t n, std::size_t width, const NetConfig& config, std::uint64_t seed) {
  if (n == 0 || width == 0 || config.hidden == 0 || config.classes < 2) {
    throw ParameterError("dense baseline needs positive sizes and at least 2 classes");
  }
  std::mt19937_64 rng(seed);
  std::vector<Layer> layers;
  layers.emplace_back(make_dense(n, width, rng));
  for (auto& l : head(width, config, rng)) layers.push_back(std::move(l));
  return Model(std::move(layers));
}

std::size_t matched_dense_width(std::size_t n, const NetConfig& config, std::size_t target_parameters) {
  const auto count = [&](std::size_t w) {
    return n * w + w + w * config.hidden + config.hidden + config.hidden * config.classes + config.classes;
  };
  std::size_t best = 1;
  const auto diff = [&](std::size_t w) {
    const auto c = count(w);
    return c > target_parameters ? c - target_parameters : target_parameters - c;
  };
  for (std::size_t w = 2; count(w - 1) < target_parameters; ++w) {
    if (diff(w) < diff(best)) best = w;
  }
  return best;
}

double softmax_cross_entropy(const Eigen::MatrixXd& logits, std::span<const std::size_t> labels, Eigen::MatrixXd* grad) {
  const auto rows = logits.rows();
  if (static_cast<std::size_t>(rows) != labels.size() || rows == 0) throw DimensionError("logits and labels disagree");
  if (grad) grad->resize(rows, logits.cols());
  double loss = 0.0;
  for (Eigen::Index r = 0; r < rows; ++r) {
    const auto label = static_cast<Eigen::Index>(labels[static_cast<std::size_t>(r)]);
    if (label >= logits.cols()) throw DimensionError("label " + std::to_string(label) + " exceeds the class count");
    const double top = logits.row(r).maxCoeff();
    const Eigen::RowVectorXd e = (logits.row(r).array() - top).exp().matrix();
    const double z = e.sum();
    loss += std::log(z) - (logits(r, label) - top);
    if (grad) {
      grad->row(r) = e / z;
      (*grad)(r, label) -= 1.0;
    }
  }
  if (grad) *grad /= static_cast<double>(rows);
  return loss / static_cast<double>(rows);
}

double accuracy(Model& model, const Dataset& d) {
  if (d.size() == 0) return 0.0;
  const auto predicted = model.predict(d.signals);
  std::size_t correct = 0;
  for (std::size_t i = 0; i < d.size(); ++i) correct += predicted[i] == d.labels[i] ? 1 : 0;
  return static_cast<double>(correct) / static_cast<double>(d.size());
}

std::vector<EpochMetrics> train(Model& model, const Dataset& train_set, const Dataset& test_set,
                                const TrainConfig& config) {
  train_set.validate();
  test_set.validate();
  if (train_set.size() == 0 || test_set.size() == 0) throw ParameterError("training needs non-empty train and test sets");
  if (model.output_size() < 2) throw ParameterError("training needs at least 2 classes");
  if (config.batch == 0) throw ParameterError("batch size must be positive");
  if (!std::isfinite(config.lr) || config.lr < 0.0) throw ParameterError("learning rate must be finite and >= 0");
  for (const auto* d : {&train_set, &test_set}) {
    if (d->vertex_count() != model.input_size()) throw DimensionError("dataset width does not match the model input");
    if (d->class_count() > model.output_size()) throw DimensionError("dataset has more classes than the model outputs");
  }
  if (config.dropout) model.set_dropout(*config.dropout);

  std::mt19937_64 rng(config.seed);
  std::vector<std::size_t> order(train_set.size());
  std::iota(order.begin(), order.end(), 0);
  std::vector<std::size_t> batch_labels;
  Eigen::MatrixXd grad;
  std::vector<EpochMetrics> history;
  for (std::size_t epoch = 1; epoch <= config.epochs; ++epoch) {
    std::shuffle(order.begin(), order.end(), rng);
    double loss_sum = 0.0;
    for (std::size_t start = 0; start < order.size(); start += config.batch) {
      const auto rows = std::span<const std::size_t>(order).subspan(start, std::min(config.batch, order.size() - start));
      batch_labels.clear();
      for (const auto r : rows) batch_labels.push_back(train_set.labels[r]);
      const auto logits = model.forward(gather_rows(train_set.signals, rows), true, rng);
      loss_sum += softmax_cross_entropy(logits, batch_labels, &grad) * static_cast<double>(rows.size());
      model.backward(grad);
      model.sgd_step(config.lr);
    }
    const double loss = loss_sum / static_cast<double>(order.size());
    if (!std::isfinite(loss)) throw DivergenceError("training loss is not finite", epoch);
    history.push_back({epoch, loss, accuracy(model, train_set), accuracy(model, test_set)});
  }
  return history;
}

double select_learning_rate(const std::function<Model()>& make_model, const Dataset& train_set,
                            std::span<const double> rates, const TrainConfig& config, double validation_fraction) {
  if (rates.empty()) throw ParameterError("no learning rates to select from");
  const auto [fit, validation] = split_dataset(train_set, 1.0 - validation_fraction, config.seed);
  double best_rate = rates.front();
  double best_accuracy = -1.0;
  for (const double rate : rates) {
    auto model = make_model();
    auto cfg = config;
    cfg.lr = rate;
    double acc = 0.0;
    try {
      acc = train(model, fit, validation, cfg).back().test_accuracy;
    } catch (const DivergenceError&) {
      continue;
    }
    if (acc > best_accuracy) {
      best_accuracy = acc;
      best_rate = rate;
    }
  }
  return best_rate;
}

void write_metrics_csv(std::ostream& out, const std::vector<EpochMetrics>& history) {
  out << "epoch,loss,train_accuracy,test_accuracy\n";
  for (const auto& m : history) {
    out << m.epoch << ',' << detail::format_double(m.loss) << ',' << detail::format_double(m.train_accuracy) << ','
        << detail::format_double(m.test_accuracy) << '\n';
  }
}

void save_checkpoint(std::ostream& out, const Model& model) {
  const auto write_values = [&out](std::span<const double> values) {
    for (std::size_t i = 0; i < values.size(); ++i) out << (i ? " " : "") << detail::format_double(values[i]);
    out << '\n';
  };
  out << "gcf-model 1\n";
  for (auto& layer : model.layers()) {
    std::visit(Overloaded{[&](const GraphConv& l) {
                            const auto& first = *l.channels().front().scheme;
                            out << "graph_conv " << l.channels().size() << ' ' << first.size() << ' '
                                << first.kernel_size() << '\n';
                            for (const auto& c : l.channels()) {
                              std::vector<double> values = c.weights;
                              values.push_back(c.bias);
                              write_values(values);
                            }
                          },
                          [&](const Dense& l) {
                            out << "dense " << l.input_size() << ' ' << l.output_size() << '\n';
                            for (Eigen::Index r = 0; r < l.weight().rows(); ++r) {
                              const Eigen::RowVectorXd row = l.weight().row(r);
                              write_values({row.data(), static_cast<std::size_t>(row.size())});
                            }
                            write_values({l.bias().data(), static_cast<std::size_t>(l.bias().size())});
                          },
                          [&](const Relu&) { out << "relu\n"; },
                          [&](const Dropout& l) { out << "dropout " << detail::format_double(l.rate()) << '\n'; }},
               layer);
  }
}

Model load_checkpoint(std::istream& in, const WeightSharingScheme* scheme) {
  detail::LineReader reader(in);
  std::string_view line;
  if (!reader.next(line) || line != "gcf-model 1") throw ParseError("expected 'gcf-model 1' header", reader.line_number());

  const auto read_values = [&](std::size_t count) {
    std::string_view row;
    if (!reader.next(row)) throw ParseError("unexpected end of checkpoint", reader.line_number());
    const auto tokens = detail::split_ws(row);
    if (tokens.size() != count) {
      throw ParseError("expected " + std::to_string(count) + " values, got " + std::to_string(tokens.size()),
                       reader.line_number());
    }
    std::vector<double> values;
    for (const auto t : tokens) values.push_back(detail::parse_double(t, "parameter", reader.line_number()));
    return values;
  };

  std::vector<Layer> layers;
  while (reader.next(line)) {
    const auto at = reader.line_number();
    const auto tokens = detail::split_ws(line);
    if (tokens.empty()) continue;
    if (tokens[0] == "graph_conv" && tokens.size() == 4) {
      const auto channels = detail::parse_size(tokens[1], "channel count", at);
      const auto n = detail::parse_size(tokens[2], "vertex count", at);
      const auto k = detail::parse_size(tokens[3], "weight count", at);
      if (!scheme) throw ParseError("checkpoint has a graph convolution but no scheme was given", at);
      if (scheme->size() != n || scheme->kernel_size() != k) throw ParseError("scheme does not match checkpoint", at);
      const auto shared = std::make_shared<const WeightSharingScheme>(*scheme);
      std::vector<ConvLayer> conv;
      for (std::size_t c = 0; c < channels; ++c) {
        auto values = read_values(k + 1);
        const double bias = values.back();
        values.pop_back();
        conv.emplace_back(shared, std::move(values), bias);
      }
      layers.emplace_back(GraphConv(std::move(conv)));
    } else if (tokens[0] == "dense" && tokens.size() == 3) {
      const auto inputs = detail::parse_size(tokens[1], "input size", at);
      const auto outputs = detail::parse_size(tokens[2], "output size", at);
      Eigen::MatrixXd w(static_cast<Eigen::Index>(outputs), static_cast<Eigen::Index>(inputs));
      for (Eigen::Index r = 0; r < w.rows(); ++r) {
        const auto values = read_values(inputs);
        for (Eigen::Index c = 0; c < w.cols(); ++c) w(r, c) = values[static_cast<std::size_t>(c)];
      }
      const auto b = read_values(outputs);
      layers.emplace_back(Dense(std::move(w), Eigen::Map<const Eigen::VectorXd>(b.data(), static_cast<Eigen::Index>(b.size()))));
    } else if (tokens[0] == "relu" && tokens.size() == 1) {
      layers.emplace_back(Relu{});
    } else if (tokens[0] == "dropout" && tokens.size() == 2) {
      layers.emplace_back(Dropout(detail::parse_double(tokens[1], "dropout rate", at)));
    } else {
      throw ParseError("unknown layer header '" + std::string(line) + "'", at);
    }
  }
  return Model(std::move(layers));
}

}  // namespace gcf
