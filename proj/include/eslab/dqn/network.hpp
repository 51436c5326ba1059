#pragma once

#include <Eigen/Core>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "eslab/rng.hpp"

namespace eslab::dqn {

template <class T>
using MatrixX = Eigen::Matrix<T, Eigen::Dynamic, Eigen::Dynamic>;
template <class T>
using VectorX = Eigen::Matrix<T, Eigen::Dynamic, 1>;

/// Feedforward action-value network: rectified-linear hidden layers, an
/// identity output head of one Q-value per action. Templated on the scalar
/// so the training path runs in float while numeric oracles run in double.
template <class T>
struct QNetwork {
  std::vector<int> layer_dims;         // [input, hidden..., actions]
  std::vector<MatrixX<T>> weights;     // W[l]: dims[l+1] x dims[l]
  std::vector<VectorX<T>> biases;      // b[l]: dims[l+1]

  int num_layers() const { return static_cast<int>(weights.size()); }
  int input_dim() const { return layer_dims.front(); }
  int output_dim() const { return layer_dims.back(); }

  std::size_t parameter_count() const {
    std::size_t n = 0;
    for (int l = 0; l < num_layers(); ++l)
      n += static_cast<std::size_t>(weights[l].size()) + biases[l].size();
    return n;
  }

  /// Uniform init in +-1/sqrt(fan_in), weights then bias, layer by layer.
  static QNetwork random_init(std::vector<int> dims, Rng& rng) {
    if (dims.size() < 2)
      throw std::invalid_argument("qnetwork: need at least input and output");
    for (int d : dims)
      if (d < 1) throw std::invalid_argument("qnetwork: non-positive dim");
    QNetwork net;
    net.layer_dims = std::move(dims);
    const int layers = static_cast<int>(net.layer_dims.size()) - 1;
    net.weights.reserve(layers);
    net.biases.reserve(layers);
    for (int l = 0; l < layers; ++l) {
      const int in = net.layer_dims[l];
      const int out = net.layer_dims[l + 1];
      const double bound = 1.0 / std::sqrt(static_cast<double>(in));
      MatrixX<T> w(out, in);
      for (int i = 0; i < out; ++i)
        for (int j = 0; j < in; ++j)
          w(i, j) = static_cast<T>(rng.uniform(-bound, bound));
      VectorX<T> b(out);
      for (int i = 0; i < out; ++i)
        b(i) = static_cast<T>(rng.uniform(-bound, bound));
      net.weights.push_back(std::move(w));
      net.biases.push_back(std::move(b));
    }
    return net;
  }

  VectorX<T> forward(const VectorX<T>& input) const {
    if (input.size() != input_dim())
      throw std::invalid_argument("qnetwork: input dimension mismatch");
    VectorX<T> a = input;
    for (int l = 0; l < num_layers(); ++l) {
      VectorX<T> z = weights[l] * a + biases[l];
      if (l + 1 < num_layers()) z = z.cwiseMax(T(0));
      a = std::move(z);
    }
    return a;
  }
};

/// Layer activations kept from a batched forward pass for backprop.
/// Samples are columns throughout.
template <class T>
struct ForwardCache {
  std::vector<MatrixX<T>> pre;   // Z[l], pre-activation of layer l
  std::vector<MatrixX<T>> act;   // A[0] = input, A[l] = post-activation
};

/// Batched forward pass; fills `cache` when given (needed for backward).
template <class T>
MatrixX<T> forward_batch(const QNetwork<T>& net, const MatrixX<T>& inputs,
                         ForwardCache<T>* cache = nullptr) {
  if (inputs.rows() != net.input_dim())
    throw std::invalid_argument("qnetwork: batch input dimension mismatch");
  if (cache) {
    cache->pre.assign(net.num_layers(), {});
    cache->act.assign(net.num_layers() + 1, {});
    cache->act[0] = inputs;
  }
  MatrixX<T> a = inputs;
  for (int l = 0; l < net.num_layers(); ++l) {
    MatrixX<T> z = (net.weights[l] * a).colwise() + net.biases[l];
    if (cache) cache->pre[l] = z;
    if (l + 1 < net.num_layers()) z = z.cwiseMax(T(0));
    if (cache) cache->act[l + 1] = z;
    a = std::move(z);
  }
  return a;
}

template <class T>
struct Gradients {
  std::vector<MatrixX<T>> weights;
  std::vector<VectorX<T>> biases;

  static Gradients zeros_like(const QNetwork<T>& net) {
    Gradients g;
    g.weights.reserve(net.num_layers());
    g.biases.reserve(net.num_layers());
    for (int l = 0; l < net.num_layers(); ++l) {
      g.weights.push_back(MatrixX<T>::Zero(net.weights[l].rows(),
                                           net.weights[l].cols()));
      g.biases.push_back(VectorX<T>::Zero(net.biases[l].size()));
    }
    return g;
  }
};

/// Backpropagates d(loss)/d(output) through the cached forward pass.
/// ReLU uses the z > 0 subgradient.
template <class T>
Gradients<T> backward(const QNetwork<T>& net, const ForwardCache<T>& cache,
                      const MatrixX<T>& dloss_dout) {
  Gradients<T> grads;
  grads.weights.resize(net.num_layers());
  grads.biases.resize(net.num_layers());
  MatrixX<T> delta = dloss_dout;
  for (int l = net.num_layers() - 1; l >= 0; --l) {
    grads.weights[l].noalias() = delta * cache.act[l].transpose();
    grads.biases[l] = delta.rowwise().sum();
    if (l > 0) {
      MatrixX<T> mask =
          (cache.pre[l - 1].array() > T(0)).template cast<T>().matrix();
      delta = (net.weights[l].transpose() * delta).cwiseProduct(mask);
    }
  }
  return grads;
}

template <class T>
double gradient_norm(const Gradients<T>& grads) {
  double sq = 0.0;
  for (const auto& w : grads.weights) sq += w.template cast<double>().squaredNorm();
  for (const auto& b : grads.biases) sq += b.template cast<double>().squaredNorm();
  return std::sqrt(sq);
}

template <class T>
void scale_gradients(Gradients<T>& grads, T factor) {
  for (auto& w : grads.weights) w *= factor;
  for (auto& b : grads.biases) b *= factor;
}

}  // namespace eslab::dqn
