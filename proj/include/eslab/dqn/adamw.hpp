#pragma once

#include <cmath>

#include "eslab/dqn/network.hpp"

namespace eslab::dqn {

struct AdamWConfig {
  double learning_rate = 1e-4;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
  double weight_decay = 0.01;
};

/// First/second moment accumulators, one per parameter tensor.
template <class T>
struct AdamWState {
  std::vector<MatrixX<T>> m_weights, v_weights;
  std::vector<VectorX<T>> m_biases, v_biases;
  long step = 0;

  static AdamWState zeros_like(const QNetwork<T>& net) {
    AdamWState s;
    for (int l = 0; l < net.num_layers(); ++l) {
      const auto rows = net.weights[l].rows();
      const auto cols = net.weights[l].cols();
      s.m_weights.push_back(MatrixX<T>::Zero(rows, cols));
      s.v_weights.push_back(MatrixX<T>::Zero(rows, cols));
      s.m_biases.push_back(VectorX<T>::Zero(net.biases[l].size()));
      s.v_biases.push_back(VectorX<T>::Zero(net.biases[l].size()));
    }
    return s;
  }
};

/// One decoupled-weight-decay Adam update. Decay applies to weights only,
/// never biases, and is computed from the pre-step parameter value, so a
/// zero-gradient step shrinks each weight by exactly lr*decay*w.
template <class T>
void adamw_step(QNetwork<T>& net, const Gradients<T>& grads,
                AdamWState<T>& state, const AdamWConfig& cfg) {
  ++state.step;
  const T b1 = static_cast<T>(cfg.beta1);
  const T b2 = static_cast<T>(cfg.beta2);
  const T lr = static_cast<T>(cfg.learning_rate);
  const T eps = static_cast<T>(cfg.epsilon);
  const T wd = static_cast<T>(cfg.weight_decay);
  const T c1 = static_cast<T>(1.0 / (1.0 - std::pow(cfg.beta1, state.step)));
  const T c2 = static_cast<T>(1.0 / (1.0 - std::pow(cfg.beta2, state.step)));

  for (int l = 0; l < net.num_layers(); ++l) {
    auto& mw = state.m_weights[l];
    auto& vw = state.v_weights[l];
    mw = b1 * mw + (T(1) - b1) * grads.weights[l];
    vw = b2 * vw.array().matrix() +
         (T(1) - b2) * grads.weights[l].cwiseProduct(grads.weights[l]);
    net.weights[l] -=
        lr * (wd * net.weights[l] +
              ((mw * c1).array() / ((vw * c2).array().sqrt() + eps)).matrix());

    auto& mb = state.m_biases[l];
    auto& vb = state.v_biases[l];
    mb = b1 * mb + (T(1) - b1) * grads.biases[l];
    vb = b2 * vb + (T(1) - b2) * grads.biases[l].cwiseProduct(grads.biases[l]);
    net.biases[l] -=
        lr * ((mb * c1).array() / ((vb * c2).array().sqrt() + eps)).matrix();
  }
}

}  // namespace eslab::dqn
