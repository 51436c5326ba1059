#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

#include "eslab/dqn/adamw.hpp"
#include "eslab/dqn/network.hpp"
#include "eslab/dqn/replay.hpp"
#include "eslab/rng.hpp"

namespace eslab::dqn {

/// Raised when the TD loss stops being finite; the trainer aborts and the
/// last good checkpoint stays on disk.
struct TrainingDiverged : std::runtime_error {
  explicit TrainingDiverged(const std::string& what)
      : std::runtime_error(what) {}
};

/// Delayed copy of the policy network used for stable TD targets.
template <class T>
struct TargetNetwork {
  QNetwork<T> net;
  long steps_since_sync = 0;
};

template <class T>
void sync_target(const QNetwork<T>& net, TargetNetwork<T>& target) {
  if (net.layer_dims != target.net.layer_dims)
    throw std::invalid_argument("sync_target: shape mismatch");
  target.net = net;
  target.steps_since_sync = 0;
}

inline int argmax_index(const float* values, int n) {
  int best = 0;
  for (int i = 1; i < n; ++i)
    if (values[i] > values[best]) best = i;
  return best;
}

/// Epsilon-greedy selection: uniform random action with probability eps,
/// otherwise the greedy argmax with ties broken by lowest index.
template <class T>
int select_action(const QNetwork<T>& net, const VectorX<T>& state, double eps,
                  Rng& rng) {
  if (eps > 0.0 && rng.uniform() < eps)
    return rng.uniform_int(net.output_dim());
  const VectorX<T> q = net.forward(state);
  int best = 0;
  for (int i = 1; i < q.size(); ++i)
    if (q(i) > q(best)) best = i;
  return best;
}

/// y_i = r_i for terminal records, else r_i + gamma * max_a Q(s'_i, a; theta').
template <class T>
VectorX<T> td_targets(const MiniBatch<T>& batch, const QNetwork<T>& target_net,
                      double gamma) {
  if (batch.size() == 0)
    throw std::invalid_argument("td_targets: empty batch");
  const MatrixX<T> q_next = forward_batch(target_net, batch.next_states);
  VectorX<T> y(batch.size());
  for (int b = 0; b < batch.size(); ++b) {
    if (batch.terminal[b]) {
      y(b) = batch.rewards(b);
    } else {
      y(b) = batch.rewards(b) +
             static_cast<T>(gamma) * q_next.col(b).maxCoeff();
    }
  }
  return y;
}

/// Gradient of the mean squared TD error over the batch, taken on the
/// q-value of the stored action only. Returned loss is pre-update.
template <class T>
T td_loss_and_gradients(const QNetwork<T>& net, const QNetwork<T>& target_net,
                        const MiniBatch<T>& batch, double gamma,
                        Gradients<T>& grads_out) {
  ForwardCache<T> cache;
  const MatrixX<T> q = forward_batch(net, batch.states, &cache);
  const VectorX<T> y = td_targets(batch, target_net, gamma);

  const int b_count = batch.size();
  MatrixX<T> dloss = MatrixX<T>::Zero(q.rows(), q.cols());
  T loss = T(0);
  for (int b = 0; b < b_count; ++b) {
    const int a = batch.actions[b];
    const T err = q(a, b) - y(b);
    loss += err * err;
    dloss(a, b) = T(2) * err / static_cast<T>(b_count);
  }
  loss /= static_cast<T>(b_count);
  grads_out = backward(net, cache, dloss);
  return loss;
}

/// One full learning step: loss, backprop, optional global-norm clip, AdamW.
template <class T>
T train_step(QNetwork<T>& net, TargetNetwork<T>& target, AdamWState<T>& opt,
             const AdamWConfig& opt_cfg, const MiniBatch<T>& batch,
             double gamma, double grad_clip_norm = 0.0) {
  Gradients<T> grads;
  const T loss = td_loss_and_gradients(net, target.net, batch, gamma, grads);
  if (!std::isfinite(static_cast<double>(loss)))
    throw TrainingDiverged("non-finite TD loss at optimizer step " +
                           std::to_string(opt.step + 1));
  if (grad_clip_norm > 0.0) {
    const double norm = gradient_norm(grads);
    if (norm > grad_clip_norm)
      scale_gradients(grads, static_cast<T>(grad_clip_norm / norm));
  }
  adamw_step(net, grads, opt, opt_cfg);
  ++target.steps_since_sync;
  return loss;
}

}  // namespace eslab::dqn
