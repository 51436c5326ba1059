#pragma once

#include <cstddef>
#include <cstdint>
#include <cstring>
#include <stdexcept>
#include <vector>

#include "eslab/dqn/network.hpp"
#include "eslab/rng.hpp"

namespace eslab::dqn {

/// One replay record: (s, a, r, s', terminal).
struct Transition {
  std::vector<float> state;
  int action = 0;
  float reward = 0.0f;
  std::vector<float> next_state;
  bool terminal = false;
};

/// Column-per-sample minibatch assembled for one gradient step.
template <class T>
struct MiniBatch {
  MatrixX<T> states;       // d x B
  MatrixX<T> next_states;  // d x B
  std::vector<int> actions;
  VectorX<T> rewards;
  std::vector<std::uint8_t> terminal;

  int size() const { return static_cast<int>(actions.size()); }
};

/// Bounded FIFO store of transitions with uniform sampling.
class ReplayBuffer {
 public:
  explicit ReplayBuffer(std::size_t capacity) : capacity_(capacity) {
    if (capacity_ == 0)
      throw std::invalid_argument("replay: capacity must be positive");
    store_.reserve(capacity_);
  }

  std::size_t capacity() const { return capacity_; }
  std::size_t size() const { return store_.size(); }

  /// Insertion beyond capacity evicts the oldest record.
  void push(Transition t) {
    if (store_.size() < capacity_) {
      store_.push_back(std::move(t));
    } else {
      store_[head_] = std::move(t);
      head_ = (head_ + 1) % capacity_;
    }
  }

  /// i = 0 is the oldest retained record.
  const Transition& at(std::size_t i) const {
    if (i >= store_.size()) throw std::out_of_range("replay: index");
    return store_[(head_ + i) % store_.size()];
  }

  /// Uniform iid sample of batch_size records into `out`.
  void sample(int batch_size, Rng& rng, MiniBatch<float>& out) const {
    if (batch_size <= 0)
      throw std::invalid_argument("replay: batch_size must be positive");
    if (store_.empty()) throw std::logic_error("replay: sampling empty buffer");
    const int dim = static_cast<int>(store_.front().state.size());
    out.states.resize(dim, batch_size);
    out.next_states.resize(dim, batch_size);
    out.actions.resize(batch_size);
    out.rewards.resize(batch_size);
    out.terminal.resize(batch_size);
    for (int b = 0; b < batch_size; ++b) {
      const Transition& t =
          store_[static_cast<std::size_t>(rng.uniform_int(static_cast<int>(store_.size())))];
      std::memcpy(out.states.col(b).data(), t.state.data(),
                  sizeof(float) * t.state.size());
      std::memcpy(out.next_states.col(b).data(), t.next_state.data(),
                  sizeof(float) * t.next_state.size());
      out.actions[b] = t.action;
      out.rewards(b) = t.reward;
      out.terminal[b] = t.terminal ? 1 : 0;
    }
  }

 private:
  std::size_t capacity_;
  std::size_t head_ = 0;  // oldest record once full
  std::vector<Transition> store_;
};

}  // namespace eslab::dqn
