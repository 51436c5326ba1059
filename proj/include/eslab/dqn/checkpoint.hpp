#pragma once

#include <optional>
#include <string>

#include "eslab/dqn/adamw.hpp"
#include "eslab/dqn/network.hpp"

namespace eslab::dqn {

inline constexpr int kCheckpointFormatVersion = 1;

struct CheckpointMeta {
  std::string created_utc;
  std::string config_digest;
  std::string encoding_variant;  // "rss_and_geo" | "rss_only"
};

struct Checkpoint {
  QNetwork<float> net;
  CheckpointMeta meta;
  std::optional<AdamWState<float>> optimizer_state;
};

/// Versioned JSON document: layer dims plus per-layer row-major weight and
/// bias arrays. Deterministic bytes for identical inputs.
void save_checkpoint(const std::string& path, const QNetwork<float>& net,
                     const CheckpointMeta& meta,
                     const AdamWState<float>* optimizer_state = nullptr);

/// Throws std::runtime_error on malformed documents or an unknown
/// format_version.
Checkpoint load_checkpoint(const std::string& path);

}  // namespace eslab::dqn
