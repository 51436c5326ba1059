#pragma once

#include <string>

namespace eslab::cli {

/// Hex SHA-256 of a byte string; used as the content digest of resolved
/// configurations in run metadata and checkpoints.
std::string sha256_hex(const std::string& bytes);

}  // namespace eslab::cli
