#pragma once

#include <string>

namespace eslab {

/// Current time as an ISO-8601 UTC string. Honors SOURCE_DATE_EPOCH so
/// reproducibility runs can pin emitted timestamps.
std::string utc_timestamp();

}  // namespace eslab
