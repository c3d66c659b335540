#pragma once

namespace qsg {

// Report schema is versioned through this string.
inline constexpr const char* kToolVersion = "qsg 1.0.0";

}  // namespace qsg
