#pragma once

namespace multiarr {

inline constexpr const char* kToolName = "multiarr";
inline constexpr const char* kToolVersion = "0.1.0";

}  // namespace multiarr
