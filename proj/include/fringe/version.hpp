#pragma once

namespace fringe {

inline constexpr const char* kToolName = "fringe";
inline constexpr const char* kVersion = "0.1.0";

}  // namespace fringe
