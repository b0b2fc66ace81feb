#pragma once

#include <string_view>

namespace torimatch {

inline constexpr std::string_view kToolName = "torimatch";
inline constexpr std::string_view kVersion = "1.0.0";

}  // namespace torimatch
