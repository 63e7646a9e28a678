#pragma once

#include <string_view>

namespace websplit {

inline constexpr std::string_view kToolName = "websplit";
inline constexpr std::string_view kToolVersion = "0.1.0";

}  // namespace websplit
