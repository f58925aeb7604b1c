#pragma once

namespace shiftlike {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace shiftlike
