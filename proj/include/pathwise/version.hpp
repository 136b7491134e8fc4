#pragma once

namespace pathwise {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace pathwise
