#pragma once

namespace geod {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace geod
