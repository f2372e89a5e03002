#pragma once

namespace cspec {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace cspec
