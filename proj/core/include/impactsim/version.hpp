#pragma once

namespace impactsim {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace impactsim
