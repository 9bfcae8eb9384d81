#pragma once

namespace patind {

inline constexpr const char* kVersion = "1.0.0";

}  // namespace patind
