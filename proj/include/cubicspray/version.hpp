#pragma once

namespace cubicspray {

inline constexpr const char* kToolVersion = "0.1.0";

}  // namespace cubicspray
