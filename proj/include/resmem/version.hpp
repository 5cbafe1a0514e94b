#pragma once

namespace resmem {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace resmem
