#pragma once

namespace fiq {

inline constexpr const char* kVersion = "0.1.0";

} // namespace fiq
