#pragma once

namespace circq {

inline constexpr const char* version = "0.1.0";

}  // namespace circq
