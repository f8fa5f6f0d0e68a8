#pragma once

namespace hsf {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace hsf
