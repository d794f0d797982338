#pragma once

#include <numbers>

namespace casimir::constants {

inline constexpr double hbar = 1.054571817e-34;  // J s
inline constexpr double c = 299792458.0;         // m/s
inline constexpr double pi = std::numbers::pi;

}  // namespace casimir::constants
