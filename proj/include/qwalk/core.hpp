#pragma once

#include <complex>
#include <cstddef>
#include <string>

namespace qwalk {

using Complex = std::complex<double>;

inline constexpr double kOperatorTol = 1e-12;  // construction exactness for S, F, H
inline constexpr std::size_t kDefaultDenseCap = 8192;

inline constexpr const char* kVersion = "qwalk 0.1.0";

}  // namespace qwalk
