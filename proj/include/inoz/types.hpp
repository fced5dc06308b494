#pragma once

#include <complex>
#include <numbers>

namespace inoz {

using cplx = std::complex<double>;

inline constexpr double pi = std::numbers::pi;
inline constexpr cplx I{0.0, 1.0};

/// Selects the serial reference path or the OpenMP path of a kernel.
/// Both produce bit-identical results; the serial path is kept for testing.
enum class Exec { serial, parallel };

} // namespace inoz
