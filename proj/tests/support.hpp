#pragma once

#include <cmath>
#include <complex>

#include <doctest.h>

#include "inoz/types.hpp"

namespace inoz::test {

inline double rel_err(cplx got, cplx want) { return std::abs(got - want) / std::max(1.0, std::abs(want)); }

/// |got - want| <= tol max(1, |want|)
#define CHECK_CLOSE(got, want, tol) CHECK(::inoz::test::rel_err((got), (want)) <= (tol))

} // namespace inoz::test
