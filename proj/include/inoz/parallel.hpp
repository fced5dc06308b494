#pragma once

#include <cstddef>
#include <exception>
#include <vector>

#include "inoz/types.hpp"

namespace inoz {

/// Runs body(i) for i in [0, n). With Exec::parallel the loop is an OpenMP
/// worksharing loop; results must be written to per-index slots so the
/// outcome does not depend on scheduling. If any iteration throws, the
/// exception of the lowest index is rethrown after the loop.
template <typename Body>
void for_each_index(std::size_t n, Exec exec, Body&& body)
{
    if (exec == Exec::serial) {
        for (std::size_t i = 0; i < n; ++i) body(i);
        return;
    }
    std::vector<std::exception_ptr> errors(n);
    const auto count = static_cast<long long>(n);
#pragma omp parallel for schedule(dynamic)
    for (long long i = 0; i < count; ++i) {
        try {
            body(static_cast<std::size_t>(i));
        } catch (...) {
            errors[static_cast<std::size_t>(i)] = std::current_exception();
        }
    }
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
}

} // namespace inoz
