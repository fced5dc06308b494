#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "inoz/types.hpp"

namespace inoz {

/// Outcome of one residual check over a sample set.
struct ResidualReport {
    std::string check;             ///< identity id or named check
    std::string lattice;           ///< Lattice::summary()
    std::uint64_t params_digest = 0;
    std::size_t n_points = 0;
    double max_abs = 0.0;
    double max_rel = 0.0;
    std::vector<cplx> worst_point; ///< sample realizing max_rel
    double tol_used = 0.0;
    bool pass = false;
    double wall_ms = 0.0;
};

/// Running maximum over per-point residuals. Points are fed in index order
/// so the worst point is the first one attaining the maximum.
class ResidualAccumulator {
public:
    void add(double abs_residual, double rel_residual, const std::vector<cplx>& point);
    ResidualReport finish(std::string check, std::string lattice, std::uint64_t digest, double tol) const;

private:
    std::size_t count_ = 0;
    double max_abs_ = 0.0;
    double max_rel_ = -1.0;
    std::vector<cplx> worst_;
};

/// FNV-1a over a textual rendering of the parameters.
std::uint64_t fnv1a(const std::string& text);

/// One JSON object on one line, fields in a fixed order, numbers with 17
/// significant digits.
std::string to_json_line(const ResidualReport& r);

/// Human-readable one-liner.
std::string to_text_line(const ResidualReport& r);

} // namespace inoz
