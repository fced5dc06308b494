#pragma once

#include <array>
#include <cstdint>
#include <string_view>
#include <vector>

#include "inoz/lattice.hpp"
#include "inoz/report.hpp"

namespace inoz {

enum class IdentityId { heat, sumrule, zeta_wp, double1, double2, i1, i2, i3, i4, i5, i6, zeta_phi };

inline constexpr std::array<IdentityId, 12> all_identities{
    IdentityId::heat, IdentityId::sumrule, IdentityId::zeta_wp, IdentityId::double1,
    IdentityId::double2, IdentityId::i1, IdentityId::i2, IdentityId::i3,
    IdentityId::i4, IdentityId::i5, IdentityId::i6, IdentityId::zeta_phi};

std::string_view identity_name(IdentityId id);

/// Number of free coordinates an identity is sampled in.
std::size_t identity_arity(IdentityId id);

/// Signed sum of terms together with the largest single term, so a residual
/// can be normalized by the size of what cancelled rather than by the result.
struct TermSum {
    cplx sum{};
    double scale = 0.0;

    TermSum& add(cplx v);
    TermSum& sub(cplx v) { return add(-v); }
    double relative() const { return scale > 0.0 ? std::abs(sum) / scale : std::abs(sum); }
};

/// Residual of one identity at one admissible point. For identities that
/// carry a theta index the worst index is returned.
struct PointResidual {
    double abs = 0.0;
    double rel = 0.0;
};
PointResidual identity_residual(IdentityId id, const std::vector<cplx>& X, const Lattice& lat);

/// eta_nu = zeta(omega_nu), nu = 1, 2, 3.
std::array<cplx, 3> eta_values(const Lattice& lat);

ResidualReport check_identity(IdentityId id, const Lattice& lat, std::size_t n_points, std::uint64_t seed,
                              double tol, Exec exec = Exec::parallel);

std::vector<ResidualReport> check_all(const Lattice& lat, std::size_t n_points, std::uint64_t seed, double tol,
                                      Exec exec = Exec::parallel);

} // namespace inoz
