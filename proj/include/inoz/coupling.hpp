#pragma once

#include <array>
#include <vector>

#include "inoz/types.hpp"

namespace inoz {

/// Masses, couplings and the scalar combinations built from them.
/// Validated on construction: at least one variable, every mass nonzero.
class CouplingData {
public:
    CouplingData(std::vector<cplx> masses, std::array<cplx, 4> d, cplx lambda);

    std::size_t script_n() const { return masses_.size(); }
    const std::vector<cplx>& masses() const { return masses_; }
    cplx mass(std::size_t J) const { return masses_[J]; }
    const std::array<cplx, 4>& d() const { return d_; }
    cplx lambda() const { return lambda_; }

    cplx m_abs() const;  ///< sum of m_J
    cplx m2_abs() const; ///< sum of m_J^2
    cplx d_abs() const;  ///< sum of d_nu

    /// g_{nu,J} = m_J d_nu + (lambda/2) m_J^2
    cplx g(int nu, std::size_t J) const;
    /// gamma_{J,K} = lambda (m_J + m_K)(lambda m_J m_K - 1)
    cplx gamma(std::size_t J, std::size_t K) const;

private:
    std::vector<cplx> masses_;
    std::array<cplx, 4> d_;
    cplx lambda_;
};

/// Which special case of the source identity a parameter set describes.
enum class Corollary { cor1 = 1, cor2 = 2, cor3 = 3, cor4 = 4 };

/// Particle counts, couplings g_nu and lambda of a corollary. Counts that a
/// corollary does not use must be zero. For every corollary d_nu = g_nu - lambda/2.
struct CorollaryParams {
    Corollary which = Corollary::cor1;
    int N = 0;
    int Nt = 0; ///< N tilde
    int M = 0;
    int Mt = 0; ///< M tilde
    std::array<cplx, 4> g{};
    cplx lambda{};

    std::array<cplx, 4> d() const;
    int total() const { return N + Nt + M + Mt; }
};

/// Throws InvalidCoupling for negative counts, unused nonzero counts, an
/// empty system, or lambda = 0 where the corollary divides by it.
void validate(const CorollaryParams& p);

/// The mass table of the corollary's proof, variables ordered (x, x~, y, y~):
/// x -> 1, x~ -> -1/lambda, y -> -1 (cor2, cor4) or 1/lambda (cor3), y~ -> 1/lambda.
std::vector<cplx> mass_table(const CorollaryParams& p);

CouplingData coupling_for(const CorollaryParams& p);

/// c_0 = (g0 g1 + g2 g3) e1 + (g0 g2 + g1 g3) e2 + (g0 g3 + g1 g2) e3
cplx c0(const std::array<cplx, 4>& g, const std::array<cplx, 3>& e);

inline cplx abs_sum(const std::array<cplx, 4>& v) { return v[0] + v[1] + v[2] + v[3]; }

} // namespace inoz
