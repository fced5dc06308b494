#include "inoz/coupling.hpp"

#include "inoz/errors.hpp"

namespace inoz {

CouplingData::CouplingData(std::vector<cplx> masses, std::array<cplx, 4> d, cplx lambda)
    : masses_(std::move(masses)), d_(d), lambda_(lambda)
{
    if (masses_.empty()) throw InvalidCoupling("at least one variable is required");
    for (cplx m : masses_)
        if (m == cplx{}) throw InvalidCoupling("masses must be nonzero");
}

cplx CouplingData::m_abs() const
{
    cplx s{};
    for (cplx m : masses_) s += m;
    return s;
}

cplx CouplingData::m2_abs() const
{
    cplx s{};
    for (cplx m : masses_) s += m * m;
    return s;
}

cplx CouplingData::d_abs() const { return abs_sum(d_); }

cplx CouplingData::g(int nu, std::size_t J) const
{
    const cplx m = masses_[J];
    return m * d_[static_cast<std::size_t>(nu)] + 0.5 * lambda_ * m * m;
}

cplx CouplingData::gamma(std::size_t J, std::size_t K) const
{
    const cplx a = masses_[J], b = masses_[K];
    return lambda_ * (a + b) * (lambda_ * a * b - 1.0);
}

std::array<cplx, 4> CorollaryParams::d() const
{
    std::array<cplx, 4> out;
    for (std::size_t nu = 0; nu < 4; ++nu) out[nu] = g[nu] - 0.5 * lambda;
    return out;
}

void validate(const CorollaryParams& p)
{
    if (p.N < 0 || p.Nt < 0 || p.M < 0 || p.Mt < 0) throw InvalidCoupling("particle counts must be non-negative");
    switch (p.which) {
    case Corollary::cor1:
        if (p.N < 1) throw InvalidCoupling("corollary 1 needs N >= 1");
        if (p.Nt || p.M || p.Mt) throw InvalidCoupling("corollary 1 uses N only");
        break;
    case Corollary::cor2:
    case Corollary::cor3:
        if (p.N + p.M < 1) throw InvalidCoupling("corollaries 2 and 3 need N + M > 0");
        if (p.Nt || p.Mt) throw InvalidCoupling("corollaries 2 and 3 use N and M only");
        break;
    case Corollary::cor4:
        if (p.total() < 1) throw InvalidCoupling("corollary 4 needs N + N~ + M + M~ > 0");
        break;
    default: throw InvalidCoupling("unknown corollary");
    }
    const bool divides = p.which == Corollary::cor3 || p.which == Corollary::cor4;
    if (divides && p.lambda == cplx{}) throw InvalidCoupling("lambda must be nonzero");
}

std::vector<cplx> mass_table(const CorollaryParams& p)
{
    validate(p);
    std::vector<cplx> m;
    m.reserve(static_cast<std::size_t>(p.total()));
    m.insert(m.end(), static_cast<std::size_t>(p.N), cplx{1.0});
    if (p.which == Corollary::cor4) m.insert(m.end(), static_cast<std::size_t>(p.Nt), -1.0 / p.lambda);
    const cplx y_mass = p.which == Corollary::cor3 ? 1.0 / p.lambda : cplx{-1.0};
    m.insert(m.end(), static_cast<std::size_t>(p.M), y_mass);
    if (p.which == Corollary::cor4) m.insert(m.end(), static_cast<std::size_t>(p.Mt), 1.0 / p.lambda);
    return m;
}

CouplingData coupling_for(const CorollaryParams& p) { return CouplingData(mass_table(p), p.d(), p.lambda); }

cplx c0(const std::array<cplx, 4>& g, const std::array<cplx, 3>& e)
{
    return (g[0] * g[1] + g[2] * g[3]) * e[0] + (g[0] * g[2] + g[1] * g[3]) * e[1] +
           (g[0] * g[3] + g[1] * g[2]) * e[2];
}

} // namespace inoz
