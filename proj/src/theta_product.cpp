#include "inoz/theta_product.hpp"

#include <algorithm>
#include <tuple>

#include "inoz/errors.hpp"

namespace inoz {

void ThetaProduct::add(int nu, std::vector<cplx> coeffs, cplx offset, cplx exponent)
{
    if (nu < 1 || nu > 4) throw PreconditionViolation("theta index must be in 1..4");
    if (coeffs.size() != n_vars) throw PreconditionViolation("factor coefficient count must equal n_vars");
    if (exponent == cplx{}) return;
    factors.push_back({nu, std::move(coeffs), offset, exponent});
}

void ThetaProduct::add_single(int nu, std::size_t J, cplx exponent, cplx offset)
{
    std::vector<cplx> a(n_vars);
    a.at(J) = 1.0;
    add(nu, std::move(a), offset, exponent);
}

void ThetaProduct::add_pair(std::size_t J, std::size_t K, cplx exponent)
{
    std::vector<cplx> a(n_vars);
    a.at(J) = 1.0;
    a.at(K) = -1.0;
    add(1, a, {}, exponent);
    a[K] = 1.0;
    add(1, std::move(a), {}, exponent);
}

void ThetaProduct::append(const ThetaProduct& other)
{
    if (other.n_vars != n_vars) throw PreconditionViolation("products must share the variable count");
    for (const auto& f : other.factors) factors.push_back(f);
    if (!other.linear_exp.empty()) {
        linear_exp.resize(n_vars);
        for (std::size_t J = 0; J < n_vars; ++J) linear_exp[J] += other.linear_exp[J];
    }
}

ProductJet log_jet(const ThetaProduct& tp, const std::vector<cplx>& X, const Lattice& lat)
{
    if (X.size() != tp.n_vars) throw PreconditionViolation("point dimension must equal n_vars");
    ProductJet out;
    out.grad.assign(tp.n_vars, cplx{});
    out.dgrad.assign(tp.n_vars, cplx{});
    for (const auto& f : tp.factors) {
        cplx u = f.offset;
        for (std::size_t J = 0; J < tp.n_vars; ++J) u += f.coeffs[J] * X[J];
        const ThetaLogJet j = theta_log_jet(f.nu, u, lat);
        for (std::size_t J = 0; J < tp.n_vars; ++J) {
            const cplx a = f.coeffs[J];
            if (a == cplx{}) continue;
            out.grad[J] += f.exponent * a * j.phi;
            out.dgrad[J] += f.exponent * a * a * j.dphi;
        }
        out.beta += f.exponent * j.beta;
        out.log_value += f.exponent * std::log(j.value);
    }
    if (!tp.linear_exp.empty())
        for (std::size_t J = 0; J < tp.n_vars; ++J) {
            out.grad[J] += tp.linear_exp[J];
            out.log_value += tp.linear_exp[J] * X[J];
        }
    return out;
}

cplx grad_log(const ThetaProduct& tp, const std::vector<cplx>& X, std::size_t J, const Lattice& lat)
{
    return log_jet(tp, X, lat).grad.at(J);
}

cplx hess_log_diag(const ThetaProduct& tp, const std::vector<cplx>& X, std::size_t J, const Lattice& lat)
{
    return log_jet(tp, X, lat).hess_diag(J);
}

cplx beta_log(const ThetaProduct& tp, const std::vector<cplx>& X, const Lattice& lat)
{
    return log_jet(tp, X, lat).beta;
}

cplx log_value(const ThetaProduct& tp, const std::vector<cplx>& X, const Lattice& lat)
{
    return log_jet(tp, X, lat).log_value;
}

ThetaProduct build_phi0(const CouplingData& c)
{
    ThetaProduct tp;
    tp.n_vars = c.script_n();
    for (std::size_t J = 0; J < tp.n_vars; ++J)
        for (int nu = 0; nu < 4; ++nu) tp.add_single(nu + 1, J, c.g(nu, J));
    for (std::size_t J = 0; J < tp.n_vars; ++J)
        for (std::size_t K = J + 1; K < tp.n_vars; ++K) tp.add_pair(J, K, c.mass(J) * c.mass(K) * c.lambda());
    return tp;
}

ThetaProduct build_psi_n(int N, const std::array<cplx, 4>& g, cplx lambda, std::size_t first, std::size_t n_vars)
{
    ThetaProduct tp;
    tp.n_vars = n_vars;
    const auto n = static_cast<std::size_t>(N);
    for (std::size_t j = first; j < first + n; ++j)
        for (int nu = 0; nu < 4; ++nu) tp.add_single(nu + 1, j, g[static_cast<std::size_t>(nu)]);
    for (std::size_t j = first; j < first + n; ++j)
        for (std::size_t k = j + 1; k < first + n; ++k) tp.add_pair(j, k, lambda);
    return tp;
}

namespace {

// theta_1(a_j - b_k)^p theta_1(a_j + b_k)^p for every j in block a, k in block b
void add_cross(ThetaProduct& tp, std::size_t a0, int na, std::size_t b0, int nb, cplx p)
{
    for (std::size_t j = a0; j < a0 + static_cast<std::size_t>(na); ++j)
        for (std::size_t k = b0; k < b0 + static_cast<std::size_t>(nb); ++k) tp.add_pair(j, k, p);
}

std::array<cplx, 4> map_g(const std::array<cplx, 4>& g, auto f)
{
    std::array<cplx, 4> out;
    for (std::size_t nu = 0; nu < 4; ++nu) out[nu] = f(g[nu]);
    return out;
}

// Psi^(sign)_{N,Nt} on variables [first, first + N + Nt)
ThetaProduct deformed_block(int sign, int N, int Nt, const std::array<cplx, 4>& d, cplx lambda, std::size_t first,
                            std::size_t n_vars)
{
    const double s = sign > 0 ? 1.0 : -1.0;
    const auto g_x = map_g(d, [&](cplx dn) { return 0.5 * lambda + s * dn; });
    const auto g_xt = map_g(d, [&](cplx dn) { return (0.5 - s * dn) / lambda; });
    ThetaProduct tp = build_psi_n(N, g_x, lambda, first, n_vars);
    tp.append(build_psi_n(Nt, g_xt, 1.0 / lambda, first + static_cast<std::size_t>(N), n_vars));
    add_cross(tp, first, N, first + static_cast<std::size_t>(N), Nt, -1.0);
    return tp;
}

} // namespace

ThetaProduct build_named(NamedKind kind, const NamedParams& p)
{
    if (p.N < 0 || p.Nt < 0 || p.M < 0 || p.Mt < 0) throw InvalidCoupling("particle counts must be non-negative");
    const cplx lambda = p.lambda;
    std::array<cplx, 4> d;
    for (std::size_t nu = 0; nu < 4; ++nu) d[nu] = p.g[nu] - 0.5 * lambda;
    const auto N = static_cast<std::size_t>(p.N);
    const auto Nt = static_cast<std::size_t>(p.Nt);
    const auto M = static_cast<std::size_t>(p.M);
    const auto Mt = static_cast<std::size_t>(p.Mt);
    auto need_lambda = [&] {
        if (lambda == cplx{}) throw InvalidCoupling("lambda must be nonzero");
    };

    switch (kind) {
    case NamedKind::psi_n:
        if (p.N < 1) throw InvalidCoupling("Psi_N needs N >= 1");
        return build_psi_n(p.N, p.g, lambda, 0, N);
    case NamedKind::psi_nm: {
        if (p.N + p.M < 1) throw InvalidCoupling("Psi_{N,M} needs N + M > 0");
        ThetaProduct tp = build_psi_n(p.N, p.g, lambda, 0, N + M);
        tp.append(build_psi_n(p.M, map_g(p.g, [&](cplx g) { return lambda - g; }), lambda, N, N + M));
        add_cross(tp, 0, p.N, N, p.M, -lambda);
        return tp;
    }
    case NamedKind::psi_tilde_nm: {
        if (p.N + p.M < 1) throw InvalidCoupling("Psi~_{N,M} needs N + M > 0");
        need_lambda();
        ThetaProduct tp;
        tp.n_vars = N + M;
        add_cross(tp, 0, p.N, N, p.M, 1.0);
        tp.append(build_psi_n(p.N, p.g, lambda, 0, N + M));
        const auto gp = map_g(p.g, [&](cplx g) { return (2.0 * g + 1.0 - lambda) / (2.0 * lambda); });
        tp.append(build_psi_n(p.M, gp, 1.0 / lambda, N, N + M));
        return tp;
    }
    case NamedKind::psi_plus:
    case NamedKind::psi_minus:
        if (p.N + p.Nt < 1) throw InvalidCoupling("Psi^(+-)_{N,N~} needs N + N~ > 0");
        need_lambda();
        return deformed_block(kind == NamedKind::psi_plus ? 1 : -1, p.N, p.Nt, d, lambda, 0, N + Nt);
    case NamedKind::psi_full: {
        if (p.N + p.Nt + p.M + p.Mt < 1) throw InvalidCoupling("Psi_{N,N~,M,M~} needs a nonempty system");
        need_lambda();
        const std::size_t n = N + Nt + M + Mt;
        const std::size_t x0 = 0, xt0 = N, y0 = N + Nt, yt0 = N + Nt + M;
        ThetaProduct tp = deformed_block(1, p.N, p.Nt, d, lambda, x0, n);
        tp.append(deformed_block(-1, p.M, p.Mt, d, lambda, y0, n));
        add_cross(tp, x0, p.N, yt0, p.Mt, 1.0);
        add_cross(tp, x0, p.N, y0, p.M, -lambda);
        add_cross(tp, xt0, p.Nt, y0, p.M, 1.0);
        add_cross(tp, xt0, p.Nt, yt0, p.Mt, -1.0 / lambda);
        return tp;
    }
    }
    throw PreconditionViolation("unknown wavefunction kind");
}

ThetaProduct build_corollary_wavefunction(const CorollaryParams& p)
{
    validate(p);
    const NamedParams np{p.N, p.Nt, p.M, p.Mt, p.g, p.lambda};
    switch (p.which) {
    case Corollary::cor1: return build_named(NamedKind::psi_n, np);
    case Corollary::cor2: return build_named(NamedKind::psi_nm, np);
    case Corollary::cor3: return build_named(NamedKind::psi_tilde_nm, np);
    case Corollary::cor4: return build_named(NamedKind::psi_full, np);
    }
    throw PreconditionViolation("unknown corollary");
}

ThetaProduct canonical(const ThetaProduct& tp, double zero_tol)
{
    auto key_less = [](const ThetaFactor& a, const ThetaFactor& b) {
        if (a.nu != b.nu) return a.nu < b.nu;
        for (std::size_t J = 0; J < a.coeffs.size(); ++J) {
            const auto ka = std::make_tuple(a.coeffs[J].real(), a.coeffs[J].imag());
            const auto kb = std::make_tuple(b.coeffs[J].real(), b.coeffs[J].imag());
            if (ka != kb) return ka < kb;
        }
        return std::make_tuple(a.offset.real(), a.offset.imag()) < std::make_tuple(b.offset.real(), b.offset.imag());
    };
    auto same_key = [](const ThetaFactor& a, const ThetaFactor& b) {
        return a.nu == b.nu && a.coeffs == b.coeffs && a.offset == b.offset;
    };
    std::vector<ThetaFactor> fs = tp.factors;
    std::stable_sort(fs.begin(), fs.end(), key_less);
    ThetaProduct out;
    out.n_vars = tp.n_vars;
    out.linear_exp = tp.linear_exp;
    for (const auto& f : fs) {
        if (!out.factors.empty() && same_key(out.factors.back(), f))
            out.factors.back().exponent += f.exponent;
        else
            out.factors.push_back(f);
    }
    std::erase_if(out.factors, [&](const ThetaFactor& f) { return std::abs(f.exponent) <= zero_tol; });
    return out;
}

bool same_structure(const ThetaProduct& a, const ThetaProduct& b, double rel_tol)
{
    const ThetaProduct ca = canonical(a, rel_tol), cb = canonical(b, rel_tol);
    if (ca.n_vars != cb.n_vars || ca.factors.size() != cb.factors.size()) return false;
    for (std::size_t i = 0; i < ca.factors.size(); ++i) {
        const auto& fa = ca.factors[i];
        const auto& fb = cb.factors[i];
        if (fa.nu != fb.nu || fa.coeffs != fb.coeffs || fa.offset != fb.offset) return false;
        const double scale = std::max({1.0, std::abs(fa.exponent), std::abs(fb.exponent)});
        if (std::abs(fa.exponent - fb.exponent) > rel_tol * scale) return false;
    }
    auto lin = [](const ThetaProduct& t, std::size_t J) { return t.linear_exp.empty() ? cplx{} : t.linear_exp[J]; };
    for (std::size_t J = 0; J < ca.n_vars; ++J)
        if (std::abs(lin(ca, J) - lin(cb, J)) > rel_tol) return false;
    return true;
}

} // namespace inoz
