// The three assemblies of W = sum_J (1/m_J)(d_J V_J + V_J^2) for Phi_0:
// exact log-derivatives of the product, the expanded phi-form sums, and the
// reduced form in wp and theta_dot/theta. They share no code beyond the
// theta jets, so agreement checks the algebra of the source identity.

#include "inoz/operators.hpp"

#include "inoz/errors.hpp"

namespace inoz {

namespace {

struct PointData {
    // one-body, [J][nu] for theta_{nu+1}(X_J)
    std::vector<std::array<ThetaLogJet, 4>> one;
    // pair, [J][K][r] for theta_1(X_J - r X_K), r = + (index 0), - (index 1)
    std::vector<std::vector<std::array<ThetaLogJet, 2>>> pair;
};

PointData evaluate(const std::vector<cplx>& X, const Lattice& lat)
{
    const std::size_t n = X.size();
    PointData p;
    p.one.resize(n);
    p.pair.assign(n, std::vector<std::array<ThetaLogJet, 2>>(n));
    for (std::size_t J = 0; J < n; ++J) {
        for (int nu = 0; nu < 4; ++nu) p.one[J][static_cast<std::size_t>(nu)] = theta_log_jet(nu + 1, X[J], lat);
        for (std::size_t K = 0; K < n; ++K) {
            if (K == J) continue;
            p.pair[J][K][0] = theta_log_jet(1, X[J] - X[K], lat);
            p.pair[J][K][1] = theta_log_jet(1, X[J] + X[K], lat);
        }
    }
    return p;
}

void check_dim(const CouplingData& c, const std::vector<cplx>& X)
{
    if (X.size() != c.script_n()) throw PreconditionViolation("point dimension must equal the number of variables");
}

} // namespace

Scaled w_log_derivative(const CouplingData& c, const std::vector<cplx>& X, const Lattice& lat)
{
    check_dim(c, X);
    const ProductJet jet = log_jet(build_phi0(c), X, lat);
    Scaled w;
    for (std::size_t J = 0; J < c.script_n(); ++J) w.add(jet.hess_diag(J) / c.mass(J));
    return w;
}

Scaled w_raw(const CouplingData& c, const std::vector<cplx>& X, const Lattice& lat)
{
    check_dim(c, X);
    const std::size_t n = c.script_n();
    const PointData p = evaluate(X, lat);
    const cplx lam = c.lambda();
    Scaled w;

    // one-body
    for (std::size_t J = 0; J < n; ++J) {
        const cplx inv_m = 1.0 / c.mass(J);
        for (int nu = 0; nu < 4; ++nu) {
            const cplx g = c.g(nu, J);
            const auto& t = p.one[J][static_cast<std::size_t>(nu)];
            w.add(inv_m * g * t.dphi);
            w.add(inv_m * g * g * t.phi * t.phi);
        }
        for (int nu = 0; nu < 4; ++nu)
            for (int mu = nu + 1; mu < 4; ++mu)
                w.add(inv_m * 2.0 * c.g(nu, J) * c.g(mu, J) * p.one[J][static_cast<std::size_t>(nu)].phi *
                      p.one[J][static_cast<std::size_t>(mu)].phi);
    }

    // two-body
    for (std::size_t J = 0; J < n; ++J)
        for (std::size_t K = 0; K < n; ++K) {
            if (K == J) continue;
            const cplx mj = c.mass(J), mk = c.mass(K);
            for (std::size_t r = 0; r < 2; ++r) {
                const auto& t = p.pair[J][K][r];
                w.add(mk * lam * t.dphi);
                w.add(mj * mk * mk * lam * lam * t.phi * t.phi);
                for (int nu = 0; nu < 4; ++nu)
                    w.add(2.0 * c.g(nu, J) * mk * lam * p.one[J][static_cast<std::size_t>(nu)].phi * t.phi);
            }
            w.add(2.0 * mj * mk * mk * lam * lam * p.pair[J][K][0].phi * p.pair[J][K][1].phi);
        }

    // three-body
    for (std::size_t J = 0; J < n; ++J)
        for (std::size_t K = 0; K < n; ++K) {
            if (K == J) continue;
            for (std::size_t L = 0; L < n; ++L) {
                if (L == J || L == K) continue;
                const cplx m3 = c.mass(J) * c.mass(K) * c.mass(L) * lam * lam;
                for (std::size_t r = 0; r < 2; ++r)
                    for (std::size_t s = 0; s < 2; ++s) w.add(m3 * p.pair[J][K][r].phi * p.pair[J][L][s].phi);
            }
        }
    return w;
}

Scaled w_reduced(const CouplingData& c, const std::vector<cplx>& X, const Lattice& lat)
{
    check_dim(c, X);
    const std::size_t n = c.script_n();
    const PointData p = evaluate(X, lat);
    const cplx lam = c.lambda(), m = c.m_abs(), d = c.d_abs();
    const cplx eta = lat.eta1_over_omega1();
    const auto& dv = c.d();
    Scaled w;

    // one-body
    for (std::size_t J = 0; J < n; ++J) {
        const cplx mj = c.mass(J);
        for (int nu = 0; nu < 4; ++nu) {
            const cplx g = c.g(nu, J);
            w.add(g * (g - 1.0) / mj * wp(X[J] + lat.half_period(nu), lat));
            w.add(2.0 * g * (d + 2.0 * mj * lam) * p.one[J][static_cast<std::size_t>(nu)].beta);
        }
        w.add((d + 2.0 * mj * lam) * (mj * d + 2.0 * mj * mj * lam - 1.0) * eta);
        for (int nu = 1; nu < 4; ++nu)
            for (int mu = 0; mu < nu; ++mu)
                w.add(-mj * dv[static_cast<std::size_t>(nu)] * dv[static_cast<std::size_t>(mu)] *
                      lat.constants().e_pair(nu, mu));
    }

    // two-body
    for (std::size_t J = 0; J < n; ++J)
        for (std::size_t K = J + 1; K < n; ++K) {
            const cplx mj = c.mass(J), mk = c.mass(K);
            const cplx gam = c.gamma(J, K);
            for (std::size_t r = 0; r < 2; ++r) {
                const cplx arg = r == 0 ? X[J] - X[K] : X[J] + X[K];
                w.add(gam * wp(arg, lat));
                w.add(mj * mk * lam * (2.0 * d + 4.0 * (mj + mk) * lam) * p.pair[J][K][r].beta);
            }
            w.add(2.0 * gam * eta);
        }
    for (std::size_t J = 0; J < n; ++J) {
        const cplx mj = c.mass(J);
        for (int nu = 0; nu < 4; ++nu)
            w.add(4.0 * lam * (m - mj) * c.g(nu, J) * p.one[J][static_cast<std::size_t>(nu)].beta);
        w.add(3.0 * lam * (m - mj) * mj * (d + 2.0 * mj * lam) * eta);
    }

    // three-body
    for (std::size_t J = 0; J < n; ++J)
        for (std::size_t K = J + 1; K < n; ++K) {
            const cplx coef = 4.0 * c.mass(J) * c.mass(K) * (m - c.mass(J) - c.mass(K)) * lam * lam;
            for (std::size_t r = 0; r < 2; ++r) w.add(coef * (p.pair[J][K][r].beta + 0.5 * eta));
        }
    return w;
}

} // namespace inoz
