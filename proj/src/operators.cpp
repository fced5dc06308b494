#include "inoz/operators.hpp"

#include <algorithm>
#include <sstream>

#include "inoz/errors.hpp"
#include "inoz/parallel.hpp"
#include "inoz/sampling.hpp"

namespace inoz {

namespace {

std::string fmt(cplx z)
{
    std::ostringstream s;
    s.precision(17);
    s << z.real() << (z.imag() < 0 ? "" : "+") << z.imag() << "i";
    return s.str();
}

double rel_dev(cplx a, cplx b)
{
    const double scale = std::max({1.0, std::abs(a), std::abs(b)});
    return std::abs(a - b) / scale;
}

} // namespace

HamiltonianSpec HamiltonianSpec::empty(std::size_t n_vars, std::string label)
{
    HamiltonianSpec h;
    h.n_vars = n_vars;
    h.kinetic.assign(n_vars, cplx{});
    h.onebody.assign(n_vars, std::array<cplx, 4>{});
    h.label = std::move(label);
    return h;
}

HamiltonianSpec embedded(const HamiltonianSpec& spec, std::size_t first, std::size_t n_vars)
{
    if (first + spec.n_vars > n_vars) throw PreconditionViolation("embedding exceeds the variable count");
    HamiltonianSpec h = HamiltonianSpec::empty(n_vars, spec.label);
    for (std::size_t J = 0; J < spec.n_vars; ++J) {
        h.kinetic[first + J] = spec.kinetic[J];
        h.onebody[first + J] = spec.onebody[J];
    }
    for (const auto& p : spec.pairs) h.pairs.push_back({p.J + first, p.K + first, p.coef});
    return h;
}

HamiltonianSpec scaled(const HamiltonianSpec& spec, cplx factor)
{
    HamiltonianSpec h = spec;
    for (auto& c : h.kinetic) c *= factor;
    for (auto& row : h.onebody)
        for (auto& v : row) v *= factor;
    for (auto& p : h.pairs) p.coef *= factor;
    return h;
}

HamiltonianSpec sum(const HamiltonianSpec& a, const HamiltonianSpec& b)
{
    if (a.n_vars != b.n_vars) throw PreconditionViolation("operators must act on the same variables");
    HamiltonianSpec h = a;
    for (std::size_t J = 0; J < a.n_vars; ++J) {
        h.kinetic[J] += b.kinetic[J];
        for (std::size_t nu = 0; nu < 4; ++nu) h.onebody[J][nu] += b.onebody[J][nu];
    }
    h.pairs.insert(h.pairs.end(), b.pairs.begin(), b.pairs.end());
    h.label = a.label + " + " + b.label;
    return h;
}

HamiltonianSpec direct_sum(const HamiltonianSpec& a, const HamiltonianSpec& b)
{
    const std::size_t n = a.n_vars + b.n_vars;
    HamiltonianSpec h = sum(embedded(a, 0, n), embedded(b, a.n_vars, n));
    h.label = a.label + " (+) " + b.label;
    return h;
}

HamiltonianSpec build_generalized(const CouplingData& c)
{
    const std::size_t n = c.script_n();
    HamiltonianSpec h = HamiltonianSpec::empty(n, "generalized");
    for (std::size_t J = 0; J < n; ++J) {
        const cplx inv_m = 1.0 / c.mass(J);
        h.kinetic[J] = inv_m;
        for (int nu = 0; nu < 4; ++nu) {
            const cplx g = c.g(nu, J);
            h.onebody[J][static_cast<std::size_t>(nu)] = g * (g - 1.0) * inv_m;
        }
    }
    for (std::size_t J = 0; J < n; ++J)
        for (std::size_t K = J + 1; K < n; ++K) h.pairs.push_back({J, K, c.gamma(J, K)});
    return h;
}

HamiltonianSpec build_inozemtsev(int N, const std::array<cplx, 4>& g, cplx lambda)
{
    if (N < 0) throw InvalidCoupling("particle count must be non-negative");
    const auto n = static_cast<std::size_t>(N);
    HamiltonianSpec h = HamiltonianSpec::empty(n, "H_" + std::to_string(N));
    for (std::size_t j = 0; j < n; ++j) {
        h.kinetic[j] = 1.0;
        for (std::size_t nu = 0; nu < 4; ++nu) h.onebody[j][nu] = g[nu] * (g[nu] - 1.0);
    }
    const cplx w = 2.0 * lambda * (lambda - 1.0);
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = j + 1; k < n; ++k) h.pairs.push_back({j, k, w});
    return h;
}

HamiltonianSpec build_deformed(int sign, int N, int Nt, const std::array<cplx, 4>& d, cplx lambda)
{
    if (sign != 1 && sign != -1) throw PreconditionViolation("sign must be +1 or -1");
    if (N < 0 || Nt < 0 || N + Nt < 1) throw InvalidCoupling("deformed operator needs N + N~ > 0");
    if (lambda == cplx{}) throw InvalidCoupling("lambda must be nonzero");
    const double s = sign;
    std::array<cplx, 4> g_x, g_xt;
    for (std::size_t nu = 0; nu < 4; ++nu) {
        g_x[nu] = 0.5 * lambda + s * d[nu];
        g_xt[nu] = (0.5 - s * d[nu]) / lambda;
    }
    HamiltonianSpec h = direct_sum(build_inozemtsev(N, g_x, lambda),
                                   scaled(build_inozemtsev(Nt, g_xt, 1.0 / lambda), -lambda));
    const cplx cross = 2.0 * (1.0 - lambda);
    for (std::size_t j = 0; j < static_cast<std::size_t>(N); ++j)
        for (std::size_t k = 0; k < static_cast<std::size_t>(Nt); ++k)
            h.pairs.push_back({j, static_cast<std::size_t>(N) + k, cross});
    h.label = std::string(sign > 0 ? "H+" : "H-") + "_{" + std::to_string(N) + "," + std::to_string(Nt) + "}";
    return h;
}

HamiltonianSpec build_corollary_hamiltonian(const CorollaryParams& p)
{
    validate(p);
    switch (p.which) {
    case Corollary::cor1: return build_inozemtsev(p.N, p.g, p.lambda);
    case Corollary::cor2: {
        std::array<cplx, 4> gt;
        for (std::size_t nu = 0; nu < 4; ++nu) gt[nu] = p.lambda - p.g[nu];
        return direct_sum(build_inozemtsev(p.N, p.g, p.lambda), scaled(build_inozemtsev(p.M, gt, p.lambda), -1.0));
    }
    case Corollary::cor3: {
        std::array<cplx, 4> gp;
        for (std::size_t nu = 0; nu < 4; ++nu) gp[nu] = (2.0 * p.g[nu] + 1.0 - p.lambda) / (2.0 * p.lambda);
        return direct_sum(build_inozemtsev(p.N, p.g, p.lambda),
                          scaled(build_inozemtsev(p.M, gp, 1.0 / p.lambda), p.lambda));
    }
    case Corollary::cor4: {
        const auto d = p.d();
        auto block = [&](int sign, int n, int nt) {
            return n + nt > 0 ? build_deformed(sign, n, nt, d, p.lambda) : HamiltonianSpec::empty(0);
        };
        return direct_sum(block(1, p.N, p.Nt), scaled(block(-1, p.M, p.Mt), -1.0));
    }
    }
    throw PreconditionViolation("unknown corollary");
}

void Scaled::add(cplx v)
{
    value += v;
    scale = std::max(scale, std::abs(v));
}

Scaled potential(const HamiltonianSpec& spec, const std::vector<cplx>& X, const Lattice& lat)
{
    Scaled out;
    for (std::size_t J = 0; J < spec.n_vars; ++J)
        for (int nu = 0; nu < 4; ++nu) {
            const cplx v = spec.onebody[J][static_cast<std::size_t>(nu)];
            if (v != cplx{}) out.add(v * wp(X[J] + lat.half_period(nu), lat));
        }
    for (const auto& p : spec.pairs)
        if (p.coef != cplx{}) out.add(p.coef * (wp(X[p.J] - X[p.K], lat) + wp(X[p.J] + X[p.K], lat)));
    return out;
}

Scaled apply(const HamiltonianSpec& spec, const ProductJet& jet, const std::vector<cplx>& X, const Lattice& lat)
{
    if (X.size() != spec.n_vars || jet.grad.size() != spec.n_vars)
        throw PreconditionViolation("operator, wavefunction and point dimensions differ");
    Scaled out = potential(spec, X, lat);
    for (std::size_t J = 0; J < spec.n_vars; ++J)
        if (spec.kinetic[J] != cplx{}) out.add(-spec.kinetic[J] * jet.hess_diag(J));
    return out;
}

Scaled apply(const HamiltonianSpec& spec, const ThetaProduct& tp, const std::vector<cplx>& X, const Lattice& lat)
{
    return apply(spec, log_jet(tp, X, lat), X, lat);
}

IdentityConstants constants_source(const CouplingData& c, const Lattice& lat)
{
    const cplx lam = c.lambda(), m = c.m_abs(), m2 = c.m2_abs(), d = c.d_abs();
    const double n = static_cast<double>(c.script_n());
    IdentityConstants k;
    k.c0 = c0(c.d(), lat.constants().e);
    k.g_abs = d;
    k.A = 4.0 * lam * m + 2.0 * d;
    k.C = (2.0 * lam * m + d) * (n - lam * (m * m + m2) - m * d) * lat.eta1_over_omega1() + m * k.c0;
    return k;
}

cplx energy_unsimplified(const CouplingData& c, const Lattice& lat)
{
    const cplx lam = c.lambda(), m = c.m_abs(), d = c.d_abs();
    const std::size_t n = c.script_n();
    cplx brace{};
    for (std::size_t J = 0; J < n; ++J) {
        const cplx mj = c.mass(J);
        brace += (d + 2.0 * mj * lam) * (mj * d + 2.0 * mj * mj * lam - 1.0);
        brace += 3.0 * lam * (m - mj) * mj * (d + 2.0 * mj * lam);
    }
    for (std::size_t J = 0; J < n; ++J)
        for (std::size_t K = J + 1; K < n; ++K) {
            const cplx mj = c.mass(J), mk = c.mass(K);
            brace += 2.0 * c.gamma(J, K) + 4.0 * mj * mk * (m - mj - mk) * lam * lam;
        }
    cplx dde{};
    const auto& dv = c.d();
    for (int nu = 1; nu < 4; ++nu)
        for (int mu = 0; mu < nu; ++mu)
            dde += dv[static_cast<std::size_t>(nu)] * dv[static_cast<std::size_t>(mu)] * lat.constants().e_pair(nu, mu);
    return -brace * lat.eta1_over_omega1() + m * dde;
}

IdentityConstants constants_corollary(const CorollaryParams& p, const Lattice& lat)
{
    validate(p);
    const cplx lam = p.lambda, g = abs_sum(p.g);
    const cplx eta = lat.eta1_over_omega1();
    const double N = p.N, Nt = p.Nt, M = p.M, Mt = p.Mt;
    IdentityConstants k;
    k.c0 = c0(p.g, lat.constants().e);
    k.g_abs = g;
    switch (p.which) {
    case Corollary::cor1:
        k.A = 4.0 * lam * (N - 1.0) + 2.0 * g;
        k.C = 0.5 * k.A * N * (1.0 - lam * (N - 1.0) - g) * eta + N * k.c0;
        break;
    case Corollary::cor2:
        k.A = 4.0 * lam * (N - M - 1.0) + 2.0 * g;
        k.C = 0.5 * k.A * ((N + M) * (1.0 - lam) - (N - M) * ((N - M - 2.0) * lam + g)) * eta + (N - M) * k.c0;
        break;
    case Corollary::cor3:
        k.A = 4.0 * lam * (N - 1.0) + 4.0 * M + 2.0 * g;
        k.C = 0.5 * k.A * (N + M - (N + M / lam) * ((N - 2.0) * lam + M + g) - N * lam - M / lam) * eta +
              (N + M / lam) * k.c0;
        break;
    case Corollary::cor4: {
        const cplx m = N - M - (Nt - Mt) / lam;
        const cplx m2 = N + M + (Nt + Mt) / (lam * lam);
        k.A = 4.0 * lam * (N - M - 1.0) - 4.0 * (Nt - Mt) + 2.0 * g;
        k.C = 0.5 * k.A * (N + Nt + M + Mt - m * ((m - 2.0) * lam + g) - m2 * lam) * eta + m * k.c0;
        break;
    }
    }
    return k;
}

Scaled residual_source(const CouplingData& c, const std::vector<cplx>& X, const Lattice& lat)
{
    const ThetaProduct phi0 = build_phi0(c);
    const HamiltonianSpec h = build_generalized(c);
    const IdentityConstants k = constants_source(c, lat);
    const ProductJet jet = log_jet(phi0, X, lat);
    Scaled r = apply(h, jet, X, lat);
    r.add(k.A * jet.beta);
    r.add(-k.C);
    return r;
}

Scaled residual_corollary_point(const CorollaryParams& p, const std::vector<cplx>& X, const Lattice& lat)
{
    const ThetaProduct psi = build_corollary_wavefunction(p);
    const HamiltonianSpec h = build_corollary_hamiltonian(p);
    const IdentityConstants k = constants_corollary(p, lat);
    const ProductJet jet = log_jet(psi, X, lat);
    Scaled r = apply(h, jet, X, lat);
    r.add(k.A * jet.beta);
    r.add(-k.C);
    return r;
}

namespace {

template <typename PointFn>
ResidualReport sweep(const std::string& name, const std::string& params, std::size_t dim, const Lattice& lat,
                     std::size_t n_points, std::uint64_t seed, double tol, Exec exec, PointFn fn)
{
    if (!(tol > 0.0)) throw PreconditionViolation("tolerance must be positive");
    const auto points = sample_points(n_points, dim, seed, lat);
    std::vector<std::pair<double, double>> res(points.size());
    for_each_index(points.size(), exec, [&](std::size_t i) { res[i] = fn(points[i]); });
    ResidualAccumulator acc;
    for (std::size_t i = 0; i < points.size(); ++i) acc.add(res[i].first, res[i].second, points[i]);
    std::ostringstream digest;
    digest << name << '|' << params << '|' << lat.summary() << '|' << n_points << '|' << seed << '|' << tol;
    return acc.finish(name, lat.summary(), fnv1a(digest.str()), tol);
}

} // namespace

ResidualReport residual_source_report(const CouplingData& c, const Lattice& lat, std::size_t n_points,
                                      std::uint64_t seed, double tol, Exec exec)
{
    return sweep("source", describe(c), c.script_n(), lat, n_points, seed, tol, exec, [&](const auto& X) {
        const Scaled r = residual_source(c, X, lat);
        return std::make_pair(std::abs(r.value), r.relative());
    });
}

ResidualReport residual_corollary(const CorollaryParams& p, const Lattice& lat, std::size_t n_points,
                                  std::uint64_t seed, double tol, Exec exec)
{
    validate(p);
    const std::string name = "corollary" + std::to_string(static_cast<int>(p.which));
    return sweep(name, describe(p), static_cast<std::size_t>(p.total()), lat, n_points, seed, tol, exec,
                 [&](const auto& X) {
                     const Scaled r = residual_corollary_point(p, X, lat);
                     return std::make_pair(std::abs(r.value), r.relative());
                 });
}

ResidualReport corollary_coherence(const CorollaryParams& p, const Lattice& lat, std::size_t n_points,
                                   std::uint64_t seed, double tol, Exec exec)
{
    const CouplingData c = coupling_for(p);
    const std::string name = "coherence" + std::to_string(static_cast<int>(p.which));
    return sweep(name, describe(p), c.script_n(), lat, n_points, seed, tol, exec, [&](const auto& X) {
        const Scaled a = residual_corollary_point(p, X, lat);
        const Scaled b = residual_source(c, X, lat);
        const double diff = std::abs(a.value - b.value);
        return std::make_pair(diff, diff / std::max({a.scale, b.scale, 1e-300}));
    });
}

CorollaryParams sym1(const CorollaryParams& p)
{
    CorollaryParams q = p;
    q.N = p.M;
    q.Nt = p.Mt;
    q.M = p.N;
    q.Mt = p.Nt;
    for (std::size_t nu = 0; nu < 4; ++nu) q.g[nu] = p.lambda - p.g[nu];
    return q;
}

CorollaryParams sym2(const CorollaryParams& p)
{
    if (p.lambda == cplx{}) throw InvalidCoupling("lambda must be nonzero");
    CorollaryParams q = p;
    q.N = p.Nt;
    q.Nt = p.N;
    q.M = p.Mt;
    q.Mt = p.M;
    for (std::size_t nu = 0; nu < 4; ++nu) q.g[nu] = (p.lambda + 1.0 - 2.0 * p.g[nu]) / (2.0 * p.lambda);
    q.lambda = 1.0 / p.lambda;
    return q;
}

double SymmetryDeviations::max() const { return std::max({a1, c1, a2, c2, inv1, inv2}); }

SymmetryDeviations symmetry_deviations(const CorollaryParams& p, const Lattice& lat)
{
    if (p.which != Corollary::cor4) throw InvalidCoupling("symmetries act on corollary 4 parameters");
    validate(p);
    const IdentityConstants k = constants_corollary(p, lat);
    const IdentityConstants k1 = constants_corollary(sym1(p), lat);
    const IdentityConstants k2 = constants_corollary(sym2(p), lat);
    auto tuple_dev = [](const CorollaryParams& a, const CorollaryParams& b) {
        double dev = (a.N == b.N && a.Nt == b.Nt && a.M == b.M && a.Mt == b.Mt) ? 0.0 : 1.0;
        dev = std::max(dev, rel_dev(a.lambda, b.lambda));
        for (std::size_t nu = 0; nu < 4; ++nu) dev = std::max(dev, rel_dev(a.g[nu], b.g[nu]));
        return dev;
    };
    SymmetryDeviations s;
    s.a1 = rel_dev(k1.A, -k.A);
    s.c1 = rel_dev(k1.C, -k.C);
    s.a2 = rel_dev(k2.A, -k.A / p.lambda);
    s.c2 = rel_dev(k2.C, -k.C / p.lambda);
    s.inv1 = tuple_dev(sym1(sym1(p)), p);
    s.inv2 = tuple_dev(sym2(sym2(p)), p);
    return s;
}

ResidualReport check_symmetries(const CorollaryParams& p, const Lattice& lat, double tol)
{
    const SymmetryDeviations s = symmetry_deviations(p, lat);
    ResidualAccumulator acc;
    acc.add(s.max(), s.max(), {});
    return acc.finish("symmetries", lat.summary(), fnv1a("symmetries|" + describe(p) + "|" + lat.summary()), tol);
}

ResidualReport route_equivalence(const CouplingData& c, const Lattice& lat, std::size_t n_points,
                                 std::uint64_t seed, double tol, Exec exec)
{
    return sweep("w_routes", describe(c), c.script_n(), lat, n_points, seed, tol, exec, [&](const auto& X) {
        const Scaled a = w_log_derivative(c, X, lat);
        const Scaled b = w_raw(c, X, lat);
        const Scaled r = w_reduced(c, X, lat);
        const double scale = std::max({a.scale, b.scale, r.scale});
        const double dev = std::max({std::abs(a.value - b.value), std::abs(a.value - r.value),
                                     std::abs(b.value - r.value)});
        return std::make_pair(dev, dev / scale);
    });
}

std::string describe(const CouplingData& c)
{
    std::ostringstream s;
    s << "m=";
    for (std::size_t J = 0; J < c.script_n(); ++J) s << (J ? "," : "") << fmt(c.mass(J));
    s << " d=";
    for (std::size_t nu = 0; nu < 4; ++nu) s << (nu ? "," : "") << fmt(c.d()[nu]);
    s << " lambda=" << fmt(c.lambda());
    return s.str();
}

std::string describe(const CorollaryParams& p)
{
    std::ostringstream s;
    s << "cor" << static_cast<int>(p.which) << " counts=" << p.N << "," << p.Nt << "," << p.M << "," << p.Mt
      << " g=";
    for (std::size_t nu = 0; nu < 4; ++nu) s << (nu ? "," : "") << fmt(p.g[nu]);
    s << " lambda=" << fmt(p.lambda);
    return s.str();
}

} // namespace inoz
