#include "inoz/identities.hpp"

#include <algorithm>
#include <chrono>
#include <sstream>

#include "inoz/errors.hpp"
#include "inoz/parallel.hpp"
#include "inoz/sampling.hpp"

namespace inoz {

namespace {

struct Theta4 {
    std::array<ThetaLogJet, 4> j; // index nu = 0..3 holds theta_{nu+1}
    cplx phi(int nu) const { return j[static_cast<std::size_t>(nu)].phi; }
    cplx dot(int nu) const { return j[static_cast<std::size_t>(nu)].beta; }
};

Theta4 all_thetas(cplx x, const Lattice& lat)
{
    Theta4 t;
    for (int nu = 0; nu < 4; ++nu) t.j[static_cast<std::size_t>(nu)] = theta_log_jet(nu + 1, x, lat);
    return t;
}

void keep_worst(PointResidual& acc, const TermSum& t)
{
    acc.abs = std::max(acc.abs, std::abs(t.sum));
    acc.rel = std::max(acc.rel, t.relative());
}

PointResidual heat(cplx x, const Lattice& lat)
{
    PointResidual r;
    for (int nu = 1; nu <= 4; ++nu) {
        const ThetaJet j = theta_jet(nu, x, lat);
        TermSum t;
        t.add(j.d2).sub(2.0 * j.dbeta);
        // absolute floor of 1 keeps points near a zero of theta'' meaningful
        t.scale = std::max(t.scale, 1.0);
        keep_worst(r, t);
    }
    return r;
}

PointResidual sumrule(const Lattice& lat)
{
    PointResidual r;
    const auto& e = lat.constants().e;
    TermSum te;
    for (cplx v : e) te.add(v);
    keep_worst(r, te);
    TermSum tz;
    for (cplx v : eta_values(lat)) tz.add(v);
    keep_worst(r, tz);
    return r;
}

PointResidual zeta_wp(cplx x1, cplx x2, const Lattice& lat)
{
    const cplx x3 = -x1 - x2;
    const cplx s = zeta_w(x1, lat) + zeta_w(x2, lat) + zeta_w(x3, lat);
    TermSum t;
    t.add(s * s).sub(wp(x1, lat)).sub(wp(x2, lat)).sub(wp(x3, lat));
    PointResidual r;
    keep_worst(r, t);
    return r;
}

PointResidual double1(cplx x, const Lattice& lat)
{
    const Theta4 t4 = all_thetas(x, lat);
    TermSum t;
    t.add(phi(1, 2.0 * x, lat));
    for (int nu = 0; nu < 4; ++nu) t.sub(0.5 * t4.phi(nu));
    PointResidual r;
    keep_worst(r, t);
    return r;
}

PointResidual double2(cplx x, const Lattice& lat)
{
    const Theta4 t4 = all_thetas(x, lat);
    TermSum t;
    t.add(theta_log_jet(1, 2.0 * x, lat).beta);
    for (int nu = 0; nu < 4; ++nu) t.sub(0.25 * t4.dot(nu));
    for (int mu = 0; mu < 4; ++mu)
        for (int nu = mu + 1; nu < 4; ++nu) t.sub(0.25 * t4.phi(mu) * t4.phi(nu));
    PointResidual r;
    keep_worst(r, t);
    return r;
}

PointResidual i1(cplx x, const Lattice& lat)
{
    PointResidual r;
    const cplx c = lat.eta1_over_omega1();
    for (int nu = 0; nu < 4; ++nu) {
        TermSum t;
        t.add(phi_dx(nu + 1, x, lat)).add(wp(x + lat.half_period(nu), lat)).add(c);
        keep_worst(r, t);
    }
    return r;
}

PointResidual i2(cplx x, const Lattice& lat)
{
    PointResidual r;
    const cplx c = lat.eta1_over_omega1();
    const Theta4 t4 = all_thetas(x, lat);
    for (int nu = 0; nu < 4; ++nu) {
        TermSum t;
        t.add(t4.phi(nu) * t4.phi(nu)).sub(2.0 * t4.dot(nu)).sub(wp(x + lat.half_period(nu), lat)).sub(c);
        keep_worst(r, t);
    }
    return r;
}

PointResidual i3(cplx x, const Lattice& lat)
{
    PointResidual r;
    const cplx c = lat.eta1_over_omega1();
    const Theta4 t4 = all_thetas(x, lat);
    for (int nu = 1; nu < 4; ++nu)
        for (int mu = 0; mu < nu; ++mu) {
            TermSum t;
            t.add(t4.phi(nu) * t4.phi(mu)).sub(t4.dot(nu)).sub(t4.dot(mu)).sub(c);
            t.add(0.5 * lat.constants().e_pair(nu, mu));
            keep_worst(r, t);
        }
    return r;
}

PointResidual i4(cplx x, cplx y, const Lattice& lat)
{
    const cplx c = lat.eta1_over_omega1();
    const Theta4 t4 = all_thetas(x, lat);
    const ThetaLogJet minus = theta_log_jet(1, x - y, lat); // r = +
    const ThetaLogJet plus = theta_log_jet(1, x + y, lat);  // r = -
    TermSum t;
    t.add(minus.phi * plus.phi);
    for (int nu = 0; nu < 4; ++nu) {
        t.sub(0.5 * t4.phi(nu) * minus.phi).sub(0.5 * t4.phi(nu) * plus.phi);
        t.add(t4.dot(nu));
    }
    t.add(minus.beta).add(plus.beta).add(3.0 * c);
    PointResidual r;
    keep_worst(r, t);
    return r;
}

PointResidual i5(cplx x, cplx y, const Lattice& lat)
{
    PointResidual r;
    const cplx c = lat.eta1_over_omega1();
    const Theta4 tx = all_thetas(x, lat);
    const Theta4 ty = all_thetas(y, lat);
    const ThetaLogJet minus = theta_log_jet(1, x - y, lat);
    const ThetaLogJet plus = theta_log_jet(1, x + y, lat);
    for (int nu = 0; nu < 4; ++nu) {
        TermSum t;
        t.add((tx.phi(nu) - ty.phi(nu)) * minus.phi).add((tx.phi(nu) + ty.phi(nu)) * plus.phi);
        t.sub(2.0 * tx.dot(nu)).sub(2.0 * ty.dot(nu)).sub(minus.beta).sub(plus.beta).sub(3.0 * c);
        keep_worst(r, t);
    }
    return r;
}

PointResidual i6(cplx x, cplx y, cplx z, const Lattice& lat)
{
    const cplx c = lat.eta1_over_omega1();
    auto p1 = [&](cplx u) { return phi(1, u, lat); };
    auto d1 = [&](cplx u) { return theta_log_jet(1, u, lat).beta; };
    TermSum t;
    for (double r : {1.0, -1.0})
        for (double s : {1.0, -1.0}) {
            t.add(p1(x - r * y) * p1(x - s * z));
            t.add(p1(y - r * x) * p1(y - s * z));
            t.add(p1(z - r * x) * p1(z - s * y));
        }
    for (double r : {1.0, -1.0}) t.sub(2.0 * (d1(x - r * y) + d1(x - r * z) + d1(y - r * z)));
    t.sub(6.0 * c);
    PointResidual res;
    keep_worst(res, t);
    return res;
}

PointResidual zeta_phi(cplx x, const Lattice& lat)
{
    PointResidual r;
    const cplx c = lat.eta1_over_omega1();
    const auto eta = eta_values(lat);
    // nu = 0 is the definition of zeta used here; the shifted relations are the content
    for (int nu = 1; nu < 4; ++nu) {
        TermSum t;
        t.add(phi(nu + 1, x, lat)).sub(zeta_w(x + lat.half_period(nu), lat));
        t.add(eta[static_cast<std::size_t>(nu - 1)]).add(c * x);
        keep_worst(r, t);
    }
    return r;
}

} // namespace

TermSum& TermSum::add(cplx v)
{
    sum += v;
    scale = std::max(scale, std::abs(v));
    return *this;
}

std::string_view identity_name(IdentityId id)
{
    switch (id) {
    case IdentityId::heat: return "heat";
    case IdentityId::sumrule: return "sumrule";
    case IdentityId::zeta_wp: return "zeta_wp";
    case IdentityId::double1: return "double1";
    case IdentityId::double2: return "double2";
    case IdentityId::i1: return "I1";
    case IdentityId::i2: return "I2";
    case IdentityId::i3: return "I3";
    case IdentityId::i4: return "I4";
    case IdentityId::i5: return "I5";
    case IdentityId::i6: return "I6";
    case IdentityId::zeta_phi: return "zeta_phi";
    }
    return "unknown";
}

std::size_t identity_arity(IdentityId id)
{
    switch (id) {
    case IdentityId::zeta_wp:
    case IdentityId::i4:
    case IdentityId::i5: return 2;
    case IdentityId::i6: return 3;
    default: return 1;
    }
}

std::array<cplx, 3> eta_values(const Lattice& lat)
{
    return {lat.constants().eta1, zeta_w(lat.half_period(2), lat), zeta_w(lat.half_period(3), lat)};
}

PointResidual identity_residual(IdentityId id, const std::vector<cplx>& X, const Lattice& lat)
{
    if (X.size() < identity_arity(id)) throw PreconditionViolation("too few coordinates for identity");
    switch (id) {
    case IdentityId::heat: return heat(X[0], lat);
    case IdentityId::sumrule: return sumrule(lat);
    case IdentityId::zeta_wp: return zeta_wp(X[0], X[1], lat);
    case IdentityId::double1: return double1(X[0], lat);
    case IdentityId::double2: return double2(X[0], lat);
    case IdentityId::i1: return i1(X[0], lat);
    case IdentityId::i2: return i2(X[0], lat);
    case IdentityId::i3: return i3(X[0], lat);
    case IdentityId::i4: return i4(X[0], X[1], lat);
    case IdentityId::i5: return i5(X[0], X[1], lat);
    case IdentityId::i6: return i6(X[0], X[1], X[2], lat);
    case IdentityId::zeta_phi: return zeta_phi(X[0], lat);
    }
    throw PreconditionViolation("unknown identity");
}

ResidualReport check_identity(IdentityId id, const Lattice& lat, std::size_t n_points, std::uint64_t seed,
                              double tol, Exec exec)
{
    if (!(tol > 0.0)) throw PreconditionViolation("tolerance must be positive");
    const auto points = sample_points(n_points, identity_arity(id), seed, lat);
    std::vector<PointResidual> res(points.size());
    for_each_index(points.size(), exec, [&](std::size_t i) { res[i] = identity_residual(id, points[i], lat); });

    ResidualAccumulator acc;
    for (std::size_t i = 0; i < points.size(); ++i) acc.add(res[i].abs, res[i].rel, points[i]);
    std::ostringstream params;
    params << identity_name(id) << '|' << lat.summary() << '|' << n_points << '|' << seed << '|' << tol;
    return acc.finish(std::string(identity_name(id)), lat.summary(), fnv1a(params.str()), tol);
}

std::vector<ResidualReport> check_all(const Lattice& lat, std::size_t n_points, std::uint64_t seed, double tol,
                                      Exec exec)
{
    std::vector<ResidualReport> out;
    out.reserve(all_identities.size());
    for (IdentityId id : all_identities) out.push_back(check_identity(id, lat, n_points, seed, tol, exec));
    return out;
}

} // namespace inoz
