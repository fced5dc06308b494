#include <doctest.h>

#include "inoz/identities.hpp"
#include "inoz/report.hpp"
#include "support.hpp"

using namespace inoz;

TEST_SUITE("identities") {

TEST_CASE("every appendix identity holds on assorted lattices")
{
    const std::vector<Lattice> lats{Lattice::from_nome(pi / 2, 0.05), Lattice::from_nome(1.0, 0.5),
                                    Lattice::from_tau(1.3, cplx(0.3, 0.9)), Lattice::from_tau(0.7, cplx(-0.4, 0.8))};
    for (const auto& lat : lats)
        for (const auto& r : check_all(lat, 40, 3, 1e-11)) {
            INFO(r.check << " " << lat.summary() << " max_rel=" << r.max_rel);
            CHECK(r.pass);
            CHECK(r.n_points == 40);
        }
}

TEST_CASE("identity names and arities")
{
    CHECK(all_identities.size() == 12);
    CHECK(identity_name(IdentityId::heat) == "heat");
    CHECK(identity_arity(IdentityId::zeta_wp) == 2);
    CHECK(identity_arity(IdentityId::i6) == 3);
    CHECK(identity_arity(IdentityId::double1) == 1);
}

TEST_CASE("point residuals and the Legendre relation")
{
    const Lattice lat = Lattice::from_tau(1.3, cplx(0.3, 0.9));
    const std::vector<cplx> X{cplx(0.3, 0.1)};
    CHECK(identity_residual(IdentityId::zeta_phi, X, lat).rel < 1e-13);
    CHECK(identity_residual(IdentityId::double2, X, lat).rel < 1e-13);
    const auto eta = eta_values(lat);
    CHECK_CLOSE(eta[0], lat.constants().eta1, 1e-14);
    // eta_1 omega_3 - eta_3 omega_1 = i pi / 2
    CHECK_CLOSE(eta[0] * lat.omega3() - eta[2] * lat.omega1(), I * pi / 2.0, 1e-13);
    // eta_1 + eta_2 + eta_3 = 0
    CHECK(std::abs(eta[0] + eta[1] + eta[2]) < 1e-13);
}

TEST_CASE("serial and parallel sweeps are bit-identical")
{
    const Lattice lat = Lattice::from_tau(1.3, cplx(0.3, 0.9));
    const auto s = check_all(lat, 50, 9, 1e-10, Exec::serial);
    const auto p = check_all(lat, 50, 9, 1e-10, Exec::parallel);
    REQUIRE(s.size() == p.size());
    for (std::size_t i = 0; i < s.size(); ++i) CHECK(to_json_line(s[i]) == to_json_line(p[i]));
}

TEST_CASE("report lines are deterministic and well-formed")
{
    const Lattice lat = Lattice::from_nome(1.0, 0.3);
    const auto a = check_identity(IdentityId::i4, lat, 20, 5, 1e-10);
    const auto b = check_identity(IdentityId::i4, lat, 20, 5, 1e-10);
    CHECK(to_json_line(a) == to_json_line(b));
    const std::string line = to_json_line(a);
    CHECK(line.find("\"check\":\"I4\"") != std::string::npos);
    CHECK(line.find("\"pass\":true") != std::string::npos);
    CHECK(line.find('\n') == std::string::npos);
    // a different seed changes the digest
    const auto c = check_identity(IdentityId::i4, lat, 20, 6, 1e-10);
    CHECK(c.params_digest != a.params_digest);
}

TEST_CASE("accumulator semantics")
{
    ResidualAccumulator acc;
    acc.add(1.0, 1e-12, {cplx(1, 0)});
    acc.add(2.0, 5e-12, {cplx(2, 0)});
    acc.add(3.0, 5e-12, {cplx(3, 0)});
    const auto r = acc.finish("x", "L", 7, 1e-11);
    CHECK(r.pass);
    CHECK(r.max_abs == 3.0);
    CHECK(r.worst_point[0] == cplx(2, 0)); // first point attaining the maximum
    CHECK_FALSE(acc.finish("x", "L", 7, 1e-12).pass);
    CHECK_FALSE(ResidualAccumulator{}.finish("x", "L", 7, 1.0).pass);
    CHECK(fnv1a("") == 0xcbf29ce484222325ULL);
}

} // TEST_SUITE
