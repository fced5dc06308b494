#include <doctest.h>

#include "inoz/errors.hpp"
#include "inoz/quadrature.hpp"
#include "support.hpp"

using namespace inoz;

TEST_SUITE("quadrature") {

TEST_CASE("Gauss-Legendre rules are exact to degree 2n - 1")
{
    for (int n : {1, 2, 5, 16, 24}) {
        const GaussRule r = gauss_legendre(n);
        double wsum = 0.0;
        for (double w : r.weights) wsum += w;
        CHECK(std::abs(wsum - 2.0) < 1e-14);
        for (int k = 0; k <= 2 * n - 1; ++k) {
            double s = 0.0;
            for (std::size_t i = 0; i < r.nodes.size(); ++i) s += r.weights[i] * std::pow(r.nodes[i], k);
            const double exact = k % 2 ? 0.0 : 2.0 / (k + 1);
            CHECK(std::abs(s - exact) < 1e-14);
        }
        for (std::size_t i = 1; i < r.nodes.size(); ++i) CHECK(r.nodes[i] > r.nodes[i - 1]);
    }
    CHECK_THROWS_AS(gauss_legendre(0), PreconditionViolation);
}

TEST_CASE("discretized paths integrate polynomials")
{
    const cplx a(0.1, -0.3), b(1.2, 0.4);
    const Path seg{PathPiece::segment(a, b)};
    cplx s0{}, s1{};
    for (const auto& n : discretize(seg, 3, 8)) {
        s0 += n.w;
        s1 += n.w * n.y;
    }
    CHECK_CLOSE(s0, b - a, 1e-15);
    CHECK_CLOSE(s1, 0.5 * (b * b - a * a), 1e-15);
    // closed circle: integral of y^-1 is 2 pi i, of y^k is zero
    const Path circ{PathPiece::arc(0.0, 0.7, 0.3, 2 * pi)};
    cplx r0{}, r1{};
    for (const auto& n : discretize(circ, 4, 16)) {
        r0 += n.w / n.y;
        r1 += n.w * n.y * n.y;
    }
    CHECK_CLOSE(r0, 2.0 * pi * I, 1e-14);
    CHECK(std::abs(r1) < 1e-14);
}

TEST_CASE("residue of a theta reciprocal")
{
    const Lattice lat = Lattice::from_nome(1.0, 0.3);
    TransformKernel k;
    k.factors.push_back({1, -1, {}, 1.0, {}, -1.0});
    const Path circ{PathPiece::arc(0.0, 0.3, 0.0, 2 * pi)};
    const TransformResult T = contour_transform(k, {}, circ, lat);
    CHECK_CLOSE(T.value, 2.0 * pi * I / lat.theta1_prime0(), 1e-13);
    CHECK(T.closure < 1e-14);
}

TEST_CASE("branches are continued along the path")
{
    const Lattice lat = Lattice::from_nome(1.0, 0.3);
    TransformKernel k;
    k.factors.push_back({1, -1, {}, 1.0, {}, 0.5});
    const Path circ{PathPiece::arc(0.0, 0.3, 0.0, 2 * pi)};
    const TransformResult T = contour_transform(k, {}, circ, lat);
    // a square root changes sign around its branch point
    CHECK(std::abs(T.closure - 2.0) < 1e-12);
    std::vector<cplx> ys;
    for (int j = 0; j < 8; ++j) ys.push_back(std::polar(0.3, j * pi / 4));
    const KernelSamples s = sample_kernel(k, {}, ys, lat, Exec::serial);
    // continued past the negative axis, not snapped back to the principal branch
    CHECK(s.value[6].real() < 0.0);
    CHECK(s.value[6].imag() > 0.0);
    CHECK_THROWS_AS(sample_kernel(k, {}, {cplx(0.1, 0.0), cplx(-0.1, 0.001)}, lat, Exec::serial), BranchStepTooLarge);
}

TEST_CASE("serial and parallel transforms are bit-identical")
{
    const Lattice lat = Lattice::from_tau(1.2, cplx(0.2, 0.9));
    TransformKernel k;
    k.n_vars = 2;
    k.factors.push_back({1, 0, 1.0, -1.0, {}, cplx(-0.5, 0.1)});
    k.factors.push_back({1, 1, 1.0, 1.0, {}, 1.0});
    k.factors.push_back({3, -1, {}, 1.0, {}, 0.25});
    k.y_rate = cplx(0.0, -1.0);
    const Path p = figure_eight_path(0.4, 2.0, 0.2, 1.2);
    QuadratureOptions ser, par;
    ser.exec = Exec::serial;
    const std::vector<cplx> X{0.4, cplx(0.7, 0.3)};
    const TransformResult a = contour_transform(k, X, p, lat, ser), b = contour_transform(k, X, p, lat, par);
    CHECK(a.value == b.value);
    CHECK(a.grad == b.grad);
    CHECK(a.hess == b.hess);
    CHECK(a.dbeta == b.dbeta);
}

TEST_CASE("error paths")
{
    const Lattice lat = Lattice::from_nome(1.0, 0.3);
    TransformKernel k;
    k.factors.push_back({1, -1, {}, 1.0, {}, -1.0});
    QuadratureOptions o;
    o.refinement_limit = 1;
    o.panels = 1;
    o.order = 4;
    // nearly singular segment with too little refinement
    CHECK_THROWS_AS(contour_transform(k, {}, {PathPiece::segment(cplx(-1, 1e-3), cplx(1, 1e-3))}, lat, o),
                    QuadratureNonConvergence);
    CHECK_THROWS_AS(check_connected({PathPiece::segment(0.0, 1.0), PathPiece::segment(1.5, 2.0)}), InvalidContour);
    CHECK_THROWS_AS(check_connected({}), InvalidContour);
    CHECK_THROWS_AS(figure_eight_path(0.0, 0.3, 0.2, 0.15), InvalidContour);
    CHECK_THROWS_AS(figure_eight_path(0.0, 2.0, 0.2, 0.1), InvalidContour);
    CHECK_THROWS_AS(line_path(0.0, 1.0), InvalidContour);
    CHECK_THROWS_AS(PathPiece::arc(0.0, -1.0, 0.0, 1.0), InvalidContour);
    CHECK_THROWS_AS(sample_kernel(k, {1.0}, {0.5}, lat, Exec::serial), PreconditionViolation);
    CHECK(path_distance({PathPiece::segment(0.0, 2.0)}, cplx(1.0, 0.5)) == doctest::Approx(0.5));
}

} // TEST_SUITE
