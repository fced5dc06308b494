#pragma once

#include <array>
#include <optional>
#include <variant>
#include <vector>

#include "inoz/operators.hpp"
#include "inoz/quadrature.hpp"
#include "inoz/report.hpp"
#include "inoz/theta_product.hpp"

namespace inoz {

/// Horizontal line i eps -> pi R + i eps; eps <= 0 selects -R ln|q| / 2.
struct LineContour {
    double eps = 0.0;
};
/// Circle |xi| = radius in the multiplicative variable xi = exp(-2 i y / R).
struct CircleContour {
    double radius = 1.2;
};
/// Loops of loop_radius around center_a (counterclockwise) and center_b
/// (clockwise) joined at base by segments run in opposite senses.
struct FigureEightContour {
    cplx center_a{}, center_b{};
    double loop_radius = 0.0;
    cplx base{};
};
using ContourSpec = std::variant<LineContour, CircleContour, FigureEightContour>;

// ---------------------------------------------------------------------------
// plane-wave transform

/// Data of the plane-wave eigenfunction: N particles x, N~ particles x~,
/// exponents g~ in {0, 1}, mode n.
struct PlaneWaveParams {
    int N = 1, Nt = 0;
    std::array<int, 4> gt{};
    cplx lambda{1.0};
    int n = 0;
};
void validate(const PlaneWaveParams& p);

/// d = lambda/2 - g~, so the couplings of H^(+) are lambda - g~.
std::array<cplx, 4> plane_wave_d(const PlaneWaveParams& p);
/// p_n = (2n + g~_0 + g~_1) / R
double plane_wave_momentum(const PlaneWaveParams& p, const Lattice& lat);
/// prod theta_{nu+1}(y)^{g~_nu} prod theta_1(x~ +- y) / prod theta_1(x +- y)^lambda e^{-i p y}
TransformKernel plane_wave_kernel(const PlaneWaveParams& p, const Lattice& lat);
/// Psi^(+)_{N,N~}(x, x~) with d = lambda/2 - g~.
ThetaProduct plane_wave_prefactor(const PlaneWaveParams& p);
HamiltonianSpec plane_wave_hamiltonian(const PlaneWaveParams& p);

/// How eta_1 enters the bracket of the constant C. with_eta multiplies the
/// bracket by eta_1/omega_1 (the reading under which the eigen-relation holds);
/// literal drops that factor.
enum class CReading { with_eta, literal };
IdentityConstants plane_wave_constants(const PlaneWaveParams& p, const Lattice& lat, CReading reading = CReading::with_eta);

/// psi = Psi^(+) times the line integral.
struct PlaneWaveValue {
    cplx prefactor{};
    TransformResult integral;
    cplx value{};
    double eps_used = 0.0;
    double eps_change = 0.0; ///< |I(eps) - I(eps/2)| / l1
    bool extrapolated = false;
};

struct PlaneWaveOptions {
    QuadratureOptions quad{};
    double eps = 0.0;              ///< <= 0 selects the default offset
    double eps_agreement = 1e-7;   ///< eps and eps/2 closer than this: no extrapolation
    double closure_tol = 1e-9;
};

/// Evaluates the transform on the line at eps and eps/2. When the two
/// disagree the value is Richardson-extrapolated to eps -> 0.
/// Throws InvalidContour when the integrand is not pi R periodic on the line.
PlaneWaveValue tilde_f_n(const PlaneWaveParams& p, const std::vector<double>& x, const std::vector<double>& xt,
                         const Lattice& lat, const PlaneWaveOptions& opts = {});

/// {A d_beta + H^(+) - p_n^2 - C} psi / psi at (x, x~), with psi = Psi^(+) J:
/// H^(+) applied to the product and its cross terms with the integral, all from
/// integrand derivatives at fixed nodes. Throws DegenerateEigenfunction when
/// the integral vanishes (|J| < 1e-12 l1), as it does for some modes by symmetry.
Scaled residual_example1(const PlaneWaveParams& p, const std::vector<double>& x, const std::vector<double>& xt,
                         const Lattice& lat, CReading reading = CReading::with_eta, const PlaneWaveOptions& opts = {});

/// Laurent coefficients, F(xi) = sum_n f_n xi^-n, n_min <= n <= n_max, of the generating function
///   prod theta~_{nu+1}(xi)^{kappa_nu} prod theta~_1(z~/xi) theta~_1(z~ xi)
///   / prod [theta~_1(z/xi) theta~_1(z xi)]^lambda
/// on the circle |xi| = r, 1 < r < |q|^-2, with |z_j| = |z~_j| = 1.
/// Branches are continued around the circle; a function that does not close
/// up throws InvalidContour. Nodes double until every coefficient is stable
/// to tol times max |F|.
struct GenCoeffs {
    int n_min = 0;
    std::vector<cplx> f;
    double closure = 0.0;
    std::size_t n_nodes = 0;
    cplx at(int n) const { return f.at(static_cast<std::size_t>(n - n_min)); }
};
GenCoeffs gen_coeffs(const std::vector<cplx>& z, const std::vector<cplx>& zt, const std::array<int, 4>& kappa,
                     cplx lambda, int n_min, int n_max, double r, const Lattice& lat, double tol = 1e-13);

/// x with z = exp(-2 i x / R), and back.
cplx z_of_x(cplx x, const Lattice& lat);

// ---------------------------------------------------------------------------
// Lame transform

/// f(y) = exp(kappa y) theta_1(y + t) / theta_1(y), kappa = -phi_1(t),
/// solving -f'' + 2 wp(y) f = energy f with energy = -wp(t).
struct LameSolution {
    cplx t{};
    cplx kappa{};
    cplx energy{};
};
LameSolution lame_build(cplx t, const Lattice& lat);
cplx lame_f(const LameSolution& s, cplx y, const Lattice& lat);

struct LameParams {
    int N = 1, Nt = 0;
    cplx t{};
    /// lambda defaults to the root of A = 4 lambda N - 4 N~ + 2 = 0.
    std::optional<cplx> lambda;
};
/// (2 N~ - 1) / (2 N)
cplx lame_lambda(int N, int Nt);
cplx lame_lambda(const LameParams& p);
/// d = (lambda/2 + 1, lambda/2, lambda/2, lambda/2), i.e. g~ = (-1, 0, 0, 0).
std::array<cplx, 4> lame_d(cplx lambda);
TransformKernel lame_kernel(const LameParams& p, const Lattice& lat);
ThetaProduct lame_prefactor(const LameParams& p);
HamiltonianSpec lame_hamiltonian(const LameParams& p);

/// Figure-eight around x_index and 2 base - x_index with base = omega_1.
FigureEightContour default_figure_eight(const std::vector<cplx>& x, std::size_t index, double loop_radius,
                                        const Lattice& lat);

struct FigureEightOptions {
    QuadratureOptions quad{};
    double closure_tol = 1e-9;
    double degenerate_tol = 1e-12;
    /// Minimal distance between the contour and every zero or pole of the integrand.
    double clearance = 0.0; ///< <= 0 selects half the loop radius
};

/// Integral of the kernel on the figure-eight. Throws InvalidContour when the
/// contour passes too close to a singular point or a loop encloses more than
/// its center, MonodromyFailure when the continued integrand does not return
/// to its starting branch, DegenerateEigenfunction when |J| < degenerate_tol * l1.
TransformResult figure_eight_integral(const TransformKernel& k, const std::vector<cplx>& X,
                                      const FigureEightContour& c, const Lattice& lat,
                                      const FigureEightOptions& opts = {});

struct LameResidual {
    Scaled residual;
    cplx psi{};
    cplx energy{};
    cplx A{};
    TransformResult integral;
};
/// {A d_beta + H^(+) - E} psi / psi with E = -wp(t), on the figure-eight.
/// X = (x, x~).
LameResidual residual_example2(const LameParams& p, const std::vector<cplx>& X, const FigureEightContour& c,
                               const Lattice& lat, const FigureEightOptions& opts = {});

/// Zeros and poles of theta factors in the kernel, as y-points, within one
/// period cell plus neighbours around `near`.
std::vector<cplx> kernel_singular_points(const TransformKernel& k, const std::vector<cplx>& X, const Lattice& lat,
                                         cplx near);

/// 0.4 times the distance from either loop center to the base point or to
/// the nearest other singular point of the kernel.
double auto_loop_radius(const TransformKernel& k, const std::vector<cplx>& X, cplx a, cplx b, cplx base,
                        const Lattice& lat);

// ---------------------------------------------------------------------------
// sweeps

/// Relative residual of the plane-wave eigen-relation over random real configurations.
ResidualReport example1_report(const PlaneWaveParams& p, const Lattice& lat, std::size_t n_points,
                               std::uint64_t seed, double tol, CReading reading = CReading::with_eta,
                               const PlaneWaveOptions& opts = {});

/// Relative residual of the Lame eigen-relation over random real configurations,
/// with t drawn per configuration unless fixed_t is set. The worst point is
/// reported as (x, x~, t). Configurations whose default figure-eight is not
/// admissible or degenerate are redrawn; more than 100 n_points draws throw
/// SamplingExhausted.
ResidualReport example2_report(const LameParams& p, bool fixed_t, const Lattice& lat, std::size_t n_points,
                               std::uint64_t seed, double tol, const FigureEightOptions& opts = {});

} // namespace inoz
