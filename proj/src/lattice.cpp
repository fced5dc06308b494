#include "inoz/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "inoz/errors.hpp"

namespace inoz {

namespace {

constexpr double max_nome = 0.7;

ThetaJet sum_series(int nu, cplx x, const Lattice& lat)
{
    if (nu < 1 || nu > 4) throw PreconditionViolation("theta index must be in 1..4");

    const SeriesOptions& opts = lat.series();
    const double R = lat.R();
    const cplx u = x / R;
    const double im_u = std::abs(u.imag());
    const cplx tau = lat.tau();
    const double im_tau = tau.imag();
    const double w1 = lat.omega1();
    const cplx beta_factor = I * pi / (2.0 * w1 * w1);

    const bool half_integer = (nu == 1 || nu == 2);
    ThetaJet jet{half_integer ? cplx{} : cplx{1.0}, {}, {}, {}, {}};
    cplx tau_sum{};

    // Running sums of term bounds per component (value, d1, d2, d3, dbeta).
    std::array<double, 5> bound_sum{half_integer ? 0.0 : 1.0, 0.0, 0.0, 0.0, 0.0};
    double previous_bound = std::numeric_limits<double>::infinity();

    const int first = half_integer ? 0 : 1;
    for (int n = first; n < first + opts.nmax; ++n) {
        const double a = half_integer ? (n + 0.5) * (n + 0.5) : double(n) * n;
        const double k = half_integer ? 2.0 * n + 1.0 : 2.0 * n;
        const double sign = (nu == 1 || nu == 4) && (n % 2 != 0) ? -1.0 : 1.0;
        const cplx coeff = 2.0 * sign * std::exp(I * pi * tau * a);
        const double kr = k / R;

        if (nu == 1) {
            const cplx s = std::sin(k * u), c = std::cos(k * u);
            jet.value += coeff * s;
            jet.d1 += coeff * kr * c;
            jet.d2 -= coeff * kr * kr * s;
            jet.d3 -= coeff * kr * kr * kr * c;
            tau_sum += coeff * (I * pi * a) * s;
        } else {
            const cplx s = std::sin(k * u), c = std::cos(k * u);
            jet.value += coeff * c;
            jet.d1 -= coeff * kr * s;
            jet.d2 -= coeff * kr * kr * c;
            jet.d3 += coeff * kr * kr * kr * s;
            tau_sum += coeff * (I * pi * a) * c;
        }

        const double bound = 2.0 * std::exp(-pi * im_tau * a + k * im_u);
        const std::array<double, 5> weights{1.0, kr, kr * kr, kr * kr * kr,
                                            pi * pi * a / (2.0 * w1 * w1)};
        bool converged = bound < previous_bound;
        for (std::size_t j = 0; j < 5; ++j) {
            bound_sum[j] += bound * weights[j];
            converged = converged && bound * weights[j] <= opts.tol * bound_sum[j];
        }
        previous_bound = bound;
        if (converged) {
            jet.dbeta = beta_factor * tau_sum;
            return jet;
        }
    }
    std::ostringstream msg;
    msg << "theta_" << nu << " series did not converge in " << opts.nmax << " terms at x = " << x;
    throw NonConvergence(msg.str());
}

} // namespace

cplx LatticeConstants::e_pair(int nu, int mu) const
{
    if (nu < mu) std::swap(nu, mu);
    if (mu < 0 || nu > 3 || nu == mu) throw PreconditionViolation("e_pair needs 0 <= mu < nu <= 3");
    if (mu == 0) return e[static_cast<std::size_t>(nu - 1)];
    // (2,1) -> e_3, (3,1) -> e_2, (3,2) -> e_1
    return e[static_cast<std::size_t>(6 - nu - mu - 1)];
}

Lattice::Lattice(double omega1, cplx omega3, SeriesOptions opts)
    : omega1_(omega1), omega3_(omega3), opts_(opts)
{
    if (!(omega1 > 0.0) || !std::isfinite(omega1)) throw InvalidLattice("omega1 must be real and positive");
    tau_ = omega3 / omega1;
    if (!(tau_.imag() > 0.0)) throw InvalidLattice("Im(omega3/omega1) must be positive");
    q_ = std::exp(I * pi * tau_);
    if (std::abs(q_) > max_nome + 1e-12) {
        std::ostringstream msg;
        msg << "|q| = " << std::abs(q_) << " exceeds the supported bound " << max_nome;
        throw InvalidLattice(msg.str());
    }
    if (!(opts.tol > 0.0) || opts.nmax < 2) throw InvalidLattice("series options must have tol > 0 and nmax >= 2");
    R_ = 2.0 * omega1 / pi;
    beta_ = 2.0 * omega1 * omega3 / (pi * I);
    half_periods_ = {cplx{}, cplx{omega1}, -omega1 - omega3, omega3};

    const ThetaJet at_zero = sum_series(1, cplx{}, *this);
    theta1_prime0_ = at_zero.d1;
    constants_.eta1 = -omega1 * at_zero.d3 / (3.0 * at_zero.d1);
    for (int nu = 1; nu <= 3; ++nu)
        constants_.e[static_cast<std::size_t>(nu - 1)] = wp(half_periods_[static_cast<std::size_t>(nu)], *this);
}

Lattice Lattice::from_tau(double omega1, cplx tau, SeriesOptions opts)
{
    return Lattice(omega1, tau * omega1, opts);
}

Lattice Lattice::from_nome(double omega1, cplx q, SeriesOptions opts)
{
    if (q == cplx{} || std::abs(q) >= 1.0) throw InvalidLattice("nome must satisfy 0 < |q| < 1");
    return from_tau(omega1, std::log(q) / (I * pi), opts);
}

Lattice Lattice::from_beta(double omega1, cplx beta, SeriesOptions opts)
{
    return Lattice(omega1, pi * I * beta / (2.0 * omega1), opts);
}

double Lattice::guard_radius() const
{
    return 0.05 * std::min(2.0 * omega1_, 2.0 * std::abs(omega3_));
}

std::string Lattice::summary() const
{
    std::ostringstream s;
    s.precision(17);
    s << "omega1=" << omega1_ << " tau=" << tau_.real() << (tau_.imag() < 0 ? "" : "+") << tau_.imag() << "i";
    return s.str();
}

ThetaJet theta_jet(int nu, cplx x, const Lattice& lat) { return sum_series(nu, x, lat); }

cplx theta(int nu, cplx x, const Lattice& lat) { return sum_series(nu, x, lat).value; }

cplx theta_dx(int nu, int k, cplx x, const Lattice& lat)
{
    const ThetaJet j = sum_series(nu, x, lat);
    switch (k) {
    case 0: return j.value;
    case 1: return j.d1;
    case 2: return j.d2;
    case 3: return j.d3;
    default: throw PreconditionViolation("theta_dx supports derivative orders 0..3");
    }
}

cplx theta_dbeta(int nu, cplx x, const Lattice& lat) { return sum_series(nu, x, lat).dbeta; }

ThetaLogJet theta_log_jet(int nu, cplx x, const Lattice& lat)
{
    const ThetaJet j = sum_series(nu, x, lat);
    if (std::abs(j.value) < lat.singular_threshold()) {
        std::ostringstream msg;
        msg << "theta_" << nu << " vanishes at x = " << x;
        throw NearSingularity(msg.str());
    }
    const cplx p = j.d1 / j.value;
    return {j.value, p, j.d2 / j.value - p * p, j.dbeta / j.value};
}

cplx phi(int nu, cplx x, const Lattice& lat) { return theta_log_jet(nu, x, lat).phi; }

cplx phi_dx(int nu, cplx x, const Lattice& lat) { return theta_log_jet(nu, x, lat).dphi; }

cplx wp(cplx x, const Lattice& lat) { return -phi_dx(1, x, lat) - lat.eta1_over_omega1(); }

cplx zeta_w(cplx x, const Lattice& lat) { return phi(1, x, lat) + lat.eta1_over_omega1() * x; }

const LatticeConstants& lattice_constants(const Lattice& lat) { return lat.constants(); }

} // namespace inoz
