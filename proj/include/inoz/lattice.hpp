#pragma once

#include <array>
#include <string>

#include "inoz/types.hpp"

namespace inoz {

/// Truncation controls for the theta q-series.
struct SeriesOptions {
    double tol = 1e-15; ///< relative size of the last retained term
    int nmax = 64;      ///< hard cap on the number of terms
};

/// e_1, e_2, e_3 and eta_1 of a period lattice.
struct LatticeConstants {
    std::array<cplx, 3> e{}; ///< e_nu = wp(omega_nu), nu = 1, 2, 3
    cplx eta1{};

    /// e_{nu,mu} for 0 <= mu < nu <= 3, extended symmetrically:
    /// e_{nu,0} = e_nu, e_{2,1} = e_3, e_{3,1} = e_2, e_{3,2} = e_1.
    cplx e_pair(int nu, int mu) const;
};

/// Period lattice with half-periods omega_1 (real, positive) and omega_3,
/// plus everything derived from it. Immutable once built; the lattice
/// constants are computed in the constructor.
class Lattice {
public:
    Lattice(double omega1, cplx omega3, SeriesOptions opts = {});

    static Lattice from_tau(double omega1, cplx tau, SeriesOptions opts = {});
    /// q = exp(i pi tau), principal branch for tau.
    static Lattice from_nome(double omega1, cplx q, SeriesOptions opts = {});
    /// beta = 2 omega1 omega3 / (pi i), at fixed omega1.
    static Lattice from_beta(double omega1, cplx beta, SeriesOptions opts = {});

    double omega1() const { return omega1_; }
    cplx omega3() const { return omega3_; }
    cplx tau() const { return tau_; }
    cplx q() const { return q_; }
    double R() const { return R_; }
    cplx beta() const { return beta_; }
    /// omega_0 = 0, omega_1, omega_2 = -omega_1 - omega_3, omega_3.
    const std::array<cplx, 4>& half_periods() const { return half_periods_; }
    cplx half_period(int nu) const { return half_periods_.at(static_cast<std::size_t>(nu)); }

    const SeriesOptions& series() const { return opts_; }
    const LatticeConstants& constants() const { return constants_; }
    cplx eta1_over_omega1() const { return constants_.eta1 / omega1_; }

    /// theta_1'(0); sets the scale for the near-zero guard.
    cplx theta1_prime0() const { return theta1_prime0_; }
    /// Rejection radius around singular loci: 0.05 min(|2 omega_1|, |2 omega_3|).
    double guard_radius() const;
    /// |theta| below this counts as a zero: 1e-8 |theta_1'(0)|.
    double singular_threshold() const { return 1e-8 * std::abs(theta1_prime0_); }

    /// Same omega1 and series options, different beta.
    Lattice with_beta(cplx beta) const { return from_beta(omega1_, beta, opts_); }

    std::string summary() const;

private:
    double omega1_;
    cplx omega3_;
    cplx tau_;
    cplx q_;
    double R_;
    cplx beta_;
    std::array<cplx, 4> half_periods_;
    SeriesOptions opts_;
    cplx theta1_prime0_;
    LatticeConstants constants_;
};

/// theta_nu, its first three x-derivatives and its beta-derivative at one point.
struct ThetaJet {
    cplx value, d1, d2, d3, dbeta;
};

/// Evaluates the full jet of theta_nu (nu = 1..4) from the q-series.
/// The beta-derivative is the term-by-term tau-derivative times
/// pi i / (2 omega_1^2); it does not use the heat equation.
/// Throws NonConvergence when nmax terms do not reach the tolerance.
ThetaJet theta_jet(int nu, cplx x, const Lattice& lat);

cplx theta(int nu, cplx x, const Lattice& lat);
/// k-th x-derivative, k = 0..3.
cplx theta_dx(int nu, int k, cplx x, const Lattice& lat);
cplx theta_dbeta(int nu, cplx x, const Lattice& lat);

/// phi_nu = theta_nu' / theta_nu. Throws NearSingularity near a zero of theta_nu.
cplx phi(int nu, cplx x, const Lattice& lat);
/// phi_nu' = theta_nu'' / theta_nu - phi_nu^2.
cplx phi_dx(int nu, cplx x, const Lattice& lat);

/// Weierstrass wp(x) = -phi_1'(x) - eta_1/omega_1.
cplx wp(cplx x, const Lattice& lat);
/// Weierstrass zeta(x) = phi_1(x) + eta_1 x / omega_1.
cplx zeta_w(cplx x, const Lattice& lat);

const LatticeConstants& lattice_constants(const Lattice& lat);

/// Logarithmic data of a theta factor: phi, phi' and theta_dot / theta.
struct ThetaLogJet {
    cplx value;  ///< theta itself
    cplx phi;    ///< theta' / theta
    cplx dphi;   ///< (theta' / theta)'
    cplx beta;   ///< theta_dot / theta
};

/// Same as theta_jet but divided through; throws NearSingularity near zeros.
ThetaLogJet theta_log_jet(int nu, cplx x, const Lattice& lat);

} // namespace inoz
