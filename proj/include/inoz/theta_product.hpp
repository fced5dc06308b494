#pragma once

#include <array>
#include <vector>

#include "inoz/coupling.hpp"
#include "inoz/lattice.hpp"

namespace inoz {

/// theta_nu(a . X + b)^p
struct ThetaFactor {
    int nu = 1;
    std::vector<cplx> coeffs; ///< a, one entry per variable
    cplx offset{};            ///< b
    cplx exponent{};          ///< p
};

/// prod_f theta_{nu_f}(a_f . X + b_f)^{p_f} * exp(sum_J kappa_J X_J)
struct ThetaProduct {
    std::size_t n_vars = 0;
    std::vector<ThetaFactor> factors;
    std::vector<cplx> linear_exp; ///< kappa, empty means all zero

    /// Appends a factor; zero exponents are dropped.
    void add(int nu, std::vector<cplx> coeffs, cplx offset, cplx exponent);
    /// theta_nu(X_J + offset)^p
    void add_single(int nu, std::size_t J, cplx exponent, cplx offset = {});
    /// theta_1(X_J - X_K)^p theta_1(X_J + X_K)^p
    void add_pair(std::size_t J, std::size_t K, cplx exponent);
    /// Multiplies by another product on the same variables.
    void append(const ThetaProduct& other);
};

/// Logarithmic derivative data of a product at one point.
struct ProductJet {
    std::vector<cplx> grad;  ///< V_J = d_J Psi / Psi
    std::vector<cplx> dgrad; ///< d_J V_J
    cplx beta{};             ///< (d Psi / d beta) / Psi at fixed X and omega1
    cplx log_value{};        ///< sum of principal logs times exponents

    cplx hess_diag(std::size_t J) const { return dgrad[J] + grad[J] * grad[J]; }
};

/// One pass over all factors. Throws NearSingularity near a zero of any factor.
ProductJet log_jet(const ThetaProduct& tp, const std::vector<cplx>& X, const Lattice& lat);

cplx grad_log(const ThetaProduct& tp, const std::vector<cplx>& X, std::size_t J, const Lattice& lat);
/// (d_J^2 Psi) / Psi
cplx hess_log_diag(const ThetaProduct& tp, const std::vector<cplx>& X, std::size_t J, const Lattice& lat);
cplx beta_log(const ThetaProduct& tp, const std::vector<cplx>& X, const Lattice& lat);
/// Principal-branch log of the product; only differences along short
/// continuous paths are meaningful.
cplx log_value(const ThetaProduct& tp, const std::vector<cplx>& X, const Lattice& lat);

/// Phi_0 of the source identity.
ThetaProduct build_phi0(const CouplingData& c);

/// Named wavefunctions, assembled directly from their product formulas.
enum class NamedKind {
    psi_n,        ///< Psi_N(x; g, lambda)
    psi_nm,       ///< Psi_{N,M}(x, y), second family with lambda - g
    psi_tilde_nm, ///< Psi~_{N,M}(x, y), second family with (2g + 1 - lambda)/(2 lambda) and 1/lambda
    psi_plus,     ///< Psi^(+)_{N,N~}(x, x~) with d = g - lambda/2
    psi_minus,    ///< Psi^(-)_{N,N~}(x, x~)
    psi_full      ///< Psi_{N,N~,M,M~}(x, x~, y, y~)
};

/// Counts use N, Nt (psi_plus, psi_minus, psi_full), M (psi_nm, psi_tilde_nm,
/// psi_full) and Mt (psi_full). Variables are ordered (x, x~, y, y~).
struct NamedParams {
    int N = 0, Nt = 0, M = 0, Mt = 0;
    std::array<cplx, 4> g{};
    cplx lambda{};
};

ThetaProduct build_named(NamedKind kind, const NamedParams& p);

/// Psi_N(x; g, lambda) placed on variables [first, first + N) of an n_vars system.
ThetaProduct build_psi_n(int N, const std::array<cplx, 4>& g, cplx lambda, std::size_t first, std::size_t n_vars);

/// The named wavefunction a corollary's identity is stated for.
ThetaProduct build_corollary_wavefunction(const CorollaryParams& p);

/// Factors merged by identical argument, exponents with |p| <= zero_tol
/// dropped, sorted. Two products describe the same function iff their
/// canonical forms match.
ThetaProduct canonical(const ThetaProduct& tp, double zero_tol = 0.0);
/// Structural equality of canonical forms, exponents compared to rel_tol.
bool same_structure(const ThetaProduct& a, const ThetaProduct& b, double rel_tol = 1e-13);

} // namespace inoz
