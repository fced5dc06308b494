#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "inoz/coupling.hpp"
#include "inoz/lattice.hpp"
#include "inoz/report.hpp"
#include "inoz/theta_product.hpp"

namespace inoz {

/// c_J (-d_J^2) + sum_nu v_{J,nu} wp(X_J + omega_nu)
///   + sum_{J<K} w_{JK} {wp(X_J - X_K) + wp(X_J + X_K)}
struct PairTerm {
    std::size_t J = 0, K = 0;
    cplx coef{};
};

struct HamiltonianSpec {
    std::size_t n_vars = 0;
    std::vector<cplx> kinetic;                 ///< c_J
    std::vector<std::array<cplx, 4>> onebody;  ///< v_{J,nu}
    std::vector<PairTerm> pairs;               ///< J < K
    std::string label;

    static HamiltonianSpec empty(std::size_t n_vars, std::string label = {});
};

/// Places spec on variables [first, first + spec.n_vars) of an n_vars system.
HamiltonianSpec embedded(const HamiltonianSpec& spec, std::size_t first, std::size_t n_vars);
HamiltonianSpec scaled(const HamiltonianSpec& spec, cplx factor);
/// Sum of two operators on the same variables.
HamiltonianSpec sum(const HamiltonianSpec& a, const HamiltonianSpec& b);
/// a on the first variables, b on the following ones.
HamiltonianSpec direct_sum(const HamiltonianSpec& a, const HamiltonianSpec& b);

/// The operator of the source identity, kinetic sum over all variables.
HamiltonianSpec build_generalized(const CouplingData& c);
/// H_N(x; g, lambda) of the Inozemtsev model.
HamiltonianSpec build_inozemtsev(int N, const std::array<cplx, 4>& g, cplx lambda);
/// H^(+-)_{N,N~}(x, x~) of the deformed model, sign = +1 or -1.
HamiltonianSpec build_deformed(int sign, int N, int Nt, const std::array<cplx, 4>& d, cplx lambda);
/// The left-hand operator of a corollary, variables ordered (x, x~, y, y~).
HamiltonianSpec build_corollary_hamiltonian(const CorollaryParams& p);

/// A value with the largest additive term that went into it.
struct Scaled {
    cplx value{};
    double scale = 0.0;
    void add(cplx v);
    double relative() const { return scale > 0.0 ? std::abs(value) / scale : std::abs(value); }
};

/// (H Psi) / Psi from exact log-derivatives; no finite differencing.
Scaled apply(const HamiltonianSpec& spec, const ThetaProduct& tp, const std::vector<cplx>& X, const Lattice& lat);
/// Same, reusing an already evaluated jet of Psi.
Scaled apply(const HamiltonianSpec& spec, const ProductJet& jet, const std::vector<cplx>& X, const Lattice& lat);
/// Potential part only.
Scaled potential(const HamiltonianSpec& spec, const std::vector<cplx>& X, const Lattice& lat);

/// A is the beta-derivative coefficient, C the constant (E_0 for the source identity).
struct IdentityConstants {
    cplx A{};
    cplx C{};
    cplx c0{};
    cplx g_abs{};
};

/// A = 4 lambda |m| + 2 |d| and the simplified E_0.
IdentityConstants constants_source(const CouplingData& c, const Lattice& lat);
/// E_0 assembled term by term before simplification; a transcription check on the simplified form.
cplx energy_unsimplified(const CouplingData& c, const Lattice& lat);
/// A and C of a corollary from its own closed formulas.
IdentityConstants constants_corollary(const CorollaryParams& p, const Lattice& lat);

/// {(4 lambda |m| + 2|d|) d/d beta + H - E_0} Phi_0 / Phi_0 at X.
Scaled residual_source(const CouplingData& c, const std::vector<cplx>& X, const Lattice& lat);
/// {A d/d beta + H_cor - C} Psi / Psi at X, assembled from the corollary's own
/// wavefunction, operators and constants.
Scaled residual_corollary_point(const CorollaryParams& p, const std::vector<cplx>& X, const Lattice& lat);

/// Relative residual over random admissible points.
ResidualReport residual_source_report(const CouplingData& c, const Lattice& lat, std::size_t n_points,
                                      std::uint64_t seed, double tol, Exec exec = Exec::parallel);
ResidualReport residual_corollary(const CorollaryParams& p, const Lattice& lat, std::size_t n_points,
                                  std::uint64_t seed, double tol, Exec exec = Exec::parallel);
/// Largest |r_cor - r_source| / scale over the sample, r_source under the mass table.
ResidualReport corollary_coherence(const CorollaryParams& p, const Lattice& lat, std::size_t n_points,
                                   std::uint64_t seed, double tol, Exec exec = Exec::parallel);

/// (N, N~, M, M~, g, lambda) -> (M, M~, N, N~, lambda - g, lambda)
CorollaryParams sym1(const CorollaryParams& p);
/// (N, N~, M, M~, g, lambda) -> (N~, N, M~, M, (lambda + 1 - 2g)/(2 lambda), 1/lambda)
CorollaryParams sym2(const CorollaryParams& p);

/// Relative deviations from A -> -A, C -> -C (sym1), A -> -A/lambda,
/// C -> -C/lambda (sym2), and from sym1^2 = sym2^2 = id.
struct SymmetryDeviations {
    double a1 = 0, c1 = 0, a2 = 0, c2 = 0, inv1 = 0, inv2 = 0;
    double max() const;
};
SymmetryDeviations symmetry_deviations(const CorollaryParams& p, const Lattice& lat);
ResidualReport check_symmetries(const CorollaryParams& p, const Lattice& lat, double tol);

/// The three routes to W = sum_J (1/m_J)(d_J V_J + V_J^2) for Phi_0.
Scaled w_log_derivative(const CouplingData& c, const std::vector<cplx>& X, const Lattice& lat);
/// One-, two- and three-body sums written out in phi_nu.
Scaled w_raw(const CouplingData& c, const std::vector<cplx>& X, const Lattice& lat);
/// The reduced one-, two- and three-body sums in wp, theta_dot/theta and lattice constants.
Scaled w_reduced(const CouplingData& c, const std::vector<cplx>& X, const Lattice& lat);

/// Largest pairwise relative disagreement among the three routes.
ResidualReport route_equivalence(const CouplingData& c, const Lattice& lat, std::size_t n_points,
                                 std::uint64_t seed, double tol, Exec exec = Exec::parallel);

std::string describe(const CouplingData& c);
std::string describe(const CorollaryParams& p);

} // namespace inoz
