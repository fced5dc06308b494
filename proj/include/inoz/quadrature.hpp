#pragma once

#include <vector>

#include "inoz/lattice.hpp"

namespace inoz {

/// Gauss-Legendre rule on [-1, 1], nodes ascending.
struct GaussRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};
GaussRule gauss_legendre(int order);

/// A straight segment or a circular arc in the y-plane.
struct PathPiece {
    enum class Kind { segment, arc } kind = Kind::segment;
    cplx start{}, end{};        ///< segment
    cplx center{};              ///< arc: y = center + radius e^{i(angle0 + s sweep)}, s in [0, 1]
    double radius = 0.0, angle0 = 0.0, sweep = 0.0;

    static PathPiece segment(cplx a, cplx b);
    static PathPiece arc(cplx center, double radius, double angle0, double sweep);

    cplx at(double s) const;
    cplx derivative(double s) const; ///< dy/ds
    cplx first() const { return at(0.0); }
    cplx last() const { return at(1.0); }
};

using Path = std::vector<PathPiece>;

/// y_k and the quadrature weight of dy at y_k, in path order.
struct PathNode {
    cplx y;
    cplx w;
};
/// Each piece split into `panels` equal panels in its parameter, `order` points per panel.
std::vector<PathNode> discretize(const Path& path, int panels, int order);

/// Throws InvalidContour if consecutive pieces do not join.
void check_connected(const Path& path, double tol = 1e-12);

/// Smallest distance from the path to a point, sampled densely along each piece.
double path_distance(const Path& path, cplx point);

/// Figure-eight: segment base -> circle around a, one counterclockwise turn,
/// back to base; segment base -> circle around b, one clockwise turn, back to base.
Path figure_eight_path(cplx a, cplx b, double radius, cplx base);
/// Straight line from i eps to pi R + i eps.
Path line_path(double eps, double R);

/// theta_nu(c X_var + s y + b)^p, var < 0 meaning the factor does not depend on X.
struct YFactor {
    int nu = 1;
    int var = -1;
    cplx var_coeff{};
    cplx y_coeff{1.0};
    cplx offset{};
    cplx exponent{};
};

/// K(X, y) = exp(y_rate y) prod_f theta(...)^p
struct TransformKernel {
    std::size_t n_vars = 0;
    std::vector<YFactor> factors;
    cplx y_rate{};
};

/// True when p is a real integer; such factors need no branch tracking.
bool is_integer_exponent(cplx p);

/// Integrand values along ordered points with every noninteger-power factor
/// continued from the principal branch at the first point. Jets may be
/// evaluated in parallel; the continuation is one sequential pass.
/// Throws BranchStepTooLarge when a tracked argument moves by >= pi/2 between
/// neighbouring points.
struct KernelSamples {
    std::vector<cplx> value;                 ///< K
    std::vector<std::vector<cplx>> grad;     ///< d_J log K
    std::vector<std::vector<cplx>> hess;     ///< (d_J^2 K) / K
    std::vector<cplx> beta;                  ///< (d_beta K) / K
};
KernelSamples sample_kernel(const TransformKernel& k, const std::vector<cplx>& X, const std::vector<cplx>& ys,
                            const Lattice& lat, Exec exec);

struct QuadratureOptions {
    int order = 16;            ///< points per panel
    int panels = 4;            ///< initial panels per piece
    int refinement_limit = 8;  ///< maximal number of panel doublings
    double tol = 1e-12;        ///< relative to the l1 norm of each integrand
    Exec exec = Exec::parallel;
};

/// Integral of K and of its X- and beta-derivatives along a path, at fixed path.
struct TransformResult {
    cplx value{};
    std::vector<cplx> grad;  ///< integral of d_J K
    std::vector<cplx> hess;  ///< integral of d_J^2 K
    cplx dbeta{};            ///< integral of d_beta K
    double l1 = 0.0;         ///< integral of |K| |dy|
    double closure = 0.0;    ///< |K(end) - K(start)| / |K(start)| along the continued branch
    double error = 0.0;      ///< last change between refinement levels, relative to l1
    std::size_t n_nodes = 0;
};

/// Panel doubling until every component changes by less than tol times its l1 norm.
/// Throws QuadratureNonConvergence when refinement_limit is reached.
TransformResult contour_transform(const TransformKernel& k, const std::vector<cplx>& X, const Path& path,
                                  const Lattice& lat, const QuadratureOptions& opts = {});

} // namespace inoz
