#include "inoz/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "inoz/errors.hpp"
#include "inoz/parallel.hpp"

namespace inoz {

GaussRule gauss_legendre(int order)
{
    if (order < 1) throw PreconditionViolation("Gauss-Legendre order must be positive");
    const auto n = static_cast<std::size_t>(order);
    GaussRule rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    for (std::size_t i = 0; i < (n + 1) / 2; ++i) {
        // Chebyshev-type initial guess, then Newton on P_n
        double x = std::cos(pi * (static_cast<double>(i) + 0.75) / (static_cast<double>(n) + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= order; ++k) {
                const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = pk;
            }
            if (order == 1) p0 = 1.0;
            dp = order * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16) break;
        }
        if (order == 1) {
            x = 0.0;
            dp = 1.0;
        }
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        rule.nodes[i] = -x;
        rule.nodes[n - 1 - i] = x;
        rule.weights[i] = w;
        rule.weights[n - 1 - i] = w;
    }
    if (order == 1) rule.weights[0] = 2.0;
    return rule;
}

PathPiece PathPiece::segment(cplx a, cplx b)
{
    PathPiece p;
    p.kind = Kind::segment;
    p.start = a;
    p.end = b;
    return p;
}

PathPiece PathPiece::arc(cplx center, double radius, double angle0, double sweep)
{
    if (!(radius > 0.0)) throw InvalidContour("arc radius must be positive");
    PathPiece p;
    p.kind = Kind::arc;
    p.center = center;
    p.radius = radius;
    p.angle0 = angle0;
    p.sweep = sweep;
    return p;
}

cplx PathPiece::at(double s) const
{
    if (kind == Kind::segment) return start + s * (end - start);
    return center + std::polar(radius, angle0 + s * sweep);
}

cplx PathPiece::derivative(double s) const
{
    if (kind == Kind::segment) return end - start;
    return I * sweep * std::polar(radius, angle0 + s * sweep);
}

std::vector<PathNode> discretize(const Path& path, int panels, int order)
{
    if (panels < 1) throw PreconditionViolation("at least one panel per piece is required");
    const GaussRule rule = gauss_legendre(order);
    std::vector<PathNode> out;
    out.reserve(path.size() * static_cast<std::size_t>(panels * order));
    const double h = 1.0 / panels;
    for (const auto& piece : path)
        for (int p = 0; p < panels; ++p) {
            const double s0 = p * h;
            for (std::size_t k = 0; k < rule.nodes.size(); ++k) {
                const double s = s0 + 0.5 * h * (rule.nodes[k] + 1.0);
                out.push_back({piece.at(s), 0.5 * h * rule.weights[k] * piece.derivative(s)});
            }
        }
    return out;
}

void check_connected(const Path& path, double tol)
{
    if (path.empty()) throw InvalidContour("empty path");
    for (std::size_t i = 1; i < path.size(); ++i) {
        const cplx a = path[i - 1].last(), b = path[i].first();
        if (std::abs(a - b) > tol * std::max(1.0, std::abs(a))) throw InvalidContour("path pieces do not join");
    }
}

double path_distance(const Path& path, cplx point)
{
    double best = std::numeric_limits<double>::infinity();
    for (const auto& piece : path) {
        if (piece.kind == PathPiece::Kind::segment) {
            const cplx d = piece.end - piece.start;
            const double len2 = std::norm(d);
            double s = len2 > 0.0 ? ((point - piece.start) * std::conj(d)).real() / len2 : 0.0;
            s = std::clamp(s, 0.0, 1.0);
            best = std::min(best, std::abs(point - piece.at(s)));
        } else {
            constexpr int samples = 512;
            for (int i = 0; i <= samples; ++i)
                best = std::min(best, std::abs(point - piece.at(static_cast<double>(i) / samples)));
        }
    }
    return best;
}

Path figure_eight_path(cplx a, cplx b, double radius, cplx base)
{
    if (!(radius > 0.0)) throw InvalidContour("loop radius must be positive");
    if (std::abs(base - a) <= radius || std::abs(base - b) <= radius)
        throw InvalidContour("base point must lie outside both loops");
    if (std::abs(a - b) <= 2.0 * radius) throw InvalidContour("loops must not overlap");
    Path path;
    auto loop = [&](cplx c, double orientation) {
        const double angle = std::arg(base - c);
        const cplx touch = c + std::polar(radius, angle);
        path.push_back(PathPiece::segment(base, touch));
        path.push_back(PathPiece::arc(c, radius, angle, orientation * 2.0 * pi));
        path.push_back(PathPiece::segment(touch, base));
    };
    loop(a, 1.0);
    loop(b, -1.0);
    return path;
}

Path line_path(double eps, double R)
{
    if (!(eps > 0.0)) throw InvalidContour("line offset must be positive");
    return {PathPiece::segment(I * eps, pi * R + I * eps)};
}

bool is_integer_exponent(cplx p) { return p.imag() == 0.0 && p.real() == std::round(p.real()); }

KernelSamples sample_kernel(const TransformKernel& k, const std::vector<cplx>& X, const std::vector<cplx>& ys,
                            const Lattice& lat, Exec exec)
{
    if (X.size() != k.n_vars) throw PreconditionViolation("point dimension must equal the kernel variable count");
    const std::size_t nf = k.factors.size(), n = ys.size(), nv = k.n_vars;
    std::vector<bool> tracked(nf);
    for (std::size_t f = 0; f < nf; ++f) tracked[f] = !is_integer_exponent(k.factors[f].exponent);

    KernelSamples out;
    out.value.resize(n);
    out.grad.assign(n, std::vector<cplx>(nv));
    out.hess.assign(n, std::vector<cplx>(nv));
    out.beta.resize(n);
    std::vector<cplx> fixed_log(n);                 // untracked part of log K
    std::vector<std::vector<double>> raw_arg(n);    // principal arg of tracked bases
    std::vector<std::vector<double>> log_mod(n);    // log |theta| of tracked bases

    for_each_index(n, exec, [&](std::size_t i) {
        const cplx y = ys[i];
        cplx lg = k.y_rate * y;
        std::vector<cplx> dgrad(nv);
        raw_arg[i].assign(nf, 0.0);
        log_mod[i].assign(nf, 0.0);
        for (std::size_t f = 0; f < nf; ++f) {
            const YFactor& fac = k.factors[f];
            cplx u = fac.y_coeff * y + fac.offset;
            if (fac.var >= 0) u += fac.var_coeff * X[static_cast<std::size_t>(fac.var)];
            const ThetaLogJet j = theta_log_jet(fac.nu, u, lat);
            if (tracked[f]) {
                raw_arg[i][f] = std::arg(j.value);
                log_mod[i][f] = std::log(std::abs(j.value));
            } else {
                lg += fac.exponent * std::log(j.value);
            }
            if (fac.var >= 0) {
                const auto J = static_cast<std::size_t>(fac.var);
                out.grad[i][J] += fac.exponent * fac.var_coeff * j.phi;
                dgrad[J] += fac.exponent * fac.var_coeff * fac.var_coeff * j.dphi;
            }
            out.beta[i] += fac.exponent * j.beta;
        }
        fixed_log[i] = lg;
        for (std::size_t J = 0; J < nv; ++J) out.hess[i][J] = dgrad[J] + out.grad[i][J] * out.grad[i][J];
    });

    // sequential continuation of the tracked arguments
    std::vector<double> arg(nf, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        cplx lg = fixed_log[i];
        for (std::size_t f = 0; f < nf; ++f) {
            if (!tracked[f]) continue;
            if (i == 0) {
                arg[f] = raw_arg[0][f];
            } else {
                double step = raw_arg[i][f] - raw_arg[i - 1][f];
                step -= 2.0 * pi * std::round(step / (2.0 * pi));
                if (std::abs(step) >= 0.5 * pi) {
                    std::ostringstream msg;
                    msg << "branch argument jumps by " << step << " between y = " << ys[i - 1] << " and " << ys[i];
                    throw BranchStepTooLarge(msg.str());
                }
                arg[f] += step;
            }
            lg += k.factors[f].exponent * cplx(log_mod[i][f], arg[f]);
        }
        out.value[i] = std::exp(lg);
    }
    return out;
}

namespace {

struct Level {
    TransformResult r;
    std::vector<double> l1; // per component: value, grad..., hess..., beta
};

Level integrate_level(const TransformKernel& k, const std::vector<cplx>& X, const Path& path, const Lattice& lat,
                      int panels, const QuadratureOptions& opts)
{
    const std::vector<PathNode> nodes = discretize(path, panels, opts.order);
    std::vector<cplx> ys;
    ys.reserve(nodes.size() + 2);
    ys.push_back(path.front().first());
    for (const auto& nd : nodes) ys.push_back(nd.y);
    ys.push_back(path.back().last());
    const KernelSamples s = sample_kernel(k, X, ys, lat, opts.exec);

    const std::size_t nv = k.n_vars;
    Level lv;
    lv.r.grad.assign(nv, cplx{});
    lv.r.hess.assign(nv, cplx{});
    lv.l1.assign(2 + 2 * nv, 0.0);
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        const std::size_t si = i + 1;
        const cplx wk = nodes[i].w * s.value[si];
        const double aw = std::abs(wk);
        lv.r.value += wk;
        lv.l1[0] += aw;
        for (std::size_t J = 0; J < nv; ++J) {
            lv.r.grad[J] += wk * s.grad[si][J];
            lv.r.hess[J] += wk * s.hess[si][J];
            lv.l1[1 + J] += aw * std::abs(s.grad[si][J]);
            lv.l1[1 + nv + J] += aw * std::abs(s.hess[si][J]);
        }
        lv.r.dbeta += wk * s.beta[si];
        lv.l1[1 + 2 * nv] += aw * std::abs(s.beta[si]);
    }
    lv.r.l1 = lv.l1[0];
    const cplx k0 = s.value.front(), k1 = s.value.back();
    lv.r.closure = std::abs(k1 - k0) / std::max(std::abs(k0), 1e-300);
    lv.r.n_nodes = nodes.size();
    return lv;
}

double level_change(const Level& a, const Level& b)
{
    const std::size_t nv = a.r.grad.size();
    auto rel = [](cplx x, cplx y, double scale) { return std::abs(x - y) / std::max(scale, 1e-300); };
    double worst = rel(a.r.value, b.r.value, b.l1[0]);
    for (std::size_t J = 0; J < nv; ++J) {
        worst = std::max(worst, rel(a.r.grad[J], b.r.grad[J], b.l1[1 + J]));
        worst = std::max(worst, rel(a.r.hess[J], b.r.hess[J], b.l1[1 + nv + J]));
    }
    return std::max(worst, rel(a.r.dbeta, b.r.dbeta, b.l1[1 + 2 * nv]));
}

} // namespace

TransformResult contour_transform(const TransformKernel& k, const std::vector<cplx>& X, const Path& path,
                                  const Lattice& lat, const QuadratureOptions& opts)
{
    check_connected(path);
    if (opts.panels < 1 || opts.order < 2 || opts.refinement_limit < 1)
        throw PreconditionViolation("invalid quadrature options");
    int panels = opts.panels;
    Level prev = integrate_level(k, X, path, lat, panels, opts);
    for (int level = 0; level < opts.refinement_limit; ++level) {
        panels *= 2;
        Level next = integrate_level(k, X, path, lat, panels, opts);
        const double change = level_change(prev, next);
        next.r.error = change;
        if (change <= opts.tol) return next.r;
        prev = std::move(next);
    }
    std::ostringstream msg;
    msg << "contour quadrature did not reach relative change " << opts.tol << " after " << opts.refinement_limit
        << " doublings (last change " << prev.r.error << ")";
    throw QuadratureNonConvergence(msg.str());
}

} // namespace inoz
