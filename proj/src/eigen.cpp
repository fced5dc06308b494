#include "inoz/eigen.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "inoz/errors.hpp"
#include "inoz/sampling.hpp"

namespace inoz {

namespace {

// zero of theta_nu nearest the origin
cplx theta_zero(int nu, const Lattice& lat)
{
    switch (nu) {
    case 1: return {};
    case 2: return lat.omega1();
    case 3: return lat.omega1() + lat.omega3();
    case 4: return lat.omega3();
    default: throw PreconditionViolation("theta index must be in 1..4");
    }
}

std::vector<cplx> to_cplx(const std::vector<double>& v) { return {v.begin(), v.end()}; }

std::vector<cplx> joined(const std::vector<double>& x, const std::vector<double>& xt)
{
    std::vector<cplx> X = to_cplx(x);
    X.insert(X.end(), xt.begin(), xt.end());
    return X;
}

void add_particle_factors(TransformKernel& k, int N, int Nt, cplx lambda)
{
    for (int j = 0; j < Nt; ++j)
        for (double s : {-1.0, 1.0}) k.factors.push_back({1, N + j, 1.0, s, {}, 1.0});
    for (int j = 0; j < N; ++j)
        for (double s : {-1.0, 1.0}) k.factors.push_back({1, j, 1.0, s, {}, -lambda});
}

// bracket of C times A/2 plus |m| c0
IdentityConstants deformed_constants(int N, int Nt, const std::array<cplx, 4>& gt, cplx lambda, const Lattice& lat,
                                     CReading reading)
{
    IdentityConstants k;
    k.g_abs = abs_sum(gt);
    k.A = 4.0 * lambda * double(N) - 4.0 * double(Nt) - 2.0 * k.g_abs;
    const cplx m_abs = double(N) - 1.0 - double(Nt) / lambda;
    const cplx m2_abs = double(N) + 1.0 + double(Nt) / (lambda * lambda);
    std::array<cplx, 4> gc;
    for (std::size_t nu = 0; nu < 4; ++nu) gc[nu] = gt[nu];
    k.c0 = c0(gc, lat.constants().e);
    cplx bracket = double(N + Nt + 1) - m_abs * ((m_abs + 2.0) * lambda - k.g_abs) - m2_abs * lambda;
    if (reading == CReading::with_eta) bracket *= lat.eta1_over_omega1();
    k.C = 0.5 * k.A * bracket + m_abs * k.c0;
    return k;
}

// psi = Psi J, with H acting on the product and the cross terms taken from the integral
Scaled transform_residual(const HamiltonianSpec& h, const ProductJet& jet, const std::vector<cplx>& X,
                          const TransformResult& T, cplx A, cplx shift, const Lattice& lat)
{
    const Scaled ap = apply(h, jet, X, lat);
    Scaled r;
    r.value = ap.value * T.value;
    r.scale = ap.scale * std::abs(T.value);
    for (std::size_t J = 0; J < h.n_vars; ++J) {
        const cplx c = h.kinetic[J];
        if (c == cplx{}) continue;
        r.add(-2.0 * c * jet.grad[J] * T.grad[J]);
        r.add(-c * T.hess[J]);
    }
    if (A != cplx{}) {
        r.add(A * jet.beta * T.value);
        r.add(A * T.dbeta);
    }
    r.add(-shift * T.value);
    return r;
}

double nearest(const std::vector<cplx>& pts, cplx y)
{
    double best = std::numeric_limits<double>::infinity();
    for (cplx p : pts) best = std::min(best, std::abs(p - y));
    return best;
}

} // namespace

std::vector<cplx> kernel_singular_points(const TransformKernel& k, const std::vector<cplx>& X, const Lattice& lat,
                                         cplx near)
{
    const cplx w1 = 2.0 * lat.omega1(), w3 = 2.0 * lat.omega3();
    std::vector<cplx> out;
    for (const auto& f : k.factors) {
        if (f.y_coeff == cplx{}) continue;
        cplx b = f.offset;
        if (f.var >= 0) b += f.var_coeff * X.at(static_cast<std::size_t>(f.var));
        const cplx y0 = (theta_zero(f.nu, lat) - b) / f.y_coeff;
        const cplx p1 = w1 / f.y_coeff, p3 = w3 / f.y_coeff;
        // translate y0 to the cell of `near`, then take neighbours
        const cplx d = near - y0;
        const double det = (std::conj(p1) * p3).imag();
        const double a1 = std::round(-(std::conj(p3) * d).imag() / det);
        const double a3 = std::round((std::conj(p1) * d).imag() / det);
        for (int m = -3; m <= 3; ++m)
            for (int n = -3; n <= 3; ++n) out.push_back(y0 + (a1 + m) * p1 + (a3 + n) * p3);
    }
    return out;
}

void validate(const PlaneWaveParams& p)
{
    if (p.N < 1 || p.Nt < 0) throw InvalidCoupling("plane-wave transform needs N >= 1 and N~ >= 0");
    for (int g : p.gt)
        if (g != 0 && g != 1) throw InvalidCoupling("g~ entries must be 0 or 1");
    if (p.lambda == cplx{}) throw InvalidCoupling("lambda must be nonzero");
}

std::array<cplx, 4> plane_wave_d(const PlaneWaveParams& p)
{
    std::array<cplx, 4> d;
    for (std::size_t nu = 0; nu < 4; ++nu) d[nu] = 0.5 * p.lambda - double(p.gt[nu]);
    return d;
}

double plane_wave_momentum(const PlaneWaveParams& p, const Lattice& lat)
{
    return (2.0 * p.n + p.gt[0] + p.gt[1]) / lat.R();
}

TransformKernel plane_wave_kernel(const PlaneWaveParams& p, const Lattice& lat)
{
    validate(p);
    TransformKernel k;
    k.n_vars = static_cast<std::size_t>(p.N + p.Nt);
    for (int nu = 0; nu < 4; ++nu)
        if (p.gt[static_cast<std::size_t>(nu)] != 0)
            k.factors.push_back({nu + 1, -1, {}, 1.0, {}, double(p.gt[static_cast<std::size_t>(nu)])});
    add_particle_factors(k, p.N, p.Nt, p.lambda);
    k.y_rate = -I * plane_wave_momentum(p, lat);
    return k;
}

ThetaProduct plane_wave_prefactor(const PlaneWaveParams& p)
{
    validate(p);
    const auto d = plane_wave_d(p);
    NamedParams np;
    np.N = p.N;
    np.Nt = p.Nt;
    np.lambda = p.lambda;
    for (std::size_t nu = 0; nu < 4; ++nu) np.g[nu] = d[nu] + 0.5 * p.lambda;
    return build_named(NamedKind::psi_plus, np);
}

HamiltonianSpec plane_wave_hamiltonian(const PlaneWaveParams& p)
{
    validate(p);
    return build_deformed(1, p.N, p.Nt, plane_wave_d(p), p.lambda);
}

IdentityConstants plane_wave_constants(const PlaneWaveParams& p, const Lattice& lat, CReading reading)
{
    validate(p);
    std::array<cplx, 4> gt;
    for (std::size_t nu = 0; nu < 4; ++nu) gt[nu] = double(p.gt[nu]);
    return deformed_constants(p.N, p.Nt, gt, p.lambda, lat, reading);
}

PlaneWaveValue tilde_f_n(const PlaneWaveParams& p, const std::vector<double>& x, const std::vector<double>& xt,
                         const Lattice& lat, const PlaneWaveOptions& opts)
{
    validate(p);
    if (x.size() != static_cast<std::size_t>(p.N) || xt.size() != static_cast<std::size_t>(p.Nt))
        throw PreconditionViolation("point sizes must match N and N~");
    const TransformKernel k = plane_wave_kernel(p, lat);
    const std::vector<cplx> X = joined(x, xt);
    const double R = lat.R();
    const double eps = opts.eps > 0.0 ? opts.eps : -0.5 * R * std::log(std::abs(lat.q()));

    // the transform does not depend on a horizontal shift of the line; shift only
    // when the default start point sits on a zero of the integrand
    auto line = [&](double e) {
        const cplx y0 = I * e;
        const std::vector<cplx> sing = kernel_singular_points(k, X, lat, y0);
        double shift = 0.0, best = nearest(sing, y0);
        for (int j = 1; j < 16 && best < lat.guard_radius(); ++j) {
            const double s = j * pi * R / 16.0;
            const double dist = nearest(sing, y0 + s);
            if (dist > best) {
                best = dist;
                shift = s;
            }
        }
        return Path{PathPiece::segment(y0 + shift, y0 + shift + pi * R)};
    };
    auto run = [&](double e) {
        TransformResult T = contour_transform(k, X, line(e), lat, opts.quad);
        if (T.closure > opts.closure_tol) {
            std::ostringstream msg;
            msg << "integrand is not pi R periodic on the line (defect " << T.closure
                << "); lambda N must be an integer";
            throw InvalidContour(msg.str());
        }
        return T;
    };

    PlaneWaveValue out;
    out.eps_used = eps;
    const TransformResult T1 = run(eps), T2 = run(0.5 * eps);
    out.eps_change = std::abs(T1.value - T2.value) / std::max(T1.l1, 1e-300);
    if (out.eps_change <= opts.eps_agreement) {
        out.integral = T1;
    } else {
        // linear extrapolation to eps -> 0
        out.extrapolated = true;
        out.integral = T2;
        out.integral.value = 2.0 * T2.value - T1.value;
        for (std::size_t J = 0; J < T1.grad.size(); ++J) {
            out.integral.grad[J] = 2.0 * T2.grad[J] - T1.grad[J];
            out.integral.hess[J] = 2.0 * T2.hess[J] - T1.hess[J];
        }
        out.integral.dbeta = 2.0 * T2.dbeta - T1.dbeta;
    }
    out.prefactor = std::exp(log_value(plane_wave_prefactor(p), X, lat));
    out.value = out.prefactor * out.integral.value;
    return out;
}

Scaled residual_example1(const PlaneWaveParams& p, const std::vector<double>& x, const std::vector<double>& xt,
                         const Lattice& lat, CReading reading, const PlaneWaveOptions& opts)
{
    const PlaneWaveValue v = tilde_f_n(p, x, xt, lat, opts);
    if (std::abs(v.integral.value) < 1e-12 * v.integral.l1) {
        std::ostringstream msg;
        msg << "line integral vanishes for n = " << p.n << ": |J| = " << std::abs(v.integral.value)
            << ", l1 = " << v.integral.l1;
        throw DegenerateEigenfunction(msg.str());
    }
    const std::vector<cplx> X = joined(x, xt);
    const ProductJet jet = log_jet(plane_wave_prefactor(p), X, lat);
    const IdentityConstants k = plane_wave_constants(p, lat, reading);
    const double mom = plane_wave_momentum(p, lat);
    return transform_residual(plane_wave_hamiltonian(p), jet, X, v.integral, k.A, mom * mom + k.C, lat);
}

cplx z_of_x(cplx x, const Lattice& lat) { return std::exp(-2.0 * I * x / lat.R()); }

GenCoeffs gen_coeffs(const std::vector<cplx>& z, const std::vector<cplx>& zt, const std::array<int, 4>& kappa,
                     cplx lambda, int n_min, int n_max, double r, const Lattice& lat, double tol)
{
    if (n_min > n_max) throw PreconditionViolation("empty coefficient range");
    const double qa = std::abs(lat.q());
    if (!(r > 1.0) || !(r < 1.0 / (qa * qa))) throw InvalidContour("circle radius must satisfy 1 < r < |q|^-2");
    const double R = lat.R();
    auto x_of = [&](cplx w) {
        if (std::abs(std::abs(w) - 1.0) > 1e-12) throw PreconditionViolation("z and z~ must lie on the unit circle");
        return (0.5 * I * R * std::log(w)).real();
    };
    std::vector<double> x, xt;
    for (cplx w : z) x.push_back(x_of(w));
    for (cplx w : zt) xt.push_back(x_of(w));

    // F as a function of y with xi = exp(-2 i y / R); the theta~ factors differ
    // from theta by exponentials that are linear in the argument
    TransformKernel k;
    const int N = static_cast<int>(x.size()), Nt = static_cast<int>(xt.size());
    k.n_vars = static_cast<std::size_t>(N + Nt);
    for (int nu = 0; nu < 4; ++nu)
        if (kappa[static_cast<std::size_t>(nu)] != 0)
            k.factors.push_back({nu + 1, -1, {}, 1.0, {}, double(kappa[static_cast<std::size_t>(nu)])});
    add_particle_factors(k, N, Nt, lambda);
    k.y_rate = -I * double(kappa[0] + kappa[1]) / R;
    const cplx qq = I * pi * lat.tau() / 4.0; // log q^{1/4}
    cplx log_const = double(kappa[0]) * (0.5 * I * pi - qq) - double(kappa[1]) * qq;
    for (double v : xt) log_const += I * pi - 2.0 * qq - 2.0 * I * v / R;
    for (double v : x) log_const -= lambda * (I * pi - 2.0 * qq - 2.0 * I * v / R);
    const cplx scale_const = std::exp(log_const);
    const std::vector<cplx> X = joined(x, xt);

    const double lr = std::log(r);
    GenCoeffs out;
    out.n_min = n_min;
    std::vector<cplx> prev;
    for (std::size_t K = 64; K <= (1u << 18); K *= 2) {
        // nodes offset by half a step so that phi = 0 and pi are never sampled
        std::vector<cplx> ys(K + 1), xis(K + 1);
        for (std::size_t j = 0; j <= K; ++j) {
            const double ph = 2.0 * pi * (static_cast<double>(j) + 0.5) / static_cast<double>(K);
            ys[j] = cplx(-0.5 * R * ph, 0.5 * R * lr);
            xis[j] = std::polar(r, ph);
        }
        const KernelSamples s = sample_kernel(k, X, ys, lat, Exec::parallel);
        double fmax = 0.0;
        for (std::size_t j = 0; j < K; ++j) fmax = std::max(fmax, std::abs(s.value[j]));
        const double closure = std::abs(s.value[K] - s.value[0]) / std::max(std::abs(s.value[0]), 1e-300);
        if (closure > 1e-9) {
            std::ostringstream msg;
            msg << "generating function does not close up around the circle (defect " << closure << ")";
            throw InvalidContour(msg.str());
        }
        std::vector<cplx> f(static_cast<std::size_t>(n_max - n_min + 1));
        for (int n = n_min; n <= n_max; ++n) {
            cplx acc{};
            for (std::size_t j = 0; j < K; ++j) acc += s.value[j] * std::pow(xis[j], n);
            f[static_cast<std::size_t>(n - n_min)] = scale_const * acc / static_cast<double>(K);
        }
        if (!prev.empty()) {
            double change = 0.0;
            for (std::size_t i = 0; i < f.size(); ++i) change = std::max(change, std::abs(f[i] - prev[i]));
            if (change <= tol * fmax * std::abs(scale_const)) {
                out.f = std::move(f);
                out.closure = closure;
                out.n_nodes = K;
                return out;
            }
        }
        prev = std::move(f);
    }
    throw QuadratureNonConvergence("Laurent coefficients did not stabilise");
}

LameSolution lame_build(cplx t, const Lattice& lat)
{
    const ThetaLogJet j = theta_log_jet(1, t, lat); // throws on lattice points
    return {t, -j.phi, -wp(t, lat)};
}

cplx lame_f(const LameSolution& s, cplx y, const Lattice& lat)
{
    return std::exp(s.kappa * y) * theta(1, y + s.t, lat) / theta(1, y, lat);
}

cplx lame_lambda(int N, int Nt)
{
    if (N < 1 || Nt < 0) throw InvalidCoupling("Lame transform needs N >= 1 and N~ >= 0");
    return (2.0 * Nt - 1.0) / (2.0 * N);
}

cplx lame_lambda(const LameParams& p) { return p.lambda ? *p.lambda : lame_lambda(p.N, p.Nt); }

std::array<cplx, 4> lame_d(cplx lambda)
{
    const cplx h = 0.5 * lambda;
    return {h + 1.0, h, h, h};
}

TransformKernel lame_kernel(const LameParams& p, const Lattice& lat)
{
    const cplx lambda = lame_lambda(p);
    if (lambda == cplx{}) throw InvalidCoupling("lambda must be nonzero");
    const LameSolution s = lame_build(p.t, lat);
    TransformKernel k;
    k.n_vars = static_cast<std::size_t>(p.N + p.Nt);
    add_particle_factors(k, p.N, p.Nt, lambda);
    k.factors.push_back({1, -1, {}, 1.0, p.t, 1.0});
    k.factors.push_back({1, -1, {}, 1.0, {}, -2.0});
    k.y_rate = s.kappa;
    return k;
}

ThetaProduct lame_prefactor(const LameParams& p)
{
    const cplx lambda = lame_lambda(p);
    const auto d = lame_d(lambda);
    NamedParams np;
    np.N = p.N;
    np.Nt = p.Nt;
    np.lambda = lambda;
    for (std::size_t nu = 0; nu < 4; ++nu) np.g[nu] = d[nu] + 0.5 * lambda;
    return build_named(NamedKind::psi_plus, np);
}

HamiltonianSpec lame_hamiltonian(const LameParams& p)
{
    const cplx lambda = lame_lambda(p);
    return build_deformed(1, p.N, p.Nt, lame_d(lambda), lambda);
}

FigureEightContour default_figure_eight(const std::vector<cplx>& x, std::size_t index, double loop_radius,
                                        const Lattice& lat)
{
    const cplx a = x.at(index);
    const cplx base = lat.omega1();
    return {a, 2.0 * base - a, loop_radius, base};
}

TransformResult figure_eight_integral(const TransformKernel& k, const std::vector<cplx>& X,
                                      const FigureEightContour& c, const Lattice& lat,
                                      const FigureEightOptions& opts)
{
    const Path path = figure_eight_path(c.center_a, c.center_b, c.loop_radius, c.base);
    const double clearance = opts.clearance > 0.0 ? opts.clearance : 0.5 * c.loop_radius;
    const double same = 1e-9 * std::max(1.0, lat.omega1());
    for (cplx s : kernel_singular_points(k, X, lat, c.base)) {
        const bool is_center = std::abs(s - c.center_a) < same || std::abs(s - c.center_b) < same;
        if (is_center) continue;
        if (std::abs(s - c.center_a) < c.loop_radius || std::abs(s - c.center_b) < c.loop_radius) {
            std::ostringstream msg;
            msg << "a loop encloses the singular point " << s << " besides its center";
            throw InvalidContour(msg.str());
        }
        if (path_distance(path, s) < clearance) {
            std::ostringstream msg;
            msg << "contour passes within " << clearance << " of the singular point " << s;
            throw InvalidContour(msg.str());
        }
    }
    TransformResult T = contour_transform(k, X, path, lat, opts.quad);
    if (T.closure > opts.closure_tol) {
        std::ostringstream msg;
        msg << "integrand does not return to its branch around the figure-eight (defect " << T.closure << ")";
        throw MonodromyFailure(msg.str());
    }
    if (std::abs(T.value) < opts.degenerate_tol * T.l1) {
        std::ostringstream msg;
        msg << "figure-eight integral vanishes: |J| = " << std::abs(T.value) << ", l1 = " << T.l1;
        throw DegenerateEigenfunction(msg.str());
    }
    return T;
}

LameResidual residual_example2(const LameParams& p, const std::vector<cplx>& X, const FigureEightContour& c,
                               const Lattice& lat, const FigureEightOptions& opts)
{
    if (X.size() != static_cast<std::size_t>(p.N + p.Nt)) throw PreconditionViolation("point size must be N + N~");
    const cplx lambda = lame_lambda(p);
    LameResidual out;
    out.integral = figure_eight_integral(lame_kernel(p, lat), X, c, lat, opts);
    const ThetaProduct pre = lame_prefactor(p);
    const ProductJet jet = log_jet(pre, X, lat);
    out.energy = lame_build(p.t, lat).energy;
    out.A = 4.0 * lambda * double(p.N) - 4.0 * double(p.Nt) + 2.0;
    // the eigen-relation alone; A vanishes for the default lambda
    out.residual = transform_residual(lame_hamiltonian(p), jet, X, out.integral, {}, out.energy, lat);
    out.psi = std::exp(jet.log_value) * out.integral.value;
    return out;
}

double auto_loop_radius(const TransformKernel& k, const std::vector<cplx>& X, cplx a, cplx b, cplx base,
                        const Lattice& lat)
{
    double m = std::min(std::abs(base - a), std::abs(base - b));
    const double same = 1e-9 * std::max(1.0, lat.omega1());
    for (cplx s : kernel_singular_points(k, X, lat, base)) {
        const double da = std::abs(s - a), db = std::abs(s - b);
        if (da < same || db < same) continue;
        m = std::min({m, da, db});
    }
    return 0.4 * m;
}

namespace {

std::string lattice_text(const Lattice& lat) { return lat.summary(); }

std::string fmt_params(const std::string& head, int N, int Nt, cplx lambda, const std::string& tail,
                       const Lattice& lat, std::uint64_t seed, std::size_t n)
{
    std::ostringstream s;
    s.precision(17);
    s << head << " N=" << N << " Nt=" << Nt << " lambda=" << lambda << ' ' << tail << ' ' << lattice_text(lat)
      << " seed=" << seed << " points=" << n;
    return s.str();
}

} // namespace

ResidualReport example1_report(const PlaneWaveParams& p, const Lattice& lat, std::size_t n_points,
                               std::uint64_t seed, double tol, CReading reading, const PlaneWaveOptions& opts)
{
    validate(p);
    const auto pts = sample_real_points(n_points, static_cast<std::size_t>(p.N + p.Nt), seed, lat);
    ResidualAccumulator acc;
    for (const auto& pt : pts) {
        const std::vector<double> x(pt.begin(), pt.begin() + p.N), xt(pt.begin() + p.N, pt.end());
        const Scaled r = residual_example1(p, x, xt, lat, reading, opts);
        acc.add(std::abs(r.value), r.relative(), std::vector<cplx>(pt.begin(), pt.end()));
    }
    std::ostringstream tail;
    tail << "gt=" << p.gt[0] << p.gt[1] << p.gt[2] << p.gt[3] << " n=" << p.n
         << (reading == CReading::with_eta ? " C=eta" : " C=literal");
    const std::string text = fmt_params("example1", p.N, p.Nt, p.lambda, tail.str(), lat, seed, n_points);
    return acc.finish("example1", lattice_text(lat), fnv1a(text), tol);
}

ResidualReport example2_report(const LameParams& p, bool fixed_t, const Lattice& lat, std::size_t n_points,
                               std::uint64_t seed, double tol, const FigureEightOptions& opts)
{
    if (n_points == 0) throw PreconditionViolation("at least one sample point is required");
    const cplx lambda = lame_lambda(p);
    if (lambda == cplx{}) throw InvalidCoupling("lambda must be nonzero");
    const std::size_t dim = static_cast<std::size_t>(p.N + p.Nt);
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> ux(0.0, 2.0 * lat.omega1());
    const double guard = lat.guard_radius();
    ResidualAccumulator acc;
    std::size_t accepted = 0;
    for (std::size_t draws = 0; accepted < n_points; ++draws) {
        if (draws >= 100 * n_points) throw SamplingExhausted("more than 99% of Lame configurations were rejected");
        std::vector<cplx> X(dim);
        for (auto& v : X) v = ux(rng);
        LameParams q = p;
        if (!fixed_t) q.t = random_cell_point(rng, lat);
        if (!admissible(X, lat, guard) || lattice_distance(q.t, lat) < 2.0 * guard) continue;
        try {
            const TransformKernel k = lame_kernel(q, lat);
            FigureEightContour c = default_figure_eight(X, 0, 1.0, lat);
            c.loop_radius = auto_loop_radius(k, X, c.center_a, c.center_b, c.base, lat);
            if (c.loop_radius < guard) continue;
            const LameResidual r = residual_example2(q, X, c, lat, opts);
            std::vector<cplx> pt = X;
            pt.push_back(q.t);
            acc.add(std::abs(r.residual.value), r.residual.relative(), pt);
            ++accepted;
        } catch (const InvalidContour&) {
            continue;
        } catch (const DegenerateEigenfunction&) {
            continue;
        }
    }
    std::ostringstream tail;
    tail.precision(17);
    tail << (fixed_t ? "t=" : "t=random");
    if (fixed_t) tail << p.t;
    const std::string text = fmt_params("example2", p.N, p.Nt, lambda, tail.str(), lat, seed, n_points);
    return acc.finish("example2", lattice_text(lat), fnv1a(text), tol);
}

} // namespace inoz
