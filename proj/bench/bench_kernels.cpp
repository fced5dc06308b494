// Serial reference against the OpenMP kernels on the heavier sweeps.
#include <chrono>
#include <cstdio>
#include <functional>
#include <string>

#include <omp.h>

#include "inoz/eigen.hpp"
#include "inoz/identities.hpp"
#include "inoz/operators.hpp"

using namespace inoz;

namespace {

double time_ms(const std::function<void()>& f, int reps)
{
    double best = 1e300;
    for (int r = 0; r < reps; ++r) {
        const auto t0 = std::chrono::steady_clock::now();
        f();
        best = std::min(best, std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count());
    }
    return best;
}

void row(const std::string& name, const std::function<double(Exec)>& f, int reps)
{
    double vs = 0, vp = 0;
    const double ts = time_ms([&] { vs = f(Exec::serial); }, reps);
    const double tp = time_ms([&] { vp = f(Exec::parallel); }, reps);
    std::printf("%-26s serial %9.2f ms  parallel %9.2f ms  speedup %5.2f  same=%s\n", name.c_str(), ts, tp, ts / tp,
                vs == vp ? "yes" : "NO");
}

} // namespace

int main(int argc, char** argv)
{
    const int reps = argc > 1 ? std::atoi(argv[1]) : 3;
    std::printf("threads: %d\n", omp_get_max_threads());
    const Lattice lat = Lattice::from_nome(pi / 2, 0.3);

    row("appendix suite x200", [&](Exec e) {
        double m = 0;
        for (const auto& r : check_all(lat, 200, 7, 1e-10, e)) m += r.max_rel;
        return m;
    }, reps);

    const CouplingData c({1.0, cplx(0.5, 0.3), -0.7, cplx(1.2, -0.4)}, {0.1, 0.2, cplx(-0.3, 0.1), 0.05}, 0.7);
    row("source identity N=4 x400", [&](Exec e) { return residual_source_report(c, lat, 400, 3, 1e-8, e).max_rel; },
        reps);
    row("W routes N=4 x400", [&](Exec e) { return route_equivalence(c, lat, 400, 3, 1e-10, e).max_rel; }, reps);

    const PlaneWaveParams pw{2, 0, {1, 0, 0, 0}, 0.5, 1};
    row("plane-wave transform", [&](Exec e) {
        PlaneWaveOptions o;
        o.quad.exec = e;
        return std::abs(tilde_f_n(pw, {0.3, 0.9}, {}, lat, o).value);
    }, reps);

    const LameParams lp{1, 1, cplx(0.3, 0.25), {}};
    row("figure-eight transform", [&](Exec e) {
        FigureEightOptions o;
        o.quad.exec = e;
        const std::vector<cplx> X{0.5, 0.15};
        return std::abs(residual_example2(lp, X, default_figure_eight(X, 0, 0.2, lat), lat, o).psi);
    }, reps);
    return 0;
}
