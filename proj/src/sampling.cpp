#include "inoz/sampling.hpp"

#include <cmath>
#include <limits>

#include "inoz/errors.hpp"

namespace inoz {

namespace {

double distance_to_grid(cplx z, cplx p1, cplx p3)
{
    // z = a p1 + b p3 with p1 real
    const double b = z.imag() / p3.imag();
    const double a = (z.real() - b * p3.real()) / p1.real();
    const double a0 = std::floor(a), b0 = std::floor(b);
    double best = std::numeric_limits<double>::infinity();
    for (int da = -1; da <= 2; ++da)
        for (int db = -1; db <= 2; ++db)
            best = std::min(best, std::abs(z - ((a0 + da) * p1 + (b0 + db) * p3)));
    return best;
}

} // namespace

double lattice_distance(cplx z, const Lattice& lat)
{
    return distance_to_grid(z, 2.0 * lat.omega1(), 2.0 * lat.omega3());
}

double half_lattice_distance(cplx z, const Lattice& lat)
{
    return distance_to_grid(z, lat.omega1(), lat.omega3());
}

cplx random_cell_point(std::mt19937_64& rng, const Lattice& lat)
{
    std::uniform_real_distribution<double> u(-0.5, 0.5);
    const double s = u(rng);
    const double t = u(rng);
    return 2.0 * lat.omega1() * s + 2.0 * lat.omega3() * t;
}

bool admissible(std::span<const cplx> X, const Lattice& lat, double delta)
{
    for (std::size_t j = 0; j < X.size(); ++j) {
        if (half_lattice_distance(X[j], lat) <= delta) return false;
        for (std::size_t k = j + 1; k < X.size(); ++k) {
            if (lattice_distance(X[j] - X[k], lat) <= delta) return false;
            if (lattice_distance(X[j] + X[k], lat) <= delta) return false;
        }
    }
    return true;
}

std::vector<std::vector<cplx>> sample_points(std::size_t n, std::size_t dim, std::uint64_t seed,
                                             const Lattice& lat)
{
    if (n == 0) throw PreconditionViolation("at least one sample point is required");
    std::mt19937_64 rng(seed);
    const double delta = lat.guard_radius();
    const std::size_t max_draws = 100 * n;
    std::vector<std::vector<cplx>> points;
    points.reserve(n);
    std::vector<cplx> X(dim);
    for (std::size_t draws = 0; points.size() < n; ++draws) {
        if (draws >= max_draws) throw SamplingExhausted("more than 99% of sample draws were rejected");
        for (auto& x : X) x = random_cell_point(rng, lat);
        if (admissible(X, lat, delta)) points.push_back(X);
    }
    return points;
}

std::vector<std::vector<double>> sample_real_points(std::size_t n, std::size_t dim, std::uint64_t seed,
                                                    const Lattice& lat)
{
    if (n == 0) throw PreconditionViolation("at least one sample point is required");
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(0.0, 2.0 * lat.omega1());
    const double delta = lat.guard_radius();
    const std::size_t max_draws = 100 * n;
    std::vector<std::vector<double>> points;
    std::vector<cplx> X(dim);
    std::vector<double> x(dim);
    for (std::size_t draws = 0; points.size() < n; ++draws) {
        if (draws >= max_draws) throw SamplingExhausted("more than 99% of sample draws were rejected");
        for (std::size_t j = 0; j < dim; ++j) X[j] = x[j] = u(rng);
        if (admissible(X, lat, delta)) points.push_back(x);
    }
    return points;
}

} // namespace inoz
