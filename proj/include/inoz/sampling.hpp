#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "inoz/lattice.hpp"

namespace inoz {

/// Distance from z to the period lattice 2 omega_1 Z + 2 omega_3 Z.
double lattice_distance(cplx z, const Lattice& lat);

/// Distance from z to the half-period lattice omega_1 Z + omega_3 Z,
/// i.e. to the zero set of every theta_nu and the pole set of every wp(x + omega_nu).
double half_lattice_distance(cplx z, const Lattice& lat);

/// Uniform point of the fundamental cell centred at the origin:
/// 2 omega_1 s + 2 omega_3 t with s, t in [-1/2, 1/2).
cplx random_cell_point(std::mt19937_64& rng, const Lattice& lat);

/// A sample point is admissible when every coordinate keeps distance > delta
/// from the half-period lattice and every X_J +- X_K keeps distance > delta
/// from the period lattice.
bool admissible(std::span<const cplx> X, const Lattice& lat, double delta);

/// Draws n admissible points of dimension dim, each coordinate from the
/// centred fundamental cell. Deterministic in seed. Throws SamplingExhausted
/// when more than 99% of the draws are rejected.
std::vector<std::vector<cplx>> sample_points(std::size_t n, std::size_t dim, std::uint64_t seed,
                                             const Lattice& lat);

/// Same contract with real coordinates drawn uniformly from (0, 2 omega_1).
std::vector<std::vector<double>> sample_real_points(std::size_t n, std::size_t dim, std::uint64_t seed,
                                                    const Lattice& lat);

} // namespace inoz
