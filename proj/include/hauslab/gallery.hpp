#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "hauslab/sequences.hpp"

namespace hauslab::gallery {

// Rasterised generators build their own ambient grids, which can be much
// larger than the default point cap.
inline constexpr std::size_t kGridCap = 1u << 22;

/// x_i(t) = t^i sampled at t = k * pitch on [0, 1] under the sup distance,
/// i = 1..i_max; K_n = {x_i : n <= i <= i_max}. Needs pitch <= 1e-2 with
/// 1/pitch integral and i_max >= n_max + 10.
NestedFamily power_functions(double pitch = 1e-3, std::size_t i_max = 200, std::size_t n_max = 16);

/// max over t in [0, 1] of t^n - t^{n+1}, the continuum gap n^n / (n+1)^{n+1}.
double power_gap(std::size_t n);

/// K_n = lens between 4n(y - 1/n) = -x^2 and 4n(y + 1/n) = x^2, rasterised on
/// the grid of spacing `pitch` inside [-2.5, 2.5]^2 centred at the origin.
/// The limit set is the raster of the segment [-2, 2] x {0}.
NestedFamily parabolic_regions(double pitch = 1e-2, std::size_t n_max = 9);

/// Membership in the continuum lens K_n (with a 1e-9 guard for rounding).
bool parabolic_contains(std::size_t n, double x, double y);

/// Standard basis e_1..e_dim of R^dim under the p-norm (p may be infinity);
/// K_n = {e_i : i >= n}. Needs dim >= n_max + 1.
NestedFamily lp_basis(double p = 2.0, std::size_t dim = 17, std::size_t n_max = 16);

/// Grid of spacing `pitch` on [-1, 1] (1/pitch integral, so 0 and ±1 lie on it);
/// K_n = grid ∩ [-1/n, 1/n]. The limit set is {0}.
NestedFamily shrinking_intervals(double pitch = 1e-3, std::size_t n_max = 16);

/// Union over n <= n_max of {n} ∪ {n + 1/(2m) : m <= m_max} on the real line.
SpacePtr atsuji_union(std::size_t n_max = 3, std::size_t m_max = 50);

/// Index of the point n + 1/(2m) (m = 0 gives the integer n itself).
PointIndex atsuji_point(std::size_t n, std::size_t m, std::size_t m_max);

/// Nested family on the Atsuji arena: K_j keeps the integers and the points
/// n + 1/(2m) with m >= j. Gaps shrink to 0; the intersection is the integers.
NestedFamily atsuji_tails(std::size_t n_max = 3, std::size_t m_max = 50);

/// The four values of one complement comparison.
struct ComplementWitness {
    std::size_t trial = 0;
    SpacePtr space;
    std::vector<PointIndex> a;
    std::vector<PointIndex> b;
    double h_sets = 0.0;         ///< H(A, B)
    double h_complements = 0.0;  ///< H(X\A, X\B)
};

struct WitnessSearchReport {
    std::optional<ComplementWitness> greater;  ///< H(X\A, X\B) > H(A, B)
    std::optional<ComplementWitness> less;     ///< H(X\A, X\B) < H(A, B)
    std::size_t trials_run = 0;
    std::size_t pairs_examined = 0;
    std::size_t greater_count = 0;
    std::size_t less_count = 0;
    std::size_t equal_count = 0;

    bool found_both() const { return greater && less; }
    nlohmann::json to_json() const;
};

/// Searches overlapping, mutually non-nested pairs for both strict orders
/// between H(A, B) and H(X\A, X\B). Trial 0 is the 4-point line
/// {0,1,2,3} with A = {0,1,2}, B = {1,2,3}; trial t > 0 draws a random space
/// of 4..space_size points from its own stream. Stops once both are found.
WitnessSearchReport complement_witness_search(std::size_t space_size = 16,
                                              std::size_t trials = 10000,
                                              std::uint64_t seed = 42);

/// Gallery names accepted by `make_family`.
const std::vector<std::string>& family_names();

/// Builds a named family from string/number params (pitch, n_max, i_max, p, dim, m_max).
NestedFamily make_family(const std::string& name, const nlohmann::json& params);

/// Every gallery at its reference resolution, each with the horizon it is
/// checked to: power functions, parabolic regions, lp bases for p = 1, 2, inf,
/// shrinking intervals (pitch 1e-2, N = 100) and the Atsuji tails.
std::vector<std::pair<NestedFamily, std::size_t>> reference_families();

/// Default tolerance for classifying a gallery: 2 * pitch for rasterised
/// ones, 1e-12 otherwise.
double default_tolerance(const NestedFamily& family);

}  // namespace hauslab::gallery
