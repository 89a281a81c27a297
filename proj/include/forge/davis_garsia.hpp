#pragma once

#include "forge/square.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace forge {

/// A martingale split f = g + h (termwise exact, both martingales) scored by
/// ‖g‖_{H¹_σ} + Σ_{i,j} E|Δ_{i,j} h|.
struct Decomposition {
    Martingale2P g, h;
    double objective = 0;
    std::vector<Rat> split;  // fraction of each active difference kept in g
    std::vector<std::pair<std::size_t, std::size_t>> active_cells;
};

/// The minimization reduced to split fractions: scaling the difference at
/// each active cell by θ_c keeps both parts martingales, so
///   obj(θ) = E √(Σ_c θ_c² · E[Δ_c²|F⁻_c]) + Σ_c (1 − θ_c) · E|Δ_c|
/// over the box θ ∈ [0,1]^d. Convex in θ.
struct DgProblem {
    std::vector<std::pair<std::size_t, std::size_t>> cells;  // active (i,j), Δ ≢ 0
    std::vector<double> point_weight;
    std::vector<std::vector<double>> sig2;  // [cell][point]: E[Δ_c² | F⁻_c](ω)
    std::vector<double> garsia;             // [cell]: E|Δ_c|

    [[nodiscard]] std::size_t dims() const { return cells.size(); }
    [[nodiscard]] double objective(std::span<const double> theta) const;
    [[nodiscard]] std::vector<double> subgradient(std::span<const double> theta) const;
};

[[nodiscard]] DgProblem dg_problem(const Martingale2P& m);

struct DgOptions {
    std::uint64_t seed = 17;
    std::size_t max_iters = 100000;  // total projected-subgradient budget
    double rel_tol = 1e-9;           // relative objective-change stop
    std::size_t random_starts = 3;
    bool trace = false;              // dump iteration progress to stderr
};

/// Projected-subgradient descent over the split box (multi-start: the two
/// endpoints, the vertices when the dimension is small, and seeded random
/// interior points), followed by coordinatewise exact line search. Requires
/// an F4 source filtration.
[[nodiscard]] Decomposition davis_garsia_decompose(const Martingale2P& m,
                                                   const DgOptions& opts = {});

struct OracleResult {
    double objective = 0;
    std::vector<double> split;
};

/// Exhaustive grid search over split fractions, grid_steps points per active
/// cell. Errors out when grid_steps^dims exceeds the evaluation cap.
[[nodiscard]] OracleResult davis_garsia_oracle(const Martingale2P& m, std::size_t grid_steps,
                                               std::uint64_t eval_cap = 10'000'000);

[[nodiscard]] double h1_sigma_norm(const Martingale2P& m);
[[nodiscard]] double h1_S_norm(const Martingale2P& m);
[[nodiscard]] Rat garsia_norm(const Martingale2P& m);

}  // namespace forge
