#pragma once

#include "forge/filtration.hpp"
#include "forge/lemma2.hpp"
#include "forge/rng.hpp"

#include <vector>

namespace forge {

struct GeneratorConfig {
    std::uint64_t seed = 1;
    std::size_t points_min = 2;
    std::size_t points_max = 5;
    std::size_t depth_n = 2;  // N
    std::size_t depth_m = 2;  // M
    Rat value_lo = Rat(-2);
    Rat value_hi = Rat(2);
    std::size_t dim = 1;
    std::uint64_t atom_cap = 10000;

    enum class F4Mode { guaranteed, generic, adversarial } f4_mode = F4Mode::guaranteed;
};

[[nodiscard]] SampleSpace gen_space(Rng& rng, std::size_t min_points, std::size_t max_points);

/// Random refinement: each block of size ≥ 2 is split in two with probability
/// 1/2 (may return the input unchanged).
[[nodiscard]] Partition random_refinement(Rng& rng, const Partition& part);

[[nodiscard]] Filtration1P gen_filtration_1p(Rng& rng, std::size_t levels, std::size_t min_points,
                                             std::size_t max_points);

/// Product of two one-parameter filtrations under the product measure, with
/// the trivial boundary convention; satisfies F4 by construction.
[[nodiscard]] BiFiltration tensor_bifiltration(const Filtration1P& rows, const Filtration1P& cols);

/// Canonical biparameter filtration of a double-indexed product of factor
/// spaces (field at (i,j) generated by the coordinates of the dominated
/// rectangle); also F4 by construction.
[[nodiscard]] BiFiltration rectangle_product_bifiltration(
    const std::vector<std::vector<SampleSpace>>& factors);

/// Relabels and permutes the points of a bifiltration (structure-preserving,
/// scrambles any visible product layout).
[[nodiscard]] BiFiltration shuffle_points(Rng& rng, const BiFiltration& bf);

/// guaranteed: a (shuffled) tensor or rectangle-product filtration.
/// generic: random monotone grid, no independence promise.
/// adversarial: a generic draw that fails the F4 check (planted pattern as a
/// deterministic fallback).
[[nodiscard]] BiFiltration gen_bifiltration(Rng& rng, const GeneratorConfig& cfg);

[[nodiscard]] SimpleFunction gen_terminal(Rng& rng, const Partition& finest, const Rat& lo,
                                          const Rat& hi, std::size_t dim);

[[nodiscard]] Martingale1P gen_martingale(Rng& rng, const Filtration1P& filt, const Rat& lo,
                                          const Rat& hi, std::size_t dim = 1);
[[nodiscard]] Martingale2P gen_martingale(Rng& rng, const BiFiltration& bf, const Rat& lo,
                                          const Rat& hi);

[[nodiscard]] WeightedSystem gen_weighted_system(Rng& rng, std::size_t max_points = 4,
                                                 std::size_t max_a = 2, std::size_t max_b = 2);

/// Random sequence adapted to filt, term k measurable at level k.
[[nodiscard]] std::vector<SimpleFunction> gen_adapted_sequence(Rng& rng, const Filtration1P& filt,
                                                               std::size_t length, const Rat& lo,
                                                               const Rat& hi, bool nonneg);

}  // namespace forge
