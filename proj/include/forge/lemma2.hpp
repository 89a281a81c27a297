#pragma once

#include "forge/simple_function.hpp"

#include <vector>

namespace forge {

/// Data for the weighted two-index square-function inequality: per pair
/// (α, β) a weight function w with values in [0,1] (arbitrary measurability)
/// and an F_α-measurable function f. δ² is a certified maximal constant for
/// the field family (see doob_delta).
struct WeightedSystem {
    SampleSpace space;
    std::vector<Partition> fields;               // indexed by α
    std::size_t b_size = 1;                      // |B|
    std::vector<std::vector<std::vector<Rat>>> w;  // [α][β][point], values in [0,1]
    std::vector<std::vector<SimpleFunction>> f;    // [α][β], measurable w.r.t. fields[α]
    Rat kappa;                                   // in (0, 1]
    Rat delta_sq;                                // certified δ², > 0
};

[[nodiscard]] ValidationReport validate_weighted_system(const WeightedSystem& ws);

struct Lemma2Report {
    double lhs = 0;  // E(Σ |w f|²)^{1/2}
    double rhs = 0;  // κ²δ · E(Σ 1_{A^κ} |f|²)^{1/2}
    bool holds = false;
    // level sets A^κ_{α,β} = {E[w_{α,β}|F_α] ≥ κ}
    std::vector<std::vector<PointSet>> kappa_sets;
};

inline constexpr double kLemma2Slack = 1e-9;

[[nodiscard]] Lemma2Report lemma2_check(const WeightedSystem& ws);

}  // namespace forge
