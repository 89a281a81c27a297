#pragma once

#include "forge/error.hpp"
#include "forge/point_set.hpp"
#include "forge/rational.hpp"

#include <string>
#include <vector>

namespace forge {

/// A finite probability space with exact rational weights. Every point has
/// strictly positive weight and the weights sum to exactly 1; zero-weight
/// points are rejected (ingestion strips them before construction).
struct SampleSpace {
    std::vector<std::string> labels;
    std::vector<Rat> weight;

    [[nodiscard]] std::size_t size() const { return labels.size(); }

    [[nodiscard]] Rat mass(const PointSet& event) const {
        Rat m = 0;
        for (PointId p : event) m += weight[p];
        return m;
    }

    bool operator==(const SampleSpace& other) const = default;
};

[[nodiscard]] ValidationReport validate_space(const SampleSpace& space);

/// Restriction P_A(U) = P(A ∩ U) / P(A): new space over the event's points,
/// original labels kept, weights renormalized exactly.
[[nodiscard]] SampleSpace conditional_space(const SampleSpace& space, const PointSet& event);

}  // namespace forge
