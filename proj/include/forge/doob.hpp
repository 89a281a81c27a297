#pragma once

#include "forge/simple_function.hpp"

#include <cstdint>
#include <span>

namespace forge {

/// Maximal-function constant δ for a finite family of fields: the certified
/// value is |A|^{-1/2} (stored exactly at the squared level); the empirical
/// value is the reciprocal of the largest observed ‖max_α|E[f|F_α]|‖₂ / ‖f‖₂
/// from seeded multi-start alternating ascent (diagnostic only).
struct DoobDelta {
    Rat delta_sq_certified;   // 1/|A|
    double delta_certified;   // |A|^{-1/2}
    double delta_empirical;
    double worst_ratio;       // largest observed ratio (1/delta_empirical)
};

[[nodiscard]] DoobDelta doob_delta(const SampleSpace& space, std::span<const Partition> fields,
                                   std::uint64_t seed = 0x5eed, std::size_t starts = 8);

/// Exact squared-level check of δ²·E[max_α E[f|F_α]²] ≤ E[f²] for one scalar f.
[[nodiscard]] bool maximal_bound_holds(const SampleSpace& space, std::span<const Partition> fields,
                                       const SimpleFunction& f, const Rat& delta_sq);

}  // namespace forge
