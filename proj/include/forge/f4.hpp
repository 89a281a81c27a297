#pragma once

#include "forge/filtration.hpp"

#include <cstdint>
#include <optional>
#include <string>

namespace forge {

struct F4Witness {
    // conditional-independence form: fields at (i,j+1) and (i+1,j) fail to be
    // conditionally independent given (i,j)
    std::size_t i = 0, j = 0;
    CondIndepWitness ci;

    [[nodiscard]] std::string describe(const BiFiltration& bf) const;
};

struct F4Result {
    bool holds = true;
    std::optional<F4Witness> witness;

    // Direct verification of the projection identity
    //   E(E(f|F_{i,j}) | F_{i',j'}) = E(f | F_{i∧i', j∧j'})
    // on all atom indicators of the finest field, over all index pairs.
    // Skipped (with `projection_checked = false`) when the estimated work
    // exceeds the cap; the verdict then rests on the conditional-independence
    // method alone (the two are equivalent, and their agreement is itself a
    // tested property).
    bool projection_checked = false;
    bool projection_agrees = true;
    std::string projection_detail;  // first disagreement, if any

    explicit operator bool() const { return holds; }
};

inline constexpr std::uint64_t kDefaultProjectionWorkCap = 5'000'000;

[[nodiscard]] F4Result check_f4(const BiFiltration& bf,
                                std::uint64_t projection_work_cap = kDefaultProjectionWorkCap);

}  // namespace forge
