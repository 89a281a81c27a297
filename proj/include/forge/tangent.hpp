#pragma once

#include "forge/embed.hpp"
#include "forge/morphism.hpp"

#include <optional>
#include <string>
#include <vector>

namespace forge {

/// An adapted sequence together with its decoupled tangent copy on the
/// doubled product space (base ⊗ independent copy). The tangent term keeps
/// the base history and reads only its own coordinate from the fresh copy,
/// so for a fixed base point the tangent terms are independent.
struct TangentPair1P {
    SampleSpace doubled;                    // point (a,b) = a * base_points + b
    std::size_t base_points = 0;
    std::vector<Partition> doubled_levels;  // F_k ⊗ F̃_k, k = 0..N
    std::vector<SimpleFunction> source;     // f_k on the base product space
    std::vector<SimpleFunction> lifted;     // f_k ⊗ 1 on the doubled space
    std::vector<SimpleFunction> tangent;    // g_k(a,b) = f_k(a_0..a_{k-1}, b_k)
    SampleSpace base_space;
};

[[nodiscard]] TangentPair1P tangent_copy(const CanonicalModel1P& model,
                                         std::span<const SimpleFunction> fs);

/// Grid version: g_{i,j} keeps every base coordinate except (i,j), which it
/// reads from the fresh copy.
struct TangentPair2P {
    SampleSpace doubled;
    std::size_t base_points = 0;
    std::vector<std::vector<Partition>> doubled_revealed;  // F⁻_{i,j} ⊗ F̃⁻_{i,j}, 1-based grid
    std::vector<std::vector<SimpleFunction>> source;
    std::vector<std::vector<SimpleFunction>> lifted;
    std::vector<std::vector<SimpleFunction>> tangent;
    SampleSpace base_space;
};

[[nodiscard]] TangentPair2P tangent_copy(const CanonicalModel2P& model,
                                         const std::vector<std::vector<SimpleFunction>>& fs);

struct TangentCertificate {
    bool conditional_match = true;  // E[f_k ⊗ 1 | past ⊗ past] = E[g_k | past ⊗ past], exact
    std::optional<std::size_t> first_mismatch_k;  // flattened index for 2P
    std::string mismatch_detail;
    bool independent = true;  // per base point, joint law of the tangent terms factorizes
    std::optional<std::size_t> dependent_base_point;
    bool pass = false;
};

[[nodiscard]] TangentCertificate verify_tangent(const TangentPair1P& tp);
[[nodiscard]] TangentCertificate verify_tangent(const TangentPair2P& tp);

}  // namespace forge
