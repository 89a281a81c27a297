#pragma once

#include "forge/embed.hpp"

#include <map>
#include <string>
#include <vector>

namespace forge {

/// Machine-checkable certificate for the two morphism conditions: preimages
/// of level atoms are unions of canonical-level atoms at the same index
/// (adaptedness), and the pushforward measure matches exactly on every atom
/// of the finest source field.
struct MorphismCertificate {
    struct LevelCheck {
        std::size_t i = 0, j = 0;  // j unused for one-parameter models
        bool ok = true;
        std::string detail;
    };
    struct MassRow {
        std::uint32_t source_block = 0;
        Rat pulled;  // μ(π⁻¹(U)), by enumeration
        Rat direct;  // P(U)
        bool ok = true;
    };

    std::vector<LevelCheck> levels;
    std::vector<MassRow> masses;
    Rat empty_mass;          // total weight of product atoms with no image
    bool adapted_ok = true;  // all level checks
    bool measure_ok = true;  // all mass rows
    bool pass = false;

    [[nodiscard]] std::string summary() const;
};

[[nodiscard]] MorphismCertificate verify_morphism(const CanonicalModel1P& model);
[[nodiscard]] MorphismCertificate verify_morphism(const CanonicalModel2P& model);

// ---------------------------------------------------------------------------
// Pullback along π and joint laws
// ---------------------------------------------------------------------------

/// f̃ = f ∘ π for f measurable at source level n; the result is measurable at
/// canonical level n.
[[nodiscard]] SimpleFunction pullback(const CanonicalModel1P& model, const SimpleFunction& f,
                                      std::size_t level);
/// Two-parameter version; product atoms without an image receive 0.
[[nodiscard]] SimpleFunction pullback(const CanonicalModel2P& model, const SimpleFunction& f,
                                      std::size_t i, std::size_t j);

[[nodiscard]] Martingale1P pullback(const CanonicalModel1P& model, const Martingale1P& m);
[[nodiscard]] Martingale2P pullback(const CanonicalModel2P& model, const Martingale2P& m);

/// Exact distribution of a tuple of functions: mass per distinct value tuple.
using Law = std::map<std::vector<Rat>, Rat>;

[[nodiscard]] Law joint_law(const SampleSpace& space, std::span<const SimpleFunction> fs);

/// Law restricted to the points where `include` is true (mass not
/// renormalized — preservation statements need the excluded mass to vanish).
[[nodiscard]] Law joint_law_restricted(const SampleSpace& space,
                                       std::span<const SimpleFunction> fs,
                                       const std::vector<char>& include);

[[nodiscard]] inline bool equal_law(const Law& a, const Law& b) { return a == b; }

/// Mask of product atoms that have an image (all true for 1P models).
[[nodiscard]] std::vector<char> image_mask(const CanonicalModel2P& model);

}  // namespace forge
