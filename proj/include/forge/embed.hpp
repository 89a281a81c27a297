#pragma once

#include "forge/f4.hpp"
#include "forge/filtration.hpp"

#include <optional>
#include <span>
#include <vector>

namespace forge {

inline constexpr std::uint64_t kDefaultAtomCap = 1'000'000;

/// One product coordinate: for every atom A of `parent`, a choice of one
/// child atom of `level` inside A, weighted by the conditional probability
/// P_A(child). `assignments` enumerates all such choice tuples, lexicographic
/// in canonical parent-atom order.
struct CoordinateFactor {
    Partition parent;
    Partition level;
    std::vector<std::vector<std::uint32_t>> children;      // per parent atom: child block ids
    std::vector<std::vector<Rat>> child_weight;            // per parent atom: P_A(child)
    std::vector<std::vector<std::uint32_t>> assignments;   // per assignment: pick per parent atom
    std::vector<Rat> assignment_weight;

    [[nodiscard]] std::size_t assignment_count() const { return assignments.size(); }
    /// Child block (in `level`) selected by an assignment at a parent atom.
    [[nodiscard]] std::uint32_t chosen_child(std::size_t assignment,
                                             std::uint32_t parent_block) const {
        return children[parent_block][assignments[assignment][parent_block]];
    }
};

[[nodiscard]] CoordinateFactor make_factor(const SampleSpace& space, const Partition& parent,
                                           const Partition& level);

// ---------------------------------------------------------------------------
// One-parameter canonical model
// ---------------------------------------------------------------------------

/// The product model of a one-parameter filtration: coordinate 0 ranges over
/// the atoms of level 0, coordinate n over the assignment tuples of the
/// factor (level n−1 → level n). The morphism maps a product atom to the atom
/// reached by composing its assignments; images are never empty.
struct CanonicalModel1P {
    Filtration1P source;
    std::vector<CoordinateFactor> coords;             // index n-1 holds coordinate n
    std::vector<std::vector<std::uint32_t>> atoms;    // per atom: [c0, a1, ..., aN]
    SampleSpace product_space;
    Filtration1P canonical;                           // levels 0..N over product atoms
    std::vector<std::uint32_t> image;                 // block of source finest level
};

[[nodiscard]] Int count_product_atoms(const Filtration1P& filt);
[[nodiscard]] CanonicalModel1P build_canonical_1p(const Filtration1P& filt,
                                                  std::uint64_t atom_cap = kDefaultAtomCap);

// ---------------------------------------------------------------------------
// Two-parameter canonical model
// ---------------------------------------------------------------------------

/// The biparameter product model: one coordinate per interior grid cell, its
/// factor built over the atoms of the revealed field F⁻. Images are computed
/// by the chain recursion; atoms whose chain collapses to the empty set are
/// retained with their weights (for F4 sources that mass is exactly zero,
/// which the verifier checks rather than assumes).
struct CanonicalModel2P {
    BiFiltration source;
    std::vector<CoordinateFactor> cells;              // (i,j) 1-based → (i-1)*M + (j-1)
    std::vector<std::vector<std::uint32_t>> atoms;    // per atom: assignment index per cell
    SampleSpace product_space;
    BiFiltration canonical;                           // canonical grid over product atoms
    std::vector<std::optional<std::uint32_t>> image;  // block of source finest, empty = no image
    Rat empty_mass;

    [[nodiscard]] std::size_t cell_index(std::size_t i, std::size_t j) const {
        return (i - 1) * source.cols() + (j - 1);
    }
    [[nodiscard]] const CoordinateFactor& cell(std::size_t i, std::size_t j) const {
        return cells[cell_index(i, j)];
    }
};

[[nodiscard]] Int count_product_atoms(const BiFiltration& bf);

/// Refuses non-F4 input (the measure identity genuinely needs conditional
/// independence); `enforce_f4 = false` is for studying broken inputs.
[[nodiscard]] CanonicalModel2P build_canonical_2p(const BiFiltration& bf,
                                                  std::uint64_t atom_cap = kDefaultAtomCap,
                                                  bool enforce_f4 = true);

/// Chain evaluation of the image of one product atom: A(1,1) = Ω, first row
/// and column follow the previously chosen child, interior atoms are the
/// intersection of the west and south choices; the image is the final choice
/// at (N,M). Collapses to "no image" the moment an intersection is empty or
/// a required revealed atom is not an atom of F⁻.
struct ChainResult {
    std::optional<std::uint32_t> image;               // block of source finest level
    std::vector<PointSet> revealed;                   // A_{i,j} per cell (while defined)
    std::vector<PointSet> chosen;                     // B^{i,j}_{A_{i,j}} per cell
    std::size_t failed_i = 0, failed_j = 0;           // first collapse location (if any)
};

[[nodiscard]] ChainResult evaluate_chain(const CanonicalModel2P& model,
                                         std::span<const std::uint32_t> atom_coords);

/// Direct set evaluation of the image (intersection over cells of the union
/// of chosen children) — the independent route the chain is checked against.
[[nodiscard]] PointSet direct_image(const CanonicalModel2P& model,
                                    std::span<const std::uint32_t> atom_coords);

/// Cylinder measure of the preimage of a finest source atom, with the
/// per-rectangle factorization identities it rests on.
struct PreimageMeasure {
    Rat total;  // equals P(U)
    struct Step {
        std::size_t n, m;
        Rat partial_product;  // ∏_{i≤n,j≤m} P_{A(i,j)}(B(i,j))
        Rat block_prob;       // P(B(n,m))
    };
    std::vector<Step> steps;
    bool identities_hold = true;
};

[[nodiscard]] PreimageMeasure preimage_measure(const CanonicalModel2P& model,
                                               std::uint32_t finest_block);

}  // namespace forge
