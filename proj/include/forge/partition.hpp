#pragma once

#include "forge/error.hpp"
#include "forge/point_set.hpp"

#include <cstdint>
#include <functional>
#include <map>
#include <vector>

namespace forge {

/// An atomic sigma-field over n points, represented by its atoms: a set
/// partition in canonical form (each block sorted, blocks ordered by least
/// contained point). Equality is therefore structural.
class Partition {
public:
    Partition() = default;

    [[nodiscard]] static Partition trivial(std::size_t n_points);
    [[nodiscard]] static Partition discrete(std::size_t n_points);

    /// Validates cover/disjointness/non-emptiness, then canonicalizes.
    [[nodiscard]] static Partition from_blocks(std::size_t n_points, std::vector<PointSet> blocks);

    /// Groups points by key; block order follows first occurrence, which
    /// coincides with the canonical least-point order.
    template <typename Key>
    [[nodiscard]] static Partition group_by(std::size_t n_points,
                                            const std::function<Key(PointId)>& key) {
        std::map<Key, std::uint32_t> seen;
        std::vector<std::uint32_t> block_of(n_points);
        std::uint32_t next = 0;
        for (std::size_t p = 0; p < n_points; ++p) {
            auto [it, inserted] = seen.emplace(key(static_cast<PointId>(p)), next);
            if (inserted) ++next;
            block_of[p] = it->second;
        }
        return from_block_ids(block_of, next);
    }

    [[nodiscard]] static Partition from_block_ids(const std::vector<std::uint32_t>& block_of,
                                                  std::uint32_t n_blocks);

    [[nodiscard]] std::size_t point_count() const { return block_of_.size(); }
    [[nodiscard]] std::size_t block_count() const { return blocks_.size(); }
    [[nodiscard]] const std::vector<PointSet>& blocks() const { return blocks_; }
    [[nodiscard]] const PointSet& block(std::size_t b) const { return blocks_[b]; }
    [[nodiscard]] std::uint32_t block_index_of(PointId p) const { return block_of_[p]; }

    [[nodiscard]] bool is_trivial() const { return blocks_.size() == 1; }
    [[nodiscard]] bool is_discrete() const { return blocks_.size() == block_of_.size(); }

    bool operator==(const Partition& other) const = default;

private:
    std::vector<PointSet> blocks_;
    std::vector<std::uint32_t> block_of_;
};

/// True iff every block of `fine` is contained in a block of `coarse`
/// (sigma-field containment coarse ⊆ fine for atomic fields).
[[nodiscard]] bool refines(const Partition& fine, const Partition& coarse);

/// Common refinement: atoms are the non-empty pairwise intersections.
[[nodiscard]] Partition join(const Partition& p, const Partition& q);

/// Block indices of `fine` whose blocks lie inside the given block of `coarse`.
/// Requires refines(fine, coarse).
[[nodiscard]] std::vector<std::uint32_t> children_of(const Partition& fine,
                                                     const Partition& coarse,
                                                     std::size_t coarse_block);

}  // namespace forge
