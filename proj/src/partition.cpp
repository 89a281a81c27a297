#include "forge/partition.hpp"

#include <algorithm>

namespace forge {

Partition Partition::trivial(std::size_t n_points) {
    return from_block_ids(std::vector<std::uint32_t>(n_points, 0), n_points ? 1 : 0);
}

Partition Partition::discrete(std::size_t n_points) {
    std::vector<std::uint32_t> ids(n_points);
    for (std::size_t p = 0; p < n_points; ++p) ids[p] = static_cast<std::uint32_t>(p);
    return from_block_ids(ids, static_cast<std::uint32_t>(n_points));
}

Partition Partition::from_block_ids(const std::vector<std::uint32_t>& block_of,
                                    std::uint32_t n_blocks) {
    Partition out;
    out.block_of_ = block_of;
    out.blocks_.assign(n_blocks, {});
    for (std::size_t p = 0; p < block_of.size(); ++p)
        out.blocks_[block_of[p]].push_back(static_cast<PointId>(p));
    // renumber so blocks are ordered by least contained point
    std::vector<std::uint32_t> order(n_blocks);
    for (std::uint32_t b = 0; b < n_blocks; ++b) order[b] = b;
    std::sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) {
        if (out.blocks_[a].empty() || out.blocks_[b].empty())
            throw Error(Errc::input, "partition has an empty block");
        return out.blocks_[a].front() < out.blocks_[b].front();
    });
    std::vector<PointSet> sorted_blocks(n_blocks);
    std::vector<std::uint32_t> new_id(n_blocks);
    for (std::uint32_t k = 0; k < n_blocks; ++k) {
        sorted_blocks[k] = std::move(out.blocks_[order[k]]);
        new_id[order[k]] = k;
    }
    out.blocks_ = std::move(sorted_blocks);
    for (auto& b : out.block_of_) b = new_id[b];
    return out;
}

Partition Partition::from_blocks(std::size_t n_points, std::vector<PointSet> blocks) {
    std::vector<std::uint32_t> block_of(n_points, UINT32_MAX);
    for (std::uint32_t b = 0; b < blocks.size(); ++b) {
        if (blocks[b].empty()) throw Error(Errc::input, "partition has an empty block");
        for (PointId p : blocks[b]) {
            if (p >= n_points) throw Error(Errc::input, "block point out of range");
            if (block_of[p] != UINT32_MAX)
                throw Error(Errc::input, "partition blocks overlap");
            block_of[p] = b;
        }
    }
    for (std::size_t p = 0; p < n_points; ++p)
        if (block_of[p] == UINT32_MAX)
            throw Error(Errc::input, "partition blocks do not cover the space");
    return from_block_ids(block_of, static_cast<std::uint32_t>(blocks.size()));
}

bool refines(const Partition& fine, const Partition& coarse) {
    if (fine.point_count() != coarse.point_count())
        throw Error(Errc::input, "partitions over different point sets");
    for (const auto& block : fine.blocks()) {
        const std::uint32_t cb = coarse.block_index_of(block.front());
        for (PointId p : block)
            if (coarse.block_index_of(p) != cb) return false;
    }
    return true;
}

Partition join(const Partition& p, const Partition& q) {
    if (p.point_count() != q.point_count())
        throw Error(Errc::input, "partitions over different point sets");
    const std::size_t n = p.point_count();
    return Partition::group_by<std::pair<std::uint32_t, std::uint32_t>>(
        n, [&](PointId pt) { return std::make_pair(p.block_index_of(pt), q.block_index_of(pt)); });
}

std::vector<std::uint32_t> children_of(const Partition& fine, const Partition& coarse,
                                       std::size_t coarse_block) {
    std::vector<std::uint32_t> out;
    std::uint32_t last = UINT32_MAX;
    for (PointId p : coarse.block(coarse_block)) {
        const std::uint32_t fb = fine.block_index_of(p);
        if (fb != last) {  // first point of each fine block is its least point
            if (fine.block(fb).front() == p) out.push_back(fb);
            last = fb;
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace forge
