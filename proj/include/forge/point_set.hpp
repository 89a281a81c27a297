#pragma once

#include <algorithm>
#include <cstdint>
#include <vector>

namespace forge {

using PointId = std::uint32_t;

// Events are kept as sorted, duplicate-free vectors of point indices.
using PointSet = std::vector<PointId>;

[[nodiscard]] inline PointSet intersect(const PointSet& a, const PointSet& b) {
    PointSet out;
    out.reserve(std::min(a.size(), b.size()));
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

// Union of disjoint sorted sets (merge).
[[nodiscard]] inline PointSet merge_disjoint(const PointSet& a, const PointSet& b) {
    PointSet out;
    out.reserve(a.size() + b.size());
    std::merge(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

[[nodiscard]] inline bool is_subset(const PointSet& sub, const PointSet& super) {
    return std::includes(super.begin(), super.end(), sub.begin(), sub.end());
}

[[nodiscard]] inline bool contains(const PointSet& s, PointId p) {
    return std::binary_search(s.begin(), s.end(), p);
}

[[nodiscard]] inline PointSet normalized(PointSet s) {
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
    return s;
}

[[nodiscard]] inline PointSet full_set(std::size_t n) {
    PointSet s(n);
    for (std::size_t i = 0; i < n; ++i) s[i] = static_cast<PointId>(i);
    return s;
}

}  // namespace forge
