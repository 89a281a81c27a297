#pragma once

#include "forge/filtration.hpp"
#include "forge/rng.hpp"

#include <vector>

namespace forge::testing {

inline SampleSpace uniform_space(std::size_t n) {
    SampleSpace s;
    for (std::size_t p = 0; p < n; ++p) {
        s.labels.push_back("p" + std::to_string(p));
        s.weight.emplace_back(1, Int(n));
    }
    return s;
}

inline SampleSpace space_of(std::vector<std::pair<std::string, Rat>> entries) {
    SampleSpace s;
    for (auto& [label, w] : entries) {
        s.labels.push_back(std::move(label));
        s.weight.push_back(std::move(w));
    }
    return s;
}

// Uniform 4-point space with the dyadic two-level filtration
// trivial -> {{0,1},{2,3}} -> singletons.
inline Filtration1P dyadic4() {
    Filtration1P f;
    f.space = uniform_space(4);
    f.levels = {Partition::trivial(4), Partition::from_blocks(4, {{0, 1}, {2, 3}}),
                Partition::discrete(4)};
    return f;
}

// Two independent fair bits; points ordered 00,01,10,11 (first bit major).
// Grid: (1,1) trivial, (2,1) = sigma(bit1), (1,2) = sigma(bit2), (2,2) discrete.
inline BiFiltration two_bits() {
    BiFiltration bf;
    bf.space = space_of({{"00", Rat(1, 4)}, {"01", Rat(1, 4)}, {"10", Rat(1, 4)}, {"11", Rat(1, 4)}});
    const Partition triv = Partition::trivial(4);
    const Partition bit1 = Partition::from_blocks(4, {{0, 1}, {2, 3}});
    const Partition bit2 = Partition::from_blocks(4, {{0, 2}, {1, 3}});
    const Partition disc = Partition::discrete(4);
    bf.grid = {{triv, triv, triv}, {triv, triv, bit2}, {triv, bit1, disc}};
    return bf;
}

// Three points, crossing partitions below the discrete top: fails F4.
inline BiFiltration crossing3() {
    BiFiltration bf;
    bf.space = uniform_space(3);
    const Partition triv = Partition::trivial(3);
    const Partition pa = Partition::from_blocks(3, {{0}, {1, 2}});
    const Partition pb = Partition::from_blocks(3, {{0, 1}, {2}});
    const Partition disc = Partition::discrete(3);
    bf.grid = {{triv, triv, triv}, {triv, triv, pb}, {triv, pa, disc}};
    return bf;
}

inline SimpleFunction scalar_on(const Partition& part, std::vector<Rat> per_point) {
    return SimpleFunction::scalar(part, std::move(per_point));
}

}  // namespace forge::testing
