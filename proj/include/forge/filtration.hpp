#pragma once

#include "forge/partition.hpp"
#include "forge/simple_function.hpp"
#include "forge/space.hpp"

#include <vector>

namespace forge {

/// One-parameter filtration: levels[0..N], each level refined by the next.
struct Filtration1P {
    SampleSpace space;
    std::vector<Partition> levels;

    [[nodiscard]] std::size_t horizon() const { return levels.size() - 1; }  // N
    [[nodiscard]] const Partition& level(std::size_t n) const { return levels[n]; }
    [[nodiscard]] const Partition& finest() const { return levels.back(); }

    bool operator==(const Filtration1P&) const = default;
};

[[nodiscard]] ValidationReport validate_filtration(const Filtration1P& filt);

/// Biparameter filtration: an (N+1)×(M+1) grid of partitions, monotone in
/// both indices, with trivial boundary row and column.
struct BiFiltration {
    SampleSpace space;
    std::vector<std::vector<Partition>> grid;

    [[nodiscard]] std::size_t rows() const { return grid.size() - 1; }     // N
    [[nodiscard]] std::size_t cols() const { return grid[0].size() - 1; }  // M
    [[nodiscard]] const Partition& at(std::size_t i, std::size_t j) const { return grid[i][j]; }
    [[nodiscard]] const Partition& finest() const { return grid[rows()][cols()]; }

    bool operator==(const BiFiltration&) const = default;
};

[[nodiscard]] ValidationReport validate_bifiltration(const BiFiltration& bf);

/// The "already revealed" field strictly below (i,j): the join of the west
/// and south neighbours, with the trivial boundary convention. 1 ≤ i ≤ N,
/// 1 ≤ j ≤ M.
[[nodiscard]] Partition f_minus(const BiFiltration& bf, std::size_t i, std::size_t j);

// ---------------------------------------------------------------------------
// Martingales
// ---------------------------------------------------------------------------

/// terms[n-1] is the term at level n, n = 1..N.
struct Martingale1P {
    Filtration1P filt;
    std::vector<SimpleFunction> terms;

    [[nodiscard]] std::size_t horizon() const { return terms.size(); }
    [[nodiscard]] const SimpleFunction& term(std::size_t n) const { return terms[n - 1]; }
};

/// terms[i-1][j-1] is the term at (i,j), 1 ≤ i ≤ N, 1 ≤ j ≤ M.
struct Martingale2P {
    BiFiltration filt;
    std::vector<std::vector<SimpleFunction>> terms;

    [[nodiscard]] std::size_t rows() const { return terms.size(); }
    [[nodiscard]] std::size_t cols() const { return terms[0].size(); }
    [[nodiscard]] const SimpleFunction& term(std::size_t i, std::size_t j) const {
        return terms[i - 1][j - 1];
    }
};

/// Projects a terminal function down every level: term_n = E[f | level n].
/// The resulting family is a martingale by the tower property.
[[nodiscard]] Martingale1P martingale_from_terminal(const Filtration1P& filt,
                                                    const SimpleFunction& f);
[[nodiscard]] Martingale2P martingale_from_terminal(const BiFiltration& bf,
                                                    const SimpleFunction& f);

[[nodiscard]] ValidationReport validate_martingale(const Martingale1P& m);
[[nodiscard]] ValidationReport validate_martingale(const Martingale2P& m);

/// Martingale differences. 1P: Δ_1 = f_1, Δ_k = f_k − f_{k-1}. 2P: the
/// four-term rectangle increment with the three boundary cases. Differences
/// telescope back to the terms exactly.
[[nodiscard]] std::vector<SimpleFunction> differences(const Martingale1P& m);
[[nodiscard]] std::vector<std::vector<SimpleFunction>> differences(const Martingale2P& m);

}  // namespace forge
