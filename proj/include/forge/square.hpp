#pragma once

#include "forge/filtration.hpp"

#include <vector>

namespace forge {

/// Square functions of a scalar martingale. Everything up to the squared
/// stage is exact rational; the rooted functions and their L¹ norms are
/// doubles (per-term rounding error ≤ 1e−12 at desk scale).
struct SquareReport1P {
    std::vector<Rat> S2;  // pathwise: Σ_k Δ_k²
    std::vector<Rat> s2;  // predictable: Σ_k E[Δ_k² | level k−1]
    std::vector<double> S, s;
    double h1_S = 0, h1_s = 0;  // E[S], E[s]
    Rat garsia;                 // Σ_k E|Δ_k|
    Rat ES2, Es2;               // expectations at the squared stage (equal)
};

[[nodiscard]] SquareReport1P square_functions(const Martingale1P& m);

struct SquareReport2P {
    std::vector<Rat> S2;      // Σ_{i,j} Δ_{i,j}²
    std::vector<Rat> s2;      // Σ_{i,j} E[Δ² | F_{i−1,j−1}], sum from (1,1)
    std::vector<Rat> sigma2;  // Σ_{i,j} E[Δ² | F⁻_{i,j}], sum from (1,1)
    // Same sums with the inner index starting at j=2, exposed alongside the
    // full sums so both conventions are checkable.
    std::vector<Rat> s2_from_j2;
    std::vector<Rat> sigma2_from_j2;
    std::vector<double> S, s, sigma;
    double h1_S = 0, h1_s = 0, h1_sigma = 0;
    Rat garsia;
    Rat ES2, Es2, Esigma2;  // equal by the tower property (full sums)
};

[[nodiscard]] SquareReport2P square_functions(const Martingale2P& m);

}  // namespace forge
