#pragma once

#include "forge/filtration.hpp"

#include <vector>

namespace forge {

/// Result of approximating a (possibly vector-valued) martingale by one
/// adapted to a coarser filtration generated by quantized terms.
struct AtomicApproximation {
    Filtration1P coarse;    // G_n = σ(u(f_0),...,u(f_n)); G_n ⊆ F_n
    Martingale1P approx;    // E[f_N | G_n] for n = 1..N
    SimpleFunction term0;   // E[f_N | G_0]
    Rat max_error;          // max over n and ω of the ℓ∞ distance ‖f_n − E[f_N|G_n]‖
    Rat quantizer_step;     // mesh of the value net (ε/2)
};

/// Quantizes x coordinatewise to the grid (ε/2)·Z, ties toward the smaller
/// net point, and builds the filtration generated by the quantized terms.
/// The achieved error satisfies max_error < ε.
[[nodiscard]] AtomicApproximation atomic_approximation(const Martingale1P& m, const Rat& epsilon);

/// The quantizer itself, exposed for direct checks: ‖x − quantize(x)‖∞ ≤ step/2.
[[nodiscard]] std::vector<Rat> quantize(const std::vector<Rat>& x, const Rat& step);

}  // namespace forge
