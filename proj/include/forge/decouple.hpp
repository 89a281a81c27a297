#pragma once

#include "forge/square.hpp"
#include "forge/tangent.hpp"

#include <string>
#include <vector>

namespace forge {

// ---------------------------------------------------------------------------
// Increasing concave transforms for the decoupling comparison
// ---------------------------------------------------------------------------

enum class Phi { sqrt_t, log1p_t, cap1_t };

[[nodiscard]] double phi_eval(Phi phi, double t);
[[nodiscard]] const char* phi_name(Phi phi);
[[nodiscard]] Phi phi_from_name(const std::string& name);

/// User-supplied monotone tabulated transform; concavity is verified on the
/// breakpoints, evaluation is piecewise linear with last-slope extension.
struct TabulatedPhi {
    std::vector<std::pair<double, double>> points;  // strictly increasing x

    [[nodiscard]] ValidationReport validate() const;
    [[nodiscard]] double eval(double t) const;
};

// ---------------------------------------------------------------------------
// Decoupling comparison Eφ(Σf) vs Eφ(Σg)
// ---------------------------------------------------------------------------

struct RatioReport {
    double lhs = 0;    // Eφ(f_1 + ... + f_n) on the base space
    double rhs = 0;    // Eφ(g_1 + ... + g_n) on the doubled space
    double ratio = 1;  // lhs/rhs, 1 when both sides vanish or the laws agree
    bool laws_equal = false;
};

/// Requires a nonnegative sequence. Expectations are computed from the exact
/// laws of the two sums, so equal laws give a ratio of exactly 1.
[[nodiscard]] RatioReport decoupling_ratio(const TangentPair1P& tp, Phi phi);
[[nodiscard]] RatioReport decoupling_ratio(const TangentPair2P& tp, Phi phi);

// ---------------------------------------------------------------------------
// Square-function ratio harness
// ---------------------------------------------------------------------------

struct SquareRatio {
    double h1_S = 0;
    double h1_cond = 0;  // ‖s‖₁ for one parameter, ‖σ‖₁ for two
    double ratio = 1;    // h1_S / h1_cond, 1 when both vanish
};

[[nodiscard]] SquareRatio s_sigma_harness(const Martingale1P& m);
[[nodiscard]] SquareRatio s_sigma_harness(const Martingale2P& m);

// ---------------------------------------------------------------------------
// Zero-integral identities of the difference operators on a product model
// ---------------------------------------------------------------------------

/// For a martingale on the canonical grid, integrating Δ_{i,j} over the
/// coordinate block {(k,j) : k ≤ i} (and over {(i,k) : k ≤ j}) with every
/// other coordinate fixed gives 0. Applies at every (i,j) except (1,1),
/// where both integrals reduce to the plain mean (reported, not judged).
struct OrthogonalityCertificate {
    struct Failure {
        std::size_t i = 0, j = 0;
        bool row_block = true;  // false: column block
        Rat integral;
    };
    bool pass = true;
    std::vector<Failure> failures;
    Rat mean_at_11;
};

[[nodiscard]] OrthogonalityCertificate orthogonality_check(const CanonicalModel2P& model,
                                                           const Martingale2P& m);

}  // namespace forge
