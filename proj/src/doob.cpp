#include "forge/doob.hpp"

#include "forge/rng.hpp"

#include <cmath>
#include <vector>

namespace forge {

bool maximal_bound_holds(const SampleSpace& space, std::span<const Partition> fields,
                         const SimpleFunction& f, const Rat& delta_sq) {
    if (fields.empty()) throw Error(Errc::input, "empty field family");
    std::vector<Rat> sup_sq(space.size(), Rat(0));
    for (const auto& field : fields) {
        const auto proj = cond_expect(space, f, field);
        for (std::size_t p = 0; p < space.size(); ++p) {
            Rat sq = proj.scalar_at(static_cast<PointId>(p));
            sq *= sq;
            if (sq > sup_sq[p]) sup_sq[p] = sq;
        }
    }
    Rat lhs = 0, rhs = 0;
    for (std::size_t p = 0; p < space.size(); ++p) {
        lhs += space.weight[p] * sup_sq[p];
        const Rat& v = f.scalar_at(static_cast<PointId>(p));
        rhs += space.weight[p] * v * v;
    }
    return delta_sq * lhs <= rhs;
}

namespace {

// Weighted block-mean projection in doubles.
std::vector<double> project(const std::vector<double>& f, const Partition& field,
                            const std::vector<double>& w) {
    std::vector<double> out(f.size());
    for (const auto& block : field.blocks()) {
        double num = 0, den = 0;
        for (PointId p : block) {
            num += w[p] * f[p];
            den += w[p];
        }
        const double mean = num / den;
        for (PointId p : block) out[p] = mean;
    }
    return out;
}

double ratio_of(const std::vector<double>& f, std::span<const Partition> fields,
                const std::vector<double>& w) {
    std::vector<double> sup_sq(f.size(), 0.0);
    for (const auto& field : fields) {
        const auto proj = project(f, field, w);
        for (std::size_t p = 0; p < f.size(); ++p)
            sup_sq[p] = std::max(sup_sq[p], proj[p] * proj[p]);
    }
    double num = 0, den = 0;
    for (std::size_t p = 0; p < f.size(); ++p) {
        num += w[p] * sup_sq[p];
        den += w[p] * f[p] * f[p];
    }
    return den > 0 ? num / den : 0.0;
}

}  // namespace

DoobDelta doob_delta(const SampleSpace& space, std::span<const Partition> fields,
                     std::uint64_t seed, std::size_t starts) {
    if (fields.empty()) throw Error(Errc::input, "empty field family");
    const std::size_t n = space.size();
    std::vector<double> w(n);
    for (std::size_t p = 0; p < n; ++p) w[p] = to_double(space.weight[p]);

    double worst = 1.0;  // the identity-free lower bound: f constant gives ratio 1 only
    for (std::size_t s = 0; s < starts; ++s) {
        Rng rng = derive_rng(seed, s);
        std::vector<double> f(n);
        for (auto& x : f) x = (static_cast<double>(rng.next() >> 11) / 9007199254740992.0) * 2 - 1;
        // alternating ascent: freeze the argmax selection, then power-iterate
        // the induced quadratic form
        for (std::size_t round = 0; round < 25; ++round) {
            // selection s(ω) = argmax_α (P_α f)(ω)²
            std::vector<std::vector<double>> projections;
            projections.reserve(fields.size());
            for (const auto& field : fields) projections.push_back(project(f, field, w));
            std::vector<std::size_t> sel(n, 0);
            for (std::size_t p = 0; p < n; ++p) {
                double best = -1;
                for (std::size_t a = 0; a < fields.size(); ++a) {
                    const double v = projections[a][p] * projections[a][p];
                    if (v > best) {
                        best = v;
                        sel[p] = a;
                    }
                }
            }
            // power iteration on f ↦ D⁻¹ Rᵀ R f with R f = (P_{s(ω)} f)(ω)
            for (std::size_t it = 0; it < 40; ++it) {
                std::vector<double> rf(n, 0.0);
                for (std::size_t a = 0; a < fields.size(); ++a) {
                    const auto proj = project(f, fields[a], w);
                    for (std::size_t p = 0; p < n; ++p)
                        if (sel[p] == a) rf[p] = proj[p];
                }
                // pull back: g = Σ_ω w_ω rf(ω) row_ω, row_ω = row of P_{s(ω)};
                // P_α is self-adjoint in L²(w), so accumulate via projections
                std::vector<double> g(n, 0.0);
                for (std::size_t a = 0; a < fields.size(); ++a) {
                    std::vector<double> masked(n, 0.0);
                    for (std::size_t p = 0; p < n; ++p)
                        if (sel[p] == a) masked[p] = rf[p];
                    const auto back = project(masked, fields[a], w);
                    for (std::size_t p = 0; p < n; ++p) g[p] += back[p];
                }
                double norm = 0;
                for (std::size_t p = 0; p < n; ++p) norm += w[p] * g[p] * g[p];
                norm = std::sqrt(norm);
                if (norm < 1e-300) break;
                for (std::size_t p = 0; p < n; ++p) f[p] = g[p] / norm;
            }
            const double r = ratio_of(f, fields, w);
            if (r > worst + 1e-13)
                worst = r;
            else
                break;
        }
        worst = std::max(worst, ratio_of(f, fields, w));
    }

    DoobDelta out;
    out.delta_sq_certified = Rat(1, static_cast<long>(fields.size()));
    out.delta_certified = 1.0 / std::sqrt(static_cast<double>(fields.size()));
    out.worst_ratio = worst;
    out.delta_empirical = 1.0 / std::sqrt(worst);
    return out;
}

}  // namespace forge
