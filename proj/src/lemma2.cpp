#include "forge/lemma2.hpp"

#include <cmath>

namespace forge {

ValidationReport validate_weighted_system(const WeightedSystem& ws) {
    if (auto r = validate_space(ws.space); !r) return r;
    if (ws.fields.empty()) return ValidationReport::bad("empty field family");
    if (ws.b_size == 0) return ValidationReport::bad("empty second index set");
    if (ws.kappa <= 0 || ws.kappa > 1) return ValidationReport::bad("kappa outside (0,1]");
    if (ws.delta_sq <= 0) return ValidationReport::bad("delta not supplied or not positive");
    if (ws.w.size() != ws.fields.size() || ws.f.size() != ws.fields.size())
        return ValidationReport::bad("w/f family shape mismatch");
    for (std::size_t a = 0; a < ws.fields.size(); ++a) {
        if (ws.fields[a].point_count() != ws.space.size())
            return ValidationReport::bad("field over wrong point set");
        if (ws.w[a].size() != ws.b_size || ws.f[a].size() != ws.b_size)
            return ValidationReport::bad("w/f row shape mismatch");
        for (std::size_t b = 0; b < ws.b_size; ++b) {
            if (ws.w[a][b].size() != ws.space.size())
                return ValidationReport::bad("weight function over wrong point set");
            for (const auto& v : ws.w[a][b])
                if (v < 0 || v > 1) return ValidationReport::bad("weight outside [0,1]");
            if (!ws.f[a][b].measurable_wrt(ws.fields[a]))
                return ValidationReport::bad("f is not measurable w.r.t. its field");
        }
    }
    return ValidationReport::good();
}

Lemma2Report lemma2_check(const WeightedSystem& ws) {
    if (auto r = validate_weighted_system(ws); !r)
        throw Error(Errc::input, "invalid weighted system: " + r.violation);
    const std::size_t n = ws.space.size();
    const std::size_t A = ws.fields.size(), B = ws.b_size;

    Lemma2Report rep;
    rep.kappa_sets.assign(A, std::vector<PointSet>(B));

    std::vector<Rat> lhs_sq(n, Rat(0)), rhs_sq(n, Rat(0));
    for (std::size_t a = 0; a < A; ++a) {
        for (std::size_t b = 0; b < B; ++b) {
            // E[w|F_α] and the level set {E[w|F_α] ≥ κ}
            const auto wf = SimpleFunction::scalar(Partition::discrete(n), ws.w[a][b]);
            const auto cw = cond_expect(ws.space, wf, ws.fields[a]);
            PointSet level;
            for (std::size_t p = 0; p < n; ++p)
                if (cw.scalar_at(static_cast<PointId>(p)) >= ws.kappa)
                    level.push_back(static_cast<PointId>(p));
            for (std::size_t p = 0; p < n; ++p) {
                const Rat& fv = ws.f[a][b].scalar_at(static_cast<PointId>(p));
                Rat wfv = ws.w[a][b][p] * fv;
                lhs_sq[p] += wfv * wfv;
                if (contains(level, static_cast<PointId>(p))) rhs_sq[p] += fv * fv;
            }
            rep.kappa_sets[a][b] = std::move(level);
        }
    }
    double lhs = 0, rhs_inner = 0;
    for (std::size_t p = 0; p < n; ++p) {
        lhs += to_double(ws.space.weight[p]) * std::sqrt(to_double(lhs_sq[p]));
        rhs_inner += to_double(ws.space.weight[p]) * std::sqrt(to_double(rhs_sq[p]));
    }
    const double kappa = to_double(ws.kappa);
    const double delta = std::sqrt(to_double(ws.delta_sq));
    rep.lhs = lhs;
    rep.rhs = kappa * kappa * delta * rhs_inner;
    rep.holds = rep.lhs >= rep.rhs - kLemma2Slack;
    return rep;
}

}  // namespace forge
