#include "forge/decouple.hpp"

#include <cmath>
#include <map>
#include <unordered_map>

namespace forge {

double phi_eval(Phi phi, double t) {
    switch (phi) {
        case Phi::sqrt_t: return std::sqrt(t);
        case Phi::log1p_t: return std::log1p(t);
        case Phi::cap1_t: return std::min(t, 1.0);
    }
    return 0;
}

const char* phi_name(Phi phi) {
    switch (phi) {
        case Phi::sqrt_t: return "sqrt";
        case Phi::log1p_t: return "log1p";
        case Phi::cap1_t: return "cap";
    }
    return "?";
}

Phi phi_from_name(const std::string& name) {
    if (name == "sqrt") return Phi::sqrt_t;
    if (name == "log1p") return Phi::log1p_t;
    if (name == "cap") return Phi::cap1_t;
    throw Error(Errc::input, "unknown phi '" + name + "' (expected sqrt|log1p|cap)");
}

ValidationReport TabulatedPhi::validate() const {
    if (points.size() < 2) return ValidationReport::bad("need at least two breakpoints");
    for (std::size_t k = 1; k < points.size(); ++k) {
        if (points[k].first <= points[k - 1].first)
            return ValidationReport::bad("breakpoints not strictly increasing");
        if (points[k].second < points[k - 1].second)
            return ValidationReport::bad("values not increasing");
    }
    double prev_slope = std::numeric_limits<double>::infinity();
    for (std::size_t k = 1; k < points.size(); ++k) {
        const double slope = (points[k].second - points[k - 1].second) /
                             (points[k].first - points[k - 1].first);
        if (slope > prev_slope + 1e-15)
            return ValidationReport::bad("slopes increase: transform is not concave");
        prev_slope = slope;
    }
    return ValidationReport::good();
}

double TabulatedPhi::eval(double t) const {
    if (t <= points.front().first) return points.front().second;
    for (std::size_t k = 1; k < points.size(); ++k) {
        if (t <= points[k].first) {
            const auto& [x0, y0] = points[k - 1];
            const auto& [x1, y1] = points[k];
            return y0 + (y1 - y0) * (t - x0) / (x1 - x0);
        }
    }
    const auto& [x0, y0] = points[points.size() - 2];
    const auto& [x1, y1] = points.back();
    return y1 + (y1 - y0) / (x1 - x0) * (t - x1);
}

namespace {

// Exact law of the pointwise sum of scalar terms.
std::map<Rat, Rat> sum_law(const SampleSpace& space, const std::vector<const SimpleFunction*>& fs) {
    std::map<Rat, Rat> law;
    for (std::size_t p = 0; p < space.size(); ++p) {
        Rat s = 0;
        for (const auto* f : fs) {
            if (f->dim() != 1) throw Error(Errc::input, "ratio harness needs scalar terms");
            const Rat& v = f->scalar_at(static_cast<PointId>(p));
            if (v < 0) throw Error(Errc::input, "ratio harness needs a nonnegative sequence");
            s += v;
        }
        law[s] += space.weight[p];
    }
    return law;
}

double law_expectation(const std::map<Rat, Rat>& law, Phi phi) {
    double acc = 0;
    for (const auto& [value, mass] : law) acc += to_double(mass) * phi_eval(phi, to_double(value));
    return acc;
}

RatioReport ratio_from_laws(const std::map<Rat, Rat>& base_law,
                            const std::map<Rat, Rat>& doubled_law, Phi phi) {
    RatioReport r;
    r.laws_equal = base_law == doubled_law;
    r.lhs = law_expectation(base_law, phi);
    r.rhs = r.laws_equal ? r.lhs : law_expectation(doubled_law, phi);
    if (r.lhs == r.rhs)
        r.ratio = 1.0;
    else if (r.rhs != 0)
        r.ratio = r.lhs / r.rhs;
    else
        r.ratio = std::numeric_limits<double>::infinity();
    return r;
}

}  // namespace

RatioReport decoupling_ratio(const TangentPair1P& tp, Phi phi) {
    std::vector<const SimpleFunction*> fs, gs;
    for (const auto& f : tp.source) fs.push_back(&f);
    for (const auto& g : tp.tangent) gs.push_back(&g);
    return ratio_from_laws(sum_law(tp.base_space, fs), sum_law(tp.doubled, gs), phi);
}

RatioReport decoupling_ratio(const TangentPair2P& tp, Phi phi) {
    std::vector<const SimpleFunction*> fs, gs;
    for (const auto& row : tp.source)
        for (const auto& f : row) fs.push_back(&f);
    for (const auto& row : tp.tangent)
        for (const auto& g : row) gs.push_back(&g);
    return ratio_from_laws(sum_law(tp.base_space, fs), sum_law(tp.doubled, gs), phi);
}

namespace {

SquareRatio make_ratio(double h1_S, double h1_cond) {
    SquareRatio r;
    r.h1_S = h1_S;
    r.h1_cond = h1_cond;
    if (h1_S == h1_cond)
        r.ratio = 1.0;
    else if (h1_cond != 0)
        r.ratio = h1_S / h1_cond;
    else
        r.ratio = std::numeric_limits<double>::infinity();
    return r;
}

}  // namespace

SquareRatio s_sigma_harness(const Martingale1P& m) {
    const auto sq = square_functions(m);
    return make_ratio(sq.h1_S, sq.h1_s);
}

SquareRatio s_sigma_harness(const Martingale2P& m) {
    const auto sq = square_functions(m);
    return make_ratio(sq.h1_S, sq.h1_sigma);
}

OrthogonalityCertificate orthogonality_check(const CanonicalModel2P& model,
                                             const Martingale2P& m) {
    if (m.filt.grid != model.canonical.grid)
        throw Error(Errc::input, "martingale is not on the model's canonical grid");
    const std::size_t N = m.rows(), M = m.cols();
    const auto diffs = differences(m);
    const auto& space = model.product_space;

    OrthogonalityCertificate cert;
    cert.mean_at_11 = expectation(space, diffs[0][0]);

    struct KeyHash {
        std::size_t operator()(const std::vector<std::uint32_t>& v) const {
            std::size_t h = 0xcbf29ce484222325ull;
            for (auto x : v) {
                h ^= x;
                h *= 0x100000001b3ull;
            }
            return h;
        }
    };

    auto check_block = [&](std::size_t i, std::size_t j, bool row_block) {
        // cells whose coordinates are integrated out
        std::vector<char> in_block(model.cells.size(), 0);
        if (row_block) {
            for (std::size_t k = 1; k <= i; ++k) in_block[model.cell_index(k, j)] = 1;
        } else {
            for (std::size_t k = 1; k <= j; ++k) in_block[model.cell_index(i, k)] = 1;
        }
        std::unordered_map<std::vector<std::uint32_t>, Rat, KeyHash> sums;
        for (std::size_t p = 0; p < space.size(); ++p) {
            std::vector<std::uint32_t> key;
            key.reserve(model.cells.size());
            for (std::size_t c = 0; c < model.cells.size(); ++c)
                if (!in_block[c]) key.push_back(model.atoms[p][c]);
            sums[key] += space.weight[p] * diffs[i - 1][j - 1].scalar_at(static_cast<PointId>(p));
        }
        for (const auto& [key, total] : sums) {
            if (total != 0) {
                cert.pass = false;
                cert.failures.push_back({i, j, row_block, total});
                return;
            }
        }
    };

    for (std::size_t i = 1; i <= N; ++i) {
        for (std::size_t j = 1; j <= M; ++j) {
            if (i == 1 && j == 1) continue;
            check_block(i, j, true);
            check_block(i, j, false);
        }
    }
    return cert;
}

}  // namespace forge
