#include "forge/square.hpp"

#include <cmath>

namespace forge {

namespace {

std::vector<double> root_of(const std::vector<Rat>& sq) {
    std::vector<double> out(sq.size());
    for (std::size_t p = 0; p < sq.size(); ++p) out[p] = std::sqrt(to_double(sq[p]));
    return out;
}

double l1_norm(const SampleSpace& space, const std::vector<double>& v) {
    double acc = 0;
    for (std::size_t p = 0; p < v.size(); ++p) acc += to_double(space.weight[p]) * v[p];
    return acc;
}

Rat weighted_sum(const SampleSpace& space, const std::vector<Rat>& v) {
    Rat acc = 0;
    for (std::size_t p = 0; p < v.size(); ++p) acc += space.weight[p] * v[p];
    return acc;
}

void add_pointwise(std::vector<Rat>& acc, const SimpleFunction& f) {
    for (std::size_t p = 0; p < acc.size(); ++p)
        acc[p] += f.scalar_at(static_cast<PointId>(p));
}

}  // namespace

SquareReport1P square_functions(const Martingale1P& m) {
    const auto& space = m.filt.space;
    const std::size_t n_pts = space.size();
    const auto diffs = differences(m);

    SquareReport1P r;
    r.S2.assign(n_pts, Rat(0));
    r.s2.assign(n_pts, Rat(0));
    r.garsia = 0;
    for (std::size_t k = 1; k <= m.horizon(); ++k) {
        const SimpleFunction d2 = diffs[k - 1].squared();
        add_pointwise(r.S2, d2);
        add_pointwise(r.s2, cond_expect(space, d2, m.filt.level(k - 1)));
        r.garsia += expectation(space, diffs[k - 1].abs());
    }
    r.S = root_of(r.S2);
    r.s = root_of(r.s2);
    r.h1_S = l1_norm(space, r.S);
    r.h1_s = l1_norm(space, r.s);
    r.ES2 = weighted_sum(space, r.S2);
    r.Es2 = weighted_sum(space, r.s2);
    return r;
}

SquareReport2P square_functions(const Martingale2P& m) {
    const auto& space = m.filt.space;
    const std::size_t n_pts = space.size();
    const std::size_t N = m.rows(), M = m.cols();
    const auto diffs = differences(m);

    SquareReport2P r;
    r.S2.assign(n_pts, Rat(0));
    r.s2.assign(n_pts, Rat(0));
    r.sigma2.assign(n_pts, Rat(0));
    r.s2_from_j2.assign(n_pts, Rat(0));
    r.sigma2_from_j2.assign(n_pts, Rat(0));
    r.garsia = 0;
    for (std::size_t i = 1; i <= N; ++i) {
        for (std::size_t j = 1; j <= M; ++j) {
            const SimpleFunction d2 = diffs[i - 1][j - 1].squared();
            add_pointwise(r.S2, d2);
            const SimpleFunction pred = cond_expect(space, d2, m.filt.at(i - 1, j - 1));
            const SimpleFunction revealed = cond_expect(space, d2, f_minus(m.filt, i, j));
            add_pointwise(r.s2, pred);
            add_pointwise(r.sigma2, revealed);
            if (j >= 2) {
                add_pointwise(r.s2_from_j2, pred);
                add_pointwise(r.sigma2_from_j2, revealed);
            }
            r.garsia += expectation(space, diffs[i - 1][j - 1].abs());
        }
    }
    r.S = root_of(r.S2);
    r.s = root_of(r.s2);
    r.sigma = root_of(r.sigma2);
    r.h1_S = l1_norm(space, r.S);
    r.h1_s = l1_norm(space, r.s);
    r.h1_sigma = l1_norm(space, r.sigma);
    r.ES2 = weighted_sum(space, r.S2);
    r.Es2 = weighted_sum(space, r.s2);
    r.Esigma2 = weighted_sum(space, r.sigma2);
    return r;
}

}  // namespace forge
