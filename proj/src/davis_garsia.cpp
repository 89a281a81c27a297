#include "forge/davis_garsia.hpp"

#include "forge/f4.hpp"
#include "forge/rng.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>

namespace forge {

double DgProblem::objective(std::span<const double> theta) const {
    double acc = 0;
    for (std::size_t p = 0; p < point_weight.size(); ++p) {
        double s = 0;
        for (std::size_t c = 0; c < cells.size(); ++c)
            s += theta[c] * theta[c] * sig2[c][p];
        acc += point_weight[p] * std::sqrt(s);
    }
    for (std::size_t c = 0; c < cells.size(); ++c) acc += (1.0 - theta[c]) * garsia[c];
    return acc;
}

std::vector<double> DgProblem::subgradient(std::span<const double> theta) const {
    std::vector<double> g(cells.size(), 0.0);
    for (std::size_t p = 0; p < point_weight.size(); ++p) {
        double s = 0;
        for (std::size_t c = 0; c < cells.size(); ++c)
            s += theta[c] * theta[c] * sig2[c][p];
        if (s <= 0) continue;  // kink: 0 is a valid subgradient component here
        const double root = std::sqrt(s);
        for (std::size_t c = 0; c < cells.size(); ++c)
            g[c] += point_weight[p] * theta[c] * sig2[c][p] / root;
    }
    for (std::size_t c = 0; c < cells.size(); ++c) g[c] -= garsia[c];
    return g;
}

DgProblem dg_problem(const Martingale2P& m) {
    const auto& space = m.filt.space;
    const std::size_t n = space.size();
    const auto diffs = differences(m);

    DgProblem prob;
    prob.point_weight.resize(n);
    for (std::size_t p = 0; p < n; ++p) prob.point_weight[p] = to_double(space.weight[p]);
    for (std::size_t i = 1; i <= m.rows(); ++i) {
        for (std::size_t j = 1; j <= m.cols(); ++j) {
            const auto& d = diffs[i - 1][j - 1];
            bool active = false;
            for (std::size_t p = 0; p < n; ++p)
                if (d.scalar_at(static_cast<PointId>(p)) != 0) {
                    active = true;
                    break;
                }
            if (!active) continue;
            const auto cond = cond_expect(space, d.squared(), f_minus(m.filt, i, j));
            std::vector<double> s2(n);
            for (std::size_t p = 0; p < n; ++p)
                s2[p] = to_double(cond.scalar_at(static_cast<PointId>(p)));
            prob.cells.emplace_back(i, j);
            prob.sig2.push_back(std::move(s2));
            prob.garsia.push_back(to_double(expectation(space, d.abs())));
        }
    }
    return prob;
}

namespace {

// Exact single-coordinate minimization by ternary search; the objective is
// convex in each coordinate.
void coordinate_polish(const DgProblem& prob, std::vector<double>& theta, double* best) {
    bool improved = true;
    std::size_t sweeps = 0;
    std::vector<double> trial = theta;
    while (improved && sweeps < 64) {
        improved = false;
        ++sweeps;
        for (std::size_t c = 0; c < prob.dims(); ++c) {
            double lo = 0.0, hi = 1.0;
            for (std::size_t it = 0; it < 100; ++it) {
                const double m1 = lo + (hi - lo) / 3;
                const double m2 = hi - (hi - lo) / 3;
                trial = theta;
                trial[c] = m1;
                const double f1 = prob.objective(trial);
                trial[c] = m2;
                const double f2 = prob.objective(trial);
                if (f1 <= f2)
                    hi = m2;
                else
                    lo = m1;
            }
            trial = theta;
            trial[c] = (lo + hi) / 2;
            double cand = prob.objective(trial);
            // endpoints often win exactly; test them explicitly
            trial[c] = 0.0;
            const double at0 = prob.objective(trial);
            trial[c] = 1.0;
            const double at1 = prob.objective(trial);
            double arg = (lo + hi) / 2;
            if (at0 < cand) {
                cand = at0;
                arg = 0.0;
            }
            if (at1 < cand) {
                cand = at1;
                arg = 1.0;
            }
            if (cand < *best - 1e-15) {
                *best = cand;
                theta[c] = arg;
                improved = true;
            }
        }
    }
}

}  // namespace

Decomposition davis_garsia_decompose(const Martingale2P& m, const DgOptions& opts) {
    {
        const F4Result f4 = check_f4(m.filt);
        if (!f4)
            throw Error(Errc::violation, "decomposition requires an F4 filtration: " +
                                             f4.witness->describe(m.filt));
    }
    const DgProblem prob = dg_problem(m);
    const std::size_t d = prob.dims();

    std::vector<std::vector<double>> starts;
    starts.push_back(std::vector<double>(d, 1.0));  // g = f, h = 0
    starts.push_back(std::vector<double>(d, 0.0));  // g = 0, h = f
    if (d > 0 && d <= 10) {
        for (std::uint64_t mask = 1; mask + 1 < (1ull << d); ++mask) {
            std::vector<double> v(d);
            for (std::size_t c = 0; c < d; ++c) v[c] = (mask >> c) & 1 ? 1.0 : 0.0;
            starts.push_back(std::move(v));
        }
    }
    Rng rng{mix64(opts.seed)};
    for (std::size_t s = 0; s < opts.random_starts; ++s) {
        std::vector<double> v(d);
        for (auto& x : v) x = rng.unit();
        starts.push_back(std::move(v));
    }

    std::vector<double> best_theta(d, 1.0);
    double best = prob.objective(best_theta);
    const std::size_t budget = starts.empty() ? 0 : opts.max_iters / starts.size();

    for (const auto& start : starts) {
        std::vector<double> theta = start;
        double cur = prob.objective(theta);
        if (cur < best) {
            best = cur;
            best_theta = theta;
        }
        double prev = cur;
        std::size_t stall = 0;
        for (std::size_t t = 1; t <= budget; ++t) {
            const auto g = prob.subgradient(theta);
            double gnorm = 0;
            for (double x : g) gnorm += x * x;
            gnorm = std::sqrt(gnorm);
            if (gnorm < 1e-300) break;
            // normalized step: the box has unit diameter per coordinate
            const double step = 0.5 / (gnorm * std::sqrt(static_cast<double>(t)));
            for (std::size_t c = 0; c < d; ++c)
                theta[c] = std::clamp(theta[c] - step * g[c], 0.0, 1.0);
            cur = prob.objective(theta);
            if (cur < best) {
                best = cur;
                best_theta = theta;
            }
            if (std::abs(prev - cur) <= opts.rel_tol * std::max(1.0, std::abs(prev))) {
                if (++stall > 20) break;
            } else {
                stall = 0;
            }
            prev = cur;
            if (opts.trace && t % 1000 == 0)
                std::cerr << "[dg] iter " << t << " obj " << cur << " best " << best << "\n";
        }
    }
    coordinate_polish(prob, best_theta, &best);
    if (opts.trace) std::cerr << "[dg] final objective " << best << "\n";

    // materialize the exact decomposition from the optimal split
    Decomposition out;
    out.active_cells = prob.cells;
    out.split.reserve(d);
    for (double t : best_theta) out.split.emplace_back(t);  // dyadic rational, exact

    const auto diffs = differences(m);
    const std::size_t N = m.rows(), M = m.cols();
    auto split_of = [&](std::size_t i, std::size_t j) -> Rat {
        for (std::size_t c = 0; c < prob.cells.size(); ++c)
            if (prob.cells[c] == std::make_pair(i, j)) return out.split[c];
        return Rat(0);
    };
    out.g.filt = m.filt;
    out.h.filt = m.filt;
    out.g.terms.resize(N);
    out.h.terms.resize(N);
    for (std::size_t i = 1; i <= N; ++i) {
        for (std::size_t j = 1; j <= M; ++j) {
            SimpleFunction acc = SimpleFunction::constant(m.filt.space.size(), 0);
            for (std::size_t ii = 1; ii <= i; ++ii)
                for (std::size_t jj = 1; jj <= j; ++jj)
                    acc = acc + diffs[ii - 1][jj - 1].scaled(split_of(ii, jj));
            out.g.terms[i - 1].push_back(acc.on(m.filt.at(i, j)));
            out.h.terms[i - 1].push_back((m.term(i, j) - acc).on(m.filt.at(i, j)));
        }
    }
    out.objective = best;
    return out;
}

OracleResult davis_garsia_oracle(const Martingale2P& m, std::size_t grid_steps,
                                 std::uint64_t eval_cap) {
    if (grid_steps < 2) throw Error(Errc::input, "need at least two grid steps");
    const DgProblem prob = dg_problem(m);
    const std::size_t d = prob.dims();
    double evals = 1;
    for (std::size_t c = 0; c < d; ++c) evals *= static_cast<double>(grid_steps);
    if (evals > static_cast<double>(eval_cap))
        throw Error(Errc::cap, "oracle grid too large: " + std::to_string(evals) + " evaluations");

    OracleResult out;
    out.split.assign(d, 1.0);
    out.objective = prob.objective(out.split);
    std::vector<std::size_t> idx(d, 0);
    std::vector<double> theta(d, 0.0);
    const std::uint64_t total = static_cast<std::uint64_t>(evals);
    for (std::uint64_t k = 0; k < total; ++k) {
        for (std::size_t c = 0; c < d; ++c)
            theta[c] = static_cast<double>(idx[c]) / static_cast<double>(grid_steps - 1);
        const double obj = prob.objective(theta);
        if (obj < out.objective) {
            out.objective = obj;
            out.split = theta;
        }
        for (std::size_t c = d; c-- > 0;) {
            if (++idx[c] < grid_steps) break;
            idx[c] = 0;
        }
    }
    return out;
}

double h1_sigma_norm(const Martingale2P& m) { return square_functions(m).h1_sigma; }
double h1_S_norm(const Martingale2P& m) { return square_functions(m).h1_S; }
Rat garsia_norm(const Martingale2P& m) { return square_functions(m).garsia; }

}  // namespace forge
