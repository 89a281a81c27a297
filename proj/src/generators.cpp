#include "forge/generators.hpp"

#include "forge/embed.hpp"
#include "forge/f4.hpp"

#include <algorithm>
#include <array>
#include <string>

namespace forge {

SampleSpace gen_space(Rng& rng, std::size_t min_points, std::size_t max_points) {
    const std::size_t n = min_points + rng.index(max_points - min_points + 1);
    SampleSpace s;
    s.labels.reserve(n);
    s.weight.reserve(n);
    Int total = 0;
    std::vector<Int> raw(n);
    for (std::size_t p = 0; p < n; ++p) {
        raw[p] = 1 + rng.below(12);
        total += raw[p];
        s.labels.push_back("p" + std::to_string(p));
    }
    for (std::size_t p = 0; p < n; ++p) s.weight.emplace_back(raw[p], total);
    return s;
}

Partition random_refinement(Rng& rng, const Partition& part) {
    std::vector<PointSet> blocks;
    for (const auto& block : part.blocks()) {
        if (block.size() < 2 || rng.coin()) {
            blocks.push_back(block);
            continue;
        }
        PointSet shuffled = block;
        for (std::size_t k = shuffled.size(); k > 1; --k)
            std::swap(shuffled[k - 1], shuffled[rng.index(k)]);
        const std::size_t cut = 1 + rng.index(shuffled.size() - 1);
        blocks.push_back(normalized(PointSet(shuffled.begin(), shuffled.begin() + cut)));
        blocks.push_back(normalized(PointSet(shuffled.begin() + cut, shuffled.end())));
    }
    return Partition::from_blocks(part.point_count(), std::move(blocks));
}

Filtration1P gen_filtration_1p(Rng& rng, std::size_t levels, std::size_t min_points,
                               std::size_t max_points) {
    Filtration1P filt;
    filt.space = gen_space(rng, min_points, max_points);
    filt.levels.push_back(Partition::trivial(filt.space.size()));
    for (std::size_t n = 1; n <= levels; ++n)
        filt.levels.push_back(random_refinement(rng, filt.levels.back()));
    return filt;
}

BiFiltration tensor_bifiltration(const Filtration1P& rows, const Filtration1P& cols) {
    const std::size_t ns = rows.space.size(), nt = cols.space.size();
    BiFiltration bf;
    bf.space.labels.reserve(ns * nt);
    bf.space.weight.reserve(ns * nt);
    for (std::size_t s = 0; s < ns; ++s) {
        for (std::size_t t = 0; t < nt; ++t) {
            bf.space.labels.push_back(rows.space.labels[s] + "*" + cols.space.labels[t]);
            bf.space.weight.push_back(rows.space.weight[s] * cols.space.weight[t]);
        }
    }
    const std::size_t N = rows.horizon(), M = cols.horizon();
    bf.grid.assign(N + 1, std::vector<Partition>(M + 1));
    for (std::size_t i = 0; i <= N; ++i) {
        for (std::size_t j = 0; j <= M; ++j) {
            if (i == 0 || j == 0) {
                bf.grid[i][j] = Partition::trivial(ns * nt);
                continue;
            }
            bf.grid[i][j] = Partition::group_by<std::pair<std::uint32_t, std::uint32_t>>(
                ns * nt, [&](PointId p) {
                    return std::make_pair(rows.level(i).block_index_of(p / nt),
                                          cols.level(j).block_index_of(p % nt));
                });
        }
    }
    return bf;
}

BiFiltration rectangle_product_bifiltration(const std::vector<std::vector<SampleSpace>>& factors) {
    const std::size_t N = factors.size(), M = factors[0].size();
    std::size_t n_points = 1;
    for (const auto& row : factors)
        for (const auto& f : row) n_points *= f.size();

    // point index = mixed-radix tuple over cells, row-major, last cell fastest
    std::vector<std::size_t> radix;
    for (const auto& row : factors)
        for (const auto& f : row) radix.push_back(f.size());
    auto digit = [&](std::size_t point, std::size_t cell) {
        std::size_t div = 1;
        for (std::size_t c = radix.size(); c-- > cell + 1;) div *= radix[c];
        return (point / div) % radix[cell];
    };

    BiFiltration bf;
    bf.space.labels.reserve(n_points);
    bf.space.weight.reserve(n_points);
    for (std::size_t p = 0; p < n_points; ++p) {
        std::string label;
        Rat w = 1;
        std::size_t cell = 0;
        for (std::size_t i = 0; i < N; ++i) {
            for (std::size_t j = 0; j < M; ++j, ++cell) {
                const std::size_t d = digit(p, cell);
                label += (cell ? "." : "") + std::to_string(d);
                w *= factors[i][j].weight[d];
            }
        }
        bf.space.labels.push_back(std::move(label));
        bf.space.weight.push_back(std::move(w));
    }
    bf.grid.assign(N + 1, std::vector<Partition>(M + 1));
    for (std::size_t i = 0; i <= N; ++i) {
        for (std::size_t j = 0; j <= M; ++j) {
            if (i == 0 || j == 0) {
                bf.grid[i][j] = Partition::trivial(n_points);
                continue;
            }
            bf.grid[i][j] = Partition::group_by<std::vector<std::uint32_t>>(
                n_points, [&](PointId p) {
                    std::vector<std::uint32_t> key;
                    std::size_t cell = 0;
                    for (std::size_t ii = 0; ii < N; ++ii)
                        for (std::size_t jj = 0; jj < M; ++jj, ++cell)
                            if (ii < i && jj < j)
                                key.push_back(static_cast<std::uint32_t>(digit(p, cell)));
                    return key;
                });
        }
    }
    return bf;
}

BiFiltration shuffle_points(Rng& rng, const BiFiltration& bf) {
    const std::size_t n = bf.space.size();
    std::vector<std::uint32_t> perm(n);
    for (std::size_t p = 0; p < n; ++p) perm[p] = static_cast<std::uint32_t>(p);
    for (std::size_t k = n; k > 1; --k) std::swap(perm[k - 1], perm[rng.index(k)]);

    BiFiltration out;
    out.space.labels.resize(n);
    out.space.weight.resize(n);
    for (std::size_t p = 0; p < n; ++p) {
        out.space.labels[p] = "p" + std::to_string(p);
        out.space.weight[p] = bf.space.weight[perm[p]];
    }
    out.grid.assign(bf.grid.size(), std::vector<Partition>(bf.grid[0].size()));
    for (std::size_t i = 0; i < bf.grid.size(); ++i)
        for (std::size_t j = 0; j < bf.grid[0].size(); ++j)
            out.grid[i][j] = Partition::group_by<std::uint32_t>(
                n, [&](PointId p) { return bf.grid[i][j].block_index_of(perm[p]); });
    return out;
}

namespace {

BiFiltration gen_generic(Rng& rng, const GeneratorConfig& cfg) {
    const SampleSpace space = gen_space(rng, cfg.points_min, cfg.points_max);
    const std::size_t N = cfg.depth_n, M = cfg.depth_m;
    BiFiltration bf;
    bf.space = space;
    bf.grid.assign(N + 1, std::vector<Partition>(M + 1, Partition::trivial(space.size())));
    for (std::size_t i = 1; i <= N; ++i) {
        for (std::size_t j = 1; j <= M; ++j) {
            Partition base = join(bf.grid[i - 1][j], bf.grid[i][j - 1]);
            bf.grid[i][j] = random_refinement(rng, base);
        }
    }
    return bf;
}

BiFiltration planted_non_f4(Rng& rng, const GeneratorConfig& cfg) {
    const std::size_t n = std::max<std::size_t>(3, cfg.points_min);
    SampleSpace space = gen_space(rng, n, std::max(n, cfg.points_max));
    const std::size_t pts = space.size();
    const std::size_t N = std::max<std::size_t>(2, cfg.depth_n);
    const std::size_t M = std::max<std::size_t>(2, cfg.depth_m);

    PointSet rest_a, rest_b;
    for (std::size_t p = 1; p < pts; ++p) rest_a.push_back(static_cast<PointId>(p));
    for (std::size_t p = 2; p < pts; ++p) rest_b.push_back(static_cast<PointId>(p));
    const Partition pa = Partition::from_blocks(pts, {{0}, rest_a});
    const Partition pb = Partition::from_blocks(pts, {{0, 1}, rest_b});

    BiFiltration bf;
    bf.space = std::move(space);
    bf.grid.assign(N + 1, std::vector<Partition>(M + 1, Partition::trivial(pts)));
    for (std::size_t i = 1; i <= N; ++i)
        for (std::size_t j = 1; j <= M; ++j) {
            if (i == 1 && j == 1)
                bf.grid[i][j] = Partition::trivial(pts);
            else if (j == 1)
                bf.grid[i][j] = pa;
            else if (i == 1)
                bf.grid[i][j] = pb;
            else
                bf.grid[i][j] = Partition::discrete(pts);
        }
    return bf;
}

}  // namespace

BiFiltration gen_bifiltration(Rng& rng, const GeneratorConfig& cfg) {
    switch (cfg.f4_mode) {
        case GeneratorConfig::F4Mode::guaranteed: {
            for (std::size_t attempt = 0; attempt < 64; ++attempt) {
                BiFiltration bf;
                if (rng.coin()) {
                    // a tensor needs factor sizes whose product stays in range
                    const std::size_t ns = 2 + rng.index(2);  // 2..3
                    const std::size_t max_t = std::max<std::size_t>(2, cfg.points_max / ns);
                    Filtration1P rows = gen_filtration_1p(rng, cfg.depth_n, ns, ns);
                    Filtration1P cols = gen_filtration_1p(rng, cfg.depth_m, 2, max_t);
                    bf = tensor_bifiltration(rows, cols);
                } else {
                    std::vector<std::vector<SampleSpace>> factors(
                        cfg.depth_n, std::vector<SampleSpace>(cfg.depth_m));
                    std::size_t budget = cfg.points_max;
                    for (std::size_t i = 0; i < cfg.depth_n; ++i) {
                        for (std::size_t j = 0; j < cfg.depth_m; ++j) {
                            const bool grow = budget >= 2 && ((i == 0 && j == 0) || rng.coin());
                            const std::size_t size = grow ? 2 : 1;
                            factors[i][j] = gen_space(rng, size, size);
                            if (size >= 2) budget /= 2;
                        }
                    }
                    bf = rectangle_product_bifiltration(factors);
                }
                bf = shuffle_points(rng, bf);
                if (bf.space.size() > cfg.points_max) continue;
                if (count_product_atoms(bf) > cfg.atom_cap) continue;
                return bf;
            }
            throw Error(Errc::cap, "could not generate a bifiltration within the caps");
        }
        case GeneratorConfig::F4Mode::generic:
            return gen_generic(rng, cfg);
        case GeneratorConfig::F4Mode::adversarial: {
            for (std::size_t attempt = 0; attempt < 64; ++attempt) {
                BiFiltration bf = gen_generic(rng, cfg);
                if (bf.rows() < 2 || bf.cols() < 2) break;
                if (!check_f4(bf)) return bf;
            }
            BiFiltration bf = planted_non_f4(rng, cfg);
            if (check_f4(bf))
                throw Error(Errc::violation, "planted pattern unexpectedly satisfies F4");
            return bf;
        }
    }
    throw Error(Errc::input, "unknown generator mode");
}

SimpleFunction gen_terminal(Rng& rng, const Partition& finest, const Rat& lo, const Rat& hi,
                            std::size_t dim) {
    std::vector<std::vector<Rat>> block_vals(finest.block_count());
    for (auto& v : block_vals) {
        v.reserve(dim);
        for (std::size_t k = 0; k < dim; ++k) v.push_back(rng.rat_in(lo, hi));
    }
    return SimpleFunction::from_block_values(finest, std::move(block_vals));
}

Martingale1P gen_martingale(Rng& rng, const Filtration1P& filt, const Rat& lo, const Rat& hi,
                            std::size_t dim) {
    return martingale_from_terminal(filt, gen_terminal(rng, filt.finest(), lo, hi, dim));
}

Martingale2P gen_martingale(Rng& rng, const BiFiltration& bf, const Rat& lo, const Rat& hi) {
    return martingale_from_terminal(bf, gen_terminal(rng, bf.finest(), lo, hi, 1));
}

WeightedSystem gen_weighted_system(Rng& rng, std::size_t max_points, std::size_t max_a,
                                   std::size_t max_b) {
    WeightedSystem ws;
    ws.space = gen_space(rng, 2, max_points);
    const std::size_t n = ws.space.size();
    const std::size_t A = 1 + rng.index(max_a);
    ws.b_size = 1 + rng.index(max_b);
    for (std::size_t a = 0; a < A; ++a) {
        Partition field = Partition::trivial(n);
        const std::size_t rounds = rng.index(3);
        for (std::size_t r = 0; r < rounds; ++r) field = random_refinement(rng, field);
        ws.fields.push_back(std::move(field));
    }
    ws.w.resize(A);
    ws.f.resize(A);
    for (std::size_t a = 0; a < A; ++a) {
        for (std::size_t b = 0; b < ws.b_size; ++b) {
            std::vector<Rat> wv(n);
            for (auto& x : wv) x = rng.rat_in(Rat(0), Rat(1));
            ws.w[a].push_back(std::move(wv));
            std::vector<std::vector<Rat>> fv(ws.fields[a].block_count());
            for (auto& v : fv) v = {rng.rat_in(Rat(-2), Rat(2))};
            ws.f[a].push_back(SimpleFunction::from_block_values(ws.fields[a], std::move(fv)));
        }
    }
    const std::array<Rat, 3> kappas = {Rat(1, 4), Rat(1, 2), Rat(1)};
    ws.kappa = kappas[rng.index(3)];
    ws.delta_sq = Rat(1, Int(A));
    return ws;
}

std::vector<SimpleFunction> gen_adapted_sequence(Rng& rng, const Filtration1P& filt,
                                                 std::size_t length, const Rat& lo, const Rat& hi,
                                                 bool nonneg) {
    std::vector<SimpleFunction> out;
    out.reserve(length);
    const Rat low = nonneg && lo < 0 ? Rat(0) : lo;
    for (std::size_t k = 1; k <= length; ++k)
        out.push_back(gen_terminal(rng, filt.level(k), low, hi, 1));
    return out;
}

}  // namespace forge
