#include "forge/embed.hpp"

#include <string>

namespace forge {

namespace {

ChainResult evaluate_chain_on(const CanonicalModel2P& model,
                              std::span<const std::uint32_t> coords) {
    const std::size_t N = model.source.rows(), M = model.source.cols();
    const std::size_t n_pts = model.source.space.size();
    ChainResult out;
    out.revealed.assign(N * M, {});
    out.chosen.assign(N * M, {});
    auto idx = [&](std::size_t i, std::size_t j) { return (i - 1) * M + (j - 1); };
    for (std::size_t i = 1; i <= N; ++i) {
        for (std::size_t j = 1; j <= M; ++j) {
            PointSet revealed;
            if (i == 1 && j == 1)
                revealed = full_set(n_pts);
            else if (j == 1)
                revealed = out.chosen[idx(i - 1, 1)];
            else if (i == 1)
                revealed = out.chosen[idx(1, j - 1)];
            else
                revealed = intersect(out.chosen[idx(i - 1, j)], out.chosen[idx(i, j - 1)]);
            if (revealed.empty()) {
                out.failed_i = i;
                out.failed_j = j;
                return out;  // image stays empty
            }
            const CoordinateFactor& cell = model.cell(i, j);
            const std::uint32_t a = cell.parent.block_index_of(revealed.front());
            if (cell.parent.block(a) != revealed) {
                // the accumulated set is not an atom of F⁻ — collapse
                out.failed_i = i;
                out.failed_j = j;
                return out;
            }
            const std::uint32_t child = cell.chosen_child(coords[idx(i, j)], a);
            out.revealed[idx(i, j)] = std::move(revealed);
            out.chosen[idx(i, j)] = cell.level.block(child);
        }
    }
    const PointSet& final_set = out.chosen[idx(N, M)];
    out.image = model.source.finest().block_index_of(final_set.front());
    return out;
}

}  // namespace

Int count_product_atoms(const BiFiltration& bf) {
    Int count = 1;
    for (std::size_t i = 1; i <= bf.rows(); ++i) {
        for (std::size_t j = 1; j <= bf.cols(); ++j) {
            const Partition fm = f_minus(bf, i, j);
            const auto& level = bf.at(i, j);
            for (std::size_t a = 0; a < fm.block_count(); ++a)
                count *= Int(children_of(level, fm, a).size());
        }
    }
    return count;
}

CanonicalModel2P build_canonical_2p(const BiFiltration& bf, std::uint64_t atom_cap,
                                    bool enforce_f4) {
    if (auto r = validate_bifiltration(bf); !r)
        throw Error(Errc::input, "invalid bifiltration: " + r.violation);
    if (enforce_f4) {
        const F4Result f4 = check_f4(bf);
        if (!f4)
            throw Error(Errc::violation,
                        "input does not satisfy the F4 condition: " + f4.witness->describe(bf));
    }
    const Int count = count_product_atoms(bf);
    if (count > atom_cap)
        throw Error(Errc::cap, "product atom count " + count.str() + " exceeds cap " +
                                   std::to_string(atom_cap));

    CanonicalModel2P model;
    model.source = bf;
    const std::size_t N = bf.rows(), M = bf.cols();
    for (std::size_t i = 1; i <= N; ++i)
        for (std::size_t j = 1; j <= M; ++j)
            model.cells.push_back(make_factor(bf.space, f_minus(bf, i, j), bf.at(i, j)));

    const std::size_t n_cells = model.cells.size();
    const std::size_t n_atoms = count.convert_to<std::size_t>();
    model.atoms.reserve(n_atoms);
    model.product_space.labels.reserve(n_atoms);
    model.product_space.weight.reserve(n_atoms);
    model.image.reserve(n_atoms);
    model.empty_mass = 0;

    std::vector<std::uint32_t> tuple(n_cells, 0);
    for (std::size_t k = 0; k < n_atoms; ++k) {
        Rat w = 1;
        for (std::size_t c = 0; c < n_cells; ++c)
            w *= model.cells[c].assignment_weight[tuple[c]];
        model.atoms.push_back(tuple);
        model.product_space.labels.push_back("a" + std::to_string(k));
        const ChainResult chain = evaluate_chain_on(model, tuple);
        model.image.push_back(chain.image);
        if (!chain.image) model.empty_mass += w;
        model.product_space.weight.push_back(std::move(w));
        for (std::size_t c = n_cells; c-- > 0;) {
            if (++tuple[c] < model.cells[c].assignment_count()) break;
            tuple[c] = 0;
        }
    }

    model.canonical.space = model.product_space;
    model.canonical.grid.assign(N + 1, std::vector<Partition>(M + 1));
    for (std::size_t i = 0; i <= N; ++i) {
        for (std::size_t j = 0; j <= M; ++j) {
            if (i == 0 || j == 0) {
                model.canonical.grid[i][j] = Partition::trivial(n_atoms);
                continue;
            }
            // field generated by the coordinates of the dominated rectangle
            std::vector<std::size_t> rect;
            for (std::size_t ii = 1; ii <= i; ++ii)
                for (std::size_t jj = 1; jj <= j; ++jj) rect.push_back(model.cell_index(ii, jj));
            model.canonical.grid[i][j] =
                Partition::group_by<std::vector<std::uint32_t>>(n_atoms, [&](PointId p) {
                    std::vector<std::uint32_t> key;
                    key.reserve(rect.size());
                    for (std::size_t c : rect) key.push_back(model.atoms[p][c]);
                    return key;
                });
        }
    }
    return model;
}

ChainResult evaluate_chain(const CanonicalModel2P& model,
                           std::span<const std::uint32_t> coords) {
    if (coords.size() != model.cells.size())
        throw Error(Errc::input, "assignment tuple has wrong arity");
    for (std::size_t c = 0; c < coords.size(); ++c)
        if (coords[c] >= model.cells[c].assignment_count())
            throw Error(Errc::input, "assignment index out of range");
    return evaluate_chain_on(model, coords);
}

PointSet direct_image(const CanonicalModel2P& model, std::span<const std::uint32_t> coords) {
    const std::size_t n_pts = model.source.space.size();
    PointSet acc = full_set(n_pts);
    for (std::size_t c = 0; c < model.cells.size(); ++c) {
        const CoordinateFactor& cell = model.cells[c];
        PointSet chosen_union;
        for (std::uint32_t a = 0; a < cell.parent.block_count(); ++a) {
            const std::uint32_t child = cell.chosen_child(coords[c], a);
            chosen_union = merge_disjoint(chosen_union, cell.level.block(child));
        }
        acc = intersect(acc, chosen_union);
        if (acc.empty()) return acc;
    }
    return acc;
}

PreimageMeasure preimage_measure(const CanonicalModel2P& model, std::uint32_t finest_block) {
    const auto& bf = model.source;
    const std::size_t N = bf.rows(), M = bf.cols();
    if (finest_block >= bf.finest().block_count())
        throw Error(Errc::input, "not an atom of the finest field");
    const PointId probe = bf.finest().block(finest_block).front();

    // conditional weights P_{A(i,j)}(B(i,j)) along the unique containing atoms
    std::vector<std::vector<Rat>> factor(N + 1, std::vector<Rat>(M + 1, Rat(1)));
    for (std::size_t i = 1; i <= N; ++i) {
        for (std::size_t j = 1; j <= M; ++j) {
            const CoordinateFactor& cell = model.cell(i, j);
            const Rat a_mass = bf.space.mass(cell.parent.block(cell.parent.block_index_of(probe)));
            const Rat b_mass = bf.space.mass(cell.level.block(cell.level.block_index_of(probe)));
            factor[i][j] = b_mass / a_mass;
        }
    }

    PreimageMeasure out;
    out.total = 1;
    for (std::size_t n = 1; n <= N; ++n) {
        for (std::size_t m = 1; m <= M; ++m) {
            Rat partial = 1;
            for (std::size_t i = 1; i <= n; ++i)
                for (std::size_t j = 1; j <= m; ++j) partial *= factor[i][j];
            const auto& level = bf.at(n, m);
            const Rat block_prob = bf.space.mass(level.block(level.block_index_of(probe)));
            if (partial != block_prob) out.identities_hold = false;
            out.steps.push_back({n, m, partial, block_prob});
            if (n == N && m == M) out.total = std::move(partial);
        }
    }
    return out;
}

}  // namespace forge
