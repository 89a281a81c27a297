#include "forge/embed.hpp"

#include <string>

namespace forge {

CoordinateFactor make_factor(const SampleSpace& space, const Partition& parent,
                             const Partition& level) {
    if (!refines(level, parent))
        throw Error(Errc::input, "factor level does not refine its parent field");
    CoordinateFactor f;
    f.parent = parent;
    f.level = level;
    const std::size_t n_parents = parent.block_count();
    f.children.resize(n_parents);
    f.child_weight.resize(n_parents);
    for (std::size_t a = 0; a < n_parents; ++a) {
        f.children[a] = children_of(level, parent, a);
        const Rat parent_mass = space.mass(parent.block(a));
        for (std::uint32_t c : f.children[a])
            f.child_weight[a].push_back(space.mass(level.block(c)) / parent_mass);
    }
    // enumerate assignments: mixed-radix counter, first parent atom most
    // significant, so the order is lexicographic in canonical atom order
    std::size_t total = 1;
    for (const auto& ch : f.children) total *= ch.size();
    f.assignments.reserve(total);
    f.assignment_weight.reserve(total);
    std::vector<std::uint32_t> pick(n_parents, 0);
    for (std::size_t k = 0; k < total; ++k) {
        Rat w = 1;
        for (std::size_t a = 0; a < n_parents; ++a) w *= f.child_weight[a][pick[a]];
        f.assignments.push_back(pick);
        f.assignment_weight.push_back(std::move(w));
        for (std::size_t a = n_parents; a-- > 0;) {
            if (++pick[a] < f.children[a].size()) break;
            pick[a] = 0;
        }
    }
    return f;
}

Int count_product_atoms(const Filtration1P& filt) {
    Int count = filt.level(0).block_count();
    for (std::size_t n = 1; n <= filt.horizon(); ++n) {
        const auto& parent = filt.level(n - 1);
        const auto& level = filt.level(n);
        for (std::size_t a = 0; a < parent.block_count(); ++a)
            count *= Int(children_of(level, parent, a).size());
    }
    return count;
}

CanonicalModel1P build_canonical_1p(const Filtration1P& filt, std::uint64_t atom_cap) {
    if (auto r = validate_filtration(filt); !r)
        throw Error(Errc::input, "invalid filtration: " + r.violation);
    const Int count = count_product_atoms(filt);
    if (count > atom_cap)
        throw Error(Errc::cap, "product atom count " + count.str() + " exceeds cap " +
                                   std::to_string(atom_cap));

    CanonicalModel1P model;
    model.source = filt;
    const std::size_t N = filt.horizon();
    for (std::size_t n = 1; n <= N; ++n)
        model.coords.push_back(make_factor(filt.space, filt.level(n - 1), filt.level(n)));

    // enumerate product atoms: (c0, a_1, ..., a_N), last coordinate fastest
    const std::size_t n_atoms = count.convert_to<std::size_t>();
    model.atoms.reserve(n_atoms);
    model.product_space.labels.reserve(n_atoms);
    model.product_space.weight.reserve(n_atoms);
    model.image.reserve(n_atoms);

    std::vector<std::uint32_t> tuple(N + 1, 0);
    const std::size_t n_roots = filt.level(0).block_count();
    for (std::size_t k = 0; k < n_atoms; ++k) {
        Rat w = filt.space.mass(filt.level(0).block(tuple[0]));
        for (std::size_t n = 1; n <= N; ++n) w *= model.coords[n - 1].assignment_weight[tuple[n]];
        // image: compose the assignments starting from the root atom
        std::uint32_t cur = tuple[0];
        for (std::size_t n = 1; n <= N; ++n)
            cur = model.coords[n - 1].chosen_child(tuple[n], cur);
        model.atoms.push_back(tuple);
        model.product_space.labels.push_back("a" + std::to_string(k));
        model.product_space.weight.push_back(std::move(w));
        model.image.push_back(cur);
        for (std::size_t d = N + 1; d-- > 0;) {
            const std::size_t radix = d == 0 ? n_roots : model.coords[d - 1].assignment_count();
            if (++tuple[d] < radix) break;
            tuple[d] = 0;
        }
    }

    model.canonical.space = model.product_space;
    for (std::size_t n = 0; n <= N; ++n) {
        model.canonical.levels.push_back(
            Partition::group_by<std::vector<std::uint32_t>>(n_atoms, [&](PointId p) {
                return std::vector<std::uint32_t>(model.atoms[p].begin(),
                                                  model.atoms[p].begin() + n + 1);
            }));
    }
    return model;
}

}  // namespace forge
