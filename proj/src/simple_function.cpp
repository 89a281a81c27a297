#include "forge/simple_function.hpp"

#include <map>

namespace forge {

SimpleFunction::SimpleFunction(Partition measurability, std::vector<std::vector<Rat>> per_point)
    : part_(std::move(measurability)), values_(std::move(per_point)) {
    if (values_.size() != part_.point_count())
        throw Error(Errc::input, "value count does not match point count");
    if (values_.empty()) throw Error(Errc::input, "function on empty space");
    dim_ = values_[0].size();
    if (dim_ == 0) throw Error(Errc::input, "zero-dimensional values");
    for (const auto& v : values_)
        if (v.size() != dim_) throw Error(Errc::input, "mixed value dimensions");
    for (const auto& block : part_.blocks()) {
        const auto& ref = values_[block.front()];
        for (PointId p : block)
            if (values_[p] != ref)
                throw Error(Errc::input, "function is not constant on an atom of its partition");
    }
}

SimpleFunction SimpleFunction::scalar(Partition measurability, std::vector<Rat> per_point) {
    std::vector<std::vector<Rat>> vals;
    vals.reserve(per_point.size());
    for (auto& v : per_point) vals.push_back({std::move(v)});
    return SimpleFunction(std::move(measurability), std::move(vals));
}

SimpleFunction SimpleFunction::constant(std::size_t n_points, Rat value) {
    return constant_vec(n_points, {std::move(value)});
}

SimpleFunction SimpleFunction::constant_vec(std::size_t n_points, std::vector<Rat> value) {
    return SimpleFunction(Partition::trivial(n_points),
                          std::vector<std::vector<Rat>>(n_points, value));
}

SimpleFunction SimpleFunction::from_block_values(Partition measurability,
                                                 std::vector<std::vector<Rat>> per_block) {
    if (per_block.size() != measurability.block_count())
        throw Error(Errc::input, "value count does not match atom count");
    std::vector<std::vector<Rat>> vals(measurability.point_count());
    for (std::size_t b = 0; b < per_block.size(); ++b)
        for (PointId p : measurability.block(b)) vals[p] = per_block[b];
    return SimpleFunction(std::move(measurability), std::move(vals));
}

SimpleFunction SimpleFunction::indicator(Partition measurability, const PointSet& event) {
    std::vector<std::vector<Rat>> vals(measurability.point_count(), {Rat(0)});
    for (PointId p : event) vals[p] = {Rat(1)};
    return SimpleFunction(std::move(measurability), std::move(vals));
}

SimpleFunction SimpleFunction::on(Partition finer) const {
    if (!refines(finer, part_))
        throw Error(Errc::input, "not adapted: requested partition does not refine measurability");
    return SimpleFunction(std::move(finer), values_);
}

bool SimpleFunction::measurable_wrt(const Partition& coarser) const {
    if (coarser.point_count() != points()) return false;
    for (const auto& block : coarser.blocks()) {
        const auto& ref = values_[block.front()];
        for (PointId p : block)
            if (values_[p] != ref) return false;
    }
    return true;
}

SimpleFunction SimpleFunction::abs() const {
    auto vals = values_;
    for (auto& v : vals)
        for (auto& x : v) x = rat_abs(x);
    return SimpleFunction(part_, std::move(vals));
}

SimpleFunction SimpleFunction::squared() const {
    if (dim_ != 1) throw Error(Errc::input, "squared() requires a scalar function");
    auto vals = values_;
    for (auto& v : vals) v[0] *= v[0];
    return SimpleFunction(part_, std::move(vals));
}

SimpleFunction SimpleFunction::scaled(const Rat& c) const {
    auto vals = values_;
    for (auto& v : vals)
        for (auto& x : v) x *= c;
    return SimpleFunction(part_, std::move(vals));
}

namespace {

Partition combine_parts(const SimpleFunction& a, const SimpleFunction& b) {
    if (a.points() != b.points())
        throw Error(Errc::input, "functions on different point sets");
    if (a.measurability() == b.measurability()) return a.measurability();
    return join(a.measurability(), b.measurability());
}

}  // namespace

SimpleFunction operator+(const SimpleFunction& a, const SimpleFunction& b) {
    if (a.dim() != b.dim()) throw Error(Errc::input, "dimension mismatch");
    auto part = combine_parts(a, b);
    std::vector<std::vector<Rat>> vals(a.points());
    for (std::size_t p = 0; p < a.points(); ++p) {
        vals[p] = a.at(static_cast<PointId>(p));
        const auto& bv = b.at(static_cast<PointId>(p));
        for (std::size_t k = 0; k < bv.size(); ++k) vals[p][k] += bv[k];
    }
    return SimpleFunction(std::move(part), std::move(vals));
}

SimpleFunction operator-(const SimpleFunction& a, const SimpleFunction& b) {
    return a + b.scaled(-1);
}

SimpleFunction operator*(const SimpleFunction& a, const SimpleFunction& b) {
    if (a.dim() != 1 || b.dim() != 1)
        throw Error(Errc::input, "pointwise product requires scalar functions");
    auto part = combine_parts(a, b);
    std::vector<std::vector<Rat>> vals(a.points());
    for (std::size_t p = 0; p < a.points(); ++p)
        vals[p] = {a.scalar_at(static_cast<PointId>(p)) * b.scalar_at(static_cast<PointId>(p))};
    return SimpleFunction(std::move(part), std::move(vals));
}

SimpleFunction cond_expect(const SampleSpace& space, const SimpleFunction& f, const Partition& g) {
    if (f.points() != space.size() || g.point_count() != space.size())
        throw Error(Errc::input, "space/function/partition size mismatch");
    std::vector<std::vector<Rat>> block_vals(g.block_count());
    for (std::size_t b = 0; b < g.block_count(); ++b) {
        std::vector<Rat> acc(f.dim(), Rat(0));
        Rat mass = 0;
        for (PointId p : g.block(b)) {
            mass += space.weight[p];
            const auto& v = f.at(p);
            for (std::size_t k = 0; k < v.size(); ++k) acc[k] += space.weight[p] * v[k];
        }
        for (auto& x : acc) x /= mass;
        block_vals[b] = std::move(acc);
    }
    return SimpleFunction::from_block_values(g, std::move(block_vals));
}

std::vector<Rat> expectation_vec(const SampleSpace& space, const SimpleFunction& f) {
    std::vector<Rat> acc(f.dim(), Rat(0));
    for (std::size_t p = 0; p < space.size(); ++p) {
        const auto& v = f.at(static_cast<PointId>(p));
        for (std::size_t k = 0; k < v.size(); ++k) acc[k] += space.weight[p] * v[k];
    }
    return acc;
}

Rat expectation(const SampleSpace& space, const SimpleFunction& f) {
    if (f.dim() != 1) throw Error(Errc::input, "expectation() requires a scalar function");
    return expectation_vec(space, f)[0];
}

CondIndepResult cond_indep(const SampleSpace& space, const Partition& p, const Partition& q,
                           const Partition& given) {
    if (p.point_count() != space.size() || q.point_count() != space.size() ||
        given.point_count() != space.size())
        throw Error(Errc::input, "partitions over different point sets");
    for (std::uint32_t a = 0; a < given.block_count(); ++a) {
        const PointSet& A = given.block(a);
        const Rat pa = space.mass(A);
        // joint masses P(B ∩ C ∩ A) and marginals over the atom A
        std::map<std::pair<std::uint32_t, std::uint32_t>, Rat> joint;
        std::map<std::uint32_t, Rat> pm, qm;
        for (PointId pt : A) {
            const auto key = std::make_pair(p.block_index_of(pt), q.block_index_of(pt));
            joint[key] += space.weight[pt];
            pm[key.first] += space.weight[pt];
            qm[key.second] += space.weight[pt];
        }
        // every (B, C) pair meeting A must satisfy the product rule, including
        // pairs whose joint intersection is empty
        for (const auto& [pb, pmass] : pm) {
            for (const auto& [qb, qmass] : qm) {
                Rat j = 0;
                if (auto it = joint.find({pb, qb}); it != joint.end()) j = it->second;
                const Rat lhs = j / pa;
                const Rat rhs = (pmass / pa) * (qmass / pa);
                if (lhs != rhs) {
                    CondIndepWitness w;
                    w.given_block = a;
                    w.p_block = pb;
                    w.q_block = qb;
                    w.joint = lhs;
                    w.product = rhs;
                    return CondIndepResult{false, w};
                }
            }
        }
    }
    return CondIndepResult{true, std::nullopt};
}

Partition sigma_of(std::span<const SimpleFunction> fs) {
    if (fs.empty()) throw Error(Errc::input, "sigma_of on empty family");
    const std::size_t n = fs[0].points();
    for (const auto& f : fs)
        if (f.points() != n) throw Error(Errc::input, "functions on different point sets");
    return Partition::group_by<std::vector<Rat>>(n, [&](PointId p) {
        std::vector<Rat> key;
        for (const auto& f : fs)
            for (const auto& x : f.at(p)) key.push_back(x);
        return key;
    });
}

}  // namespace forge
