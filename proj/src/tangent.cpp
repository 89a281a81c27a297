#include "forge/tangent.hpp"

#include <map>
#include <sstream>
#include <unordered_map>

namespace forge {

namespace {

struct TupleHash {
    std::size_t operator()(const std::vector<std::uint32_t>& v) const {
        std::size_t h = 0xcbf29ce484222325ull;
        for (auto x : v) {
            h ^= x;
            h *= 0x100000001b3ull;
        }
        return h;
    }
};

using AtomLookup = std::unordered_map<std::vector<std::uint32_t>, std::uint32_t, TupleHash>;

AtomLookup build_lookup(const std::vector<std::vector<std::uint32_t>>& atoms) {
    AtomLookup lookup;
    lookup.reserve(atoms.size());
    for (std::uint32_t k = 0; k < atoms.size(); ++k) lookup.emplace(atoms[k], k);
    return lookup;
}

SampleSpace doubled_space(const SampleSpace& base) {
    const std::size_t K = base.size();
    SampleSpace out;
    out.labels.reserve(K * K);
    out.weight.reserve(K * K);
    for (std::size_t a = 0; a < K; ++a) {
        for (std::size_t b = 0; b < K; ++b) {
            out.labels.push_back(base.labels[a] + "|" + base.labels[b]);
            out.weight.push_back(base.weight[a] * base.weight[b]);
        }
    }
    return out;
}

Partition pair_partition(const Partition& p, std::size_t K) {
    return Partition::group_by<std::pair<std::uint32_t, std::uint32_t>>(
        K * K, [&](PointId pt) {
            return std::make_pair(p.block_index_of(static_cast<PointId>(pt / K)),
                                  p.block_index_of(static_cast<PointId>(pt % K)));
        });
}

SimpleFunction lift_first(const SimpleFunction& f, const Partition& doubled_part,
                          std::size_t K) {
    std::vector<std::vector<Rat>> vals(K * K);
    for (std::size_t a = 0; a < K; ++a)
        for (std::size_t b = 0; b < K; ++b)
            vals[a * K + b] = f.at(static_cast<PointId>(a));
    return SimpleFunction(doubled_part, std::move(vals));
}

// Factorization check of the conditional joint law of the tangent terms for
// every fixed base point. Exact: every observed tuple must carry the product
// mass, and the product masses of observed tuples must exhaust 1.
bool sections_independent(const SampleSpace& base, std::size_t K,
                          const std::vector<const SimpleFunction*>& gs,
                          std::optional<std::size_t>* bad_point) {
    for (std::size_t a = 0; a < K; ++a) {
        std::map<std::vector<Rat>, Rat> joint;
        std::vector<std::map<std::vector<Rat>, Rat>> marg(gs.size());
        for (std::size_t b = 0; b < K; ++b) {
            const PointId pt = static_cast<PointId>(a * K + b);
            std::vector<Rat> key;
            for (std::size_t k = 0; k < gs.size(); ++k) {
                const auto& v = gs[k]->at(pt);
                marg[k][v] += base.weight[b];
                for (const auto& x : v) key.push_back(x);
            }
            joint[key] += base.weight[b];
        }
        Rat covered = 0;
        for (const auto& [key, mass] : joint) {
            Rat prod = 1;
            std::size_t off = 0;
            for (std::size_t k = 0; k < gs.size(); ++k) {
                const std::size_t d = gs[k]->dim();
                std::vector<Rat> sub(key.begin() + off, key.begin() + off + d);
                off += d;
                prod *= marg[k].at(sub);
            }
            if (prod != mass) {
                if (bad_point) *bad_point = a;
                return false;
            }
            covered += prod;
        }
        if (covered != 1) {
            if (bad_point) *bad_point = a;
            return false;
        }
    }
    return true;
}

}  // namespace

TangentPair1P tangent_copy(const CanonicalModel1P& model, std::span<const SimpleFunction> fs) {
    const std::size_t K = model.product_space.size();
    if (fs.empty()) throw Error(Errc::input, "empty sequence");
    if (fs.size() > model.source.horizon())
        throw Error(Errc::input, "sequence longer than the filtration");
    for (std::size_t k = 1; k <= fs.size(); ++k)
        if (!fs[k - 1].measurable_wrt(model.canonical.level(k)))
            throw Error(Errc::input,
                        "term " + std::to_string(k) + " is not adapted to the canonical filtration");

    TangentPair1P tp;
    tp.base_space = model.product_space;
    tp.base_points = K;
    tp.doubled = doubled_space(model.product_space);
    tp.source.assign(fs.begin(), fs.end());
    for (std::size_t k = 0; k <= fs.size(); ++k)
        tp.doubled_levels.push_back(pair_partition(model.canonical.level(k), K));

    const AtomLookup lookup = build_lookup(model.atoms);
    for (std::size_t k = 1; k <= fs.size(); ++k) {
        tp.lifted.push_back(lift_first(fs[k - 1], tp.doubled_levels[k], K));
        std::vector<std::vector<Rat>> vals(K * K);
        for (std::size_t a = 0; a < K; ++a) {
            for (std::size_t b = 0; b < K; ++b) {
                std::vector<std::uint32_t> hybrid = model.atoms[a];
                hybrid[k] = model.atoms[b][k];  // fresh k-th coordinate
                vals[a * K + b] = fs[k - 1].at(lookup.at(hybrid));
            }
        }
        tp.tangent.emplace_back(tp.doubled_levels[k], std::move(vals));
    }
    return tp;
}

TangentPair2P tangent_copy(const CanonicalModel2P& model,
                           const std::vector<std::vector<SimpleFunction>>& fs) {
    const std::size_t K = model.product_space.size();
    const std::size_t N = model.source.rows(), M = model.source.cols();
    if (fs.size() != N) throw Error(Errc::input, "sequence grid has wrong row count");
    for (const auto& row : fs)
        if (row.size() != M) throw Error(Errc::input, "sequence grid has wrong column count");
    for (std::size_t i = 1; i <= N; ++i)
        for (std::size_t j = 1; j <= M; ++j)
            if (!fs[i - 1][j - 1].measurable_wrt(model.canonical.at(i, j)))
                throw Error(Errc::input, "grid term is not adapted to the canonical grid");

    TangentPair2P tp;
    tp.base_space = model.product_space;
    tp.base_points = K;
    tp.doubled = doubled_space(model.product_space);
    tp.source = fs;
    tp.doubled_revealed.assign(N + 1, std::vector<Partition>(M + 1));
    tp.lifted.resize(N);
    tp.tangent.resize(N);

    const AtomLookup lookup = build_lookup(model.atoms);
    for (std::size_t i = 1; i <= N; ++i) {
        for (std::size_t j = 1; j <= M; ++j) {
            const Partition revealed = f_minus(model.canonical, i, j);
            tp.doubled_revealed[i][j] = pair_partition(revealed, K);
            const Partition doubled_level = pair_partition(model.canonical.at(i, j), K);
            tp.lifted[i - 1].push_back(lift_first(fs[i - 1][j - 1], doubled_level, K));
            const std::size_t cell = model.cell_index(i, j);
            std::vector<std::vector<Rat>> vals(K * K);
            for (std::size_t a = 0; a < K; ++a) {
                for (std::size_t b = 0; b < K; ++b) {
                    std::vector<std::uint32_t> hybrid = model.atoms[a];
                    hybrid[cell] = model.atoms[b][cell];  // fresh (i,j) coordinate
                    vals[a * K + b] = fs[i - 1][j - 1].at(lookup.at(hybrid));
                }
            }
            tp.tangent[i - 1].emplace_back(doubled_level, std::move(vals));
        }
    }
    return tp;
}

TangentCertificate verify_tangent(const TangentPair1P& tp) {
    TangentCertificate cert;
    for (std::size_t k = 1; k <= tp.tangent.size(); ++k) {
        const auto lhs = cond_expect(tp.doubled, tp.lifted[k - 1], tp.doubled_levels[k - 1]);
        const auto rhs = cond_expect(tp.doubled, tp.tangent[k - 1], tp.doubled_levels[k - 1]);
        if (lhs.values() != rhs.values()) {
            cert.conditional_match = false;
            cert.first_mismatch_k = k;
            std::ostringstream os;
            os << "one-step conditional laws differ at k=" << k;
            cert.mismatch_detail = os.str();
            break;
        }
    }
    std::vector<const SimpleFunction*> gs;
    for (const auto& g : tp.tangent) gs.push_back(&g);
    cert.independent =
        sections_independent(tp.base_space, tp.base_points, gs, &cert.dependent_base_point);
    cert.pass = cert.conditional_match && cert.independent;
    return cert;
}

TangentCertificate verify_tangent(const TangentPair2P& tp) {
    TangentCertificate cert;
    const std::size_t N = tp.tangent.size();
    for (std::size_t i = 1; i <= N && cert.conditional_match; ++i) {
        const std::size_t M = tp.tangent[i - 1].size();
        for (std::size_t j = 1; j <= M; ++j) {
            const auto& past = tp.doubled_revealed[i][j];
            const auto lhs = cond_expect(tp.doubled, tp.lifted[i - 1][j - 1], past);
            const auto rhs = cond_expect(tp.doubled, tp.tangent[i - 1][j - 1], past);
            if (lhs.values() != rhs.values()) {
                cert.conditional_match = false;
                cert.first_mismatch_k = (i - 1) * M + (j - 1);
                std::ostringstream os;
                os << "one-step conditional laws differ at (" << i << "," << j << ")";
                cert.mismatch_detail = os.str();
                break;
            }
        }
    }
    std::vector<const SimpleFunction*> gs;
    for (const auto& row : tp.tangent)
        for (const auto& g : row) gs.push_back(&g);
    cert.independent =
        sections_independent(tp.base_space, tp.base_points, gs, &cert.dependent_base_point);
    cert.pass = cert.conditional_match && cert.independent;
    return cert;
}

}  // namespace forge
