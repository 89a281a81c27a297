#include "forge/morphism.hpp"

#include <sstream>

namespace forge {

namespace {

// Eq-4-style check at one index: the class of the image (its containing
// source-level atom, or "no image") must be constant on every canonical
// block at that index.
template <typename ImageClass>
MorphismCertificate::LevelCheck level_check(std::size_t i, std::size_t j,
                                            const Partition& canonical_level,
                                            const ImageClass& image_class) {
    MorphismCertificate::LevelCheck out;
    out.i = i;
    out.j = j;
    for (std::size_t b = 0; b < canonical_level.block_count(); ++b) {
        const auto& block = canonical_level.block(b);
        const auto ref = image_class(block.front());
        for (PointId p : block) {
            if (image_class(p) != ref) {
                out.ok = false;
                std::ostringstream os;
                os << "preimage not a union of canonical atoms at index (" << i << "," << j
                   << "): canonical block " << b << " mixes image classes";
                out.detail = os.str();
                return out;
            }
        }
    }
    return out;
}

}  // namespace

std::string MorphismCertificate::summary() const {
    std::ostringstream os;
    os << (pass ? "PASS" : "FAIL") << " (adapted: " << (adapted_ok ? "ok" : "fail")
       << ", measure: " << (measure_ok ? "ok" : "fail") << ", empty mass " << rat_str(empty_mass)
       << ")";
    return os.str();
}

MorphismCertificate verify_morphism(const CanonicalModel1P& model) {
    MorphismCertificate cert;
    cert.empty_mass = 0;
    const auto& src = model.source;
    const auto& finest = src.finest();
    for (std::size_t n = 0; n <= src.horizon(); ++n) {
        const Partition& level = src.level(n);
        auto image_class = [&](PointId p) {
            return level.block_index_of(finest.block(model.image[p]).front());
        };
        auto check = level_check(n, 0, model.canonical.level(n), image_class);
        cert.adapted_ok = cert.adapted_ok && check.ok;
        cert.levels.push_back(std::move(check));
    }
    std::vector<Rat> pulled(finest.block_count(), Rat(0));
    for (std::size_t p = 0; p < model.image.size(); ++p)
        pulled[model.image[p]] += model.product_space.weight[p];
    for (std::uint32_t u = 0; u < finest.block_count(); ++u) {
        const Rat direct = src.space.mass(finest.block(u));
        const bool ok = pulled[u] == direct;
        cert.measure_ok = cert.measure_ok && ok;
        cert.masses.push_back({u, pulled[u], direct, ok});
    }
    cert.pass = cert.adapted_ok && cert.measure_ok;
    return cert;
}

MorphismCertificate verify_morphism(const CanonicalModel2P& model) {
    MorphismCertificate cert;
    cert.empty_mass = model.empty_mass;
    const auto& src = model.source;
    const auto& finest = src.finest();
    constexpr std::uint32_t kNoImage = UINT32_MAX;
    for (std::size_t i = 1; i <= src.rows(); ++i) {
        for (std::size_t j = 1; j <= src.cols(); ++j) {
            const Partition& level = src.at(i, j);
            auto image_class = [&](PointId p) -> std::uint32_t {
                if (!model.image[p]) return kNoImage;
                return level.block_index_of(finest.block(*model.image[p]).front());
            };
            auto check = level_check(i, j, model.canonical.at(i, j), image_class);
            cert.adapted_ok = cert.adapted_ok && check.ok;
            cert.levels.push_back(std::move(check));
        }
    }
    std::vector<Rat> pulled(finest.block_count(), Rat(0));
    for (std::size_t p = 0; p < model.image.size(); ++p)
        if (model.image[p]) pulled[*model.image[p]] += model.product_space.weight[p];
    for (std::uint32_t u = 0; u < finest.block_count(); ++u) {
        const Rat direct = src.space.mass(finest.block(u));
        const bool ok = pulled[u] == direct;
        cert.measure_ok = cert.measure_ok && ok;
        cert.masses.push_back({u, pulled[u], direct, ok});
    }
    cert.pass = cert.adapted_ok && cert.measure_ok;
    return cert;
}

SimpleFunction pullback(const CanonicalModel1P& model, const SimpleFunction& f,
                        std::size_t level) {
    if (level > model.source.horizon()) throw Error(Errc::input, "level out of range");
    if (!f.measurable_wrt(model.source.level(level)))
        throw Error(Errc::input, "function is not measurable at the declared level");
    const auto& finest = model.source.finest();
    std::vector<std::vector<Rat>> vals(model.image.size());
    for (std::size_t p = 0; p < model.image.size(); ++p)
        vals[p] = f.at(finest.block(model.image[p]).front());
    return SimpleFunction(model.canonical.level(level), std::move(vals));
}

SimpleFunction pullback(const CanonicalModel2P& model, const SimpleFunction& f, std::size_t i,
                        std::size_t j) {
    if (i < 1 || i > model.source.rows() || j < 1 || j > model.source.cols())
        throw Error(Errc::input, "index out of range");
    if (!f.measurable_wrt(model.source.at(i, j)))
        throw Error(Errc::input, "function is not measurable at the declared level");
    const auto& finest = model.source.finest();
    const std::vector<Rat> zero(f.dim(), Rat(0));
    std::vector<std::vector<Rat>> vals(model.image.size());
    for (std::size_t p = 0; p < model.image.size(); ++p) {
        if (model.image[p])
            vals[p] = f.at(finest.block(*model.image[p]).front());
        else
            vals[p] = zero;
    }
    return SimpleFunction(model.canonical.at(i, j), std::move(vals));
}

Martingale1P pullback(const CanonicalModel1P& model, const Martingale1P& m) {
    if (m.filt.levels != model.source.levels || m.filt.space != model.source.space)
        throw Error(Errc::input, "martingale filtration does not match the model source");
    Martingale1P out{model.canonical, {}};
    out.terms.reserve(m.horizon());
    for (std::size_t n = 1; n <= m.horizon(); ++n)
        out.terms.push_back(pullback(model, m.term(n), n));
    return out;
}

Martingale2P pullback(const CanonicalModel2P& model, const Martingale2P& m) {
    if (m.filt.grid != model.source.grid || m.filt.space != model.source.space)
        throw Error(Errc::input, "martingale filtration does not match the model source");
    Martingale2P out{model.canonical, {}};
    out.terms.resize(m.rows());
    for (std::size_t i = 1; i <= m.rows(); ++i)
        for (std::size_t j = 1; j <= m.cols(); ++j)
            out.terms[i - 1].push_back(pullback(model, m.term(i, j), i, j));
    return out;
}

Law joint_law(const SampleSpace& space, std::span<const SimpleFunction> fs) {
    return joint_law_restricted(space, fs, std::vector<char>(space.size(), 1));
}

Law joint_law_restricted(const SampleSpace& space, std::span<const SimpleFunction> fs,
                         const std::vector<char>& include) {
    for (const auto& f : fs)
        if (f.points() != space.size())
            throw Error(Errc::input, "functions on different spaces");
    Law law;
    for (std::size_t p = 0; p < space.size(); ++p) {
        if (!include[p]) continue;
        std::vector<Rat> key;
        for (const auto& f : fs)
            for (const auto& x : f.at(static_cast<PointId>(p))) key.push_back(x);
        law[key] += space.weight[p];
    }
    return law;
}

std::vector<char> image_mask(const CanonicalModel2P& model) {
    std::vector<char> mask(model.image.size());
    for (std::size_t p = 0; p < mask.size(); ++p) mask[p] = model.image[p].has_value();
    return mask;
}

}  // namespace forge
