#include "forge/serialize.hpp"

#include <fstream>
#include <map>

namespace forge {

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& msg) {
    throw Error(Errc::input, (path.empty() ? std::string("/") : path) + ": " + msg);
}

const Json& need(const Json& j, const char* key, const std::string& path) {
    if (!j.is_object()) fail(path, "expected an object");
    auto it = j.find(key);
    if (it == j.end()) fail(path, std::string("missing \"") + key + "\"");
    return *it;
}

std::string need_string(const Json& j, const char* key, const std::string& path) {
    const Json& v = need(j, key, path);
    if (!v.is_string()) fail(path + "/" + key, "expected a string");
    return v.get<std::string>();
}

void check_header(const Json& j, const char* type, const std::string& path) {
    if (need_string(j, "format", path) != kFormatTag)
        fail(path + "/format", std::string("unsupported format (expected ") + kFormatTag + ")");
    if (need_string(j, "type", path) != type)
        fail(path + "/type", std::string("expected type \"") + type + "\"");
}

const Json& need_array(const Json& j, const char* key, const std::string& path) {
    const Json& v = need(j, key, path);
    if (!v.is_array()) fail(path + "/" + key, "expected an array");
    return v;
}

}  // namespace

Json to_json(const Rat& r) {
    return Json{{"num", num(r).str()}, {"den", den(r).str()}};
}

Rat rat_from_json(const Json& j, const std::string& path) {
    if (!j.is_object()) fail(path, "expected a rational object {num, den}");
    const std::string ns = need_string(j, "num", path);
    const std::string ds = need_string(j, "den", path);
    Int d(ds);
    if (d == 0) fail(path + "/den", "zero denominator");
    return Rat(Int(ns), d);
}

Json to_json(const SampleSpace& s) {
    Json weights = Json::array();
    for (const auto& w : s.weight) weights.push_back(to_json(w));
    return Json{{"format", kFormatTag},
                {"type", "space"},
                {"points", s.labels},
                {"weights", weights}};
}

SampleSpace space_from_json(const Json& j, const std::string& path,
                            std::vector<std::string>* notes) {
    check_header(j, "space", path);
    const Json& points = need_array(j, "points", path);
    const Json& weights = need_array(j, "weights", path);
    if (points.size() != weights.size()) fail(path + "/weights", "length differs from points");
    SampleSpace s;
    for (std::size_t p = 0; p < points.size(); ++p) {
        const std::string ppath = path + "/points/" + std::to_string(p);
        if (!points[p].is_string()) fail(ppath, "expected a string point id");
        const Rat w = rat_from_json(weights[p], path + "/weights/" + std::to_string(p));
        if (w == 0) {
            // zero-weight points are stripped on ingestion
            if (notes)
                notes->push_back("stripped zero-weight point '" +
                                 points[p].get<std::string>() + "'");
            continue;
        }
        s.labels.push_back(points[p].get<std::string>());
        s.weight.push_back(w);
    }
    if (auto r = validate_space(s); !r) fail(path, "invalid space: " + r.violation);
    return s;
}

Json blocks_to_json(const SampleSpace& s, const Partition& p) {
    Json blocks = Json::array();
    for (const auto& block : p.blocks()) {
        Json b = Json::array();
        for (PointId pt : block) b.push_back(s.labels[pt]);
        blocks.push_back(std::move(b));
    }
    return blocks;
}

Json to_json(const SampleSpace& s, const Partition& p) {
    return Json{{"format", kFormatTag},
                {"type", "partition"},
                {"space", to_json(s)},
                {"blocks", blocks_to_json(s, p)}};
}

Partition partition_from_json(const Json& j, const SampleSpace& s, const std::string& path) {
    if (!j.is_array()) fail(path, "expected an array of blocks");
    std::map<std::string, PointId> index;
    for (std::size_t p = 0; p < s.size(); ++p) index[s.labels[p]] = static_cast<PointId>(p);
    std::vector<PointSet> blocks;
    for (std::size_t b = 0; b < j.size(); ++b) {
        const std::string bpath = path + "/" + std::to_string(b);
        if (!j[b].is_array()) fail(bpath, "expected an array of point ids");
        PointSet block;
        for (std::size_t k = 0; k < j[b].size(); ++k) {
            if (!j[b][k].is_string()) fail(bpath + "/" + std::to_string(k), "expected a string");
            auto it = index.find(j[b][k].get<std::string>());
            if (it == index.end())
                fail(bpath + "/" + std::to_string(k),
                     "unknown point '" + j[b][k].get<std::string>() + "'");
            block.push_back(it->second);
        }
        blocks.push_back(normalized(std::move(block)));
    }
    try {
        return Partition::from_blocks(s.size(), std::move(blocks));
    } catch (const Error& e) {
        fail(path, e.what());
    }
}

Json to_json(const Filtration1P& f) {
    Json levels = Json::array();
    for (const auto& level : f.levels) levels.push_back(blocks_to_json(f.space, level));
    return Json{{"format", kFormatTag},
                {"type", "filtration1p"},
                {"space", to_json(f.space)},
                {"levels", levels}};
}

Filtration1P filtration_from_json(const Json& j, const std::string& path,
                                  std::vector<std::string>* notes) {
    check_header(j, "filtration1p", path);
    Filtration1P f;
    f.space = space_from_json(need(j, "space", path), path + "/space", notes);
    const Json& levels = need_array(j, "levels", path);
    if (levels.empty()) fail(path + "/levels", "no levels");
    for (std::size_t n = 0; n < levels.size(); ++n)
        f.levels.push_back(
            partition_from_json(levels[n], f.space, path + "/levels/" + std::to_string(n)));
    if (auto r = validate_filtration(f); !r) fail(path, "invalid filtration: " + r.violation);
    return f;
}

Json to_json(const BiFiltration& bf) {
    Json grid = Json::array();
    for (const auto& row : bf.grid) {
        Json r = Json::array();
        for (const auto& p : row) r.push_back(blocks_to_json(bf.space, p));
        grid.push_back(std::move(r));
    }
    return Json{{"format", kFormatTag},
                {"type", "bifiltration"},
                {"space", to_json(bf.space)},
                {"grid", grid}};
}

BiFiltration bifiltration_from_json(const Json& j, const std::string& path,
                                    std::vector<std::string>* notes) {
    check_header(j, "bifiltration", path);
    BiFiltration bf;
    bf.space = space_from_json(need(j, "space", path), path + "/space", notes);
    const Json& grid = need_array(j, "grid", path);
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const std::string rpath = path + "/grid/" + std::to_string(i);
        if (!grid[i].is_array()) fail(rpath, "expected an array of partitions");
        std::vector<Partition> row;
        for (std::size_t k = 0; k < grid[i].size(); ++k)
            row.push_back(
                partition_from_json(grid[i][k], bf.space, rpath + "/" + std::to_string(k)));
        bf.grid.push_back(std::move(row));
    }
    if (auto r = validate_bifiltration(bf); !r) fail(path, "invalid bifiltration: " + r.violation);
    return bf;
}

namespace {

Json term_to_json(const SimpleFunction& f) {
    Json vals = Json::array();
    for (std::size_t p = 0; p < f.points(); ++p) {
        Json v = Json::array();
        for (const auto& x : f.at(static_cast<PointId>(p))) v.push_back(to_json(x));
        vals.push_back(std::move(v));
    }
    return Json{{"values", vals}};
}

SimpleFunction term_from_json(const Json& j, const Partition& level, const std::string& path) {
    const Json& vals = need_array(j, "values", path);
    if (vals.size() != level.point_count()) fail(path + "/values", "wrong point count");
    std::vector<std::vector<Rat>> per_point(vals.size());
    for (std::size_t p = 0; p < vals.size(); ++p) {
        const std::string vpath = path + "/values/" + std::to_string(p);
        if (!vals[p].is_array() || vals[p].empty()) fail(vpath, "expected a non-empty array");
        for (std::size_t k = 0; k < vals[p].size(); ++k)
            per_point[p].push_back(rat_from_json(vals[p][k], vpath + "/" + std::to_string(k)));
    }
    try {
        return SimpleFunction(level, std::move(per_point));
    } catch (const Error& e) {
        fail(path, e.what());
    }
}

}  // namespace

Json to_json(const Martingale1P& m) {
    Json terms = Json::array();
    for (const auto& t : m.terms) terms.push_back(term_to_json(t));
    Json j = to_json(m.filt);
    return Json{{"format", kFormatTag},
                {"type", "martingale1p"},
                {"filtration", std::move(j)},
                {"terms", terms}};
}

Martingale1P martingale1p_from_json(const Json& j, const std::string& path,
                                    std::vector<std::string>* notes) {
    check_header(j, "martingale1p", path);
    Martingale1P m;
    m.filt = filtration_from_json(need(j, "filtration", path), path + "/filtration", notes);
    const Json& terms = need_array(j, "terms", path);
    if (terms.size() != m.filt.horizon()) fail(path + "/terms", "term count != filtration depth");
    for (std::size_t n = 1; n <= terms.size(); ++n)
        m.terms.push_back(term_from_json(terms[n - 1], m.filt.level(n),
                                         path + "/terms/" + std::to_string(n - 1)));
    if (auto r = validate_martingale(m); !r) fail(path, "invalid martingale: " + r.violation);
    return m;
}

Json to_json(const Martingale2P& m) {
    Json terms = Json::array();
    for (const auto& row : m.terms) {
        Json r = Json::array();
        for (const auto& t : row) r.push_back(term_to_json(t));
        terms.push_back(std::move(r));
    }
    return Json{{"format", kFormatTag},
                {"type", "martingale2p"},
                {"bifiltration", to_json(m.filt)},
                {"terms", terms}};
}

Martingale2P martingale2p_from_json(const Json& j, const std::string& path,
                                    std::vector<std::string>* notes) {
    check_header(j, "martingale2p", path);
    Martingale2P m;
    m.filt = bifiltration_from_json(need(j, "bifiltration", path), path + "/bifiltration", notes);
    const Json& terms = need_array(j, "terms", path);
    if (terms.size() != m.filt.rows()) fail(path + "/terms", "row count != filtration rows");
    for (std::size_t i = 1; i <= terms.size(); ++i) {
        const std::string rpath = path + "/terms/" + std::to_string(i - 1);
        if (!terms[i - 1].is_array() || terms[i - 1].size() != m.filt.cols())
            fail(rpath, "column count != filtration columns");
        std::vector<SimpleFunction> row;
        for (std::size_t k = 1; k <= terms[i - 1].size(); ++k)
            row.push_back(term_from_json(terms[i - 1][k - 1], m.filt.at(i, k),
                                         rpath + "/" + std::to_string(k - 1)));
        m.terms.push_back(std::move(row));
    }
    if (auto r = validate_martingale(m); !r) fail(path, "invalid martingale: " + r.violation);
    return m;
}

namespace {

template <typename Model>
Json atoms_to_json(const Model& model) {
    Json atoms = Json::array();
    for (std::size_t a = 0; a < model.atoms.size(); ++a) {
        Json coords = Json::array();
        for (auto c : model.atoms[a]) coords.push_back(c);
        Json entry{{"coords", std::move(coords)},
                   {"weight", to_json(model.product_space.weight[a])}};
        if constexpr (requires { model.image[a].has_value(); }) {
            if (model.image[a])
                entry["image"] = *model.image[a];
            else
                entry["image"] = nullptr;
        } else {
            entry["image"] = model.image[a];
        }
        atoms.push_back(std::move(entry));
    }
    return atoms;
}

}  // namespace

Json to_json(const CanonicalModel1P& m) {
    return Json{{"format", kFormatTag},
                {"type", "model1p"},
                {"source", to_json(m.source)},
                {"atoms", atoms_to_json(m)}};
}

Json to_json(const CanonicalModel2P& m) {
    return Json{{"format", kFormatTag},
                {"type", "model2p"},
                {"source", to_json(m.source)},
                {"empty_mass", to_json(m.empty_mass)},
                {"atoms", atoms_to_json(m)}};
}

CanonicalModel1P model1p_from_json(const Json& j, const std::string& path) {
    check_header(j, "model1p", path);
    const Filtration1P source = filtration_from_json(need(j, "source", path), path + "/source");
    CanonicalModel1P model = build_canonical_1p(source);
    const Json& atoms = need_array(j, "atoms", path);
    if (atoms.size() != model.atoms.size())
        fail(path + "/atoms", "atom count differs from the rebuilt model");
    for (std::size_t a = 0; a < atoms.size(); ++a) {
        const std::string apath = path + "/atoms/" + std::to_string(a);
        if (rat_from_json(need(atoms[a], "weight", apath), apath + "/weight") !=
            model.product_space.weight[a])
            fail(apath + "/weight", "weight differs from the rebuilt model");
        const Json& img = need(atoms[a], "image", apath);
        if (!img.is_number_unsigned() || img.get<std::uint32_t>() != model.image[a])
            fail(apath + "/image", "image differs from the rebuilt model");
    }
    return model;
}

CanonicalModel2P model2p_from_json(const Json& j, const std::string& path) {
    check_header(j, "model2p", path);
    const BiFiltration source = bifiltration_from_json(need(j, "source", path), path + "/source");
    CanonicalModel2P model = build_canonical_2p(source);
    const Json& atoms = need_array(j, "atoms", path);
    if (atoms.size() != model.atoms.size())
        fail(path + "/atoms", "atom count differs from the rebuilt model");
    for (std::size_t a = 0; a < atoms.size(); ++a) {
        const std::string apath = path + "/atoms/" + std::to_string(a);
        if (rat_from_json(need(atoms[a], "weight", apath), apath + "/weight") !=
            model.product_space.weight[a])
            fail(apath + "/weight", "weight differs from the rebuilt model");
        const Json& img = need(atoms[a], "image", apath);
        if (img.is_null() != !model.image[a].has_value() ||
            (!img.is_null() && img.get<std::uint32_t>() != *model.image[a]))
            fail(apath + "/image", "image differs from the rebuilt model");
    }
    return model;
}

Json to_json(const MorphismCertificate& c) {
    Json levels = Json::array();
    for (const auto& l : c.levels)
        levels.push_back(Json{{"i", l.i}, {"j", l.j}, {"ok", l.ok}, {"detail", l.detail}});
    Json masses = Json::array();
    for (const auto& m : c.masses)
        masses.push_back(Json{{"atom", m.source_block},
                              {"pulled", to_json(m.pulled)},
                              {"direct", to_json(m.direct)},
                              {"ok", m.ok}});
    return Json{{"format", kFormatTag},
                {"type", "morphism_certificate"},
                {"adapted_ok", c.adapted_ok},
                {"measure_ok", c.measure_ok},
                {"empty_mass", to_json(c.empty_mass)},
                {"levels", levels},
                {"masses", masses},
                {"pass", c.pass}};
}

Json sequence_to_json(const std::vector<SimpleFunction>& fs) {
    Json terms = Json::array();
    for (const auto& f : fs) terms.push_back(term_to_json(f));
    return Json{{"format", kFormatTag}, {"type", "sequence"}, {"terms", terms}};
}

std::vector<SimpleFunction> sequence_from_json(const Json& j, const Filtration1P& canonical,
                                               const std::string& path) {
    check_header(j, "sequence", path);
    const Json& terms = need_array(j, "terms", path);
    if (terms.empty()) fail(path + "/terms", "empty sequence");
    if (terms.size() > canonical.horizon())
        fail(path + "/terms", "sequence longer than the filtration");
    std::vector<SimpleFunction> fs;
    for (std::size_t k = 1; k <= terms.size(); ++k) {
        SimpleFunction f = term_from_json(terms[k - 1], Partition::discrete(canonical.space.size()),
                                          path + "/terms/" + std::to_string(k - 1));
        if (!f.measurable_wrt(canonical.level(k)))
            fail(path + "/terms/" + std::to_string(k - 1),
                 "term is not adapted to the canonical filtration");
        fs.emplace_back(canonical.level(k), f.values());
    }
    return fs;
}

std::string document_type(const Json& j) {
    if (!j.is_object() || !j.contains("type") || !j["type"].is_string())
        throw Error(Errc::input, "/: document has no \"type\" field");
    return j["type"].get<std::string>();
}

Json load_document(const std::string& file_path) {
    std::ifstream in(file_path);
    if (!in) throw Error(Errc::input, "cannot open '" + file_path + "'");
    Json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw Error(Errc::input, "malformed JSON in '" + file_path + "': " + e.what());
    }
    return j;
}

void save_document(const Json& j, const std::string& file_path) {
    std::ofstream out(file_path);
    if (!out) throw Error(Errc::input, "cannot write '" + file_path + "'");
    out << j.dump(2) << "\n";
}

}  // namespace forge
