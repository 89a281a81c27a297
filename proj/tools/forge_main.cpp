// forge — canonical product models for one- and two-parameter atomic
// filtrations: build and verify the morphism, push martingales through it,
// and run the decoupling/square-function harnesses.

#include "forge/approx.hpp"
#include "forge/davis_garsia.hpp"
#include "forge/decouple.hpp"
#include "forge/doob.hpp"
#include "forge/suite.hpp"

#include <CLI11.hpp>

#include <iostream>

namespace {

using namespace forge;

int exit_code(bool pass) { return pass ? 0 : 1; }

void print_notes(const std::vector<std::string>& notes) {
    for (const auto& n : notes) std::cout << "note: " << n << "\n";
}

int cmd_validate(const std::string& file) {
    const Json doc = load_document(file);
    const std::string type = document_type(doc);
    std::vector<std::string> notes;
    ValidationReport report;
    if (type == "space") {
        report = validate_space(space_from_json(doc, "", &notes));
    } else if (type == "filtration1p") {
        report = validate_filtration(filtration_from_json(doc, "", &notes));
    } else if (type == "bifiltration") {
        report = validate_bifiltration(bifiltration_from_json(doc, "", &notes));
    } else if (type == "martingale1p") {
        report = validate_martingale(martingale1p_from_json(doc, "", &notes));
    } else if (type == "martingale2p") {
        report = validate_martingale(martingale2p_from_json(doc, "", &notes));
    } else {
        throw Error(Errc::input, "cannot validate documents of type '" + type + "'");
    }
    print_notes(notes);
    if (report) {
        std::cout << "ok\n";
        return 0;
    }
    std::cout << "violation: " << report.violation << "\n";
    return 1;
}

int cmd_check_f4(const std::string& file, bool witness) {
    const BiFiltration bf = bifiltration_from_json(load_document(file));
    const F4Result r = check_f4(bf);
    if (r.holds) {
        std::cout << "F4 holds";
        if (r.projection_checked) std::cout << " (projection identity verified)";
        std::cout << "\n";
        return 0;
    }
    std::cout << "F4 fails\n";
    if (witness && r.witness) std::cout << r.witness->describe(bf) << "\n";
    if (r.projection_checked && !r.projection_agrees)
        std::cout << "warning: " << r.projection_detail << "\n";
    return 1;
}

int cmd_embed(const std::string& file, bool one_param, bool two_param, std::uint64_t cap,
              const std::string& out) {
    const Json doc = load_document(file);
    if (one_param == two_param)
        throw Error(Errc::input, "choose exactly one of --one-param/--two-param");
    if (one_param) {
        const CanonicalModel1P model = build_canonical_1p(filtration_from_json(doc), cap);
        std::cout << "built one-parameter model: " << model.atoms.size() << " product atoms\n";
        if (!out.empty()) save_document(to_json(model), out);
        return 0;
    }
    const CanonicalModel2P model = build_canonical_2p(bifiltration_from_json(doc), cap);
    std::cout << "built two-parameter model: " << model.atoms.size()
              << " product atoms, empty mass " << rat_str(model.empty_mass) << "\n";
    if (!out.empty()) save_document(to_json(model), out);
    return 0;
}

MorphismCertificate verify_model(const Json& doc) {
    const std::string type = document_type(doc);
    if (type == "model1p") return verify_morphism(model1p_from_json(doc));
    if (type == "model2p") return verify_morphism(model2p_from_json(doc));
    throw Error(Errc::input, "expected a model document, got '" + type + "'");
}

int cmd_verify(const std::string& file, const std::string& out) {
    const MorphismCertificate cert = verify_model(load_document(file));
    std::cout << cert.summary() << "\n";
    for (const auto& l : cert.levels)
        if (!l.ok) std::cout << "  " << l.detail << "\n";
    for (const auto& m : cert.masses)
        if (!m.ok)
            std::cout << "  atom " << m.source_block << ": pulled " << rat_str(m.pulled)
                      << " != " << rat_str(m.direct) << "\n";
    if (!out.empty()) save_document(to_json(cert), out);
    return exit_code(cert.pass);
}

int cmd_push(const std::string& model_file, const std::string& mart_file,
             const std::string& out) {
    const Json model_doc = load_document(model_file);
    const Json mart_doc = load_document(mart_file);
    const std::string type = document_type(model_doc);
    bool equal = false;
    if (type == "model1p") {
        const CanonicalModel1P model = model1p_from_json(model_doc);
        const MorphismCertificate cert = verify_morphism(model);
        if (!cert.pass) throw Error(Errc::violation, "morphism verification failed");
        const Martingale1P mart = martingale1p_from_json(mart_doc);
        const Martingale1P pulled = pullback(model, mart);
        equal = equal_law(joint_law(model.source.space, mart.terms),
                          joint_law(model.product_space, pulled.terms));
        if (!out.empty()) save_document(to_json(pulled), out);
    } else if (type == "model2p") {
        const CanonicalModel2P model = model2p_from_json(model_doc);
        const MorphismCertificate cert = verify_morphism(model);
        if (!cert.pass) throw Error(Errc::violation, "morphism verification failed");
        const Martingale2P mart = martingale2p_from_json(mart_doc);
        const Martingale2P pulled = pullback(model, mart);
        std::vector<SimpleFunction> flat_src, flat_pulled;
        for (const auto& row : mart.terms)
            for (const auto& t : row) flat_src.push_back(t);
        for (const auto& row : pulled.terms)
            for (const auto& t : row) flat_pulled.push_back(t);
        equal = equal_law(joint_law(model.source.space, flat_src),
                          joint_law_restricted(model.product_space, flat_pulled,
                                               image_mask(model)));
        if (!out.empty()) save_document(to_json(pulled), out);
    } else {
        throw Error(Errc::input, "expected a model document, got '" + type + "'");
    }
    std::cout << (equal ? "joint law preserved exactly\n" : "joint law NOT preserved\n");
    return exit_code(equal);
}

int cmd_square(const std::string& file) {
    const Json doc = load_document(file);
    const std::string type = document_type(doc);
    if (type == "martingale1p") {
        const auto sq = square_functions(martingale1p_from_json(doc));
        std::cout << "E[S^2] = " << rat_str(sq.ES2) << " (= E[s^2] " << rat_str(sq.Es2) << ")\n"
                  << "|S|_1 = " << sq.h1_S << "\n|s|_1 = " << sq.h1_s << "\n"
                  << "garsia = " << rat_str(sq.garsia) << "\n";
        return 0;
    }
    if (type == "martingale2p") {
        const auto sq = square_functions(martingale2p_from_json(doc));
        std::cout << "E[S^2] = " << rat_str(sq.ES2) << ", E[s^2] = " << rat_str(sq.Es2)
                  << ", E[sigma^2] = " << rat_str(sq.Esigma2) << "\n"
                  << "|S|_1 = " << sq.h1_S << "\n|s|_1 = " << sq.h1_s
                  << "\n|sigma|_1 = " << sq.h1_sigma << "\n"
                  << "garsia = " << rat_str(sq.garsia) << "\n";
        return 0;
    }
    throw Error(Errc::input, "expected a martingale document, got '" + type + "'");
}

int cmd_decouple(const std::string& model_file, const std::string& seq_file,
                 const std::string& phi_name) {
    const CanonicalModel1P model = model1p_from_json(load_document(model_file));
    const auto fs = sequence_from_json(load_document(seq_file), model.canonical);
    const TangentPair1P tp = tangent_copy(model, fs);
    const TangentCertificate cert = verify_tangent(tp);
    std::cout << "tangent identity: " << (cert.conditional_match ? "exact" : "FAILS") << "\n"
              << "conditional independence: " << (cert.independent ? "exact" : "FAILS") << "\n";
    if (!cert.conditional_match) std::cout << "  " << cert.mismatch_detail << "\n";
    bool nonneg = true;
    for (const auto& f : fs)
        for (std::size_t p = 0; p < f.points(); ++p)
            if (f.scalar_at(static_cast<PointId>(p)) < 0) nonneg = false;
    if (nonneg) {
        const RatioReport r = decoupling_ratio(tp, phi_from_name(phi_name));
        std::cout << "phi=" << phi_name << ": lhs " << r.lhs << " rhs " << r.rhs << " ratio "
                  << r.ratio << "\n";
    } else {
        std::cout << "phi ratios skipped (sequence has negative values)\n";
    }
    return exit_code(cert.pass);
}

int cmd_davis_garsia(const std::string& file, std::size_t oracle_steps, std::uint64_t seed,
                     bool trace) {
    const Martingale2P mart = martingale2p_from_json(load_document(file));
    DgOptions opts;
    opts.seed = seed;
    opts.trace = trace;
    const Decomposition dec = davis_garsia_decompose(mart, opts);
    const double h1S = h1_S_norm(mart);
    const double h1s = h1_sigma_norm(mart);
    std::cout << "objective = " << dec.objective << "\n"
              << "|f|_{H1_S} = " << h1S << ", |f|_{H1_sigma} = " << h1s << "\n";
    if (h1S > 0) std::cout << "sandwich ratio objective/|f|_{H1_S} = " << dec.objective / h1S << "\n";
    if (oracle_steps > 0) {
        const OracleResult oracle = davis_garsia_oracle(mart, oracle_steps);
        std::cout << "grid oracle (" << oracle_steps << " steps) = " << oracle.objective
                  << ", |solver - oracle| = " << std::abs(dec.objective - oracle.objective)
                  << "\n";
    }
    return 0;
}

int cmd_suite(const std::string& name, const SuiteOptions& opts, const std::string& out) {
    const SuiteReport report = run_suite(name, opts);
    std::cout << "suite " << name << ": " << (report.pass ? "pass" : "FAIL") << " ("
              << report.failures << " failures over " << opts.trials << " trials)\n";
    if (!out.empty()) save_document(report.to_json(), out);
    return exit_code(report.pass);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"canonical product models and decoupling harnesses for atomic filtrations"};
    app.require_subcommand(1);

    std::string file, second, out, phi = "sqrt", suite_name;
    bool witness = false, one_param = false, two_param = false, trace = false;
    std::uint64_t cap = kDefaultAtomCap;
    std::size_t oracle_steps = 0;
    SuiteOptions sopts;

    auto* validate = app.add_subcommand("validate", "validate a document");
    validate->add_option("file", file)->required();

    auto* checkf4 = app.add_subcommand("check-f4", "F4 verdict for a bifiltration");
    checkf4->add_option("file", file)->required();
    checkf4->add_flag("--witness", witness, "print the violating triple");

    auto* embed = app.add_subcommand("embed", "build the canonical model and morphism");
    embed->add_option("file", file)->required();
    embed->add_flag("--one-param", one_param);
    embed->add_flag("--two-param", two_param);
    embed->add_option("--cap", cap, "product atom cap");
    embed->add_option("-o,--out", out, "write the model document");

    auto* verify = app.add_subcommand("verify", "morphism certificate for a model");
    verify->add_option("model", file)->required();
    verify->add_option("-o,--out", out, "write the certificate");

    auto* push = app.add_subcommand("push", "pull a martingale back through the morphism");
    push->add_option("model", file)->required();
    push->add_option("martingale", second)->required();
    push->add_option("-o,--out", out, "write the pulled-back martingale");

    auto* square = app.add_subcommand("square", "square functions and norms");
    square->add_option("martingale", file)->required();

    auto* decouple = app.add_subcommand("decouple", "tangent copy, certificate and phi ratios");
    decouple->add_option("model", file)->required();
    decouple->add_option("sequence", second)->required();
    decouple->add_option("--phi", phi, "sqrt|log1p|cap");

    auto* dg = app.add_subcommand("davis-garsia", "martingale decomposition solver");
    dg->add_option("martingale", file)->required();
    dg->add_option("--oracle-steps", oracle_steps, "cross-check against a grid oracle");
    dg->add_option("--seed", sopts.seed, "solver seed");
    dg->add_flag("--trace", trace, "dump solver progress");

    auto* suite = app.add_subcommand("suite", "run a named acceptance suite");
    suite->add_option("name", suite_name)->required();
    suite->add_option("--seed", sopts.seed);
    suite->add_option("--trials", sopts.trials);
    suite->add_option("--jobs", sopts.jobs);
    suite->add_option("--sandwich-trials", sopts.sandwich_trials);
    suite->add_option("-o,--out", out, "write the report");

    CLI11_PARSE(app, argc, argv);

    try {
        if (validate->parsed()) return cmd_validate(file);
        if (checkf4->parsed()) return cmd_check_f4(file, witness);
        if (embed->parsed()) return cmd_embed(file, one_param, two_param, cap, out);
        if (verify->parsed()) return cmd_verify(file, out);
        if (push->parsed()) return cmd_push(file, second, out);
        if (square->parsed()) return cmd_square(file);
        if (decouple->parsed()) return cmd_decouple(file, second, phi);
        if (dg->parsed()) return cmd_davis_garsia(file, oracle_steps, sopts.seed, trace);
        if (suite->parsed()) return cmd_suite(suite_name, sopts, out);
    } catch (const forge::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return static_cast<int>(e.code());
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
