#include "forge/generators.hpp"
#include "forge/morphism.hpp"

#include <doctest.h>

#include "test_helpers.hpp"

using namespace forge;
using namespace forge::testing;

TEST_CASE("one-parameter model: single refinement of a fair coin") {
    Filtration1P filt{space_of({{"h", Rat(1, 2)}, {"t", Rat(1, 2)}}),
                      {Partition::trivial(2), Partition::discrete(2)}};
    const auto model = build_canonical_1p(filt);
    CHECK(model.atoms.size() == 2);
    CHECK(model.product_space.weight[0] == Rat(1, 2));
    CHECK(model.product_space.weight[1] == Rat(1, 2));
    CHECK(verify_morphism(model).pass);
}

TEST_CASE("one-parameter model: dyadic four points") {
    const auto model = build_canonical_1p(dyadic4());
    CHECK(model.atoms.size() == 8);
    for (const auto& w : model.product_space.weight) CHECK(w == Rat(1, 8));

    // preimage of the singleton {p0}: exactly two product atoms, total mass 1/4
    const std::uint32_t target = dyadic4().finest().block_index_of(0);
    std::size_t hits = 0;
    Rat mass = 0;
    for (std::size_t a = 0; a < model.atoms.size(); ++a) {
        if (model.image[a] == target) {
            ++hits;
            mass += model.product_space.weight[a];
        }
    }
    CHECK(hits == 2);
    CHECK(mass == Rat(1, 4));

    const auto cert = verify_morphism(model);
    CHECK(cert.pass);
    CHECK(validate_filtration(model.canonical).ok);
}

TEST_CASE("one-parameter model: degenerate filtration") {
    Filtration1P filt{uniform_space(3),
                      {Partition::trivial(3), Partition::trivial(3), Partition::trivial(3)}};
    const auto model = build_canonical_1p(filt);
    CHECK(model.atoms.size() == 1);
    CHECK(model.product_space.weight[0] == 1);
    CHECK(verify_morphism(model).pass);
}

TEST_CASE("atom cap is enforced with the computed count") {
    try {
        (void)build_canonical_1p(dyadic4(), 4);
        FAIL("expected a cap error");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::cap);
        CHECK(std::string(e.what()).find("8") != std::string::npos);
    }
    CHECK(count_product_atoms(dyadic4()) == 8);
}

TEST_CASE("corrupted image breaks the measure identity with an exact deficit") {
    auto model = build_canonical_1p(dyadic4());
    const std::uint32_t old_block = model.image[0];
    model.image[0] = (old_block + 1) % 4;
    const auto cert = verify_morphism(model);
    CHECK_FALSE(cert.measure_ok);
    CHECK(cert.masses[old_block].pulled == cert.masses[old_block].direct - Rat(1, 8));
    CHECK_FALSE(cert.pass);
}

TEST_CASE("two-parameter model: single cell") {
    BiFiltration bf;
    bf.space = uniform_space(3);
    bf.grid = {{Partition::trivial(3), Partition::trivial(3)},
               {Partition::trivial(3), Partition::from_blocks(3, {{0}, {1, 2}})}};
    const auto model = build_canonical_2p(bf);
    CHECK(model.atoms.size() == 2);  // one factor: the atoms of the (1,1) field
    CHECK(model.empty_mass == 0);
    CHECK(verify_morphism(model).pass);
    for (std::size_t a = 0; a < model.atoms.size(); ++a) {
        const auto chain = evaluate_chain(model, model.atoms[a]);
        REQUIRE(chain.image.has_value());
        // with a trivial revealed field the image is just the chosen atom
        CHECK(bf.at(1, 1).block(*chain.image) == chain.chosen[0]);
    }
}

TEST_CASE("two-parameter model: two independent bits") {
    const auto bits = two_bits();
    const auto model = build_canonical_2p(bits);
    REQUIRE(model.atoms.size() == 4);
    CHECK(model.empty_mass == 0);

    std::vector<bool> seen(4, false);
    for (std::size_t a = 0; a < 4; ++a) {
        CHECK(model.product_space.weight[a] == Rat(1, 4));
        REQUIRE(model.image[a].has_value());
        seen[*model.image[a]] = true;
    }
    for (bool s : seen) CHECK(s);  // bijective onto the four points

    CHECK(verify_morphism(model).pass);
    CHECK(validate_bifiltration(model.canonical).ok);
    CHECK(check_f4(model.canonical).holds);
}

TEST_CASE("preimage measure on the two-bit model") {
    const auto bits = two_bits();
    const auto model = build_canonical_2p(bits);
    const std::uint32_t u = bits.finest().block_index_of(1);  // the point "01"
    const auto pm = preimage_measure(model, u);
    CHECK(pm.total == Rat(1, 4));
    CHECK(pm.identities_hold);
    REQUIRE(pm.steps.size() == 4);
    CHECK(pm.steps[0].partial_product == 1);         // (1,1)
    CHECK(pm.steps[1].partial_product == Rat(1, 2));  // (1,2)
    CHECK(pm.steps[2].partial_product == Rat(1, 2));  // (2,1)
    CHECK(pm.steps[3].partial_product == Rat(1, 4));  // (2,2)
    for (const auto& s : pm.steps) CHECK(s.partial_product == s.block_prob);

    CHECK_THROWS_AS((void)preimage_measure(model, 17), Error);
}

TEST_CASE("chain evaluation matches the direct intersection") {
    Rng rng = derive_rng(61, 0);
    for (int t = 0; t < 30; ++t) {
        GeneratorConfig cfg;
        cfg.points_max = 6;
        cfg.depth_n = 1 + rng.index(2);
        cfg.depth_m = 1 + rng.index(2);
        cfg.f4_mode = GeneratorConfig::F4Mode::guaranteed;
        const auto bf = gen_bifiltration(rng, cfg);
        const auto model = build_canonical_2p(bf, 10000);
        CHECK(model.empty_mass == 0);  // F4 inputs never produce empty images
        for (std::size_t a = 0; a < model.atoms.size(); ++a) {
            const auto chain = evaluate_chain(model, model.atoms[a]);
            const auto direct = direct_image(model, model.atoms[a]);
            REQUIRE(chain.image.has_value());
            CHECK(bf.finest().block(*chain.image) == direct);
        }
    }
}

TEST_CASE("inconsistent assignments collapse to the empty image") {
    // crossing3 fails F4; the builder refuses it unless forced
    const auto bf = crossing3();
    CHECK_THROWS_AS((void)build_canonical_2p(bf), Error);

    const auto model = build_canonical_2p(bf, kDefaultAtomCap, /*enforce_f4=*/false);
    CHECK(model.empty_mass > 0);
    bool found_empty = false;
    for (std::size_t a = 0; a < model.atoms.size(); ++a) {
        const auto chain = evaluate_chain(model, model.atoms[a]);
        const auto direct = direct_image(model, model.atoms[a]);
        CHECK(chain.image.has_value() == !direct.empty());
        if (chain.image) CHECK(bf.finest().block(*chain.image) == direct);
        if (!chain.image) {
            found_empty = true;
            CHECK(chain.failed_i == 2);
            CHECK(chain.failed_j == 2);
        }
    }
    CHECK(found_empty);
}

TEST_CASE("pullback and joint laws") {
    const auto filt = dyadic4();
    const auto model = build_canonical_1p(filt);

    // constants stay constants
    const auto c = pullback(model, SimpleFunction::constant(4, Rat(3)), 1);
    for (std::size_t p = 0; p < c.points(); ++p) CHECK(c.scalar_at(static_cast<PointId>(p)) == 3);

    // indicator of the first dyadic block at level 1
    const auto ind = SimpleFunction::indicator(filt.level(1), {0, 1});
    const auto pulled = pullback(model, ind, 1);
    Rat mass = 0;
    std::size_t hits = 0;
    for (std::size_t p = 0; p < pulled.points(); ++p) {
        if (pulled.scalar_at(static_cast<PointId>(p)) == 1) {
            ++hits;
            mass += model.product_space.weight[p];
        }
    }
    CHECK(hits == 4);
    CHECK(mass == Rat(1, 2));

    // full martingale transport preserves the joint law exactly
    Rng rng = derive_rng(62, 1);
    const auto m = gen_martingale(rng, filt, Rat(-2), Rat(2));
    const auto mp = pullback(model, m);
    CHECK(validate_martingale(mp).ok);
    CHECK(equal_law(joint_law(filt.space, m.terms), joint_law(model.product_space, mp.terms)));

    // sign asymmetry is detected
    const auto f = scalar_on(Partition::discrete(4), {1, 1, 1, -1});
    std::vector<SimpleFunction> a{f}, b{f.scaled(-1)};
    CHECK_FALSE(equal_law(joint_law(filt.space, a), joint_law(filt.space, b)));

    // indicator of the whole space pulls back to the constant one
    const auto one = pullback(model, SimpleFunction::indicator(filt.level(0), full_set(4)), 0);
    for (std::size_t p = 0; p < one.points(); ++p)
        CHECK(one.scalar_at(static_cast<PointId>(p)) == 1);

    CHECK_THROWS_AS((void)pullback(model, scalar_on(Partition::discrete(4), {1, 2, 3, 4}), 1),
                    Error);
}

TEST_CASE("two-parameter pullback preserves martingales and laws") {
    Rng rng = derive_rng(63, 2);
    for (int t = 0; t < 10; ++t) {
        GeneratorConfig cfg;
        cfg.points_max = 6;
        cfg.f4_mode = GeneratorConfig::F4Mode::guaranteed;
        const auto bf = gen_bifiltration(rng, cfg);
        const auto model = build_canonical_2p(bf, 10000);
        const auto m = gen_martingale(rng, bf, Rat(-2), Rat(2));
        const auto mp = pullback(model, m);
        CHECK(validate_martingale(mp).ok);
        std::vector<SimpleFunction> src, dst;
        for (const auto& row : m.terms)
            for (const auto& term : row) src.push_back(term);
        for (const auto& row : mp.terms)
            for (const auto& term : row) dst.push_back(term);
        CHECK(equal_law(joint_law(bf.space, src), joint_law(model.product_space, dst)));
    }
}

TEST_CASE("canonical grids of guaranteed inputs satisfy F4") {
    Rng rng = derive_rng(64, 3);
    for (int t = 0; t < 10; ++t) {
        GeneratorConfig cfg;
        cfg.points_max = 5;
        cfg.f4_mode = GeneratorConfig::F4Mode::guaranteed;
        const auto bf = gen_bifiltration(rng, cfg);
        const auto model = build_canonical_2p(bf, 10000);
        CHECK(check_f4(model.canonical).holds);
    }
}

TEST_CASE("tensor products embed without empty images") {
    Rng rng = derive_rng(65, 4);
    const auto rows = gen_filtration_1p(rng, 2, 2, 3);
    const auto cols = gen_filtration_1p(rng, 2, 2, 2);
    const auto bf = tensor_bifiltration(rows, cols);
    REQUIRE(check_f4(bf).holds);
    const auto model = build_canonical_2p(bf, 100000);
    CHECK(model.empty_mass == 0);
    for (const auto& img : model.image) CHECK(img.has_value());
    CHECK(verify_morphism(model).pass);
}
