#include "forge/f4.hpp"
#include "forge/generators.hpp"
#include "forge/square.hpp"

#include <doctest.h>

#include "test_helpers.hpp"

using namespace forge;
using namespace forge::testing;

TEST_CASE("bifiltration validation") {
    CHECK(validate_bifiltration(two_bits()).ok);

    // break monotonicity: (1,1) not coarser than (2,1)
    BiFiltration bad = two_bits();
    bad.grid[1][1] = Partition::from_blocks(4, {{0, 2}, {1, 3}});
    bad.grid[1][2] = Partition::discrete(4);
    const auto r = validate_bifiltration(bad);
    CHECK_FALSE(r.ok);
    CHECK(r.violation == "(1,1)⊄(2,1)");

    // smallest grid: one interior cell
    BiFiltration tiny;
    tiny.space = uniform_space(3);
    tiny.grid = {{Partition::trivial(3), Partition::trivial(3)},
                 {Partition::trivial(3), Partition::from_blocks(3, {{0}, {1, 2}})}};
    CHECK(validate_bifiltration(tiny).ok);

    // boundary must be trivial
    BiFiltration bound = two_bits();
    bound.grid[0][1] = Partition::discrete(4);
    CHECK_FALSE(validate_bifiltration(bound).ok);
}

TEST_CASE("revealed field") {
    const auto bits = two_bits();
    CHECK(f_minus(bits, 1, 1) == Partition::trivial(4));
    CHECK(f_minus(bits, 2, 2) == Partition::discrete(4));
    CHECK(f_minus(bits, 2, 1) == bits.at(1, 1));  // join with the trivial boundary
    CHECK_THROWS_AS((void)f_minus(bits, 0, 1), Error);
    CHECK_THROWS_AS((void)f_minus(bits, 3, 1), Error);
}

TEST_CASE("F4 verdicts") {
    const auto bits = two_bits();
    const auto good = check_f4(bits);
    CHECK(good.holds);
    CHECK(good.projection_checked);
    CHECK(good.projection_agrees);

    const auto bad = check_f4(crossing3());
    REQUIRE_FALSE(bad.holds);
    REQUIRE(bad.witness.has_value());
    CHECK(bad.witness->i == 1);
    CHECK(bad.witness->j == 1);
    CHECK(bad.witness->ci.joint == Rat(1, 3));
    CHECK(bad.witness->ci.product == Rat(2, 9));
    CHECK(bad.projection_checked);
    CHECK(bad.projection_agrees);

    // a single interior cell never breaks the condition
    BiFiltration tiny;
    tiny.space = uniform_space(3);
    tiny.grid = {{Partition::trivial(3), Partition::trivial(3)},
                 {Partition::trivial(3), Partition::discrete(3)}};
    CHECK(check_f4(tiny).holds);
}

TEST_CASE("F4 methods agree on random instances") {
    Rng rng = derive_rng(45, 4);
    for (int t = 0; t < 200; ++t) {
        GeneratorConfig cfg;
        cfg.points_max = 5;
        cfg.depth_n = 1 + rng.index(2);
        cfg.depth_m = 1 + rng.index(2);
        const int mode = static_cast<int>(rng.index(3));
        cfg.f4_mode = mode == 0   ? GeneratorConfig::F4Mode::guaranteed
                      : mode == 1 ? GeneratorConfig::F4Mode::generic
                                  : GeneratorConfig::F4Mode::adversarial;
        if (cfg.f4_mode == GeneratorConfig::F4Mode::adversarial) {
            cfg.points_min = 3;
            cfg.depth_n = cfg.depth_m = 2;
        }
        const BiFiltration bf = gen_bifiltration(rng, cfg);
        const auto r = check_f4(bf);
        REQUIRE(r.projection_checked);
        CHECK(r.projection_agrees);
        if (cfg.f4_mode == GeneratorConfig::F4Mode::guaranteed) CHECK(r.holds);
        if (cfg.f4_mode == GeneratorConfig::F4Mode::adversarial) CHECK_FALSE(r.holds);
    }
}

TEST_CASE("martingale from terminal") {
    const auto filt = dyadic4();

    const auto constant = martingale_from_terminal(filt, SimpleFunction::constant(4, Rat(7)));
    for (std::size_t n = 1; n <= 2; ++n)
        for (std::size_t p = 0; p < 4; ++p)
            CHECK(constant.term(n).scalar_at(static_cast<PointId>(p)) == 7);

    const auto f = scalar_on(Partition::discrete(4), {1, -1, 2, -2});
    const auto m = martingale_from_terminal(filt, f);
    for (std::size_t p = 0; p < 4; ++p) CHECK(m.term(1).scalar_at(static_cast<PointId>(p)) == 0);
    CHECK(m.term(2).values() == f.values());  // discrete top level reproduces the terminal
    CHECK(validate_martingale(m).ok);

    CHECK_THROWS_AS((void)martingale_from_terminal(
                        Filtration1P{filt.space, {Partition::trivial(4), Partition::trivial(4)}},
                        f),
                    Error);
}

TEST_CASE("random martingales validate") {
    Rng rng = derive_rng(46, 5);
    for (int t = 0; t < 60; ++t) {
        const auto filt = gen_filtration_1p(rng, 1 + rng.index(3), 2, 6);
        CHECK(validate_martingale(gen_martingale(rng, filt, Rat(-2), Rat(2))).ok);
    }
    for (int t = 0; t < 40; ++t) {
        GeneratorConfig cfg;
        cfg.points_max = 6;
        cfg.f4_mode = GeneratorConfig::F4Mode::generic;
        const auto bf = gen_bifiltration(rng, cfg);
        CHECK(validate_martingale(gen_martingale(rng, bf, Rat(-2), Rat(2))).ok);
    }
}

TEST_CASE("differences") {
    const auto filt = dyadic4();
    const auto f = scalar_on(Partition::discrete(4), {1, -1, 2, -2});
    const auto m = martingale_from_terminal(filt, f);
    const auto d = differences(m);
    CHECK(d[0].values() == m.term(1).values());   // first difference is the first term
    CHECK(d[1].values() == m.term(2).values());   // f1 = 0 here

    // constant 2P martingale: only the corner difference survives
    const auto bits = two_bits();
    const auto c2 = martingale_from_terminal(bits, SimpleFunction::constant(4, Rat(5)));
    const auto d2 = differences(c2);
    for (std::size_t p = 0; p < 4; ++p) {
        CHECK(d2[0][0].scalar_at(static_cast<PointId>(p)) == 5);
        CHECK(d2[0][1].scalar_at(static_cast<PointId>(p)) == 0);
        CHECK(d2[1][0].scalar_at(static_cast<PointId>(p)) == 0);
        CHECK(d2[1][1].scalar_at(static_cast<PointId>(p)) == 0);
    }

    // product of centered bits concentrates in the top difference
    const auto prod = scalar_on(Partition::discrete(4), {1, -1, -1, 1});
    const auto mp = martingale_from_terminal(bits, prod);
    const auto dp = differences(mp);
    CHECK(dp[1][1].values() == mp.term(2, 2).values());
    for (std::size_t p = 0; p < 4; ++p) {
        CHECK(dp[0][0].scalar_at(static_cast<PointId>(p)) == 0);
        CHECK(dp[0][1].scalar_at(static_cast<PointId>(p)) == 0);
        CHECK(dp[1][0].scalar_at(static_cast<PointId>(p)) == 0);
    }
}

TEST_CASE("differences telescope exactly, with or without F4") {
    Rng rng = derive_rng(47, 6);
    for (int t = 0; t < 50; ++t) {
        GeneratorConfig cfg;
        cfg.points_max = 6;
        cfg.f4_mode = GeneratorConfig::F4Mode::generic;
        const auto bf = gen_bifiltration(rng, cfg);
        const auto m = gen_martingale(rng, bf, Rat(-2), Rat(2));
        const auto d = differences(m);
        for (std::size_t n = 1; n <= m.rows(); ++n) {
            for (std::size_t mm = 1; mm <= m.cols(); ++mm) {
                SimpleFunction acc = SimpleFunction::constant(bf.space.size(), 0);
                for (std::size_t i = 1; i <= n; ++i)
                    for (std::size_t j = 1; j <= mm; ++j) acc = acc + d[i - 1][j - 1];
                CHECK(acc.values() == m.term(n, mm).values());
                CHECK(d[n - 1][mm - 1].measurable_wrt(bf.at(n, mm)));
            }
        }
    }
}

TEST_CASE("interior increments have null conditionals under F4") {
    // the crossing conditional E[f_{i,j-1} | F_{i-1,j}] only collapses when
    // the filtration is conditionally independent; without F4 the property
    // genuinely fails
    Rng rng = derive_rng(47, 7);
    for (int t = 0; t < 40; ++t) {
        GeneratorConfig cfg;
        cfg.points_max = 6;
        cfg.f4_mode = GeneratorConfig::F4Mode::guaranteed;
        const auto bf = gen_bifiltration(rng, cfg);
        const auto m = gen_martingale(rng, bf, Rat(-2), Rat(2));
        const auto d = differences(m);
        for (std::size_t n = 2; n <= m.rows(); ++n) {
            for (std::size_t mm = 2; mm <= m.cols(); ++mm) {
                const auto west = cond_expect(bf.space, d[n - 1][mm - 1], bf.at(n - 1, mm));
                const auto south = cond_expect(bf.space, d[n - 1][mm - 1], bf.at(n, mm - 1));
                for (const auto& v : west.values()) CHECK(v[0] == 0);
                for (const auto& v : south.values()) CHECK(v[0] == 0);
            }
        }
    }
}

TEST_CASE("square functions") {
    // zero martingale
    const auto filt = dyadic4();
    const auto zero = martingale_from_terminal(filt, SimpleFunction::constant(4, Rat(0)));
    const auto zsq = square_functions(zero);
    CHECK(zsq.ES2 == 0);
    CHECK(zsq.h1_S == 0);
    CHECK(zsq.garsia == 0);

    // dyadic example: S^2 = (1,1,4,4)
    const auto f = scalar_on(Partition::discrete(4), {1, -1, 2, -2});
    const auto m = martingale_from_terminal(filt, f);
    const auto sq = square_functions(m);
    CHECK(sq.S2 == std::vector<Rat>{1, 1, 4, 4});
    CHECK(sq.ES2 == Rat(5, 2));
    CHECK(sq.Es2 == Rat(5, 2));
    CHECK(sq.h1_S == doctest::Approx(1.5).epsilon(1e-12));
    CHECK(sq.garsia == Rat(3, 2));

    // single top difference on two bits: S = |f|, sigma^2 = E[f^2|F-]
    const auto bits = two_bits();
    const auto prod = scalar_on(Partition::discrete(4), {1, -1, -1, 1});
    const auto mp = martingale_from_terminal(bits, prod);
    const auto sq2 = square_functions(mp);
    CHECK(sq2.S2 == std::vector<Rat>{1, 1, 1, 1});
    CHECK(sq2.sigma2 == std::vector<Rat>{1, 1, 1, 1});  // F- at (2,2) is discrete here
    CHECK(sq2.ES2 == 1);
    CHECK(sq2.Es2 == 1);
    CHECK(sq2.Esigma2 == 1);
    CHECK(sq2.garsia == 1);
    // the displayed-variant sums exclude the j = 1 column
    CHECK(sq2.s2_from_j2 == sq2.s2);  // only the (2,2) difference is nonzero
}

TEST_CASE("conservation on random 2P martingales") {
    Rng rng = derive_rng(48, 7);
    for (int t = 0; t < 60; ++t) {
        GeneratorConfig cfg;
        cfg.points_max = 6;
        cfg.f4_mode = GeneratorConfig::F4Mode::guaranteed;
        const auto bf = gen_bifiltration(rng, cfg);
        const auto m = gen_martingale(rng, bf, Rat(-2), Rat(2));
        const auto sq = square_functions(m);
        CHECK(sq.ES2 == sq.Es2);
        CHECK(sq.Es2 == sq.Esigma2);
    }
}
