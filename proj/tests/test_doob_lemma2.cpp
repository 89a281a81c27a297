#include "forge/doob.hpp"
#include "forge/generators.hpp"
#include "forge/lemma2.hpp"

#include <doctest.h>

#include "test_helpers.hpp"

using namespace forge;
using namespace forge::testing;

TEST_CASE("single field: the contraction case") {
    const auto space = uniform_space(4);
    const std::vector<Partition> fields{Partition::from_blocks(4, {{0, 1}, {2, 3}})};
    const auto dd = doob_delta(space, fields);
    CHECK(dd.delta_sq_certified == 1);
    CHECK(dd.delta_certified == doctest::Approx(1.0));
    CHECK(dd.delta_empirical >= 1.0 - 1e-9);

    Rng rng = derive_rng(81, 0);
    for (int t = 0; t < 100; ++t) {
        const auto f = gen_terminal(rng, Partition::discrete(4), Rat(-3), Rat(3), 1);
        CHECK(maximal_bound_holds(space, fields, f, Rat(1)));
    }
}

TEST_CASE("trivial-and-discrete family on a fair coin") {
    const auto coin = space_of({{"h", Rat(1, 2)}, {"t", Rat(1, 2)}});
    const std::vector<Partition> fields{Partition::trivial(2), Partition::discrete(2)};
    const auto dd = doob_delta(coin, fields);
    CHECK(dd.delta_sq_certified == Rat(1, 2));
    CHECK(dd.delta_empirical >= dd.delta_certified - 1e-9);

    Rng rng = derive_rng(81, 1);
    for (int t = 0; t < 200; ++t) {
        const auto f = gen_terminal(rng, Partition::discrete(2), Rat(-3), Rat(3), 1);
        CHECK(maximal_bound_holds(coin, fields, f, Rat(1, 2)));
    }
    // the family genuinely exceeds ratio 1: e.g. f = (1, 9/10)
    const auto f = scalar_on(Partition::discrete(2), {Rat(1), Rat(9, 10)});
    CHECK_FALSE(maximal_bound_holds(coin, fields, f, Rat(1)));
}

TEST_CASE("revealed-field family of the two-bit grid") {
    const auto bits = two_bits();
    std::vector<Partition> fields;
    for (std::size_t i = 1; i <= 2; ++i)
        for (std::size_t j = 1; j <= 2; ++j) fields.push_back(f_minus(bits, i, j));
    REQUIRE(fields.size() == 4);
    const auto dd = doob_delta(bits.space, fields);
    CHECK(dd.delta_sq_certified == Rat(1, 4));
    CHECK(dd.delta_certified == doctest::Approx(0.5));

    Rng rng = derive_rng(81, 2);
    for (int t = 0; t < 100; ++t) {
        const auto f = gen_terminal(rng, Partition::discrete(4), Rat(-3), Rat(3), 1);
        CHECK(maximal_bound_holds(bits.space, fields, f, Rat(1, 4)));
    }
    CHECK_THROWS_AS((void)doob_delta(bits.space, {}), Error);
}

TEST_CASE("unit weights reduce the inequality to the constant bound") {
    const auto space = uniform_space(4);
    WeightedSystem ws;
    ws.space = space;
    ws.fields = {Partition::from_blocks(4, {{0, 1}, {2, 3}}), Partition::discrete(4)};
    ws.b_size = 2;
    ws.kappa = Rat(1, 2);
    ws.delta_sq = Rat(1, 2);
    Rng rng = derive_rng(82, 0);
    ws.w.assign(2, std::vector<std::vector<Rat>>(2, std::vector<Rat>(4, Rat(1))));
    ws.f.resize(2);
    for (std::size_t a = 0; a < 2; ++a)
        for (std::size_t b = 0; b < 2; ++b)
            ws.f[a].push_back(gen_terminal(rng, ws.fields[a], Rat(-2), Rat(2), 1));

    const auto rep = lemma2_check(ws);
    CHECK(rep.holds);
    for (const auto& row : rep.kappa_sets)
        for (const auto& set : row) CHECK(set.size() == 4);  // E[1|F] = 1 >= kappa everywhere
}

TEST_CASE("zero weights give equality at zero") {
    const auto space = uniform_space(3);
    WeightedSystem ws;
    ws.space = space;
    ws.fields = {Partition::trivial(3)};
    ws.b_size = 1;
    ws.kappa = Rat(1, 2);
    ws.delta_sq = Rat(1);
    ws.w = {{std::vector<Rat>(3, Rat(0))}};
    ws.f = {{SimpleFunction::constant(3, Rat(2))}};
    const auto rep = lemma2_check(ws);
    CHECK(rep.lhs == 0.0);
    CHECK(rep.rhs == 0.0);
    CHECK(rep.holds);
    CHECK(rep.kappa_sets[0][0].empty());
}

TEST_CASE("randomized weighted systems satisfy the inequality") {
    Rng rng = derive_rng(83, 0);
    for (int t = 0; t < 120; ++t) {
        const auto ws = gen_weighted_system(rng);
        const auto rep = lemma2_check(ws);
        CHECK(rep.holds);
    }
}

TEST_CASE("weighted system validation") {
    WeightedSystem ws;
    ws.space = uniform_space(2);
    ws.fields = {Partition::trivial(2)};
    ws.b_size = 1;
    ws.kappa = Rat(1, 2);
    ws.delta_sq = Rat(0);  // not supplied
    ws.w = {{std::vector<Rat>(2, Rat(1))}};
    ws.f = {{SimpleFunction::constant(2, Rat(1))}};
    CHECK_FALSE(validate_weighted_system(ws).ok);
    CHECK_THROWS_AS((void)lemma2_check(ws), Error);

    ws.delta_sq = Rat(1);
    ws.w[0][0][0] = Rat(3, 2);  // outside [0,1]
    CHECK_FALSE(validate_weighted_system(ws).ok);
    ws.w[0][0][0] = Rat(1, 2);
    CHECK(validate_weighted_system(ws).ok);
}
