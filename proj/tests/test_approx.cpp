#include "forge/approx.hpp"
#include "forge/generators.hpp"

#include <doctest.h>

#include "test_helpers.hpp"

using namespace forge;
using namespace forge::testing;

TEST_CASE("quantizer") {
    CHECK(quantize({Rat(2, 5)}, Rat(1, 2)) == std::vector<Rat>{Rat(1, 2)});
    CHECK(quantize({Rat(11, 10)}, Rat(1, 2)) == std::vector<Rat>{Rat(1)});
    CHECK(quantize({Rat(0)}, Rat(1, 2)) == std::vector<Rat>{Rat(0)});
    // exact tie resolves toward the smaller net point
    CHECK(quantize({Rat(1, 4)}, Rat(1, 2)) == std::vector<Rat>{Rat(0)});
    CHECK(quantize({Rat(-1, 4)}, Rat(1, 2)) == std::vector<Rat>{Rat(-1, 2)});
    // error bound: |x - u(x)| <= step/2
    Rng rng = derive_rng(51, 0);
    for (int t = 0; t < 200; ++t) {
        const Rat x = rng.rat_in(Rat(-3), Rat(3), 60);
        const Rat u = quantize({x}, Rat(1, 2))[0];
        CHECK(rat_abs(x - u) <= Rat(1, 4));
    }
}

TEST_CASE("coarse net collapses the filtration") {
    const auto filt = dyadic4();
    const auto f = scalar_on(Partition::discrete(4), {0, Rat(1, 10), Rat(-1, 10), 0});
    const auto m = martingale_from_terminal(filt, f);
    // epsilon far above the value spread: every quantized term is constant
    const auto ap = atomic_approximation(m, Rat(10));
    for (const auto& level : ap.coarse.levels) CHECK(level.is_trivial());
    CHECK(ap.max_error < Rat(10));
}

TEST_CASE("fine net reproduces the generated fields exactly") {
    const auto filt = dyadic4();
    const auto f = scalar_on(Partition::discrete(4), {1, -1, 2, -2});
    const auto m = martingale_from_terminal(filt, f);
    // epsilon/2 below the minimal gap between distinct values: u is injective
    const auto ap = atomic_approximation(m, Rat(1, 4));
    CHECK(ap.max_error == 0);
    const auto f0 = cond_expect(filt.space, m.terms.back(), filt.level(0));
    std::vector<SimpleFunction> prefix{f0};
    for (std::size_t n = 0; n <= filt.horizon(); ++n) {
        if (n > 0) prefix.push_back(m.term(n));
        CHECK(ap.coarse.level(n) == sigma_of(prefix));
    }
}

TEST_CASE("unit epsilon on the three-value example") {
    // values {0, 2/5, 11/10}; the net has mesh 1/2, so the quantized values
    // are {0, 1/2, 1} and the proof chain bounds the error by twice the
    // quantization error
    SampleSpace s = space_of({{"a", Rat(1, 2)}, {"b", Rat(1, 4)}, {"c", Rat(1, 4)}});
    Filtration1P filt{s, {Partition::trivial(3), Partition::discrete(3)}};
    const auto f = scalar_on(Partition::discrete(3), {Rat(0), Rat(2, 5), Rat(11, 10)});
    const auto m = martingale_from_terminal(filt, f);
    const auto ap = atomic_approximation(m, Rat(1));
    CHECK(ap.quantizer_step == Rat(1, 2));
    // quantized terminal separates all three points
    CHECK(ap.coarse.level(1) == Partition::discrete(3));
    CHECK(ap.max_error <= Rat(1, 2));
    CHECK(ap.max_error < Rat(1));
    CHECK(validate_martingale(ap.approx).ok);
}

TEST_CASE("vector-valued approximation properties") {
    Rng rng = derive_rng(52, 1);
    for (int t = 0; t < 40; ++t) {
        const auto filt = gen_filtration_1p(rng, 1 + rng.index(3), 2, 5);
        const auto m = gen_martingale(rng, filt, Rat(-2), Rat(2), 1 + rng.index(3));
        for (const Rat& eps : {Rat(1), Rat(1, 4)}) {
            const auto ap = atomic_approximation(m, eps);
            CHECK(ap.max_error < eps);
            for (std::size_t n = 0; n <= filt.horizon(); ++n)
                CHECK(refines(filt.level(n), ap.coarse.level(n)));
            CHECK(validate_filtration(ap.coarse).ok);
        }
    }
    CHECK_THROWS_AS((void)atomic_approximation(gen_martingale(rng, dyadic4(), Rat(0), Rat(1)),
                                               Rat(0)),
                    Error);
}
