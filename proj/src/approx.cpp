#include "forge/approx.hpp"

namespace forge {

std::vector<Rat> quantize(const std::vector<Rat>& x, const Rat& step) {
    std::vector<Rat> out;
    out.reserve(x.size());
    for (const auto& v : x) out.push_back(Rat(round_half_down(v / step)) * step);
    return out;
}

AtomicApproximation atomic_approximation(const Martingale1P& m, const Rat& epsilon) {
    if (epsilon <= 0) throw Error(Errc::input, "epsilon must be positive");
    const auto& space = m.filt.space;
    const std::size_t n_pts = space.size();
    const Rat step = epsilon / 2;

    // f_0 = E[f_N | level 0]
    const SimpleFunction f0 = cond_expect(space, m.terms.back(), m.filt.level(0));

    std::vector<SimpleFunction> quantized;  // u(f_0), ..., u(f_N)
    quantized.reserve(m.horizon() + 1);
    auto quantize_fn = [&](const SimpleFunction& f) {
        std::vector<std::vector<Rat>> vals(n_pts);
        for (std::size_t p = 0; p < n_pts; ++p)
            vals[p] = quantize(f.at(static_cast<PointId>(p)), step);
        return SimpleFunction(f.measurability(), std::move(vals));
    };
    quantized.push_back(quantize_fn(f0));
    for (std::size_t n = 1; n <= m.horizon(); ++n) quantized.push_back(quantize_fn(m.term(n)));

    AtomicApproximation out;
    out.quantizer_step = step;
    out.coarse.space = space;
    out.coarse.levels.reserve(m.horizon() + 1);
    for (std::size_t n = 0; n <= m.horizon(); ++n)
        out.coarse.levels.push_back(
            sigma_of(std::span<const SimpleFunction>(quantized.data(), n + 1)));

    out.term0 = cond_expect(space, m.terms.back(), out.coarse.levels[0]);
    out.approx.filt = out.coarse;
    out.approx.terms.reserve(m.horizon());
    for (std::size_t n = 1; n <= m.horizon(); ++n)
        out.approx.terms.push_back(cond_expect(space, m.terms.back(), out.coarse.levels[n]));

    Rat worst = 0;
    auto record = [&](const SimpleFunction& exact, const SimpleFunction& approx) {
        for (std::size_t p = 0; p < n_pts; ++p) {
            const auto& a = exact.at(static_cast<PointId>(p));
            const auto& b = approx.at(static_cast<PointId>(p));
            for (std::size_t k = 0; k < a.size(); ++k) {
                Rat d = rat_abs(a[k] - b[k]);
                if (d > worst) worst = d;
            }
        }
    };
    record(f0, out.term0);
    for (std::size_t n = 1; n <= m.horizon(); ++n) record(m.term(n), out.approx.term(n));
    out.max_error = worst;
    return out;
}

}  // namespace forge
