#include "forge/filtration.hpp"

#include <string>

namespace forge {

ValidationReport validate_filtration(const Filtration1P& filt) {
    if (auto r = validate_space(filt.space); !r) return r;
    if (filt.levels.empty()) return ValidationReport::bad("filtration has no levels");
    for (std::size_t n = 0; n < filt.levels.size(); ++n) {
        if (filt.levels[n].point_count() != filt.space.size())
            return ValidationReport::bad("level " + std::to_string(n) +
                                         " is not a partition of the space");
        if (n > 0 && !refines(filt.levels[n], filt.levels[n - 1]))
            return ValidationReport::bad("level " + std::to_string(n) +
                                         " does not refine level " + std::to_string(n - 1));
    }
    return ValidationReport::good();
}

ValidationReport validate_bifiltration(const BiFiltration& bf) {
    if (auto r = validate_space(bf.space); !r) return r;
    if (bf.grid.empty() || bf.grid[0].empty())
        return ValidationReport::bad("empty grid");
    const std::size_t rows = bf.grid.size();
    const std::size_t cols = bf.grid[0].size();
    if (rows < 2 || cols < 2)
        return ValidationReport::bad("grid needs at least one interior index per direction");
    for (std::size_t i = 0; i < rows; ++i) {
        if (bf.grid[i].size() != cols)
            return ValidationReport::bad("ragged grid at row " + std::to_string(i));
        for (std::size_t j = 0; j < cols; ++j)
            if (bf.grid[i][j].point_count() != bf.space.size())
                return ValidationReport::bad("(" + std::to_string(i) + "," + std::to_string(j) +
                                             ") is not a partition of the space");
    }
    for (std::size_t i = 0; i < rows; ++i)
        if (!bf.grid[i][0].is_trivial())
            return ValidationReport::bad("boundary (" + std::to_string(i) + ",0) is not trivial");
    for (std::size_t j = 0; j < cols; ++j)
        if (!bf.grid[0][j].is_trivial())
            return ValidationReport::bad("boundary (0," + std::to_string(j) + ") is not trivial");
    for (std::size_t i = 0; i < rows; ++i) {
        for (std::size_t j = 0; j < cols; ++j) {
            if (i + 1 < rows && !refines(bf.grid[i + 1][j], bf.grid[i][j]))
                return ValidationReport::bad("(" + std::to_string(i) + "," + std::to_string(j) +
                                             ")⊄(" + std::to_string(i + 1) + "," +
                                             std::to_string(j) + ")");
            if (j + 1 < cols && !refines(bf.grid[i][j + 1], bf.grid[i][j]))
                return ValidationReport::bad("(" + std::to_string(i) + "," + std::to_string(j) +
                                             ")⊄(" + std::to_string(i) + "," +
                                             std::to_string(j + 1) + ")");
        }
    }
    return ValidationReport::good();
}

Partition f_minus(const BiFiltration& bf, std::size_t i, std::size_t j) {
    if (i < 1 || i > bf.rows() || j < 1 || j > bf.cols())
        throw Error(Errc::input, "f_minus index out of range");
    return join(bf.at(i - 1, j), bf.at(i, j - 1));
}

Martingale1P martingale_from_terminal(const Filtration1P& filt, const SimpleFunction& f) {
    if (!f.measurable_wrt(filt.finest()))
        throw Error(Errc::input, "terminal function is not measurable at the finest level");
    Martingale1P m{filt, {}};
    m.terms.reserve(filt.horizon());
    for (std::size_t n = 1; n <= filt.horizon(); ++n)
        m.terms.push_back(cond_expect(filt.space, f, filt.level(n)));
    return m;
}

Martingale2P martingale_from_terminal(const BiFiltration& bf, const SimpleFunction& f) {
    if (!f.measurable_wrt(bf.finest()))
        throw Error(Errc::input, "terminal function is not measurable at the finest level");
    Martingale2P m{bf, {}};
    m.terms.resize(bf.rows());
    for (std::size_t i = 1; i <= bf.rows(); ++i) {
        m.terms[i - 1].reserve(bf.cols());
        for (std::size_t j = 1; j <= bf.cols(); ++j)
            m.terms[i - 1].push_back(cond_expect(bf.space, f, bf.at(i, j)));
    }
    return m;
}

ValidationReport validate_martingale(const Martingale1P& m) {
    if (auto r = validate_filtration(m.filt); !r) return r;
    if (m.terms.size() != m.filt.horizon())
        return ValidationReport::bad("term count does not match filtration depth");
    for (std::size_t n = 1; n <= m.horizon(); ++n)
        if (!m.term(n).measurable_wrt(m.filt.level(n)))
            return ValidationReport::bad("term " + std::to_string(n) + " is not adapted");
    for (std::size_t n = 1; n < m.horizon(); ++n) {
        for (std::size_t k = n + 1; k <= m.horizon(); ++k) {
            if (cond_expect(m.filt.space, m.term(k), m.filt.level(n)).values() !=
                m.term(n).values())
                return ValidationReport::bad("martingale identity fails: E[f_" +
                                             std::to_string(k) + "|level " + std::to_string(n) +
                                             "] != f_" + std::to_string(n));
        }
    }
    return ValidationReport::good();
}

ValidationReport validate_martingale(const Martingale2P& m) {
    if (auto r = validate_bifiltration(m.filt); !r) return r;
    if (m.terms.size() != m.filt.rows())
        return ValidationReport::bad("term rows do not match filtration");
    for (const auto& row : m.terms)
        if (row.size() != m.filt.cols())
            return ValidationReport::bad("term columns do not match filtration");
    const std::size_t N = m.rows(), M = m.cols();
    for (std::size_t i = 1; i <= N; ++i)
        for (std::size_t j = 1; j <= M; ++j)
            if (!m.term(i, j).measurable_wrt(m.filt.at(i, j)))
                return ValidationReport::bad("term (" + std::to_string(i) + "," +
                                             std::to_string(j) + ") is not adapted");
    for (std::size_t i = 1; i <= N; ++i) {
        for (std::size_t j = 1; j <= M; ++j) {
            for (std::size_t ii = i; ii <= N; ++ii) {
                for (std::size_t jj = j; jj <= M; ++jj) {
                    if (ii == i && jj == j) continue;
                    if (cond_expect(m.filt.space, m.term(ii, jj), m.filt.at(i, j)).values() !=
                        m.term(i, j).values())
                        return ValidationReport::bad(
                            "martingale identity fails at (" + std::to_string(i) + "," +
                            std::to_string(j) + ") <- (" + std::to_string(ii) + "," +
                            std::to_string(jj) + ")");
                }
            }
        }
    }
    return ValidationReport::good();
}

std::vector<SimpleFunction> differences(const Martingale1P& m) {
    std::vector<SimpleFunction> out;
    out.reserve(m.horizon());
    for (std::size_t n = 1; n <= m.horizon(); ++n) {
        if (n == 1)
            out.push_back(m.term(1));
        else
            out.push_back((m.term(n) - m.term(n - 1)).on(m.filt.level(n)));
    }
    return out;
}

std::vector<std::vector<SimpleFunction>> differences(const Martingale2P& m) {
    const std::size_t N = m.rows(), M = m.cols();
    std::vector<std::vector<SimpleFunction>> out(N);
    for (std::size_t i = 1; i <= N; ++i) {
        out[i - 1].reserve(M);
        for (std::size_t j = 1; j <= M; ++j) {
            SimpleFunction d = m.term(i, j);
            if (i >= 2) d = d - m.term(i - 1, j);
            if (j >= 2) d = d - m.term(i, j - 1);
            if (i >= 2 && j >= 2) d = d + m.term(i - 1, j - 1);
            out[i - 1].push_back(d.on(m.filt.at(i, j)));
        }
    }
    return out;
}

}  // namespace forge
