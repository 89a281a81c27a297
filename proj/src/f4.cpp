#include "forge/f4.hpp"

#include <sstream>

namespace forge {

namespace {

std::string set_str(const BiFiltration& bf, const PointSet& s) {
    std::ostringstream os;
    os << "{";
    for (std::size_t k = 0; k < s.size(); ++k) {
        if (k) os << ",";
        os << bf.space.labels[s[k]];
    }
    os << "}";
    return os.str();
}

// Exhaustive check of the double-projection identity on indicators of the
// finest atoms. Cost is roughly pairs × atoms × points, which the caller has
// already bounded.
bool projection_identity_holds(const BiFiltration& bf, std::string* detail) {
    const std::size_t N = bf.rows(), M = bf.cols();
    const auto& finest = bf.finest();
    for (std::size_t i = 0; i <= N; ++i) {
        for (std::size_t j = 0; j <= M; ++j) {
            for (std::size_t ii = 0; ii <= N; ++ii) {
                for (std::size_t jj = 0; jj <= M; ++jj) {
                    const Partition& meet = bf.at(std::min(i, ii), std::min(j, jj));
                    for (std::size_t b = 0; b < finest.block_count(); ++b) {
                        const auto f = SimpleFunction::indicator(finest, finest.block(b));
                        const auto lhs =
                            cond_expect(bf.space, cond_expect(bf.space, f, bf.at(i, j)),
                                        bf.at(ii, jj));
                        const auto rhs = cond_expect(bf.space, f, meet);
                        if (lhs.values() != rhs.values()) {
                            if (detail) {
                                std::ostringstream os;
                                os << "projection identity fails for atom "
                                   << set_str(bf, finest.block(b)) << " with (i,j)=(" << i << ","
                                   << j << "), (i',j')=(" << ii << "," << jj << ")";
                                *detail = os.str();
                            }
                            return false;
                        }
                    }
                }
            }
        }
    }
    return true;
}

}  // namespace

std::string F4Witness::describe(const BiFiltration& bf) const {
    const Partition& given = bf.at(i, j);
    const Partition& p = bf.at(i, j + 1);
    const Partition& q = bf.at(i + 1, j);
    std::ostringstream os;
    os << "fields (" << i << "," << j + 1 << ") and (" << i + 1 << "," << j
       << ") are not conditionally independent given (" << i << "," << j << "): A="
       << set_str(bf, given.block(ci.given_block)) << " B=" << set_str(bf, p.block(ci.p_block))
       << " C=" << set_str(bf, q.block(ci.q_block)) << " joint " << rat_str(ci.joint)
       << " != product " << rat_str(ci.product);
    return os.str();
}

F4Result check_f4(const BiFiltration& bf, std::uint64_t projection_work_cap) {
    F4Result result;
    const std::size_t N = bf.rows(), M = bf.cols();
    // smallest witness indices first
    for (std::size_t i = 0; i < N && result.holds; ++i) {
        for (std::size_t j = 0; j < M && result.holds; ++j) {
            auto ci = cond_indep(bf.space, bf.at(i, j + 1), bf.at(i + 1, j), bf.at(i, j));
            if (!ci) {
                result.holds = false;
                result.witness = F4Witness{i, j, *ci.witness};
            }
        }
    }
    const std::uint64_t pairs = static_cast<std::uint64_t>((N + 1) * (M + 1)) *
                                static_cast<std::uint64_t>((N + 1) * (M + 1));
    const std::uint64_t work = pairs * bf.finest().block_count() * bf.space.size();
    if (work <= projection_work_cap) {
        result.projection_checked = true;
        std::string detail;
        const bool direct = projection_identity_holds(bf, &detail);
        result.projection_agrees = (direct == result.holds);
        if (!result.projection_agrees)
            result.projection_detail = "method disagreement: " + detail;
        else if (!direct)
            result.projection_detail = detail;
    }
    return result;
}

}  // namespace forge
