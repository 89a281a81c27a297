#include "forge/space.hpp"

#include <set>

namespace forge {

Rat rat_parse(const std::string& text) {
    if (text.empty()) throw Error(Errc::input, "empty rational literal");
    auto slash = text.find('/');
    if (slash != std::string::npos) {
        Int n(text.substr(0, slash));
        Int d(text.substr(slash + 1));
        if (d == 0) throw Error(Errc::input, "zero denominator in '" + text + "'");
        return Rat(n, d);
    }
    auto dot = text.find('.');
    if (dot == std::string::npos) return Rat(Int(text));
    std::string digits = text.substr(0, dot) + text.substr(dot + 1);
    std::size_t frac_len = text.size() - dot - 1;
    bool neg = !digits.empty() && digits[0] == '-';
    Int n(digits);
    Int d = 1;
    for (std::size_t i = 0; i < frac_len; ++i) d *= 10;
    (void)neg;
    return Rat(n, d);
}

ValidationReport validate_space(const SampleSpace& space) {
    if (space.labels.size() != space.weight.size())
        return ValidationReport::bad("label/weight count mismatch");
    if (space.labels.empty()) return ValidationReport::bad("space has no points");
    std::set<std::string> seen;
    for (const auto& l : space.labels) {
        if (!seen.insert(l).second)
            return ValidationReport::bad("duplicate point identifier '" + l + "'");
    }
    Rat total = 0;
    for (std::size_t p = 0; p < space.size(); ++p) {
        if (space.weight[p] == 0)
            return ValidationReport::bad("zero weight at " + space.labels[p]);
        if (space.weight[p] < 0)
            return ValidationReport::bad("negative weight at " + space.labels[p]);
        total += space.weight[p];
    }
    if (total != 1)
        return ValidationReport::bad("weights sum to " + rat_str(total));
    return ValidationReport::good();
}

SampleSpace conditional_space(const SampleSpace& space, const PointSet& event) {
    if (event.empty()) throw Error(Errc::input, "conditioning on null/empty event");
    Rat mass = 0;
    SampleSpace out;
    out.labels.reserve(event.size());
    out.weight.reserve(event.size());
    for (PointId p : event) {
        if (p >= space.size()) throw Error(Errc::input, "event point out of range");
        mass += space.weight[p];
        out.labels.push_back(space.labels[p]);
        out.weight.push_back(space.weight[p]);
    }
    for (auto& w : out.weight) w /= mass;
    return out;
}

}  // namespace forge
