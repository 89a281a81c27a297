#pragma once

#include "forge/partition.hpp"
#include "forge/rational.hpp"
#include "forge/space.hpp"

#include <optional>
#include <span>
#include <vector>

namespace forge {

/// A simple function: constant on the atoms of its measurability partition,
/// with exact rational values. Values may be vectors of a fixed dimension
/// (dim 1 = scalar). Stored pointwise; constancy on atoms is checked at
/// construction.
class SimpleFunction {
public:
    SimpleFunction() = default;
    SimpleFunction(Partition measurability, std::vector<std::vector<Rat>> per_point);

    [[nodiscard]] static SimpleFunction scalar(Partition measurability, std::vector<Rat> per_point);
    [[nodiscard]] static SimpleFunction constant(std::size_t n_points, Rat value);
    [[nodiscard]] static SimpleFunction constant_vec(std::size_t n_points, std::vector<Rat> value);
    [[nodiscard]] static SimpleFunction from_block_values(Partition measurability,
                                                          std::vector<std::vector<Rat>> per_block);
    /// Indicator of a set that is a union of blocks of `measurability`.
    [[nodiscard]] static SimpleFunction indicator(Partition measurability, const PointSet& event);

    [[nodiscard]] std::size_t points() const { return values_.size(); }
    [[nodiscard]] std::size_t dim() const { return dim_; }
    [[nodiscard]] const Partition& measurability() const { return part_; }
    [[nodiscard]] const std::vector<Rat>& at(PointId p) const { return values_[p]; }
    [[nodiscard]] const Rat& scalar_at(PointId p) const { return values_[p][0]; }
    [[nodiscard]] const std::vector<std::vector<Rat>>& values() const { return values_; }

    /// Re-tags the function as measurable w.r.t. `finer`; requires
    /// refines(finer, measurability()).
    [[nodiscard]] SimpleFunction on(Partition finer) const;

    [[nodiscard]] bool measurable_wrt(const Partition& coarser) const;

    [[nodiscard]] SimpleFunction abs() const;
    [[nodiscard]] SimpleFunction squared() const;  // scalar only
    [[nodiscard]] SimpleFunction scaled(const Rat& c) const;

    friend SimpleFunction operator+(const SimpleFunction& a, const SimpleFunction& b);
    friend SimpleFunction operator-(const SimpleFunction& a, const SimpleFunction& b);
    friend SimpleFunction operator*(const SimpleFunction& a, const SimpleFunction& b);  // scalar

    bool operator==(const SimpleFunction& other) const = default;

private:
    Partition part_;
    std::size_t dim_ = 1;
    std::vector<std::vector<Rat>> values_;
};

/// E[f | g]: block value = Σ_{ω∈B} w(ω) f(ω) / P(B). Exact; the result is
/// g-measurable and preserves the integral.
[[nodiscard]] SimpleFunction cond_expect(const SampleSpace& space, const SimpleFunction& f,
                                         const Partition& g);

[[nodiscard]] std::vector<Rat> expectation_vec(const SampleSpace& space, const SimpleFunction& f);
[[nodiscard]] Rat expectation(const SampleSpace& space, const SimpleFunction& f);

struct CondIndepWitness {
    std::uint32_t given_block = 0;  // atom A of `given`
    std::uint32_t p_block = 0;      // atom B of p
    std::uint32_t q_block = 0;      // atom C of q
    Rat joint;                      // P(B ∩ C | A)
    Rat product;                    // P(B | A) · P(C | A)
};

struct CondIndepResult {
    bool independent = true;
    std::optional<CondIndepWitness> witness;
    explicit operator bool() const { return independent; }
};

/// Checks P(B∩C|A) = P(B|A)·P(C|A) for all atoms A of `given`, B of p, C of q,
/// in exact arithmetic. On failure reports the lexicographically first
/// violating triple.
[[nodiscard]] CondIndepResult cond_indep(const SampleSpace& space, const Partition& p,
                                         const Partition& q, const Partition& given);

/// Partition generated by the level sets of a family of functions.
[[nodiscard]] Partition sigma_of(std::span<const SimpleFunction> fs);

}  // namespace forge
