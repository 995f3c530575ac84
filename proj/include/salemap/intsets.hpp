#pragma once

// Finite integer sets inside a host interval [0, N), deterministic Cantor-type
// constructions and finite-scale fractional density estimates.

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace salemap {

using Int = std::int64_t;

// A finite subset of [0, ambient). Elements are kept sorted and unique; the
// ambient length doubles as the modulus when the set is viewed in Z_N.
class DiscreteSet {
public:
    DiscreteSet() = default;

    // Elements must already be strictly increasing and inside [0, ambient).
    DiscreteSet(Int ambient, std::vector<Int> elements);

    // Sorts and deduplicates before validating the range.
    static DiscreteSet from_unsorted(Int ambient, std::vector<Int> elements);

    // The whole interval [0, ambient).
    static DiscreteSet full(Int ambient);

    Int ambient() const noexcept { return ambient_; }
    std::span<const Int> elements() const noexcept { return elements_; }
    std::size_t cardinality() const noexcept { return elements_.size(); }
    bool empty() const noexcept { return elements_.empty(); }

    bool contains(Int x) const noexcept;

    // Bitmask view: mask[x] == 1 iff x is an element.
    std::vector<std::uint8_t> indicator() const;

    // Same elements, different host interval. new_ambient must exceed the
    // largest element.
    DiscreteSet with_ambient(Int new_ambient) const;

    bool is_subset_of(const DiscreteSet& other) const;

    friend bool operator==(const DiscreteSet&, const DiscreteSet&) = default;

private:
    Int ambient_ = 1;
    std::vector<Int> elements_;
};

inline constexpr int kDefaultCantorMaxDepth = 16;

// C_0 = {1}, C_{i+1} = C_i u {3^{i+1} + 1 - c : c in C_i}. Ambient 3^depth + 1.
DiscreteSet cantor_build(int depth, int max_depth = kDefaultCantorMaxDepth);

struct DensityEstimate {
    double alpha_hat = 0.0;
    std::size_t cardinality = 0;
    Int ambient = 0;
    double delta_hat = 1.0;
};

// alpha_hat = log max(|A|,1) / log N, delta_hat = |A| / N^alpha_hat.
DensityEstimate fractional_density_fit(const DiscreteSet& set);

struct DensityPoint {
    Int prefix = 0;
    double ratio = 0.0;
};

// Ratios |A n [1, p]| / p^exponent at each checkpoint p.
std::vector<DensityPoint> density_profile(const DiscreteSet& set, double exponent,
                                          std::span<const Int> checkpoints);

// {floor(x (N-1)) : x in points}, deduplicated, ambient N.
DiscreteSet scale_embed(std::span<const double> points, Int target);

// Left endpoints of the real triadic Cantor iteration at the given depth
// (2^depth points in [0,1]).
std::vector<double> triadic_left_endpoints(int depth);

}  // namespace salemap
