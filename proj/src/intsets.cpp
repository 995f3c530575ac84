#include "salemap/intsets.hpp"

#include "salemap/error.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace salemap {

namespace {

void validate(Int ambient, std::span<const Int> elements) {
    if (ambient < 1) {
        throw RangeError("ambient must be positive, got " + std::to_string(ambient));
    }
    for (std::size_t i = 0; i < elements.size(); ++i) {
        const Int e = elements[i];
        if (e < 0 || e >= ambient) {
            throw RangeError("element " + std::to_string(e) + " outside [0, " +
                             std::to_string(ambient) + ")");
        }
        if (i > 0 && elements[i - 1] >= e) {
            throw ArgumentError("elements must be strictly increasing");
        }
    }
}

}  // namespace

DiscreteSet::DiscreteSet(Int ambient, std::vector<Int> elements)
    : ambient_(ambient), elements_(std::move(elements)) {
    validate(ambient_, elements_);
}

DiscreteSet DiscreteSet::from_unsorted(Int ambient, std::vector<Int> elements) {
    std::sort(elements.begin(), elements.end());
    elements.erase(std::unique(elements.begin(), elements.end()), elements.end());
    return DiscreteSet(ambient, std::move(elements));
}

DiscreteSet DiscreteSet::full(Int ambient) {
    std::vector<Int> all(static_cast<std::size_t>(std::max<Int>(ambient, 0)));
    for (Int i = 0; i < ambient; ++i) all[static_cast<std::size_t>(i)] = i;
    return DiscreteSet(ambient, std::move(all));
}

bool DiscreteSet::contains(Int x) const noexcept {
    return std::binary_search(elements_.begin(), elements_.end(), x);
}

std::vector<std::uint8_t> DiscreteSet::indicator() const {
    std::vector<std::uint8_t> mask(static_cast<std::size_t>(ambient_), 0);
    for (Int e : elements_) mask[static_cast<std::size_t>(e)] = 1;
    return mask;
}

DiscreteSet DiscreteSet::with_ambient(Int new_ambient) const {
    return DiscreteSet(new_ambient, elements_);
}

bool DiscreteSet::is_subset_of(const DiscreteSet& other) const {
    return std::includes(other.elements_.begin(), other.elements_.end(), elements_.begin(),
                         elements_.end());
}

DiscreteSet cantor_build(int depth, int max_depth) {
    if (depth < 0) throw ParameterError("cantor depth must be nonnegative");
    if (depth > max_depth) {
        throw SizeLimitError("cantor depth " + std::to_string(depth) + " exceeds maximum " +
                             std::to_string(max_depth));
    }
    std::vector<Int> current{1};
    Int power = 1;  // 3^i
    for (int i = 0; i < depth; ++i) {
        power *= 3;
        const std::size_t n = current.size();
        current.reserve(2 * n);
        // Reflection of an ascending list is descending, so walk it backwards.
        for (std::size_t idx = n; idx-- > 0;) current.push_back(power + 1 - current[idx]);
    }
    return DiscreteSet(power + 1, std::move(current));
}

DensityEstimate fractional_density_fit(const DiscreteSet& set) {
    if (set.ambient() < 2) throw ParameterError("density fit needs ambient >= 2");
    DensityEstimate est;
    est.cardinality = set.cardinality();
    est.ambient = set.ambient();
    const double card = static_cast<double>(std::max<std::size_t>(est.cardinality, 1));
    est.alpha_hat = std::log(card) / std::log(static_cast<double>(est.ambient));
    if (est.cardinality == static_cast<std::size_t>(est.ambient)) est.alpha_hat = 1.0;
    est.delta_hat = est.cardinality == 0
                        ? 0.0
                        : static_cast<double>(est.cardinality) /
                              std::pow(static_cast<double>(est.ambient), est.alpha_hat);
    return est;
}

std::vector<DensityPoint> density_profile(const DiscreteSet& set, double exponent,
                                          std::span<const Int> checkpoints) {
    if (checkpoints.empty()) throw ArgumentError("density profile needs at least one checkpoint");
    if (!(exponent > 0.0 && exponent <= 1.0)) {
        throw ParameterError("density profile exponent must lie in (0, 1]");
    }
    std::vector<DensityPoint> out;
    out.reserve(checkpoints.size());
    const auto elems = set.elements();
    const auto first_positive = std::lower_bound(elems.begin(), elems.end(), Int{1});
    Int previous = 0;
    for (Int p : checkpoints) {
        if (p < 1 || p > set.ambient()) throw RangeError("checkpoint outside [1, ambient]");
        if (p <= previous) throw ArgumentError("checkpoints must be strictly ascending");
        previous = p;
        const auto last = std::upper_bound(first_positive, elems.end(), p);
        const auto count = static_cast<double>(last - first_positive);
        out.push_back({p, count / std::pow(static_cast<double>(p), exponent)});
    }
    return out;
}

DiscreteSet scale_embed(std::span<const double> points, Int target) {
    if (target < 2) throw ParameterError("scale_embed target must be >= 2");
    std::vector<Int> elems;
    elems.reserve(points.size());
    const double scale = static_cast<double>(target - 1);
    for (double x : points) {
        if (!(x >= 0.0 && x <= 1.0)) {
            throw RangeError("point " + std::to_string(x) + " outside [0, 1]");
        }
        elems.push_back(static_cast<Int>(std::floor(x * scale)));
    }
    return DiscreteSet::from_unsorted(target, std::move(elems));
}

std::vector<double> triadic_left_endpoints(int depth) {
    if (depth < 0) throw ParameterError("depth must be nonnegative");
    std::vector<double> left{0.0};
    double length = 1.0;
    for (int i = 0; i < depth; ++i) {
        length /= 3.0;
        std::vector<double> next;
        next.reserve(2 * left.size());
        for (double a : left) {
            next.push_back(a);
            next.push_back(a + 2.0 * length);
        }
        left = std::move(next);
    }
    return left;
}

}  // namespace salemap
