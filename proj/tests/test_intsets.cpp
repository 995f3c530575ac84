#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "oracles.hpp"
#include "salemap/error.hpp"
#include "salemap/intsets.hpp"

#include <cmath>
#include <random>

using namespace salemap;

namespace {
std::vector<Int> as_vector(const DiscreteSet& s) { return {s.elements().begin(), s.elements().end()}; }
}  // namespace

TEST_CASE("DiscreteSet rejects invariant violations") {
    CHECK_THROWS_AS(DiscreteSet(5, {1, 1}), ArgumentError);
    CHECK_THROWS_AS(DiscreteSet(5, {3, 2}), ArgumentError);
    CHECK_THROWS_AS(DiscreteSet(5, {5}), RangeError);
    CHECK_THROWS_AS(DiscreteSet(5, {-1}), RangeError);
    CHECK_THROWS_AS(DiscreteSet(0, {}), RangeError);
    const auto s = DiscreteSet::from_unsorted(10, {7, 3, 3, 9});
    CHECK(as_vector(s) == std::vector<Int>{3, 7, 9});
    CHECK(s.contains(7));
    CHECK_FALSE(s.contains(4));
    const auto mask = s.indicator();
    CHECK(mask.size() == 10);
    CHECK(mask[3] == 1);
    CHECK(mask[4] == 0);
}

TEST_CASE("cantor_build small depths") {
    const auto c0 = cantor_build(0);
    CHECK(as_vector(c0) == std::vector<Int>{1});
    CHECK(c0.ambient() == 2);

    const auto c2 = cantor_build(2);
    CHECK(as_vector(c2) == std::vector<Int>{1, 3, 7, 9});
    CHECK(c2.ambient() == 10);

    CHECK(as_vector(cantor_build(3)) == std::vector<Int>{1, 3, 7, 9, 19, 21, 25, 27});
}

TEST_CASE("cantor recursion and cardinality up to the maximum depth") {
    Int power = 1;
    for (int i = 0; i < kDefaultCantorMaxDepth; ++i) {
        const auto ci = cantor_build(i);
        const auto next = cantor_build(i + 1);
        power *= 3;
        std::vector<Int> expected(ci.elements().begin(), ci.elements().end());
        for (Int c : ci.elements()) expected.push_back(power + 1 - c);
        CHECK(next == DiscreteSet::from_unsorted(power + 1, expected));
        CHECK(next.cardinality() == (std::size_t{1} << (i + 1)));
    }
    CHECK_THROWS_AS(cantor_build(kDefaultCantorMaxDepth + 1), SizeLimitError);
}

TEST_CASE("fractional_density_fit examples") {
    const auto est = fractional_density_fit(cantor_build(8));
    CHECK(est.cardinality == 256);
    CHECK(est.alpha_hat == doctest::Approx(std::log(2.0) / std::log(3.0)).epsilon(1e-3));
    CHECK(std::abs(est.alpha_hat - std::log(2.0) / std::log(3.0)) < 1e-3);
    CHECK(est.delta_hat == doctest::Approx(1.0));

    CHECK(fractional_density_fit(DiscreteSet::full(37)).alpha_hat == 1.0);
    CHECK(fractional_density_fit(DiscreteSet(100, {5})).alpha_hat == 0.0);
    CHECK(fractional_density_fit(DiscreteSet(100, {})).alpha_hat == 0.0);
    CHECK_THROWS_AS(fractional_density_fit(DiscreteSet(1, {0})), ParameterError);
}

TEST_CASE("fractional density is monotone under supersets") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 200; ++trial) {
        const Int n = std::uniform_int_distribution<Int>(2, 300)(rng);
        const auto b = oracle::random_set(rng, n, 0.5);
        std::vector<Int> sub;
        std::bernoulli_distribution keep(0.6);
        for (Int e : b.elements())
            if (keep(rng)) sub.push_back(e);
        const DiscreteSet a(n, sub);
        REQUIRE(a.is_subset_of(b));
        CHECK(fractional_density_fit(a).alpha_hat <= fractional_density_fit(b).alpha_hat);
    }
}

TEST_CASE("density_profile on the Cantor set") {
    const auto c = cantor_build(10);
    std::vector<Int> checkpoints;
    for (Int p = 1, i = 0; i <= 10; ++i, p *= 3) checkpoints.push_back(p);

    const auto half = density_profile(c, 0.5, checkpoints);
    for (std::size_t i = 0; i < half.size(); ++i) {
        CHECK(half[i].ratio == doctest::Approx(std::pow(2.0 / std::sqrt(3.0), static_cast<double>(i))).epsilon(1e-12));
        if (i > 0) CHECK(half[i].ratio > half[i - 1].ratio);
    }
    const auto steep = density_profile(c, 0.7, checkpoints);
    for (std::size_t i = 1; i < steep.size(); ++i) {
        CHECK(steep[i].ratio == doctest::Approx(std::pow(2.0 / std::pow(3.0, 0.7), static_cast<double>(i))));
        CHECK(steep[i].ratio < steep[i - 1].ratio);
    }
    CHECK(steep.back().ratio < 0.5);
}

TEST_CASE("density_profile edge cases") {
    const auto full = DiscreteSet::full(50);
    const std::vector<Int> cps{1, 7, 20, 49};
    for (const auto& pt : density_profile(full, 1.0, cps)) CHECK(pt.ratio == doctest::Approx(1.0));

    CHECK_THROWS_AS(density_profile(full, 1.0, std::vector<Int>{}), ArgumentError);
    CHECK_THROWS_AS(density_profile(full, 1.0, std::vector<Int>{5, 3}), ArgumentError);
    CHECK_THROWS_AS(density_profile(full, 1.0, std::vector<Int>{51}), RangeError);
    CHECK_THROWS_AS(density_profile(full, 0.0, cps), ParameterError);
}

TEST_CASE("density_profile at alpha_hat and the full checkpoint equals delta_hat") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 100; ++trial) {
        const Int n = std::uniform_int_distribution<Int>(3, 400)(rng);
        auto s = oracle::random_set(rng, n, 0.3);
        // Prefix counts run over [1, p]; keep 0 out so the last prefix sees all of A.
        std::vector<Int> e;
        for (Int x : s.elements())
            if (x != 0) e.push_back(x);
        if (e.size() < 2) continue;
        const DiscreteSet a(n, e);
        const auto est = fractional_density_fit(a);
        const std::vector<Int> cps{n};
        CHECK(density_profile(a, est.alpha_hat, cps)[0].ratio == doctest::Approx(est.delta_hat).epsilon(1e-12));
    }
}

TEST_CASE("scale_embed") {
    CHECK(as_vector(scale_embed(std::vector<double>{0.0, 0.5}, 10)) == std::vector<Int>{0, 4});
    CHECK(as_vector(scale_embed(std::vector<double>{1.0}, 10)) == std::vector<Int>{9});
    CHECK(as_vector(scale_embed(std::vector<double>{0.5, 0.5, 0.0}, 10)) == std::vector<Int>{0, 4});
    CHECK_THROWS_AS(scale_embed(std::vector<double>{1.5}, 10), RangeError);
    CHECK_THROWS_AS(scale_embed(std::vector<double>{-0.1}, 10), RangeError);
    CHECK_THROWS_AS(scale_embed(std::vector<double>{0.1}, 1), ParameterError);

    const auto pts = triadic_left_endpoints(10);
    REQUIRE(pts.size() == 1024);
    Int target = 1;
    for (int i = 0; i < 10; ++i) target *= 3;
    const auto s = scale_embed(pts, target);
    CHECK(s.cardinality() == 1024);
    CHECK(std::abs(fractional_density_fit(s).alpha_hat - std::log(2.0) / std::log(3.0)) < 0.02);
}
