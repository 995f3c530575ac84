#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "oracles.hpp"
#include "salemap/error.hpp"
#include "salemap/salemgen.hpp"

#include <cmath>
#include <map>
#include <numbers>
#include <tuple>

using namespace salemap;

namespace {

SalemConfig make(Int n, Int t, int j, std::uint64_t seed) {
    SalemConfig c;
    c.branching = n;
    c.keep = t;
    c.depth = j;
    c.seed = seed;
    return c;
}

Int ipow(Int b, int e) {
    Int r = 1;
    while (e-- > 0) r *= b;
    return r;
}

// max_{1 <= k < k_end} |S_B(k)/t - S_{B*}(k)/N| with S_X(k) = sum_x e(-k x L / ambient).
double deviation_oracle(const std::vector<Int>& offsets, Int n, Int len, Int ambient, Int k_end) {
    const long double two_pi = 2.0L * std::numbers::pi_v<long double>;
    auto term = [&](Int o, Int k) {
        const Int phase = (k % ambient) * (o * len % ambient) % ambient;
        return std::polar(1.0L, -two_pi * static_cast<long double>(phase) / static_cast<long double>(ambient));
    };
    long double worst = 0.0L;
    for (Int k = 1; k < k_end; ++k) {
        std::complex<long double> sb{}, sall{};
        for (Int o : offsets) sb += term(o, k);
        for (Int o = 0; o < n; ++o) sall += term(o, k);
        worst = std::max(worst, std::abs(sb / static_cast<long double>(offsets.size()) - sall / static_cast<long double>(n)));
    }
    return static_cast<double>(worst);
}

}  // namespace

TEST_CASE("eta_threshold") {
    CHECK(eta_threshold(8, 6, 64) == doctest::Approx(std::sqrt(32.0 * std::log(32768.0) / 6.0)));
    CHECK(std::abs(eta_threshold(8, 6, 64) - 7.446) < 1e-3);
    CHECK(eta_threshold(5, 1, 1) == doctest::Approx(std::sqrt(32.0 * std::log(200.0))));
    for (Int t = 1; t < 9; ++t) CHECK(eta_threshold(9, t + 1, 27) < eta_threshold(9, t, 27));
    CHECK_THROWS_AS(eta_threshold(4, 5, 1), ParameterError);
}

TEST_CASE("config validation") {
    CHECK_THROWS_AS(make(1, 1, 1, 0).validate(), ParameterError);
    CHECK_THROWS_AS(make(4, 0, 1, 0).validate(), ParameterError);
    CHECK_THROWS_AS(make(4, 5, 1, 0).validate(), ParameterError);
    CHECK_THROWS_AS(make(4, 2, 0, 0).validate(), ParameterError);
    CHECK_THROWS_AS(make(2, 1, 27, 0).validate(), SizeLimitError);
    CHECK_THROWS_AS(make(1000, 2, 7, 0).validate(), SizeLimitError);
    CHECK(make(8, 6, 4, 0).ambient() == 4096);
    CHECK(make(8, 6, 4, 0).alpha() == doctest::Approx(std::log(6.0) / std::log(8.0)));
}

TEST_CASE("construct small examples") {
    const auto full = construct(make(8, 8, 3, 5));
    CHECK(full.final_set() == DiscreteSet::full(512));

    const auto thin = construct(make(3, 1, 2, 9));
    CHECK(thin.set_at(0).cardinality() == 9);
    CHECK(thin.set_at(1).cardinality() == 3);
    CHECK(thin.set_at(2).cardinality() == 1);
}

TEST_CASE("construct structural invariants") {
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        for (auto [n, t, j] : {std::tuple<Int, Int, int>{8, 6, 4}, {5, 3, 3}, {4, 2, 5}, {7, 1, 3}}) {
            const auto cfg = make(n, t, j, seed);
            const auto trace = construct(cfg);
            REQUIRE(trace.complete());
            for (int m = 0; m <= j; ++m) {
                const auto& a = trace.set_at(m);
                CHECK(a.ambient() == ipow(n, j));
                CHECK(static_cast<Int>(a.cardinality()) == ipow(t, m) * ipow(n, j - m));
                if (m < j) CHECK(trace.set_at(m + 1).is_subset_of(a));
            }
            for (const auto& st : trace.stages) {
                const Int len = st.block_length;
                CHECK(static_cast<Int>(st.chosen.size()) == ipow(t, st.stage + 1));
                CHECK(static_cast<Int>(st.grid.size()) == ipow(t, st.stage) * n);
                // each parent interval keeps exactly t blocks
                const Int parent = len * n;
                std::map<Int, Int> per_parent;
                for (Int b : st.chosen) {
                    CHECK(b % len == 0);
                    ++per_parent[b / parent];
                }
                for (const auto& [p, c] : per_parent) CHECK(c == t);
                // A_{m+1} is exactly the union of chosen blocks
                std::vector<Int> expected;
                for (Int b : st.chosen)
                    for (Int x = 0; x < len; ++x) expected.push_back(b + x);
                CHECK(st.set == DiscreteSet::from_unsorted(ipow(n, j), expected));
            }
            const auto est = fractional_density_fit(trace.final_set());
            if (t > 1) CHECK(est.alpha_hat == doctest::Approx(std::log(double(t)) / std::log(double(n))).epsilon(1e-12));
        }
    }
}

TEST_CASE("construct is deterministic per seed") {
    const auto a = construct(make(8, 6, 4, 1));
    const auto b = construct(make(8, 6, 4, 1));
    const auto c = construct(make(8, 6, 4, 2));
    CHECK(a == b);
    CHECK_FALSE(a.final_set() == c.final_set());
}

TEST_CASE("block_deviation matches the direct sum") {
    const Int n = 5, len = 25, ambient = 125;
    for (const std::vector<Int>& b : {std::vector<Int>{0, 2, 3}, {1}, {0, 1, 2, 3, 4}, {4, 0}}) {
        for (Int k_end : {Int{5}, Int{25}, Int{125}}) {
            CHECK(block_deviation(b, n, len, ambient, k_end) ==
                  doctest::Approx(deviation_oracle(b, n, len, ambient, k_end)).epsilon(1e-10));
        }
    }
    CHECK(block_deviation(std::vector<Int>{0, 1, 2, 3, 4}, n, len, ambient, 125) < 1e-12);
}

TEST_CASE("block verification and the rejection path") {
    auto cfg = make(8, 6, 3, 4);
    cfg.verify_blocks = true;
    const auto trace = construct(cfg);
    for (const auto& st : trace.stages) {
        CHECK(st.max_deviation <= st.eta);
        for (int r : st.retries) CHECK(r == 0);
    }
    // The set does not depend on verification when the threshold is vacuous.
    auto plain = cfg;
    plain.verify_blocks = false;
    CHECK(construct(plain).final_set() == trace.final_set());

    auto strict = cfg;
    strict.eta_override = 0.0;
    CHECK_THROWS_AS(construct(strict), ConstructionError);
    try {
        construct(strict);
    } catch (const ConstructionError& e) {
        CHECK(std::string(e.what()).find("stage 0") != std::string::npos);
    }

    // A meaningful threshold that forces some redraws but still succeeds.
    auto tight = make(6, 3, 3, 11);
    tight.verify_blocks = true;
    tight.full_range_check = true;
    tight.eta_override = 0.75;
    tight.max_retries = 500;
    const auto tt = construct(tight);
    int redraws = 0;
    for (const auto& st : tt.stages) {
        CHECK(st.max_deviation <= 0.75);
        for (int r : st.retries) redraws += r;
    }
    CHECK(redraws > 0);
    for (const auto& st : tt.stages) {
        const Int parent = st.block_length * 6;
        for (std::size_t i = 0; i < st.chosen.size(); i += 3) {
            std::vector<Int> off;
            for (std::size_t q = 0; q < 3; ++q) off.push_back((st.chosen[i + q] % parent) / st.block_length);
            CHECK(deviation_oracle(off, 6, st.block_length, 216, 216) <= 0.75 + 1e-9);
        }
    }
}

TEST_CASE("psi series invariants") {
    const auto trace = construct(make(8, 6, 3, 3));
    const auto series = psi_series(trace);
    REQUIRE(series.per_stage.size() == 4);
    for (std::size_t m = 0; m < series.per_stage.size(); ++m) {
        const auto& psi = series.per_stage[m];
        CHECK(std::abs(psi[0] - Complex(1.0, 0.0)) < 1e-12);
        const double scale = std::pow(8.0 / 6.0, static_cast<double>(m));
        const auto ref = oracle::dft(oracle::indicator(trace.set_at(static_cast<int>(m))));
        for (Int k = 0; k < psi.modulus(); ++k) {
            const auto i = static_cast<std::size_t>(k);
            CHECK(std::abs(psi[i] - scale * ref[i]) < 1e-12);
            CHECK(std::abs(psi[i]) <= scale + 1e-12);
            if (m == 0 && k != 0) CHECK(std::abs(psi[i]) < 1e-15);
        }
    }

    const auto flat = psi_series(construct(make(4, 4, 3, 1)));
    for (const auto& psi : flat.per_stage)
        for (Int k = 0; k < psi.modulus(); ++k)
            CHECK(std::abs(psi[static_cast<std::size_t>(k)] - flat.per_stage[0][static_cast<std::size_t>(k)]) < 1e-15);
    const auto none = psi_diff_check(flat, make(4, 4, 3, 1));
    CHECK(none.violations.empty());
}

TEST_CASE("psi_diff_bound branches") {
    const double base = 32.0 * std::pow(6.0, -1.0) * std::log(512.0);
    CHECK(psi_diff_bound(8, 6, 1, 10.0) == doctest::Approx(base));
    CHECK(psi_diff_bound(8, 6, 1, 64.0) == doctest::Approx(base));
    CHECK(psi_diff_bound(8, 6, 1, 128.0) == doctest::Approx(base * 0.5));
}

TEST_CASE("psi_diff_check has no violations on the reference builds") {
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        const auto cfg = make(8, 6, 4, seed);
        const auto series = psi_series(construct(cfg));
        const auto sym = psi_diff_check(series, cfg);
        CHECK(sym.violations.empty());
        REQUIRE(sym.max_ratio.size() == 4);
        for (double r : sym.max_ratio) CHECK(r < 1.0);
        // Raw k only trips at the top of the range, where k is an alias of a
        // small negative frequency.
        for (const auto& v : psi_diff_check(series, cfg, IndexMode::raw).violations) CHECK(v.k > 4096 - 64);
    }
}

TEST_CASE("final_decay_report") {
    const auto trace = construct(make(8, 6, 4, 1));
    const auto rep = final_decay_report(trace, 0.7);
    CHECK(std::isfinite(rep.psi_fit.constant));
    CHECK(rep.psi_fit.constant > 0.0);
    CHECK(rep.psi_fit.violations.empty());
    CHECK(rep.chi_fit.violations.empty());
    CHECK(rep.dc_value == doctest::Approx(1296.0 / 4096.0).epsilon(1e-14));
    CHECK(rep.dc_expected == 1296.0 / 4096.0);
    CHECK(rep.scaling_residual < 1e-12);
    CHECK(rep.beta_above_two_minus_two_alpha);
    CHECK(rep.scale_factor == doctest::Approx(std::pow(0.75, 4)));

    const auto series = psi_series(trace);
    double c = 0.0;
    for (Int k = 1; k < 4096; ++k)
        c = std::max(c, std::abs(series.per_stage[4][static_cast<std::size_t>(k)]) * std::pow(double(k), 0.35));
    CHECK(rep.psi_fit.constant == doctest::Approx(c).epsilon(1e-12));

    CHECK_THROWS_AS(final_decay_report(trace, 0.0), ParameterError);
    CHECK_THROWS_AS(final_decay_report(trace, 1.5), ParameterError);
    ConstructionTrace partial = trace;
    partial.stages.pop_back();
    CHECK_THROWS_AS(final_decay_report(partial, 0.7), StateError);
    CHECK_THROWS_AS(psi_series(partial), StateError);
}
