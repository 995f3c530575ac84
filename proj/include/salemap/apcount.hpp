#pragma once

// Three-term progression counting: exact enumeration, the spectral trilinear
// form, the middle-third uniformity guarantee, the [0,3N) embedding and the
// full decay/decomposition pipeline.

#include "salemap/intsets.hpp"
#include "salemap/spectral.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace salemap {

enum class Method { direct, spectral, both };

const char* to_string(Method m) noexcept;
Method parse_method(const std::string& name);

// Lambda_3(f,g,h) = E_{x,r} f(x) g(x+r) h(x+2r). The spectral route needs an
// odd modulus.
Complex lambda3(std::span<const Complex> f, std::span<const Complex> g, std::span<const Complex> h,
                Method method);

// sum_n f^(n) g^(-2n) h^(n) directly from spectra (odd modulus).
Complex lambda3_spectral(const Spectrum& f, const Spectrum& g, const Spectrum& h);

// Ordered triples (x,y,z) in A^3 with x + y == 2z (mod N). The direct route
// handles any N; the spectral route needs N odd.
std::uint64_t congruence_count(const DiscreteSet& set, Method method);

// Progressions x < x+r < x+2r inside [0,N), each counted once.
std::uint64_t genuine_ap_count(const DiscreteSet& set);

// One genuine progression (x, x+r, x+2r) if any exists.
std::optional<std::array<Int, 3>> find_genuine_ap(const DiscreteSet& set);

struct APReport {
    std::uint64_t congruence_count = 0;
    std::uint64_t genuine_count = 0;
    std::uint64_t trivial_count = 0;
    double lambda3 = 0.0;
    Method method = Method::direct;
    Int modulus = 0;
    std::optional<std::array<Int, 3>> witness;
};

APReport count_aps(const DiscreteSet& set, Method method);

// A n [ceil(N/3), floor(2N/3)).
DiscreteSet middle_restrict(const DiscreteSet& set);

struct UniformityParams {
    double delta = 1.0;
    double alpha = 1.0;
    double epsilon = 0.05;

    double beta() const noexcept { return 2.0 * alpha - 2.0 - epsilon; }

    // alpha and delta from fractional_density_fit.
    static UniformityParams from_set(const DiscreteSet& set, double epsilon = 0.05);
};

enum class Conclusion { guaranteed, not_applicable };

struct GuaranteeReport {
    bool applicable = false;
    bool coefficient_ok = false;
    bool middle_ok = false;
    bool size_ok = false;
    double max_nonzero_coeff = 0.0;
    double coeff_bound = 0.0;     // delta^2 N^beta / 32
    std::size_t middle_size = 0;  // |M_A|
    double middle_bound = 0.0;    // delta N^alpha / 4
    double size_threshold = 0.0;  // 32 / delta^2
    double lower_bound = 0.0;     // delta^3 N^{3 alpha - 1} / 32 - delta N^alpha
    Conclusion conclusion = Conclusion::not_applicable;
    std::vector<std::string> reasons;
};

GuaranteeReport uniformity_guarantee(const DiscreteSet& set, const UniformityParams& params);

// Same elements inside [0, 3N).
DiscreteSet embed_threeN(const DiscreteSet& set);

struct SmearingRow {
    Int k = 0;
    double group_sum = 0.0;  // |A'^(3k)|^2 + |A'^(3k-1)|^2 + |A'^(3k-2)|^2
    double rhs = 0.0;        // |A^(k)|^2 / 3
    double ratio = 0.0;      // group_sum / rhs (inf when rhs == 0 < group_sum)
    bool exceeds = false;
};

struct SmearingReport {
    std::vector<SmearingRow> rows;
    double aggregate_lhs = 0.0;  // sum_m |A'^(m)|^2
    double aggregate_rhs = 0.0;  // (1/3) sum_k |A^(k)|^2
    double aggregate_residual = 0.0;
    std::size_t exceedances = 0;
};

SmearingReport smearing_diagnostic(const DiscreteSet& set);

struct Lambda3Term {
    std::string label;  // e.g. "m1m2m1"
    Complex value;
};

struct Theorem41Report {
    Int modulus = 0;
    std::size_t cardinality = 0;
    double alpha_hat = 0.0;
    double delta_hat = 0.0;
    bool alpha_check = false;  // alpha > 1/2

    DecayFit decay;
    bool beta_above_two_minus_two_alpha = false;
    bool beta_in_window = false;  // 2/3 < beta <= 1

    FejerParams fejer;
    std::vector<Lambda3Term> lambda3_terms;  // the eight (mu1|mu2) terms
    std::vector<Lambda3Term> mean_terms;     // the eight (mu3|mu4) terms of Lambda_3(mu1,mu1,mu1)
    Complex lambda3_total;
    double expansion_residual = 0.0;  // |sum of eight terms - total|
    double mean_expansion_residual = 0.0;
    double m4_reference = 0.0;        // delta^3 N^{3 alpha - 3}
    double scale_constant = 0.0;      // Lambda_3(mu,mu,mu) N^{3 - 3 alpha}
    double remainder_reference = 0.0;  // N^{-3 beta / 2}

    GuaranteeReport guarantee;
    std::uint64_t congruence_count = 0;
    std::uint64_t genuine_count = 0;             // via the [0,3N) embedding
    std::uint64_t genuine_count_bruteforce = 0;
    bool genuine_agrees = false;
    bool progression_found = false;
    std::optional<std::array<Int, 3>> witness;
};

struct Theorem41Options {
    std::optional<double> beta;
    double epsilon = 0.05;
    IndexMode index = IndexMode::raw;
};

Theorem41Report theorem41_verify(const DiscreteSet& set, const FejerParams& fejer,
                                 const Theorem41Options& options = {});

// Smallest odd ambient >= the current one; elements unchanged.
DiscreteSet oddify(const DiscreteSet& set);

}  // namespace salemap
