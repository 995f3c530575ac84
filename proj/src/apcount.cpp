#include "salemap/apcount.hpp"

#include "salemap/error.hpp"
#include "salemap/kernels.hpp"

#include <cmath>
#include <limits>

namespace salemap {

namespace {

void require_odd(Int modulus, const char* what) {
    if (modulus % 2 == 0) {
        throw ParityError(std::string(what) + " needs an odd modulus, got N = " + std::to_string(modulus));
    }
}

Int ceil_div(Int a, Int b) { return (a + b - 1) / b; }

}  // namespace

const char* to_string(Method m) noexcept {
    switch (m) {
        case Method::direct: return "direct";
        case Method::spectral: return "spectral";
        case Method::both: return "both";
    }
    return "direct";
}

Method parse_method(const std::string& name) {
    if (name == "direct") return Method::direct;
    if (name == "spectral") return Method::spectral;
    if (name == "both") return Method::both;
    throw ParameterError("unknown counting method '" + name + "'");
}

Complex lambda3_spectral(const Spectrum& f, const Spectrum& g, const Spectrum& h) {
    const Int n = f.modulus();
    if (g.modulus() != n || h.modulus() != n) throw ArgumentError("lambda3: moduli differ");
    require_odd(n, "spectral lambda3");
    Complex acc{};
    for (Int k = 0; k < n; ++k) {
        const auto i = static_cast<std::size_t>(k);
        acc += f[i] * g.at(-2 * k) * h[i];
    }
    return acc;
}

Complex lambda3(std::span<const Complex> f, std::span<const Complex> g, std::span<const Complex> h,
                Method method) {
    if (f.size() != g.size() || f.size() != h.size()) throw ArgumentError("lambda3: moduli differ");
    if (f.empty()) throw ArgumentError("lambda3: empty input");
    switch (method) {
        case Method::direct: return kernels::parallel::lambda3_direct(f, g, h);
        case Method::spectral: {
            require_odd(static_cast<Int>(f.size()), "spectral lambda3");
            return lambda3_spectral(dft(f), dft(g), dft(h));
        }
        case Method::both: {
            const Complex s = lambda3(f, g, h, Method::spectral);
            const Complex d = kernels::parallel::lambda3_direct(f, g, h);
            if (std::abs(s - d) > 1e-9 * std::max(1.0, std::abs(d))) {
                throw StateError("lambda3: spectral and direct routes disagree");
            }
            return s;
        }
    }
    return {};
}

std::uint64_t congruence_count(const DiscreteSet& set, Method method) {
    switch (method) {
        case Method::direct: {
            const auto mask = set.indicator();
            return kernels::parallel::congruence_count(set.elements(), mask);
        }
        case Method::spectral: {
            require_odd(set.ambient(), "spectral congruence count");
            const Spectrum chi = dft_indicator(set);
            const double n = static_cast<double>(set.ambient());
            const double value = n * n * lambda3_spectral(chi, chi, chi).real();
            return static_cast<std::uint64_t>(std::llround(std::max(value, 0.0)));
        }
        case Method::both: {
            const auto s = congruence_count(set, Method::spectral);
            const auto d = congruence_count(set, Method::direct);
            if (s != d) throw StateError("congruence count: spectral and direct routes disagree");
            return s;
        }
    }
    return 0;
}

std::uint64_t genuine_ap_count(const DiscreteSet& set) {
    const auto mask = set.indicator();
    return kernels::parallel::genuine_count(set.elements(), mask);
}

std::optional<std::array<Int, 3>> find_genuine_ap(const DiscreteSet& set) {
    const auto e = set.elements();
    for (std::size_t i = 0; i < e.size(); ++i) {
        for (std::size_t j = i + 1; j < e.size(); ++j) {
            const Int c = 2 * e[j] - e[i];
            if (c >= set.ambient()) break;
            if (set.contains(c)) return std::array<Int, 3>{e[i], e[j], c};
        }
    }
    return std::nullopt;
}

APReport count_aps(const DiscreteSet& set, Method method) {
    APReport r;
    r.method = method;
    r.modulus = set.ambient();
    r.congruence_count = congruence_count(set, method);
    r.genuine_count = genuine_ap_count(set);
    r.trivial_count = set.cardinality();
    const double n = static_cast<double>(set.ambient());
    if (method == Method::direct) {
        r.lambda3 = static_cast<double>(r.congruence_count) / (n * n);
    } else {
        const Spectrum chi = dft_indicator(set);
        r.lambda3 = lambda3_spectral(chi, chi, chi).real();
    }
    r.witness = find_genuine_ap(set);
    return r;
}

DiscreteSet middle_restrict(const DiscreteSet& set) {
    const Int n = set.ambient();
    if (n < 3) throw ParameterError("middle restriction needs ambient >= 3");
    const Int lo = ceil_div(n, 3);
    const Int hi = (2 * n) / 3;
    std::vector<Int> kept;
    for (Int e : set.elements()) {
        if (e >= lo && e < hi) kept.push_back(e);
    }
    return DiscreteSet(n, std::move(kept));
}

UniformityParams UniformityParams::from_set(const DiscreteSet& set, double epsilon) {
    const DensityEstimate est = fractional_density_fit(set);
    return {est.delta_hat, est.alpha_hat, epsilon};
}

GuaranteeReport uniformity_guarantee(const DiscreteSet& set, const UniformityParams& params) {
    if (!(params.delta > 0.0)) throw ArgumentError("uniformity guarantee: delta must be positive");
    if (!(params.alpha > 0.0 && params.alpha <= 1.0)) {
        throw ArgumentError("uniformity guarantee: alpha must lie in (0, 1]");
    }
    if (!(params.epsilon > 0.0)) throw ArgumentError("uniformity guarantee: epsilon must be positive");
    const double n = static_cast<double>(set.ambient());
    const double card = static_cast<double>(set.cardinality());
    const double predicted = params.delta * std::pow(n, params.alpha);
    if (std::abs(predicted - card) > 0.5 + 1e-9 * card) {
        throw ArgumentError("uniformity guarantee: delta * N^alpha = " + std::to_string(predicted) +
                            " does not match |A| = " + std::to_string(set.cardinality()));
    }

    GuaranteeReport g;
    const Spectrum chi = dft_indicator(set);
    for (Int k = 1; k < chi.modulus(); ++k) {
        g.max_nonzero_coeff = std::max(g.max_nonzero_coeff, std::abs(chi[static_cast<std::size_t>(k)]));
    }
    const double d = params.delta;
    g.coeff_bound = d * d * std::pow(n, params.beta()) / 32.0;
    // Below N = 3 the middle third is empty.
    g.middle_size = set.ambient() >= 3 ? middle_restrict(set).cardinality() : 0;
    g.middle_bound = d * std::pow(n, params.alpha) / 4.0;
    g.size_threshold = 32.0 / (d * d);
    g.lower_bound = d * d * d * std::pow(n, 3.0 * params.alpha - 1.0) / 32.0 - d * std::pow(n, params.alpha);

    g.coefficient_ok = g.max_nonzero_coeff <= g.coeff_bound;
    g.middle_ok = static_cast<double>(g.middle_size) >= g.middle_bound;
    g.size_ok = n > g.size_threshold;
    g.applicable = g.coefficient_ok && g.middle_ok && g.size_ok;

    if (!g.coefficient_ok) g.reasons.emplace_back("nonzero Fourier coefficient exceeds delta^2 N^beta / 32");
    if (!g.middle_ok) g.reasons.emplace_back("|M_A| below delta N^alpha / 4");
    if (!g.size_ok) g.reasons.emplace_back("N <= 32 / delta^2");
    if (g.applicable && !(g.lower_bound > 0.0)) g.reasons.emplace_back("lower bound not positive");

    g.conclusion = g.applicable && g.lower_bound > 0.0 ? Conclusion::guaranteed : Conclusion::not_applicable;
    return g;
}

DiscreteSet embed_threeN(const DiscreteSet& set) { return set.with_ambient(3 * set.ambient()); }

DiscreteSet oddify(const DiscreteSet& set) {
    return set.ambient() % 2 == 0 ? set.with_ambient(set.ambient() + 1) : set;
}

SmearingReport smearing_diagnostic(const DiscreteSet& set) {
    const Spectrum chi = dft_indicator(set);
    const Spectrum chi_embedded = dft_indicator(embed_threeN(set));
    SmearingReport rep;
    const Int n = set.ambient();
    rep.rows.reserve(static_cast<std::size_t>(n));
    for (Int k = 0; k < n; ++k) {
        SmearingRow row;
        row.k = k;
        row.group_sum = std::norm(chi_embedded.at(3 * k)) + std::norm(chi_embedded.at(3 * k - 1)) +
                        std::norm(chi_embedded.at(3 * k - 2));
        row.rhs = std::norm(chi[static_cast<std::size_t>(k)]) / 3.0;
        if (row.rhs > 0.0) {
            row.ratio = row.group_sum / row.rhs;
        } else {
            row.ratio = row.group_sum > 0.0 ? std::numeric_limits<double>::infinity() : 1.0;
        }
        row.exceeds = row.group_sum > row.rhs * (1.0 + 1e-9) && row.group_sum - row.rhs > 1e-15;
        if (row.exceeds) ++rep.exceedances;
        rep.rows.push_back(row);
    }
    rep.aggregate_lhs = chi_embedded.energy();
    rep.aggregate_rhs = chi.energy() / 3.0;
    rep.aggregate_residual = rep.aggregate_lhs - rep.aggregate_rhs;
    return rep;
}

Theorem41Report theorem41_verify(const DiscreteSet& set, const FejerParams& fejer,
                                 const Theorem41Options& options) {
    const Int n = set.ambient();
    require_odd(n, "decomposition pipeline");
    if (fejer.cutoff < 1 || 2 * fejer.cutoff >= n) {
        throw ParameterError("Fejer cutoff K = " + std::to_string(fejer.cutoff) + " must satisfy 1 <= K < N/2");
    }

    Theorem41Report rep;
    rep.modulus = n;
    rep.cardinality = set.cardinality();
    rep.fejer = fejer;

    const DensityEstimate est = fractional_density_fit(set);
    rep.alpha_hat = est.alpha_hat;
    rep.delta_hat = est.delta_hat;
    // Guard against log-ratio rounding when |A| = sqrt(N) exactly.
    rep.alpha_check = est.alpha_hat > 0.5 + 1e-12;

    const Spectrum chi = dft_indicator(set);
    DecayOptions dopts;
    dopts.beta = options.beta;
    dopts.index = options.index;
    rep.decay = decay_fit(chi, dopts);
    const double beta = rep.decay.beta;
    rep.beta_above_two_minus_two_alpha = beta > 2.0 - 2.0 * est.alpha_hat;
    rep.beta_in_window = beta > 2.0 / 3.0 && beta <= 1.0;

    const FejerSplit split = fejer_split(chi, fejer);
    const std::array<const Spectrum*, 2> mus{&split.mu1, &split.mu2};
    rep.lambda3_total = lambda3_spectral(chi, chi, chi);
    Complex sum{};
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
            for (int k = 0; k < 2; ++k) {
                const Complex v = lambda3_spectral(*mus[i], *mus[j], *mus[k]);
                rep.lambda3_terms.push_back({"m" + std::to_string(i + 1) + "m" + std::to_string(j + 1) + "m" +
                                                 std::to_string(k + 1),
                                             v});
                sum += v;
            }
        }
    }
    rep.expansion_residual = std::abs(sum - rep.lambda3_total);

    const MeanSplit ms = mean_split(split.mu1);
    const std::array<const Spectrum*, 2> parts{&ms.mu3, &ms.mu4};
    const Complex m1_total = lambda3_spectral(split.mu1, split.mu1, split.mu1);
    Complex mean_sum{};
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
            for (int k = 0; k < 2; ++k) {
                const Complex v = lambda3_spectral(*parts[i], *parts[j], *parts[k]);
                rep.mean_terms.push_back({"m" + std::to_string(i + 3) + "m" + std::to_string(j + 3) + "m" +
                                              std::to_string(k + 3),
                                          v});
                mean_sum += v;
            }
        }
    }
    rep.mean_expansion_residual = std::abs(mean_sum - m1_total);

    const double nd = static_cast<double>(n);
    const double a = est.alpha_hat;
    rep.m4_reference = est.delta_hat * est.delta_hat * est.delta_hat * std::pow(nd, 3.0 * a - 3.0);
    rep.scale_constant = rep.lambda3_total.real() * std::pow(nd, 3.0 - 3.0 * a);
    rep.remainder_reference = std::pow(nd, -1.5 * beta);

    if (set.empty()) {
        rep.guarantee.reasons.emplace_back("empty set");
    } else {
        rep.guarantee = uniformity_guarantee(set, UniformityParams::from_set(set, options.epsilon));
    }

    rep.congruence_count = congruence_count(set, Method::spectral);
    const std::uint64_t cyclic = congruence_count(embed_threeN(set), Method::spectral) - set.cardinality();
    if (cyclic % 2 != 0) throw StateError("embedded cyclic progression count is odd");
    rep.genuine_count = cyclic / 2;
    rep.genuine_count_bruteforce = genuine_ap_count(set);
    rep.genuine_agrees = rep.genuine_count == rep.genuine_count_bruteforce;
    rep.progression_found = rep.genuine_count >= 1;
    rep.witness = find_genuine_ap(set);
    return rep;
}

}  // namespace salemap
