#include "salemap/salemgen.hpp"

#include "salemap/error.hpp"
#include "salemap/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

namespace salemap {

namespace {

// SplitMix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;

// Counter-based stream keyed by (seed, stage, interval, attempt): the draw for
// a block depends only on its coordinates, never on evaluation order.
class BlockStream {
public:
    BlockStream(std::uint64_t seed, int stage, Int interval, int attempt) noexcept {
        std::uint64_t k = mix64(seed + kGolden);
        k = mix64(k ^ (static_cast<std::uint64_t>(stage) + 1) * kGolden);
        k = mix64(k ^ (static_cast<std::uint64_t>(interval) + 1) * 0xd1b54a32d192ed03ULL);
        k = mix64(k ^ (static_cast<std::uint64_t>(attempt) + 1) * 0x8cb92ba72f3d8dd7ULL);
        state_ = k;
    }

    std::uint64_t next() noexcept {
        state_ += kGolden;
        return mix64(state_);
    }

    // Uniform in [0, bound).
    std::uint64_t below(std::uint64_t bound) noexcept {
        const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                                    std::numeric_limits<std::uint64_t>::max() % bound;
        std::uint64_t x = next();
        while (x >= limit) x = next();
        return x % bound;
    }

private:
    std::uint64_t state_ = 0;
};

// Uniform t-subset of [0, n) via partial Fisher-Yates; returned sorted.
std::vector<Int> sample_subset(BlockStream& rng, Int n, Int t) {
    std::vector<Int> pool(static_cast<std::size_t>(n));
    std::iota(pool.begin(), pool.end(), Int{0});
    for (Int i = 0; i < t; ++i) {
        const auto j = i + static_cast<Int>(rng.below(static_cast<std::uint64_t>(n - i)));
        std::swap(pool[static_cast<std::size_t>(i)], pool[static_cast<std::size_t>(j)]);
    }
    pool.resize(static_cast<std::size_t>(t));
    std::sort(pool.begin(), pool.end());
    return pool;
}

Int checked_pow(Int base, int exp) {
    Int r = 1;
    for (int i = 0; i < exp; ++i) {
        if (r > std::numeric_limits<Int>::max() / base) throw SizeLimitError("N^j overflows 64-bit integers");
        r *= base;
    }
    return r;
}

double deviation_with_table(std::span<const Int> offsets, Int branching, Int block_length, Int ambient,
                            Int k_end, std::span<const Complex> w) {
    const double inv_t = 1.0 / static_cast<double>(offsets.size());
    const double inv_n = 1.0 / static_cast<double>(branching);
    double worst = 0.0;
    for (Int k = 1; k < k_end; ++k) {
        const Int step = (k % ambient) * block_length % ambient;  // phase increment per grid slot
        Complex chosen{};
        Complex grid{};
        std::size_t next = 0;
        for (Int i = 0; i < branching; ++i) {
            const Complex z = w[static_cast<std::size_t>((step * i) % ambient)];
            grid += z;
            if (next < offsets.size() && offsets[next] == i) {
                chosen += z;
                ++next;
            }
        }
        worst = std::max(worst, std::abs(chosen * inv_t - grid * inv_n));
    }
    return worst;
}

}  // namespace

Int SalemConfig::ambient() const { return checked_pow(branching, depth); }

double SalemConfig::alpha() const {
    return std::log(static_cast<double>(keep)) / std::log(static_cast<double>(branching));
}

void SalemConfig::validate() const {
    if (branching < 2) throw ParameterError("branching N must be >= 2");
    if (keep < 1 || keep > branching) throw ParameterError("keep t must satisfy 1 <= t <= N");
    if (depth < 1) throw ParameterError("depth j must be >= 1");
    if (max_retries < 1) throw ParameterError("max retries must be positive");
    if (eta_override && !(*eta_override >= 0.0)) throw ParameterError("eta override must be nonnegative");
    if (ambient() > kMaxSalemAmbient) {
        throw SizeLimitError("N^j = " + std::to_string(ambient()) + " exceeds the supported maximum " +
                             std::to_string(kMaxSalemAmbient));
    }
}

double eta_threshold(Int branching, Int keep, Int m) {
    if (branching < 1 || keep < 1 || m < 1 || keep > branching) {
        throw ParameterError("eta threshold needs N, t, M >= 1 and t <= N");
    }
    const double n = static_cast<double>(branching);
    return std::sqrt(32.0 * std::log(8.0 * n * n * static_cast<double>(m)) / static_cast<double>(keep));
}

const DiscreteSet& ConstructionTrace::set_at(int m) const {
    if (m < 0 || m > static_cast<int>(stages.size())) throw StateError("stage index out of range");
    return m == 0 ? initial : stages[static_cast<std::size_t>(m - 1)].set;
}

const DiscreteSet& ConstructionTrace::final_set() const {
    if (!complete()) throw StateError("construction trace is incomplete");
    return set_at(config.depth);
}

double block_deviation(std::span<const Int> offsets, Int branching, Int block_length, Int ambient, Int k_end) {
    const auto w = kernels::twiddles(ambient);
    std::vector<Int> sorted(offsets.begin(), offsets.end());
    std::sort(sorted.begin(), sorted.end());
    return deviation_with_table(sorted, branching, block_length, ambient, k_end, w);
}

ConstructionTrace construct(const SalemConfig& config) {
    config.validate();
    const Int n = config.branching;
    const Int t = config.keep;
    const Int ambient = config.ambient();

    ConstructionTrace trace;
    trace.config = config;
    trace.initial = DiscreteSet::full(ambient);

    std::vector<Complex> w;
    if (config.verify_blocks) w = kernels::twiddles(ambient);

    std::vector<Int> interval_starts{0};  // left endpoints of A_m's intervals
    Int length = ambient;
    for (int m = 0; m < config.depth; ++m) {
        StageRecord rec;
        rec.stage = m;
        rec.block_length = length / n;
        const Int period = checked_pow(n, m + 1);  // k-period of the stage-m block sums
        rec.eta = config.eta_override.value_or(eta_threshold(n, t, checked_pow(n, m)));
        const Int k_end = config.full_range_check ? ambient : period;

        const auto intervals = static_cast<std::ptrdiff_t>(interval_starts.size());
        std::vector<std::vector<Int>> picks(interval_starts.size());
        std::vector<double> deviations(interval_starts.size(), 0.0);
        rec.retries.assign(interval_starts.size(), 0);
        std::ptrdiff_t failed = -1;

#pragma omp parallel for schedule(dynamic, 1)
        for (std::ptrdiff_t iv = 0; iv < intervals; ++iv) {
            const auto idx = static_cast<std::size_t>(iv);
            for (int attempt = 0; attempt < config.max_retries; ++attempt) {
                BlockStream rng(config.seed, m, iv, attempt);
                auto offsets = sample_subset(rng, n, t);
                if (!config.verify_blocks) {
                    picks[idx] = std::move(offsets);
                    break;
                }
                const double dev = deviation_with_table(offsets, n, rec.block_length, ambient, k_end, w);
                if (dev <= rec.eta) {
                    picks[idx] = std::move(offsets);
                    deviations[idx] = dev;
                    break;
                }
                rec.retries[idx] = attempt + 1;
            }
            if (picks[idx].empty()) {
#pragma omp critical
                if (failed < 0 || iv < failed) failed = iv;
            }
        }
        if (failed >= 0) {
            throw ConstructionError("block verification failed at stage " + std::to_string(m) + ", block " +
                                    std::to_string(failed) + " (interval starting at " +
                                    std::to_string(interval_starts[static_cast<std::size_t>(failed)]) +
                                    ") after " + std::to_string(config.max_retries) + " draws with eta = " +
                                    std::to_string(rec.eta));
        }

        std::vector<Int> next_starts;
        next_starts.reserve(interval_starts.size() * static_cast<std::size_t>(t));
        rec.grid.reserve(interval_starts.size() * static_cast<std::size_t>(n));
        for (std::size_t iv = 0; iv < interval_starts.size(); ++iv) {
            const Int start = interval_starts[iv];
            for (Int i = 0; i < n; ++i) rec.grid.push_back(start + i * rec.block_length);
            for (Int off : picks[iv]) next_starts.push_back(start + off * rec.block_length);
            rec.max_deviation = std::max(rec.max_deviation, deviations[iv]);
        }
        rec.chosen = next_starts;

        std::vector<Int> elems;
        elems.reserve(next_starts.size() * static_cast<std::size_t>(rec.block_length));
        for (Int b : next_starts) {
            for (Int x = 0; x < rec.block_length; ++x) elems.push_back(b + x);
        }
        rec.set = DiscreteSet(ambient, std::move(elems));

        interval_starts = std::move(next_starts);
        length = rec.block_length;
        trace.stages.push_back(std::move(rec));
    }
    return trace;
}

PsiSeries psi_series(const ConstructionTrace& trace) {
    if (!trace.complete()) throw StateError("psi series needs a complete trace");
    const double ratio = static_cast<double>(trace.config.branching) / static_cast<double>(trace.config.keep);
    PsiSeries series;
    for (int m = 0; m <= trace.config.depth; ++m) {
        Spectrum s = dft_indicator(trace.set_at(m));
        const double scale = std::pow(ratio, m);
        for (Complex& c : s.coeffs()) c *= scale;
        series.per_stage.push_back(std::move(s));
    }
    return series;
}

double psi_diff_bound(Int branching, Int keep, int stage, double abs_k) {
    const double grid = std::pow(static_cast<double>(branching), stage + 1);
    return 32.0 * std::min(1.0, grid / abs_k) * std::pow(static_cast<double>(keep), -(stage + 1) / 2.0) *
           std::log(8.0 * grid);
}

PsiDiffReport psi_diff_check(const PsiSeries& series, const SalemConfig& config, IndexMode index) {
    if (static_cast<int>(series.per_stage.size()) != config.depth + 1) {
        throw StateError("psi series does not match the configured depth");
    }
    PsiDiffReport rep;
    rep.index = index;
    const Int ambient = series.per_stage.front().modulus();
    for (int m = 0; m < config.depth; ++m) {
        const Spectrum& lo = series.per_stage[static_cast<std::size_t>(m)];
        const Spectrum& hi = series.per_stage[static_cast<std::size_t>(m + 1)];
        double worst = 0.0;
        for (Int k = 1; k < ambient; ++k) {
            const auto i = static_cast<std::size_t>(k);
            const double abs_k = static_cast<double>(index == IndexMode::symmetric ? std::min(k, ambient - k) : k);
            const double lhs = std::abs(hi[i] - lo[i]);
            const double bound = psi_diff_bound(config.branching, config.keep, m, abs_k);
            worst = std::max(worst, lhs / bound);
            if (lhs > bound) rep.violations.push_back({m, k, lhs, bound});
        }
        rep.max_ratio.push_back(worst);
    }
    return rep;
}

FinalDecayReport final_decay_report(const ConstructionTrace& trace, double beta) {
    if (!trace.complete()) throw StateError("final decay report needs a complete trace");
    if (!(beta > 0.0 && beta <= 1.0)) throw ParameterError("beta must lie in (0, 1]");
    const SalemConfig& cfg = trace.config;
    const Int j = cfg.depth;
    const Spectrum chi = dft_indicator(trace.final_set());
    const double ratio = static_cast<double>(cfg.keep) / static_cast<double>(cfg.branching);
    const double to_chi = std::pow(ratio, static_cast<double>(j));

    const double to_psi = std::pow(1.0 / ratio, static_cast<double>(j));
    std::vector<Complex> psi(chi.coeffs().begin(), chi.coeffs().end());
    for (Complex& c : psi) c *= to_psi;
    const Spectrum psi_j(std::move(psi));

    FinalDecayReport rep;
    rep.beta = beta;
    DecayOptions psi_opts;
    psi_opts.beta = beta;
    psi_opts.form = DecayForm::k_only;
    rep.psi_fit = decay_fit(psi_j, psi_opts);
    DecayOptions chi_opts;
    chi_opts.beta = beta;
    rep.chi_fit = decay_fit(chi, chi_opts);

    rep.dc_value = chi[0].real();
    rep.dc_expected = to_chi;
    for (Int k = 0; k < chi.modulus(); ++k) {
        const auto i = static_cast<std::size_t>(k);
        rep.scaling_residual = std::max(rep.scaling_residual, std::abs(chi[i] - to_chi * psi_j[i]));
    }
    rep.scale_factor = to_chi;
    rep.scale_reference = std::pow(static_cast<double>(cfg.branching), -beta * static_cast<double>(j) / 2.0);
    rep.scale_sufficient = rep.scale_factor < rep.scale_reference;
    rep.beta_above_two_minus_two_alpha = beta > 2.0 - 2.0 * cfg.alpha();
    return rep;
}

}  // namespace salemap
