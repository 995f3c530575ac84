#include "salemap/spectral.hpp"

#include "salemap/error.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <mutex>
#include <string>

namespace salemap {

namespace {

// FFTW's planner is not reentrant; execution is.
std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}

class FftwPlan {
public:
    FftwPlan(std::vector<Complex>& in, std::vector<Complex>& out, int sign) {
        std::lock_guard lock(planner_mutex());
        plan_ = fftw_plan_dft_1d(static_cast<int>(in.size()), reinterpret_cast<fftw_complex*>(in.data()),
                                 reinterpret_cast<fftw_complex*>(out.data()), sign, FFTW_ESTIMATE);
    }
    ~FftwPlan() {
        std::lock_guard lock(planner_mutex());
        fftw_destroy_plan(plan_);
    }
    FftwPlan(const FftwPlan&) = delete;
    FftwPlan& operator=(const FftwPlan&) = delete;

    void execute() const { fftw_execute(plan_); }

private:
    fftw_plan plan_;
};

std::vector<Complex> transform(std::vector<Complex> in, int sign) {
    std::vector<Complex> out(in.size());
    if (in.empty()) return out;
    FftwPlan plan(in, out, sign);
    plan.execute();
    return out;
}

double effective_index(Int k, Int n, IndexMode mode) {
    return static_cast<double>(mode == IndexMode::symmetric ? std::min(k, n - k) : k);
}

FrequencyRange resolve_range(const Spectrum& s, const DecayOptions& options) {
    const FrequencyRange r = options.range.value_or(FrequencyRange{1, s.modulus() - 1});
    if (r.lo > r.hi) throw ParameterError("decay frequency range is empty");
    if (r.lo < 1 || r.hi >= s.modulus()) {
        throw ParameterError("decay frequency range must lie in [1, N-1]");
    }
    return r;
}

double envelope_base(Int k, Int n, const DecayOptions& options) {
    const double kk = effective_index(k, n, options.index);
    return options.form == DecayForm::k_times_modulus ? kk * static_cast<double>(n) : kk;
}

}  // namespace

Spectrum::Spectrum(std::vector<Complex> coeffs) : coeffs_(std::move(coeffs)) {}

Complex Spectrum::at(Int k) const noexcept {
    const Int n = modulus();
    Int idx = k % n;
    if (idx < 0) idx += n;
    return coeffs_[static_cast<std::size_t>(idx)];
}

double Spectrum::energy() const noexcept {
    double sum = 0.0;
    for (const Complex& c : coeffs_) sum += std::norm(c);
    return sum;
}

Spectrum dft(std::span<const Complex> values) {
    auto out = transform(std::vector<Complex>(values.begin(), values.end()), FFTW_FORWARD);
    const double scale = 1.0 / static_cast<double>(std::max<std::size_t>(values.size(), 1));
    for (Complex& c : out) c *= scale;
    return Spectrum(std::move(out));
}

Spectrum dft_indicator(const DiscreteSet& set) {
    std::vector<Complex> values(static_cast<std::size_t>(set.ambient()));
    for (Int e : set.elements()) values[static_cast<std::size_t>(e)] = 1.0;
    return dft(values);
}

std::vector<Complex> synthesize(const Spectrum& spectrum) {
    const auto c = spectrum.coeffs();
    return transform(std::vector<Complex>(c.begin(), c.end()), FFTW_BACKWARD);
}

FejerParams auto_fejer(Int modulus) {
    auto k = static_cast<Int>(std::cbrt(static_cast<double>(modulus)));
    while ((k + 1) * (k + 1) * (k + 1) <= modulus) ++k;
    while (k > 0 && k * k * k > modulus) --k;
    while (k > 0 && 2 * k >= modulus) --k;
    if (k < 1) throw ParameterError("no Fejer cutoff K >= 1 with K < N/2 for N = " + std::to_string(modulus));
    return {k, FejerVariant::one_sided};
}

FejerSplit fejer_split(const Spectrum& spectrum, const FejerParams& params) {
    const Int n = spectrum.modulus();
    const Int k_cut = params.cutoff;
    if (k_cut < 1) throw ParameterError("Fejer cutoff must be positive");
    if (2 * k_cut >= n) {
        throw ParameterError("Fejer cutoff K = " + std::to_string(k_cut) + " must satisfy K < N/2 (N = " +
                             std::to_string(n) + ")");
    }
    const auto in = spectrum.coeffs();
    std::vector<Complex> mu1(in.size());
    std::vector<Complex> mu2(in.size());
    const double denom = static_cast<double>(k_cut + 1);
    for (Int idx = 0; idx < n; ++idx) {
        Int dist = idx;
        if (params.variant == FejerVariant::symmetric) dist = std::min(idx, n - idx);
        const auto i = static_cast<std::size_t>(idx);
        if (dist <= k_cut) mu1[i] = (1.0 - static_cast<double>(dist) / denom) * in[i];
        mu2[i] = in[i] - mu1[i];
    }
    return {Spectrum(std::move(mu1)), Spectrum(std::move(mu2))};
}

MeanSplit mean_split(const Spectrum& mu1) {
    std::vector<Complex> mu3(mu1.coeffs().begin(), mu1.coeffs().end());
    std::vector<Complex> mu4(mu3.size());
    if (!mu3.empty()) {
        mu4[0] = mu3[0];
        mu3[0] = 0.0;
    }
    return {Spectrum(std::move(mu3)), Spectrum(std::move(mu4))};
}

double linear_bias(const Spectrum& spectrum) {
    double best = 0.0;
    for (const Complex& c : spectrum.coeffs()) best = std::max(best, std::abs(c));
    return best;
}

double lp_norm(std::span<const Complex> values, double p) {
    if (!(p >= 1.0)) throw ParameterError("L^p norm needs p >= 1");
    if (values.empty()) return 0.0;
    double sum = 0.0;
    for (const Complex& v : values) sum += std::pow(std::abs(v), p);
    return std::pow(sum / static_cast<double>(values.size()), 1.0 / p);
}

std::vector<DecayViolation> decay_check(const Spectrum& spectrum, double constant, double beta,
                                        const DecayOptions& options) {
    const FrequencyRange r = resolve_range(spectrum, options);
    const Int n = spectrum.modulus();
    std::vector<DecayViolation> out;
    for (Int k = r.lo; k <= r.hi; ++k) {
        const double mag = std::abs(spectrum[static_cast<std::size_t>(k)]);
        const double bound = constant * std::pow(envelope_base(k, n, options), -beta / 2.0);
        if (mag > bound * (1.0 + 1e-12)) out.push_back({k, mag, bound});
    }
    return out;
}

DecayFit decay_fit(const Spectrum& spectrum, const DecayOptions& options) {
    DecayFit fit;
    fit.range = resolve_range(spectrum, options);
    const Int n = spectrum.modulus();
    const auto c = spectrum.coeffs();

    bool any_nonzero = false;
    for (Int k = fit.range.lo; k <= fit.range.hi && !any_nonzero; ++k) {
        any_nonzero = std::abs(c[static_cast<std::size_t>(k)]) >= kNumericalZero;
    }
    if (!any_nonzero) {
        fit.degenerate = true;
        fit.beta = options.beta.value_or(0.0);
        return fit;
    }

    if (options.beta) {
        fit.beta = *options.beta;
    } else {
        // Max |c_k| over each dyadic block [2^i, 2^{i+1}) of the effective index.
        struct Block {
            double best = -1.0;
            double at = 0.0;
        };
        std::vector<Block> blocks;
        for (Int k = fit.range.lo; k <= fit.range.hi; ++k) {
            const double mag = std::abs(c[static_cast<std::size_t>(k)]);
            if (mag < kNumericalZero) continue;
            const double eff = effective_index(k, n, options.index);
            const auto b = static_cast<std::size_t>(std::floor(std::log2(eff)));
            if (blocks.size() <= b) blocks.resize(b + 1);
            if (mag > blocks[b].best) blocks[b] = {mag, eff};
        }
        double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
        int count = 0;
        for (const Block& b : blocks) {
            if (b.best < 0.0) continue;
            const double x = std::log(b.at);
            const double y = std::log(b.best);
            sx += x;
            sy += y;
            sxx += x * x;
            sxy += x * y;
            ++count;
        }
        const double denom = count * sxx - sx * sx;
        if (count < 2 || denom <= 0.0) {
            throw ParameterError("cannot fit beta: fewer than two populated dyadic blocks");
        }
        const double slope = (count * sxy - sx * sy) / denom;
        fit.beta = -2.0 * slope;
        fit.beta_fitted = true;
    }

    for (Int k = fit.range.lo; k <= fit.range.hi; ++k) {
        const double mag = std::abs(c[static_cast<std::size_t>(k)]);
        fit.constant = std::max(fit.constant, mag * std::pow(envelope_base(k, n, options), fit.beta / 2.0));
    }
    fit.violations = decay_check(spectrum, fit.constant, fit.beta, options);
    return fit;
}

}  // namespace salemap
