#pragma once

// Discrete Fourier analysis of functions on Z_N with the 1/N normalization
//   f^(k) = (1/N) sum_n f(n) e^{-2 pi i k n / N}.

#include "salemap/intsets.hpp"

#include <complex>
#include <optional>
#include <span>
#include <vector>

namespace salemap {

using Complex = std::complex<double>;

class Spectrum {
public:
    Spectrum() = default;
    explicit Spectrum(std::vector<Complex> coeffs);

    Int modulus() const noexcept { return static_cast<Int>(coeffs_.size()); }
    std::span<const Complex> coeffs() const noexcept { return coeffs_; }
    std::span<Complex> coeffs() noexcept { return coeffs_; }

    // Index taken mod N, negative indices allowed.
    Complex at(Int k) const noexcept;
    Complex operator[](std::size_t k) const noexcept { return coeffs_[k]; }

    // sum_k |c_k|^2
    double energy() const noexcept;

private:
    std::vector<Complex> coeffs_;
};

// Forward transform of arbitrary point values (FFTW backed).
Spectrum dft(std::span<const Complex> values);

// Spectrum of the indicator of set inside Z_ambient.
Spectrum dft_indicator(const DiscreteSet& set);

// Point values f(x) = sum_k c_k e^{2 pi i k x / N}; inverse of dft().
std::vector<Complex> synthesize(const Spectrum& spectrum);

enum class FejerVariant {
    one_sided,  // frequencies 0..K, the literal kernel
    symmetric,  // frequencies k and N-k weighted alike
};

struct FejerParams {
    Int cutoff = 1;
    FejerVariant variant = FejerVariant::one_sided;
};

// K = floor(N^{1/3}), clamped to at least 1 and below N/2.
FejerParams auto_fejer(Int modulus);

struct FejerSplit {
    Spectrum mu1;  // low-frequency part, (1 - n/(K+1)) c_n for n <= K
    Spectrum mu2;  // remainder c_n - mu1_n
};

FejerSplit fejer_split(const Spectrum& spectrum, const FejerParams& params);

struct MeanSplit {
    Spectrum mu3;  // mu1 with the DC term removed
    Spectrum mu4;  // the DC term alone
};

MeanSplit mean_split(const Spectrum& mu1);

// sup_xi |c_xi|
double linear_bias(const Spectrum& spectrum);

// ((1/N) sum |v_n|^p)^{1/p}
double lp_norm(std::span<const Complex> values, double p);

struct FrequencyRange {
    Int lo = 1;
    Int hi = 0;  // inclusive
};

// How |k| is read in the decay envelope.
enum class IndexMode {
    raw,        // k itself, k in [1, N-1]
    symmetric,  // min(k, N-k)
};

// Envelope shape: C (|k| N)^{-beta/2} for indicator spectra, C |k|^{-beta/2}
// for stage-normalized spectra.
enum class DecayForm {
    k_times_modulus,
    k_only,
};

struct DecayOptions {
    std::optional<double> beta;
    std::optional<FrequencyRange> range;
    IndexMode index = IndexMode::raw;
    DecayForm form = DecayForm::k_times_modulus;
};

struct DecayViolation {
    Int k = 0;
    double magnitude = 0.0;
    double bound = 0.0;
};

struct DecayFit {
    double constant = 0.0;
    double beta = 0.0;
    bool beta_fitted = false;
    bool degenerate = false;
    FrequencyRange range;
    std::vector<DecayViolation> violations;
};

inline constexpr double kNumericalZero = 1e-14;

// Minimal C for a fixed beta, or a dyadic-block least-squares fit of beta
// followed by the minimal C at that beta.
DecayFit decay_fit(const Spectrum& spectrum, const DecayOptions& options = {});

// Every k in range with |c_k| above the envelope (1e-12 relative slack).
std::vector<DecayViolation> decay_check(const Spectrum& spectrum, double constant, double beta,
                                        const DecayOptions& options = {});

}  // namespace salemap
