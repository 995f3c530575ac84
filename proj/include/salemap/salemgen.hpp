#pragma once

// Randomized multiscale construction of Salem-type subsets of [0, N^j).
//
// Stage m splits every surviving interval of length N^{j-m} into N blocks of
// length N^{j-m-1} and keeps a uniformly random t-subset of them. With block
// verification enabled, a choice B is redrawn until its exponential sum tracks
// the full grid B*,
//     |S_B(k)/t - S_{B*}(k)/N| <= eta   for every checked k >= 1,
// with eta^2 t = 32 log(8 N^2 M) unless overridden.

#include "salemap/intsets.hpp"
#include "salemap/spectral.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace salemap {

inline constexpr Int kMaxSalemAmbient = Int{1} << 26;

struct SalemConfig {
    Int branching = 2;  // N
    Int keep = 1;       // t
    int depth = 1;      // j
    std::uint64_t seed = 0;
    int max_retries = 64;
    std::optional<double> eta_override;
    bool verify_blocks = false;
    bool full_range_check = false;  // check k in [1, N^j) instead of one aliasing period

    Int ambient() const;  // N^j
    double alpha() const;  // log t / log N
    void validate() const;

    friend bool operator==(const SalemConfig&, const SalemConfig&) = default;
};

// sqrt(32 ln(8 N^2 M) / t)
double eta_threshold(Int branching, Int keep, Int m);

struct StageRecord {
    int stage = 0;
    Int block_length = 0;       // N^{j-m-1}
    double eta = 0.0;           // threshold used (informational when unverified)
    std::vector<Int> grid;      // B*_m: left endpoints of all candidate blocks
    std::vector<Int> chosen;    // B_m: left endpoints of the kept blocks
    std::vector<int> retries;   // redraws per parent interval
    double max_deviation = 0.0;  // largest checked |S_B/t - S_B*/N| among accepted choices
    DiscreteSet set;            // A_{m+1}

    friend bool operator==(const StageRecord&, const StageRecord&) = default;
};

struct ConstructionTrace {
    SalemConfig config;
    DiscreteSet initial;  // A_0
    std::vector<StageRecord> stages;

    bool complete() const noexcept { return static_cast<int>(stages.size()) == config.depth; }
    // A_m for m in [0, stages.size()].
    const DiscreteSet& set_at(int m) const;
    const DiscreteSet& final_set() const;

    friend bool operator==(const ConstructionTrace&, const ConstructionTrace&) = default;
};

ConstructionTrace construct(const SalemConfig& config);

// Deviation max_k |S_B(k)/t - S_{B*}(k)/N| of one block choice, where B is
// given by offsets in [0, N) on a grid of spacing `block_length` inside
// Z_{ambient}, over k in [1, k_end).
double block_deviation(std::span<const Int> offsets, Int branching, Int block_length, Int ambient, Int k_end);

struct PsiSeries {
    std::vector<Spectrum> per_stage;  // psi_m, m = 0..j
};

// psi_m = (N/t)^m * dft(A_m) on Z_{N^j}.
PsiSeries psi_series(const ConstructionTrace& trace);

struct PsiViolation {
    int stage = 0;  // m: compares psi_{m+1} with psi_m
    Int k = 0;
    double lhs = 0.0;
    double bound = 0.0;
};

struct PsiDiffReport {
    IndexMode index = IndexMode::symmetric;
    std::vector<PsiViolation> violations;
    std::vector<double> max_ratio;  // per stage, max lhs / bound
};

// 32 min(1, N^{m+1}/|k|) t^{-(m+1)/2} ln(8 N^{m+1})
double psi_diff_bound(Int branching, Int keep, int stage, double abs_k);

PsiDiffReport psi_diff_check(const PsiSeries& series, const SalemConfig& config,
                             IndexMode index = IndexMode::symmetric);

struct FinalDecayReport {
    double beta = 0.0;
    DecayFit psi_fit;  // |psi_j(k)| <= C k^{-beta/2}
    DecayFit chi_fit;  // |chi_{A_j}(k)| <= C' (k N^j)^{-beta/2}
    double dc_value = 0.0;             // chi_{A_j}(0)
    double dc_expected = 0.0;          // t^j / N^j
    double scaling_residual = 0.0;     // max_k |chi(k) - (t/N)^j psi_j(k)|
    double scale_factor = 0.0;         // (t/N)^j = N^{(alpha-1) j}
    double scale_reference = 0.0;      // N^{-beta j / 2}
    bool scale_sufficient = false;     // scale_factor < scale_reference
    bool beta_above_two_minus_two_alpha = false;
};

FinalDecayReport final_decay_report(const ConstructionTrace& trace, double beta);

}  // namespace salemap
