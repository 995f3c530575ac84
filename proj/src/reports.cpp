#include "salemap/reports.hpp"

namespace salemap::reports {

namespace {

Json witness_json(const std::optional<std::array<Int, 3>>& w) {
    if (!w) return nullptr;
    return Json::array({(*w)[0], (*w)[1], (*w)[2]});
}

Json terms_json(const std::vector<Lambda3Term>& terms) {
    Json out = Json::object();
    for (const auto& t : terms) out[t.label] = complex_json(t.value);
    return out;
}

const char* index_name(IndexMode m) { return m == IndexMode::symmetric ? "symmetric" : "raw"; }

}  // namespace

Json complex_json(Complex c) {
    Json j;
    j["re"] = c.real();
    j["im"] = c.imag();
    j["abs"] = std::abs(c);
    return j;
}

Json to_json(const DensityEstimate& est) {
    Json j;
    j["alphaHat"] = est.alpha_hat;
    j["deltaHat"] = est.delta_hat;
    j["cardinality"] = est.cardinality;
    j["ambient"] = est.ambient;
    return j;
}

Json to_json(const DecayFit& fit) {
    Json j;
    j["C"] = fit.constant;
    j["beta"] = fit.beta;
    j["betaFitted"] = fit.beta_fitted;
    j["degenerate"] = fit.degenerate;
    j["kRange"] = Json::array({fit.range.lo, fit.range.hi});
    Json v = Json::array();
    for (const auto& x : fit.violations) v.push_back(Json::array({x.k, x.magnitude, x.bound}));
    j["violations"] = std::move(v);
    return j;
}

Json to_json(const APReport& r) {
    Json j;
    j["ambient"] = r.modulus;
    j["method"] = to_string(r.method);
    j["congruenceCount"] = r.congruence_count;
    j["genuineCount"] = r.genuine_count;
    j["trivialCount"] = r.trivial_count;
    j["lambda3"] = r.lambda3;
    j["witness"] = witness_json(r.witness);
    return j;
}

Json to_json(const GuaranteeReport& g) {
    Json j;
    j["conclusion"] = g.conclusion == Conclusion::guaranteed ? "guaranteed" : "not-applicable";
    j["applicable"] = g.applicable;
    j["maxNonzeroCoeff"] = g.max_nonzero_coeff;
    j["coeffBound"] = g.coeff_bound;
    j["coefficientOk"] = g.coefficient_ok;
    j["middleSize"] = g.middle_size;
    j["middleBound"] = g.middle_bound;
    j["middleOk"] = g.middle_ok;
    j["sizeThreshold"] = g.size_threshold;
    j["sizeOk"] = g.size_ok;
    j["lowerBound"] = g.lower_bound;
    j["reasons"] = g.reasons;
    return j;
}

Json to_json(const SmearingReport& s) {
    Json j;
    j["aggregateLhs"] = s.aggregate_lhs;
    j["aggregateRhs"] = s.aggregate_rhs;
    j["aggregateResidual"] = s.aggregate_residual;
    j["exceedances"] = s.exceedances;
    Json rows = Json::array();
    for (const auto& r : s.rows) {
        Json row;
        row["k"] = r.k;
        row["groupSum"] = r.group_sum;
        row["rhs"] = r.rhs;
        row["ratio"] = r.ratio;  // non-finite ratios serialize as null
        row["exceeds"] = r.exceeds;
        rows.push_back(std::move(row));
    }
    j["rows"] = std::move(rows);
    return j;
}

Json to_json(const Theorem41Report& r) {
    Json j;
    j["ambient"] = r.modulus;
    j["cardinality"] = r.cardinality;
    j["alphaHat"] = r.alpha_hat;
    j["deltaHat"] = r.delta_hat;
    j["alphaCheck"] = r.alpha_check;
    j["decay"] = to_json(r.decay);
    j["betaAboveTwoMinusTwoAlpha"] = r.beta_above_two_minus_two_alpha;
    j["betaInWindow"] = r.beta_in_window;
    j["fejer"] = {{"K", r.fejer.cutoff},
                  {"variant", r.fejer.variant == FejerVariant::symmetric ? "symmetric" : "one-sided"}};
    j["lambda3Total"] = complex_json(r.lambda3_total);
    j["lambda3Terms"] = terms_json(r.lambda3_terms);
    j["expansionResidual"] = r.expansion_residual;
    j["meanTerms"] = terms_json(r.mean_terms);
    j["meanExpansionResidual"] = r.mean_expansion_residual;
    j["m4Reference"] = r.m4_reference;
    j["scaleConstant"] = r.scale_constant;
    j["remainderReference"] = r.remainder_reference;
    j["guarantee"] = to_json(r.guarantee);
    j["congruenceCount"] = r.congruence_count;
    j["genuineCount"] = r.genuine_count;
    j["genuineCountBruteForce"] = r.genuine_count_bruteforce;
    j["genuineAgrees"] = r.genuine_agrees;
    j["trivialCount"] = r.cardinality;
    j["progressionFound"] = r.progression_found;
    j["witness"] = witness_json(r.witness);
    return j;
}

Json to_json(const SalemConfig& c) {
    Json j;
    j["branching"] = c.branching;
    j["keep"] = c.keep;
    j["depth"] = c.depth;
    j["seed"] = c.seed;
    j["maxRetries"] = c.max_retries;
    j["eta"] = c.eta_override ? Json(*c.eta_override) : Json(nullptr);
    j["verifyBlocks"] = c.verify_blocks;
    j["fullRangeCheck"] = c.full_range_check;
    return j;
}

Json to_json(const PsiDiffReport& r) {
    Json j;
    j["index"] = index_name(r.index);
    j["maxRatio"] = r.max_ratio;
    j["violationCount"] = r.violations.size();
    Json v = Json::array();
    for (const auto& x : r.violations) v.push_back({{"stage", x.stage}, {"k", x.k}, {"lhs", x.lhs}, {"bound", x.bound}});
    j["violations"] = std::move(v);
    return j;
}

Json to_json(const FinalDecayReport& r) {
    Json j;
    j["beta"] = r.beta;
    j["psi"] = to_json(r.psi_fit);
    j["chi"] = to_json(r.chi_fit);
    j["dcValue"] = r.dc_value;
    j["dcExpected"] = r.dc_expected;
    j["scalingResidual"] = r.scaling_residual;
    j["scaleFactor"] = r.scale_factor;
    j["scaleReference"] = r.scale_reference;
    j["scaleSufficient"] = r.scale_sufficient;
    j["betaAboveTwoMinusTwoAlpha"] = r.beta_above_two_minus_two_alpha;
    return j;
}

Json to_json(const Spectrum& s) {
    Json re = Json::array();
    Json im = Json::array();
    for (const Complex& c : s.coeffs()) {
        re.push_back(c.real());
        im.push_back(c.imag());
    }
    Json j;
    j["modulus"] = s.modulus();
    j["re"] = std::move(re);
    j["im"] = std::move(im);
    return j;
}

Json trace_json(const ConstructionTrace& trace, const std::string& final_set_path) {
    Json j;
    j["config"] = to_json(trace.config);
    j["ambient"] = trace.initial.ambient();
    j["alpha"] = trace.config.alpha();
    Json stages = Json::array();
    for (const auto& s : trace.stages) {
        Json st;
        st["stage"] = s.stage;
        st["blockLength"] = s.block_length;
        st["eta"] = s.eta;
        st["maxDeviation"] = s.max_deviation;
        st["cardinality"] = s.set.cardinality();
        st["chosen"] = s.chosen;
        st["retries"] = s.retries;
        stages.push_back(std::move(st));
    }
    j["stages"] = std::move(stages);
    if (!final_set_path.empty()) {
        j["finalSetPath"] = final_set_path;
    } else if (trace.complete()) {
        const auto e = trace.final_set().elements();
        j["final"] = std::vector<Int>(e.begin(), e.end());
    }
    return j;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace salemap::reports
