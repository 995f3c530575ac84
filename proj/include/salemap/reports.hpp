#pragma once

// Stable JSON encodings of every report type. Keys are emitted in a fixed
// order so identical inputs give byte-identical output.

#include "salemap/apcount.hpp"
#include "salemap/intsets.hpp"
#include "salemap/salemgen.hpp"
#include "salemap/spectral.hpp"

#include <json.hpp>

#include <string>

namespace salemap::reports {

using Json = nlohmann::ordered_json;

Json complex_json(Complex c);
Json to_json(const DensityEstimate& est);
Json to_json(const DecayFit& fit);
Json to_json(const APReport& report);
Json to_json(const GuaranteeReport& report);
Json to_json(const SmearingReport& report);
Json to_json(const Theorem41Report& report);
Json to_json(const SalemConfig& config);
Json to_json(const PsiDiffReport& report);
Json to_json(const FinalDecayReport& report);
Json to_json(const Spectrum& spectrum);

// Config echo, per-stage kept block offsets and retry counts, plus either the
// final element list or, when final_set_path is non-empty, a reference to it.
Json trace_json(const ConstructionTrace& trace, const std::string& final_set_path = {});

std::string dump(const Json& j);

}  // namespace salemap::reports
