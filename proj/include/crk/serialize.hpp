#pragma once

#include "json.hpp"

#include "crk/certifier.hpp"
#include "crk/experiment.hpp"
#include "crk/graph.hpp"
#include "crk/partition.hpp"
#include "crk/random_models.hpp"
#include "crk/spectral.hpp"

namespace crk {

using Json = nlohmann::ordered_json;

Json to_json(const VertexSet& s);
Json to_json(const Bipartition& b);
/// Sample metadata; the graph itself goes to the edge-list file.
Json to_json(const SampleReport& r, std::string_view model);
Json to_json(const SpectralSummary& s);
Json to_json(const BisectionResult& r);
Json to_json(const WitnessChain& c);
/// Certificate fields, alpha_eff, warnings and the derivation transcript.
Json to_json(const Certificate& c);
/// Tagged "kind": "ESTIMATE" so it is never mistaken for a certificate.
Json to_json(const DensityEstimate& e);
Json to_json(const TrialRecord& r, bool timing);
Json to_json(const ScalingFit& f);
Json to_json(const CellRate& r);

} // namespace crk
