#pragma once

#include <iosfwd>
#include <string>

#include <json.hpp>

#include "homog/counterexample.hpp"
#include "homog/fenchel.hpp"
#include "homog/metrics.hpp"

namespace homog {

// Toolkit-wide input format: {"kind": "mechanical" | "product" | "fiber_only"
// | "tabulated" | "truncated", ...per-kind payload}. Scalar fields carry a
// "type" tag (constant | cosine | plateau | sampled | sum); grids are {n, N}
// with row-major value arrays.
SpecPtr spec_from_json(const nlohmann::json& j);
nlohmann::json spec_to_json(const HamiltonianSpec& spec);

SpecPtr load_spec(const std::string& path);

// FNV-1a over the form tag and H samples on a fixed (q,p) lattice; stable
// numeric identity for reports.
std::string spec_digest(const HamiltonianSpec& spec);

nlohmann::json effective_to_json(const EffectiveHamiltonian& eff);
void effective_to_csv(std::ostream& os, const EffectiveHamiltonian& eff);

// Sampled-function schema shared with EffectiveHamiltonian, axis label "h".
nlohmann::json beta_to_json(const BetaFunction& beta);
void beta_to_csv(std::ostream& os, const BetaFunction& beta);

nlohmann::json metrics_to_json(const MetricsReport& rep);
void metrics_to_csv(std::ostream& os, const MetricsReport& rep);

nlohmann::json certificate_to_json(const CounterexampleCertificate& cert);

}  // namespace homog
