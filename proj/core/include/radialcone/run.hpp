#ifndef RADIALCONE_RUN_HPP
#define RADIALCONE_RUN_HPP

#include "radialcone/config.hpp"
#include "radialcone/diagnostics.hpp"
#include "radialcone/nonlinearity.hpp"
#include "radialcone/solver.hpp"

#include <nlohmann/json.hpp>

#include <string>

namespace radialcone {

using json = nlohmann::ordered_json;

struct RunArtifacts {
  RunConfig config;   // as executed
  RunHistory history;
  json report;        // self-contained: config, hypotheses, every diagnostic ledger
};

json hypothesis_json(const HypothesisReport& rep);

/// Builds profile/grid/data from the config, evolves, and computes every
/// configured diagnostic. Pure function of the config: identical configs give
/// bit-identical reports.
RunArtifacts run_simulation(const RunConfig& config);

/// Writes series.ndjson, slices.csv, report.json and summary.txt into dir.
void write_artifacts(const std::string& dir, const RunArtifacts& artifacts);

} // namespace radialcone

#endif
