#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "rrgg/builder.hpp"
#include "rrgg/harness.hpp"
#include "rrgg/oracle.hpp"
#include "rrgg/process.hpp"
#include "rrgg/tessellation.hpp"

// Text formats. Vertices are 0-based everywhere; doubles are written with 17
// significant digits so files round-trip exactly.

namespace rrgg {

/// Header line "n d p seed", then one point per line.
void write_points(std::ostream& out, const PointSet& points);
PointSet read_points(std::istream& in);

/// CSV "i,j,length,colour" in event order.
void write_events_csv(std::ostream& out, const ColouredProcess& process);

/// Instance format: header "n m", then m lines "i j colour [length]".
void write_instance(std::ostream& out, const ColouredGraphInstance& g);
ColouredGraphInstance read_instance(std::istream& in);
/// Reads the events CSV back as an instance on n vertices.
ColouredGraphInstance read_events_csv(std::istream& in, std::size_t n);

std::string to_json(const HittingRadii& radii);
std::string to_json(const RainbowCertificate& cert);
std::string to_json(const BuildFailure& failure);
std::string to_json(const BuildReport& report);
std::string to_json(const DiagnosticsReport& report);
std::string to_json(const ExperimentConfig& config, const ExperimentSummary& summary);
std::string to_json(const std::vector<LawPoint>& points);

/// Field names mirror ExperimentConfig. Throws std::invalid_argument on bad input.
ExperimentConfig config_from_json(const std::string& text);
std::string config_to_json(const ExperimentConfig& config);

/// One row per trial; deterministic (no timing columns).
void write_records_csv(std::ostream& out, const std::vector<TrialRecord>& records);
/// n,trial,wall_seconds.
void write_timing_csv(std::ostream& out, const std::vector<TrialRecord>& records);
void write_law_csv(std::ostream& out, const std::vector<LawPoint>& points);

}  // namespace rrgg
