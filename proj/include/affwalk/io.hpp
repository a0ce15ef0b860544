#pragma once

// Serialization of analysis results. CSV files start with '#' comment lines,
// JSON files with '//' comment lines; readers skip both.

#include "affwalk/exactdist.hpp"
#include "affwalk/fourier.hpp"
#include "affwalk/montecarlo.hpp"
#include "affwalk/spectral.hpp"

#include <json.hpp>

#include <iosfwd>
#include <string>
#include <vector>

namespace affwalk {

inline constexpr const char* kToolName = "affwalk";
inline constexpr const char* kToolVersion = "0.1.0";
/// Bumped whenever a CSV column layout changes.
inline constexpr int kCsvSchemaVersion = 1;

using nlohmann::json;

/// Shortest round-trippable decimal ("%.17g").
std::string format_double(double x);

json to_json(const SpectrumReport& r);
SpectrumReport spectrum_from_json(const json& j);

json to_json(const OrbitRecord& r);
OrbitRecord orbit_from_json(const json& j);

json to_json(const OrbitSweep& s);

json to_json(const ProjectionReport& r);
ProjectionReport projection_from_json(const json& j);

json to_json(const ScalingFit& f);
ScalingFit fit_from_json(const json& j);

/// Parses JSON allowing '//' comment lines.
json parse_json(const std::string& text);

/// Columns: n,ub,lb[,tv_exact].
void write_bound_series_csv(std::ostream& os, const BoundSeries& s);
BoundSeries read_bound_series_csv(std::istream& is);

/// Columns: matrix_tag,p,n_mix,method,error. n_mix is empty for failed cells.
void write_sweep_csv(std::ostream& os, const std::vector<SweepCell>& cells);
std::vector<SweepCell> read_sweep_csv(std::istream& is);

/// "p,d,n" header row, then one "index,mass" row per state in index order.
void write_distribution_csv(std::ostream& os, const DenseDistribution& dist, std::uint64_t n);
std::pair<DenseDistribution, std::uint64_t> read_distribution_csv(std::istream& is);

/// One row per trajectory: its final coordinates.
void write_states_csv(std::ostream& os, const TrajectoryBatch& batch);

}  // namespace affwalk
