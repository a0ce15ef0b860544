#pragma once

// Command-line driver: classify, bounds, mixtime, orbit, project, simulate, sweep.
//
// Exit codes: 0 ok, 2 invalid configuration, 3 mathematical precondition
// violated, 4 budget exceeded.

#include "affwalk/io.hpp"
#include "affwalk/montecarlo.hpp"

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace affwalk {

struct ExperimentConfig {
    std::string command;
    std::vector<SweepMatrix> matrices;
    std::vector<std::int64_t> ps;
    double epsilon = 0.25;
    std::uint64_t n_first = 0;       // bounds rows
    std::uint64_t n_last = 15;
    std::uint64_t n = 0;             // simulate steps
    std::uint64_t n_max = kDefaultMixingCap;
    std::uint64_t seed = kDefaultSeed;
    std::string method = "ub";
    std::string output;              // empty: stdout
    std::uint64_t state_cap = kDefaultStateCap;
    std::uint64_t character_cap = kDefaultCharacterCap;
    std::optional<std::uint64_t> l_max;
    double c1 = kDefaultLargeFraction;
    std::vector<std::int64_t> c;
    bool all = false;
    std::uint64_t samples = 0;
    std::optional<std::uint64_t> blocks;
    std::optional<unsigned> m;
    double tol = kDefaultSpectralTolerance;
    std::string dump_states;
    std::string fit_output;
    std::size_t threads = default_threads();
};

/// Validates and normalises a merged configuration document. Matrices may be
/// given as nested arrays or as "a,b;c,d" strings with an optional "tag:" prefix.
ExperimentConfig config_from_json(const std::string& command, const json& j);
json to_json(const ExperimentConfig& cfg);

/// Parses "a,b;c,d" (optionally "tag:a,b;c,d").
SweepMatrix parse_matrix_spec(const std::string& text, std::size_t index);

/// Runs one CLI invocation; args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace affwalk
