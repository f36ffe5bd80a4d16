#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>

#include "hns/gronwall.hpp"
#include "hns/initial_data.hpp"
#include "hns/solver.hpp"

namespace hns {

/// Initial-data request from the [initial] config section.
struct InitialSpec {
    std::string kind = "taylor_green_2d"; // taylor_green_2d | single_mode | random_band | bump_approx
    double amplitude = 1.0;
    double kmin = 1.0, kmax = 2.5;        // random_band
    std::array<int, 3> mode{1, 0, 0};     // single_mode
    std::array<double, 3> direction{0.0, 1.0, 0.0};
    double width = 0.5;                   // bump_approx sigma, fraction of period

    SpectralField build(const WavenumberLattice& lat, std::uint64_t seed) const;
};

/// Fully resolved [run] + [initial] sections.
struct RunSpec {
    SimConfig sim;
    InitialSpec initial;
    std::uint64_t seed = 0;
};

/// Fully resolved [envelope] section.
struct EnvelopeSpec {
    std::string trace_path;
    GrowthFunction g;
    int q = 4;
    std::optional<double> C; // empty = derive from the trace via bound_ratio
};

/// Result of parsing one config file. Sections are independent; a subcommand
/// demands the one it needs. canonical_text is the sorted, fully resolved
/// re-serialization used for hashing and echoing.
struct ParsedConfig {
    std::optional<RunSpec> run;
    std::optional<ComparisonProblem> gronwall;
    std::optional<EnvelopeSpec> envelope;
    std::string canonical_text;
    std::uint64_t hash = 0;

    std::string hash_hex() const;
};

/// Parse `key = value` config text with [section] headers and # comments.
/// Unknown keys, type mismatches and constraint violations throw ConfigError
/// with the offending line number. Defaults are resolved into canonical_text.
ParsedConfig parse_config(const std::string& text);

/// parse_config after reading the file; throws IoError if unreadable.
ParsedConfig parse_config_file(const std::string& path);

/// Recompute canonical_text and hash after mutating a parsed config
/// (the --seed override path).
void refresh_canonical(ParsedConfig& pc);

/// Parse a symbol spec string such as "navier_stokes", "hyper:1.25",
/// "log_supercritical", "zero", "critical" for dimension d.
DissipationSymbol symbol_from_spec(const std::string& spec, int d);

/// Parse a growth spec string such as "one", "power:0.25", "log_quarter",
/// "log_power:0.5".
GrowthFunction growth_from_spec(const std::string& spec);

/// FNV-1a 64-bit hash of a byte string (the config hash primitive).
std::uint64_t fnv1a64(const std::string& bytes);

} // namespace hns
