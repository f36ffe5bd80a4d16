#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace hns {

/// Provenance record written alongside run outputs.
struct RunManifest {
    std::string config_hash; // "fnv1a64:<16 hex digits>" of the canonical config
    std::uint64_t seed = 0;
    std::string code_version;
    std::string started_utc;
    std::string finished_utc;
    std::string termination;
    std::vector<std::string> artifacts; // every emitted file path

    std::string to_json() const;
};

std::string code_version_string();

/// Current wall time as ISO-8601 UTC.
std::string utc_timestamp_now();

void write_manifest(const RunManifest& m, const std::string& path);

} // namespace hns
