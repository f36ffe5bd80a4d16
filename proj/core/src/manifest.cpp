#include "hns/manifest.hpp"

#include <chrono>
#include <cstdio>
#include <ctime>
#include <fstream>

#include <nlohmann/json.hpp>

#include "hns/errors.hpp"

namespace hns {

std::string code_version_string() { return "hns/1.0.0"; }

std::string utc_timestamp_now() {
    const auto now = std::chrono::system_clock::now();
    const std::time_t tt = std::chrono::system_clock::to_time_t(now);
    std::tm tm{};
    gmtime_r(&tt, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

std::string RunManifest::to_json() const {
    nlohmann::json j;
    j["config_hash"] = config_hash;
    j["seed"] = seed;
    j["code_version"] = code_version;
    j["started_utc"] = started_utc;
    j["finished_utc"] = finished_utc;
    j["termination"] = termination;
    j["artifacts"] = artifacts;
    return j.dump(2) + "\n";
}

void write_manifest(const RunManifest& m, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open '" + path + "' for writing");
    out << m.to_json();
    if (!out) throw IoError("short write to '" + path + "'");
}

} // namespace hns
