#pragma once

#include <string>

#include "hns/diagnostics.hpp"

namespace hns {

/// Write the trace as CSV: fixed header
/// t,E,a,E_k,N_sqrt_ratio,N_sobolev,N_centroid,ratio,spectrum_health
/// and one %.17g row per sample, so a read-back is bit-identical.
void write_trace(const EnergyTrace& trace, const std::string& path);

std::string trace_to_string(const EnergyTrace& trace);

/// Exact inverse of write_trace. Throws IoError on a malformed header or a
/// row whose field count does not match the schema.
EnergyTrace read_trace(const std::string& path);
EnergyTrace trace_from_string(const std::string& text);

} // namespace hns
