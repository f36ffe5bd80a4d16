#pragma once

#include <string>

#include "hns/solver.hpp"

namespace hns {

/// Binary checkpoint layout, little-endian:
///   bytes 0..7   magic "HNAVCKPT"
///   u32          version (currently 1)
///   u32          d
///   u32          n
///   f64          period
///   f64          t
///   u64          step_count
///   then d * n^d coefficients as interleaved (re, im) f64 pairs,
///   component-major, row-major lattice order within each component.
inline constexpr char kCheckpointMagic[8] = {'H', 'N', 'A', 'V', 'C', 'K', 'P', 'T'};
inline constexpr std::uint32_t kCheckpointVersion = 1;

/// Header size in bytes; payload is d * n^d * 16 bytes.
inline constexpr std::size_t kCheckpointHeaderSize = 8 + 4 + 4 + 4 + 8 + 8 + 8;

void write_checkpoint(const SolverState& state, const std::string& path);

/// Reconstructs a bit-identical state. Throws IoError with "magic mismatch",
/// "version unsupported" or "truncated payload" in the message.
SolverState read_checkpoint(const std::string& path);

} // namespace hns
