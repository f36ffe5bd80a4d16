#include "hns/checkpoint.hpp"

#include <bit>
#include <cstring>
#include <fstream>

#include "hns/errors.hpp"

namespace hns {

namespace {

static_assert(std::endian::native == std::endian::little,
              "checkpoint layout is little-endian; big-endian hosts need byte swaps");

template <typename T>
void put(std::ofstream& out, const T& v) {
    out.write(reinterpret_cast<const char*>(&v), sizeof v);
}

template <typename T>
T get(std::ifstream& in) {
    T v{};
    in.read(reinterpret_cast<char*>(&v), sizeof v);
    if (!in) throw IoError("checkpoint: truncated payload");
    return v;
}

} // namespace

void write_checkpoint(const SolverState& state, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open '" + path + "' for writing");
    out.write(kCheckpointMagic, 8);
    put(out, kCheckpointVersion);
    put(out, static_cast<std::uint32_t>(state.u.lattice.dim()));
    put(out, static_cast<std::uint32_t>(state.u.lattice.modes_per_dim()));
    put(out, state.u.lattice.period());
    put(out, state.t);
    put(out, state.step_count);
    for (const auto& c : state.u.comp)
        for (const auto& z : c) {
            put(out, z.real());
            put(out, z.imag());
        }
    if (!out) throw IoError("short write to '" + path + "'");
}

SolverState read_checkpoint(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot read checkpoint file '" + path + "'");

    char magic[8];
    in.read(magic, 8);
    if (!in || std::memcmp(magic, kCheckpointMagic, 8) != 0)
        throw IoError("checkpoint: magic mismatch");
    const auto version = get<std::uint32_t>(in);
    if (version != kCheckpointVersion)
        throw IoError("checkpoint: version unsupported (" + std::to_string(version) + ")");
    const auto d = get<std::uint32_t>(in);
    const auto n = get<std::uint32_t>(in);
    const double period = get<double>(in);
    const double t = get<double>(in);
    const auto step_count = get<std::uint64_t>(in);

    WavenumberLattice lat;
    try {
        lat = make_lattice(static_cast<int>(d), static_cast<int>(n), period);
    } catch (const std::invalid_argument& e) {
        throw IoError(std::string("checkpoint: bad header: ") + e.what());
    }

    SolverState state;
    state.t = t;
    state.step_count = step_count;
    state.u = SpectralField(lat);
    state.u.divergence_free = true;
    for (auto& c : state.u.comp)
        for (auto& z : c) {
            const double re = get<double>(in);
            const double im = get<double>(in);
            z = Complex{re, im};
        }
    return state;
}

} // namespace hns
