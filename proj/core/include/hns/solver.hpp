#pragma once

#include <cstdint>
#include <memory>
#include <string>

#include "hns/diagnostics.hpp"
#include "hns/spectral_field.hpp"
#include "hns/symbols.hpp"

namespace hns {

enum class DealiasRule { None, TwoThirds };

/// Everything a run needs besides the initial data.
struct SimConfig {
    int d = 3;
    int n = 32;
    double period = 6.283185307179586476925286766559; // 2*pi
    double dt = 1e-3;
    double t_end = 0.1;
    DissipationSymbol symbol;
    DealiasRule dealias = DealiasRule::TwoThirds;
    int k = 2;                      // Sobolev order of the recorded E_k
    int record_every = 1;           // steps between trace rows
    double blowup_threshold = 1e12; // E_k cap
    bool nonlinearity = true;
    GrowthFunction ratio_growth;    // g used for the recorded ratio column

    SimConfig();

    /// Throws std::invalid_argument when a field violates its constraint.
    void validate() const;
};

struct SolverState {
    double t = 0.0;
    std::uint64_t step_count = 0;
    SpectralField u;
};

/// -P dealias[(u . grad) u] in spectral space: spectral derivatives, physical
/// products, dealias mask, Leray projection, zero mean mode. The input is
/// masked to the dealias band first so retained modes carry the exact
/// truncated convolution. Throws std::invalid_argument if the field is not
/// flagged divergence-free.
SpectralField nonlinear_term(const SpectralField& u, DealiasRule rule);

/// Integrating-factor classical RK4 stepper. The linear flow exp(-m^2 dt) is
/// applied exactly per mode, so pure decay is exact and stiffness of m^2
/// puts no constraint on dt. Reusable across steps: per-mode exponential
/// tables and FFT scratch are built once.
class Stepper {
public:
    Stepper(const WavenumberLattice& lat, const SimConfig& cfg);
    ~Stepper();
    Stepper(Stepper&&) noexcept;
    Stepper& operator=(Stepper&&) noexcept;

    /// Advance by one dt. Throws NumericalFailure on NaN/Inf; verifies the
    /// divergence-free invariant after the step.
    void advance(SolverState& state) const;

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

/// One step of the configured scheme (convenience wrapper; prefer Stepper
/// for loops).
SolverState step(const SolverState& state, const SimConfig& cfg);

enum class TerminationReason { ReachedTEnd, BlowupThresholdExceeded, NumericalFailure };

std::string to_string(TerminationReason r);

struct RunResult {
    SolverState final_state;
    EnergyTrace trace;
    TerminationReason reason = TerminationReason::ReachedTEnd;
    std::string detail; // human-readable termination note
};

/// Integrate from u0 (or a resumed state) to t_end, recording a trace row at
/// the start and every record_every steps plus the final step. A run is cut
/// short when E_k exceeds blowup_threshold or more than 20% of the energy
/// sits in the top third of the resolved band (resolution exhausted); both
/// report BlowupThresholdExceeded. NaN/Inf reports NumericalFailure instead
/// of throwing so the partial trace survives.
RunResult run(const SimConfig& cfg, const SpectralField& u0);
RunResult run_from(const SimConfig& cfg, const SolverState& start);

} // namespace hns
