#include "hns/solver.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "hns/errors.hpp"
#include "hns/internal/kahan.hpp"
#include "hns/operators.hpp"
#include "hns/transform.hpp"

namespace hns {

SimConfig::SimConfig()
    : symbol(symbol_navier_stokes(3)), ratio_growth(growth_log_quarter()) {}

void SimConfig::validate() const {
    if (d != 2 && d != 3) throw std::invalid_argument("config: d must be 2 or 3");
    if (n % 2 != 0 || n < 8 || n > 1024)
        throw std::invalid_argument("config: n must be even and in [8, 1024]");
    if (!(period > 0.0)) throw std::invalid_argument("config: period must be positive");
    if (!(dt > 0.0)) throw std::invalid_argument("config: dt must be positive");
    if (!(t_end > 0.0)) throw std::invalid_argument("config: t_end must be positive");
    if (k < 1 || k > 32) throw std::invalid_argument("config: k must be in [1, 32]");
    if (record_every < 1) throw std::invalid_argument("config: record_every must be >= 1");
    if (!(blowup_threshold > 0.0))
        throw std::invalid_argument("config: blowup_threshold must be positive");
    if (!symbol.eval) throw std::invalid_argument("config: no dissipation symbol");
    if (!ratio_growth.eval) throw std::invalid_argument("config: no growth function");
    if (symbol.dim != d)
        throw std::invalid_argument("config: symbol dimension " + std::to_string(symbol.dim) +
                                    " does not match d=" + std::to_string(d));
}

std::string to_string(TerminationReason r) {
    switch (r) {
        case TerminationReason::ReachedTEnd: return "reached_t_end";
        case TerminationReason::BlowupThresholdExceeded: return "blowup_threshold_exceeded";
        case TerminationReason::NumericalFailure: return "numerical_failure";
    }
    return "?";
}

namespace {

using Coeffs = std::vector<std::vector<Complex>>;

Coeffs make_coeffs(const WavenumberLattice& lat) {
    return Coeffs(static_cast<std::size_t>(lat.dim()),
                  std::vector<Complex>(lat.mode_count(), Complex{0.0, 0.0}));
}

// Shared pseudo-spectral advection kernel:
//   out = forward( sum_j u_j d_j u_i ) on the dealias-masked input,
// then mask, Leray-project, negate, zero the mean mode.
void advection_into(const WavenumberLattice& lat, const Coeffs& u,
                    const std::vector<unsigned char>& keep, Coeffs& out, Coeffs& masked,
                    std::vector<std::vector<double>>& uphys, std::vector<Complex>& deriv_c,
                    std::vector<double>& deriv_p, std::vector<double>& acc) {
    const int d = lat.dim();
    const std::size_t m = lat.mode_count();

    for (int c = 0; c < d; ++c) {
        auto& mc = masked[static_cast<std::size_t>(c)];
        const auto& uc = u[static_cast<std::size_t>(c)];
        for (std::size_t i = 0; i < m; ++i) mc[i] = keep[i] ? uc[i] : Complex{0.0, 0.0};
        inverse_component(lat, mc, uphys[static_cast<std::size_t>(c)]);
    }

    for (int i = 0; i < d; ++i) {
        for (std::size_t s = 0; s < m; ++s) acc[s] = 0.0;
        for (int j = 0; j < d; ++j) {
            // spectral derivative d_j of component i
            const auto& mi = masked[static_cast<std::size_t>(i)];
            for_each_mode(lat, [&](std::size_t idx, const std::array<double, 3>& xi) {
                const Complex v = mi[idx];
                deriv_c[idx] = Complex{-xi[static_cast<std::size_t>(j)] * v.imag(),
                                       xi[static_cast<std::size_t>(j)] * v.real()};
            });
            inverse_component(lat, deriv_c, deriv_p);
            const auto& uj = uphys[static_cast<std::size_t>(j)];
            for (std::size_t s = 0; s < m; ++s) acc[s] += uj[s] * deriv_p[s];
        }
        forward_component(lat, acc, out[static_cast<std::size_t>(i)]);
    }

    // mask the product, project out the pressure gradient, flip sign
    for (int c = 0; c < d; ++c) {
        auto& oc = out[static_cast<std::size_t>(c)];
        for (std::size_t i = 0; i < m; ++i)
            if (!keep[i]) oc[i] = Complex{0.0, 0.0};
    }
    for_each_mode(lat, [&](std::size_t idx, const std::array<double, 3>& xi) {
        const double xi2 = xi[0] * xi[0] + xi[1] * xi[1] + xi[2] * xi[2];
        if (xi2 == 0.0) {
            for (int c = 0; c < d; ++c) out[static_cast<std::size_t>(c)][idx] = Complex{0.0, 0.0};
            return;
        }
        Complex dot{0.0, 0.0};
        for (int c = 0; c < d; ++c)
            dot += xi[static_cast<std::size_t>(c)] * out[static_cast<std::size_t>(c)][idx];
        const Complex scale = dot / xi2;
        for (int c = 0; c < d; ++c) {
            auto& v = out[static_cast<std::size_t>(c)][idx];
            v = -(v - xi[static_cast<std::size_t>(c)] * scale);
        }
    });
}

std::vector<unsigned char> dealias_mask(const WavenumberLattice& lat, DealiasRule rule) {
    const int n = lat.modes_per_dim();
    std::vector<unsigned char> keep(lat.mode_count(), 1);
    const double cap = rule == DealiasRule::TwoThirds
                           ? (2.0 / 3.0) * (n / 2.0) + 1e-9
                           : static_cast<double>(n); // None: only Nyquist goes
    for_each_mode_indexed(lat, [&](std::size_t idx, const std::array<int, 3>& iv,
                                   const std::array<double, 3>&) {
        for (int ax = 0; ax < lat.dim(); ++ax) {
            const int j = iv[static_cast<std::size_t>(ax)];
            if (j == n / 2 || std::abs(lat.k_int(j)) > cap) {
                keep[idx] = 0;
                return;
            }
        }
    });
    return keep;
}

} // namespace

SpectralField nonlinear_term(const SpectralField& u, DealiasRule rule) {
    if (!u.divergence_free)
        throw std::invalid_argument("nonlinear_term: input is not flagged divergence-free");
    const auto& lat = u.lattice;
    const std::size_t m = lat.mode_count();
    auto keep = dealias_mask(lat, rule);
    Coeffs out = make_coeffs(lat);
    Coeffs masked = make_coeffs(lat);
    std::vector<std::vector<double>> uphys(static_cast<std::size_t>(lat.dim()),
                                           std::vector<double>(m, 0.0));
    std::vector<Complex> deriv_c(m);
    std::vector<double> deriv_p(m), acc(m);
    advection_into(lat, u.comp, keep, out, masked, uphys, deriv_c, deriv_p, acc);
    SpectralField result(lat);
    result.comp = std::move(out);
    result.divergence_free = true;
    result.sanitize();
    return result;
}

struct Stepper::Impl {
    WavenumberLattice lat;
    SimConfig cfg;
    std::vector<double> e_half; // exp(-m^2 dt/2) per mode
    std::vector<double> e_full; // exp(-m^2 dt) per mode
    std::vector<unsigned char> keep;

    // scratch (advance() is logically const)
    mutable Coeffs n_term, stage, acc_sum, masked;
    mutable std::vector<std::vector<double>> uphys;
    mutable std::vector<Complex> deriv_c;
    mutable std::vector<double> deriv_p, phys_acc;

    Impl(const WavenumberLattice& l, const SimConfig& c) : lat(l), cfg(c) {
        cfg.validate();
        if (lat.dim() != cfg.d || lat.modes_per_dim() != cfg.n || lat.period() != cfg.period)
            throw std::invalid_argument("Stepper: lattice does not match config");
        const std::size_t m = lat.mode_count();
        e_half.resize(m);
        e_full.resize(m);
        for_each_mode(lat, [&](std::size_t idx, const std::array<double, 3>& xi) {
            const double r = std::sqrt(xi[0] * xi[0] + xi[1] * xi[1] + xi[2] * xi[2]);
            const double mv = cfg.symbol.eval(r);
            if (!std::isfinite(mv) || mv < 0.0)
                throw std::domain_error("Stepper: symbol returned " + std::to_string(mv) +
                                        " at |xi|=" + std::to_string(r));
            const double m2 = mv * mv;
            e_half[idx] = std::exp(-m2 * cfg.dt / 2.0);
            e_full[idx] = std::exp(-m2 * cfg.dt);
        });
        keep = dealias_mask(lat, cfg.dealias);
        n_term = make_coeffs(lat);
        stage = make_coeffs(lat);
        acc_sum = make_coeffs(lat);
        masked = make_coeffs(lat);
        uphys.assign(static_cast<std::size_t>(lat.dim()), std::vector<double>(m, 0.0));
        deriv_c.resize(m);
        deriv_p.resize(m);
        phys_acc.resize(m);
    }

    void eval_nonlinear(const Coeffs& u, Coeffs& out) const {
        advection_into(lat, u, keep, out, masked, uphys, deriv_c, deriv_p, phys_acc);
    }

    void advance(SolverState& state) const {
        const int d = lat.dim();
        const std::size_t m = lat.mode_count();
        const double dt = cfg.dt;
        Coeffs& u = state.u.comp;

        if (!cfg.nonlinearity) {
            for (int c = 0; c < d; ++c) {
                auto& uc = u[static_cast<std::size_t>(c)];
                for (std::size_t i = 0; i < m; ++i) uc[i] *= e_full[i];
            }
        } else {
            // integrating-factor classical RK4:
            //   u' = E1 u + dt/6 [E1 N1 + 2 Eh (N2 + N3) + N4]
            //   N1 = N(u)
            //   N2 = N(Eh (u + dt/2 N1))
            //   N3 = N(Eh u + dt/2 N2)
            //   N4 = N(E1 u + dt Eh N3)
            // with Eh = exp(-m^2 dt/2), E1 = exp(-m^2 dt) applied per mode.
            eval_nonlinear(u, n_term); // N1
            for (int c = 0; c < d; ++c) {
                const auto& uc = u[static_cast<std::size_t>(c)];
                const auto& nc = n_term[static_cast<std::size_t>(c)];
                auto& sc = stage[static_cast<std::size_t>(c)];
                auto& ac = acc_sum[static_cast<std::size_t>(c)];
                for (std::size_t i = 0; i < m; ++i) {
                    ac[i] = e_full[i] * (uc[i] + (dt / 6.0) * nc[i]);
                    sc[i] = e_half[i] * (uc[i] + (dt / 2.0) * nc[i]);
                }
            }
            eval_nonlinear(stage, n_term); // N2
            for (int c = 0; c < d; ++c) {
                const auto& uc = u[static_cast<std::size_t>(c)];
                const auto& nc = n_term[static_cast<std::size_t>(c)];
                auto& sc = stage[static_cast<std::size_t>(c)];
                auto& ac = acc_sum[static_cast<std::size_t>(c)];
                for (std::size_t i = 0; i < m; ++i) {
                    ac[i] += (dt / 3.0) * e_half[i] * nc[i];
                    sc[i] = e_half[i] * uc[i] + (dt / 2.0) * nc[i];
                }
            }
            eval_nonlinear(stage, n_term); // N3
            for (int c = 0; c < d; ++c) {
                const auto& uc = u[static_cast<std::size_t>(c)];
                const auto& nc = n_term[static_cast<std::size_t>(c)];
                auto& sc = stage[static_cast<std::size_t>(c)];
                auto& ac = acc_sum[static_cast<std::size_t>(c)];
                for (std::size_t i = 0; i < m; ++i) {
                    ac[i] += (dt / 3.0) * e_half[i] * nc[i];
                    sc[i] = e_full[i] * uc[i] + dt * e_half[i] * nc[i];
                }
            }
            eval_nonlinear(stage, n_term); // N4
            for (int c = 0; c < d; ++c) {
                const auto& nc = n_term[static_cast<std::size_t>(c)];
                auto& ac = acc_sum[static_cast<std::size_t>(c)];
                auto& uc = u[static_cast<std::size_t>(c)];
                for (std::size_t i = 0; i < m; ++i) uc[i] = ac[i] + (dt / 6.0) * nc[i];
            }
        }

        state.step_count += 1;
        state.t = static_cast<double>(state.step_count) * dt;

        if (!state.u.all_finite()) {
            throw NumericalFailure("NaN/Inf in spectral coefficients after step", state.t,
                                   state.step_count);
        }
        // re-enforce and verify the divergence-free invariant
        state.u = leray_project(state.u);
        state.u.sanitize();
        const double div = state.u.max_divergence();
        const double scale = state.u.coeff_norm();
        if (scale > 0.0 && div > 1e-10 * scale)
            throw NumericalFailure("divergence-free invariant violated: max|xi.u|=" +
                                       std::to_string(div),
                                   state.t, state.step_count);
    }
};

Stepper::Stepper(const WavenumberLattice& lat, const SimConfig& cfg)
    : impl_(std::make_unique<Impl>(lat, cfg)) {}
Stepper::~Stepper() = default;
Stepper::Stepper(Stepper&&) noexcept = default;
Stepper& Stepper::operator=(Stepper&&) noexcept = default;

void Stepper::advance(SolverState& state) const { impl_->advance(state); }

SolverState step(const SolverState& state, const SimConfig& cfg) {
    Stepper stepper(state.u.lattice, cfg);
    SolverState next = state;
    stepper.advance(next);
    return next;
}

namespace {

TraceRow record_row(const SolverState& state, const SimConfig& cfg) {
    TraceRow row;
    row.t = state.t;
    row.E = energy(state.u);
    row.a = dissipation_rate(state.u, cfg.symbol);
    row.E_k = higher_energy(state.u, cfg.k);
    if (row.E > 0.0) {
        row.N_sqrt_ratio = frequency_scale(state.u, FrequencyEstimator::SqrtRatio);
        row.N_sobolev = frequency_scale(state.u, FrequencyEstimator::SobolevRatio);
        row.N_centroid = frequency_scale(state.u, FrequencyEstimator::Centroid);
    }
    row.spectrum_health = spectrum_health(state.u);
    return row;
}

void fill_ratio_column(EnergyTrace& trace, const GrowthFunction& g) {
    bool positive = trace.size() >= 2;
    for (const auto& r : trace.rows)
        if (!(r.E_k > 0.0)) positive = false;
    if (!positive) return; // degenerate segments keep ratio = 0
    const auto series = bound_ratio(trace, g);
    for (std::size_t i = 0; i + 1 < trace.size(); ++i) trace.rows[i].ratio = series.ratios[i];
    trace.rows.back().ratio = 0.0;
}

} // namespace

RunResult run_from(const SimConfig& cfg, const SolverState& start) {
    cfg.validate();
    if (!start.u.divergence_free)
        throw std::invalid_argument("run: initial data is not flagged divergence-free");
    if (start.u.lattice.dim() != cfg.d || start.u.lattice.modes_per_dim() != cfg.n ||
        start.u.lattice.period() != cfg.period)
        throw std::invalid_argument("run: initial data lattice does not match config");

    std::uint64_t total_steps = static_cast<std::uint64_t>(std::llround(cfg.t_end / cfg.dt));
    if (static_cast<double>(total_steps) * cfg.dt < cfg.t_end * (1.0 - 1e-12)) total_steps += 1;
    if (total_steps < 1) total_steps = 1;
    if (start.step_count >= total_steps)
        throw std::invalid_argument("run: start state is already at or past t_end");
    // a resumed state must sit on this config's time grid, or the recorded t
    // column would jump at the splice
    if (std::abs(start.t - static_cast<double>(start.step_count) * cfg.dt) >
        1e-9 * std::max(1.0, std::abs(start.t)))
        throw std::invalid_argument("run: start state time is off the dt grid (resumed with a "
                                    "different dt?)");

    RunResult result;
    result.final_state = start;
    result.final_state.u.sanitize();

    Stepper stepper(start.u.lattice, cfg);
    SolverState& state = result.final_state;

    auto record = [&](const SolverState& s) { result.trace.rows.push_back(record_row(s, cfg)); };

    record(state);
    result.reason = TerminationReason::ReachedTEnd;
    result.detail = "reached t_end";

    while (state.step_count < total_steps) {
        try {
            stepper.advance(state);
        } catch (const NumericalFailure& e) {
            result.reason = TerminationReason::NumericalFailure;
            result.detail = e.what();
            break;
        }
        const bool at_record = state.step_count % static_cast<std::uint64_t>(cfg.record_every) == 0;
        const bool last = state.step_count == total_steps;
        if (at_record || last) {
            record(state);
            const TraceRow& row = result.trace.back();
            if (row.E_k > cfg.blowup_threshold) {
                result.reason = TerminationReason::BlowupThresholdExceeded;
                char buf[128];
                std::snprintf(buf, sizeof buf, "E_k=%.6g exceeded blowup threshold %.6g",
                              row.E_k, cfg.blowup_threshold);
                result.detail = buf;
                break;
            }
            if (row.spectrum_health > 0.20) {
                result.reason = TerminationReason::BlowupThresholdExceeded;
                char buf[128];
                std::snprintf(buf, sizeof buf,
                              "resolution exhausted: %.1f%% of energy in the top third",
                              row.spectrum_health * 100.0);
                result.detail = buf;
                break;
            }
        }
    }

    fill_ratio_column(result.trace, cfg.ratio_growth);
    return result;
}

RunResult run(const SimConfig& cfg, const SpectralField& u0) {
    SolverState start;
    start.t = 0.0;
    start.step_count = 0;
    start.u = u0;
    return run_from(cfg, start);
}

} // namespace hns
