// hns command-line driver: run / criterion / gronwall / envelope / decay-test.
// Exit codes: 0 success, 2 config error, 3 numerical failure, 4 run cut short
// by the blowup threshold.

#include <cmath>
#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "hns/checkpoint.hpp"
#include "hns/config.hpp"
#include "hns/errors.hpp"
#include "hns/gronwall.hpp"
#include "hns/manifest.hpp"
#include "hns/trace_io.hpp"
#include "hns/transform.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;
constexpr int kExitBlowup = 4;

struct CommonOpts {
    std::string config_path;
    std::string out_path;
    std::string checkpoint_path;
    std::string resume_path;
    std::optional<std::uint64_t> seed;
    bool quiet = false;
};

void add_common(CLI::App* cmd, CommonOpts& opts, bool config_required = true) {
    auto* c = cmd->add_option("--config", opts.config_path, "configuration file");
    if (config_required) c->required();
    cmd->add_option("--out", opts.out_path, "output file path");
    cmd->add_option("--checkpoint", opts.checkpoint_path, "write final state here");
    cmd->add_option("--resume", opts.resume_path, "resume from this checkpoint");
    cmd->add_option("--seed", opts.seed, "override the config seed");
    cmd->add_flag("--quiet", opts.quiet, "suppress the config echo");
}

void echo_config(const hns::ParsedConfig& pc, const CommonOpts& opts) {
    if (opts.quiet) return;
    std::cout << "# resolved configuration (" << pc.hash_hex() << ")\n"
              << pc.canonical_text;
}

std::string manifest_path_for(const std::string& out_path) {
    return out_path + ".manifest.json";
}

int cmd_run(const CommonOpts& opts) {
    auto pc = hns::parse_config_file(opts.config_path);
    if (!pc.run) throw hns::ConfigError("run: config has no [run] section");
    if (opts.seed) {
        // the seed participates in the canonical text, so re-resolve the hash
        pc.run->seed = *opts.seed;
        hns::refresh_canonical(pc);
    }
    const hns::RunSpec& spec = *pc.run;
    echo_config(pc, opts);

    hns::RunManifest manifest;
    manifest.config_hash = pc.hash_hex();
    manifest.seed = spec.seed;
    manifest.code_version = hns::code_version_string();
    manifest.started_utc = hns::utc_timestamp_now();

    const auto lat = hns::make_lattice(spec.sim.d, spec.sim.n, spec.sim.period);

    hns::RunResult result;
    if (!opts.resume_path.empty()) {
        hns::SolverState state = hns::read_checkpoint(opts.resume_path);
        if (state.u.lattice != lat)
            throw hns::ConfigError("resume: checkpoint lattice does not match config");
        result = hns::run_from(spec.sim, state);
    } else {
        const auto u0 = spec.initial.build(lat, spec.seed);
        result = hns::run(spec.sim, u0);
    }

    manifest.finished_utc = hns::utc_timestamp_now();
    manifest.termination = hns::to_string(result.reason);

    if (!opts.out_path.empty()) {
        hns::write_trace(result.trace, opts.out_path);
        manifest.artifacts.push_back(opts.out_path);
    }
    if (!opts.checkpoint_path.empty()) {
        hns::write_checkpoint(result.final_state, opts.checkpoint_path);
        manifest.artifacts.push_back(opts.checkpoint_path);
    }
    if (!opts.out_path.empty()) {
        const std::string mpath = manifest_path_for(opts.out_path);
        manifest.artifacts.push_back(mpath);
        hns::write_manifest(manifest, mpath);
    }

    if (!opts.quiet)
        std::cout << "# " << result.detail << " at t=" << result.final_state.t << " after "
                  << result.final_state.step_count << " steps\n";

    switch (result.reason) {
        case hns::TerminationReason::ReachedTEnd: return kExitOk;
        case hns::TerminationReason::BlowupThresholdExceeded: return kExitBlowup;
        case hns::TerminationReason::NumericalFailure:
            std::cerr << "numerical failure: " << result.detail << "\n";
            return kExitNumerical;
    }
    return kExitOk;
}

int cmd_criterion(const CommonOpts& opts) {
    auto pc = hns::parse_config_file(opts.config_path);
    if (!pc.gronwall) throw hns::ConfigError("criterion: config has no [gronwall] section");
    echo_config(pc, opts);
    const auto& prob = *pc.gronwall;

    std::printf("# criterion integral for g=%s, q=%d\n", prob.g.name().c_str(), prob.q);
    std::printf("%-12s %-22s\n", "S", "integral_1^S");
    for (int j = 10; j <= 40; j += 5) {
        const double S = std::pow(2.0, j);
        const double v = hns::criterion_integral(prob.g, prob.q, S);
        std::printf("2^%-10d %-22.12g\n", j, v);
    }
    const auto rep = hns::classify_divergence(prob.g, prob.q);
    std::printf("# rule: %s\n", rep.evidence.rule.c_str());
    std::printf("classification: %s\n", hns::to_string(rep.verdict).c_str());
    return kExitOk;
}

int cmd_gronwall(const CommonOpts& opts) {
    auto pc = hns::parse_config_file(opts.config_path);
    if (!pc.gronwall) throw hns::ConfigError("gronwall: config has no [gronwall] section");
    echo_config(pc, opts);

    const auto sol = hns::integrate_comparison(*pc.gronwall);
    if (!opts.out_path.empty()) {
        std::FILE* f = std::fopen(opts.out_path.c_str(), "wb");
        if (!f) throw hns::IoError("cannot open '" + opts.out_path + "' for writing");
        std::fprintf(f, "t,E\n");
        for (std::size_t i = 0; i < sol.t.size(); ++i)
            std::fprintf(f, "%.17g,%.17g\n", sol.t[i], sol.y[i]);
        std::fclose(f);
    }
    if (sol.outcome == hns::OdeOutcome::BlowupAt) {
        std::printf("outcome: blowup_at t*=%.12g (bracket width %.3g)\n", sol.t_star,
                    sol.t_star_width);
        return kExitBlowup;
    }
    std::printf("outcome: global, E(%.12g) = %.12g\n", sol.t.back(), sol.y.back());
    return kExitOk;
}

int cmd_envelope(const CommonOpts& opts) {
    auto pc = hns::parse_config_file(opts.config_path);
    if (!pc.envelope) throw hns::ConfigError("envelope: config has no [envelope] section");
    echo_config(pc, opts);
    const auto& spec = *pc.envelope;

    const auto trace = hns::read_trace(spec.trace_path);
    const double c_emp = spec.C ? *spec.C : -1.0;
    const auto res = hns::bound_envelope(trace, c_emp, spec.g, spec.q);

    if (!opts.out_path.empty()) {
        std::FILE* f = std::fopen(opts.out_path.c_str(), "wb");
        if (!f) throw hns::IoError("cannot open '" + opts.out_path + "' for writing");
        std::fprintf(f, "t,E_k,envelope\n");
        for (std::size_t i = 0; i < res.t.size(); ++i)
            std::fprintf(f, "%.17g,%.17g,%.17g\n", res.t[i], res.observed[i], res.envelope[i]);
        std::fclose(f);
    }
    std::printf("C_emp = %.12g\n", res.C_emp);
    std::printf("envelope %s the trace (%zu violations over %zu rows)\n",
                res.dominated ? "dominates" : "FAILS to dominate", res.violations.size(),
                res.t.size());
    return kExitOk;
}

int cmd_decay_test(const CommonOpts& opts) {
    auto pc = hns::parse_config_file(opts.config_path);
    if (!pc.run) throw hns::ConfigError("decay-test: config has no [run] section");
    echo_config(pc, opts);
    hns::SimConfig cfg = pc.run->sim;
    cfg.nonlinearity = false;

    const auto lat = hns::make_lattice(cfg.d, cfg.n, cfg.period);
    const std::array<std::array<int, 3>, 3> probes = {{{1, 0, 0}, {1, 1, 0}, {0, 2, 1}}};
    double worst = 0.0;
    std::printf("%-12s %-12s %-24s %-12s\n", "mode", "|xi|", "per-step factor", "rel error");
    for (const auto& mode : probes) {
        std::array<int, 3> m = mode;
        if (cfg.d == 2) m[2] = 0;
        hns::SolverState state;
        state.u = hns::single_mode(lat, m, {0.3, 0.7, cfg.d == 3 ? 0.2 : 0.0});
        // a single mode pair decays by one uniform factor, so the norm ratio
        // is the per-step factor
        const double before = state.u.coeff_norm();
        state = hns::step(state, cfg);
        const double after = state.u.coeff_norm();
        double r2 = 0.0;
        for (int ax = 0; ax < cfg.d; ++ax) {
            const double x = lat.fundamental() * m[static_cast<std::size_t>(ax)];
            r2 += x * x;
        }
        const double r = std::sqrt(r2);
        const double mv = cfg.symbol.eval(r);
        const double expected = std::exp(-mv * mv * cfg.dt);
        const double got = after / before;
        const double rel = std::abs(got - expected) / expected;
        worst = std::max(worst, rel);
        std::printf("(%d,%d,%d)    %-12.6g %-24.16g %-12.3g\n", m[0], m[1], m[2], r, got, rel);
    }
    std::printf("worst per-step relative error: %.3g (tolerance 1e-14)\n", worst);
    if (worst > 1e-14) {
        std::cerr << "decay-test: per-step factor deviates from exp(-m^2 dt)\n";
        return kExitNumerical;
    }
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"pseudo-spectral hyperdissipative Navier-Stokes lab"};
    app.require_subcommand(1);

    CommonOpts run_opts, crit_opts, gron_opts, env_opts, decay_opts;
    auto* run_cmd = app.add_subcommand("run", "integrate a [run] config and record a trace");
    add_common(run_cmd, run_opts);
    auto* crit_cmd =
        app.add_subcommand("criterion", "tabulate and classify the divergence criterion");
    add_common(crit_cmd, crit_opts);
    auto* gron_cmd = app.add_subcommand("gronwall", "integrate the comparison ODE");
    add_common(gron_cmd, gron_opts);
    auto* env_cmd = app.add_subcommand("envelope", "check a trace against its comparison envelope");
    add_common(env_cmd, env_opts);
    auto* decay_cmd = app.add_subcommand("decay-test", "verify the exact linear decay factor");
    add_common(decay_cmd, decay_opts);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e); // --help
        app.exit(e);
        return kExitConfig;
    }

    try {
        if (run_cmd->parsed()) return cmd_run(run_opts);
        if (crit_cmd->parsed()) return cmd_criterion(crit_opts);
        if (gron_cmd->parsed()) return cmd_gronwall(gron_opts);
        if (env_cmd->parsed()) return cmd_envelope(env_opts);
        if (decay_cmd->parsed()) return cmd_decay_test(decay_opts);
    } catch (const hns::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const hns::NumericalFailure& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return kExitNumerical;
    } catch (const hns::IoError& e) {
        std::cerr << "io error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return kExitOk;
}
