#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "hns/diagnostics.hpp"
#include "hns/initial_data.hpp"
#include "hns/operators.hpp"
#include "hns/solver.hpp"

using namespace hns;

namespace {

EnergyTrace linear_decay_trace(double mu2, double E0, double dt, int rows) {
    // closed-form single-mode decay: E = E0 exp(-2 mu2 t), a = mu2 E
    EnergyTrace tr;
    for (int i = 0; i < rows; ++i) {
        TraceRow r;
        r.t = dt * i;
        r.E = E0 * std::exp(-2.0 * mu2 * r.t);
        r.a = mu2 * r.E;
        r.E_k = r.E;
        tr.rows.push_back(r);
    }
    return tr;
}

} // namespace

TEST_CASE("energy: zero, single pair, Taylor-Green") {
    auto lat = make_lattice(3, 16, 2.0 * M_PI);
    SpectralField zero(lat);
    CHECK(energy(zero) == 0.0);

    // one Hermitian pair, amplitude a per component: E = 2 vol |a|^2 * d
    auto u = single_mode(lat, {1, 0, 0}, {0.0, 0.6, 0.0});
    const double vol = std::pow(2.0 * M_PI, 3);
    CHECK(energy(u) == doctest::Approx(2.0 * vol * 0.09).epsilon(1e-12)); // (0.6/2)^2 per member

    auto lat2 = make_lattice(2, 64, 2.0 * M_PI);
    CHECK(energy(taylor_green_2d(lat2, 1.0)) == doctest::Approx(2.0 * M_PI * M_PI).epsilon(1e-12));
}

TEST_CASE("dissipation rate: zero symbol, factor m^2, Taylor-Green a=2E") {
    auto lat = make_lattice(3, 16, 2.0 * M_PI);
    auto u = single_mode(lat, {1, 1, 0}, {0.0, 0.0, 1.0});
    CHECK(dissipation_rate(u, symbol_zero(3)) == 0.0);
    // m = |xi| at |xi| = sqrt(2): a = 2 E
    CHECK(dissipation_rate(u, symbol_navier_stokes(3)) ==
          doctest::Approx(2.0 * energy(u)).epsilon(1e-12));

    auto lat2 = make_lattice(2, 64, 2.0 * M_PI);
    auto tg = taylor_green_2d(lat2, 1.0);
    CHECK(dissipation_rate(tg, symbol_critical(2)) ==
          doctest::Approx(2.0 * energy(tg)).epsilon(1e-12));
}

TEST_CASE("higher energy: k=0 is E; spectral weights 3 and 21") {
    auto lat = make_lattice(3, 16, 2.0 * M_PI);
    auto u1 = single_mode(lat, {1, 0, 0}, {0.0, 1.0, 0.0});
    CHECK(higher_energy(u1, 0) == doctest::Approx(energy(u1)).epsilon(1e-14));
    CHECK(higher_energy(u1, 2) == doctest::Approx(3.0 * energy(u1)).epsilon(1e-13)); // 1+1+1

    auto u2 = single_mode(lat, {2, 0, 0}, {0.0, 1.0, 0.0});
    CHECK(higher_energy(u2, 2) == doctest::Approx(21.0 * energy(u2)).epsilon(1e-13)); // 1+4+16
    CHECK_THROWS_AS(higher_energy(u2, -1), std::invalid_argument);
}

TEST_CASE("higher energy: monotone in k, quadratic in amplitude") {
    auto lat = make_lattice(3, 16, 2.0 * M_PI);
    auto u = random_band(lat, 1.0, 4.0, 2.0, 8);
    double prev = 0.0;
    for (int k = 0; k <= 6; ++k) {
        const double ek = higher_energy(u, k);
        CHECK(ek >= prev);
        prev = ek;
    }
    SpectralField scaled = u;
    for (auto& c : scaled.comp)
        for (auto& z : c) z *= 3.0;
    CHECK(energy(scaled) == doctest::Approx(9.0 * energy(u)).epsilon(1e-12));
    CHECK(dissipation_rate(scaled, symbol_navier_stokes(3)) ==
          doctest::Approx(9.0 * dissipation_rate(u, symbol_navier_stokes(3))).epsilon(1e-12));
    CHECK(higher_energy(scaled, 3) ==
          doctest::Approx(9.0 * higher_energy(u, 3)).epsilon(1e-12));
}

TEST_CASE("sharp-cutoff Pythagoras: E = E(low) + E(high)") {
    auto lat = make_lattice(3, 16, 2.0 * M_PI);
    auto u = random_band(lat, 1.0, 6.0, 1.7, 23);
    for (double N : {1.0, 2.5, 4.0}) {
        CHECK(energy(u) ==
              doctest::Approx(energy(lp_low(N, u)) + energy(lp_high(N, u))).epsilon(1e-12));
    }
}

TEST_CASE("dual route: a with the NS symbol equals E_1 - E_0") {
    auto lat = make_lattice(3, 16, 2.0 * M_PI);
    auto u = random_band(lat, 1.0, 5.0, 2.0, 31);
    const double a = dissipation_rate(u, symbol_navier_stokes(3));
    CHECK(a == doctest::Approx(higher_energy(u, 1) - higher_energy(u, 0)).epsilon(1e-12));
}

TEST_CASE("frequency scale: single mode agreement, two-point spectrum, zero field") {
    auto lat = make_lattice(3, 16, 2.0 * M_PI);
    auto u = single_mode(lat, {3, 0, 0}, {0.0, 1.0, 1.0});
    CHECK(frequency_scale(u, FrequencyEstimator::SqrtRatio) == doctest::Approx(3.0).epsilon(1e-12));
    CHECK(frequency_scale(u, FrequencyEstimator::SobolevRatio) ==
          doctest::Approx(3.0).epsilon(1e-12));
    CHECK(frequency_scale(u, FrequencyEstimator::Centroid) == doctest::Approx(3.0).epsilon(1e-12));

    // equal energy at |xi| = 1 and |xi| = 2
    auto a = single_mode(lat, {1, 0, 0}, {0.0, 1.0, 0.0});
    auto b = single_mode(lat, {0, 2, 0}, {1.0, 0.0, 0.0});
    SpectralField two = a;
    for (std::size_t c = 0; c < two.comp.size(); ++c)
        for (std::size_t i = 0; i < two.comp[c].size(); ++i)
            two.comp[c][i] += b.comp[c][i];
    CHECK(frequency_scale(two, FrequencyEstimator::Centroid) == doctest::Approx(1.5).epsilon(1e-12));
    CHECK(frequency_scale(two, FrequencyEstimator::SqrtRatio) ==
          doctest::Approx(std::sqrt(2.5)).epsilon(1e-12));

    SpectralField zero(lat);
    CHECK_THROWS_AS(frequency_scale(zero, FrequencyEstimator::Centroid), std::invalid_argument);
}

TEST_CASE("row quadrature: uniform grids are 4th order, non-uniform falls back") {
    // integrate sin on [0, 1]: exact value 1 - cos(1)
    auto f = [](double t) { return std::sin(t); };
    const double exact = 1.0 - std::cos(1.0);
    double prev_err = 0.0;
    for (int m : {11, 21, 41}) {
        std::vector<double> t(m), y(m);
        for (int i = 0; i < m; ++i) {
            t[static_cast<std::size_t>(i)] = static_cast<double>(i) / (m - 1);
            y[static_cast<std::size_t>(i)] = f(t[static_cast<std::size_t>(i)]);
        }
        const double err = std::abs(integrate_rows(t, y) - exact);
        if (prev_err > 0.0) CHECK(prev_err / err >= 12.0); // ~16x per halving
        prev_err = err;
    }
    // 12 rows -> 11 intervals exercises the 3/8 tail
    {
        std::vector<double> t(12), y(12);
        for (int i = 0; i < 12; ++i) {
            t[static_cast<std::size_t>(i)] = static_cast<double>(i) / 11.0;
            y[static_cast<std::size_t>(i)] = f(t[static_cast<std::size_t>(i)]);
        }
        CHECK(integrate_rows(t, y) == doctest::Approx(exact).epsilon(1e-6));
    }
    // non-uniform grid still integrates (trapezoid accuracy)
    {
        std::vector<double> t = {0.0, 0.05, 0.4, 0.41, 0.9, 1.0};
        std::vector<double> y;
        for (double ti : t) y.push_back(f(ti));
        CHECK(integrate_rows(t, y) == doctest::Approx(exact).epsilon(0.05));
    }
    CHECK_THROWS_AS(integrate_rows({0.0, 0.0}, {1.0, 1.0}), std::invalid_argument);
}

TEST_CASE("energy identity residual: closed-form decay and zero field") {
    // mu2 = 2 (NS at |xi| = sqrt 2), cadence h = 1e-2 as in the contract
    auto tr = linear_decay_trace(2.0, 5.0, 1e-2, 11);
    CHECK(energy_identity_residual(tr, symbol_navier_stokes(3)) <= 1e-6);

    EnergyTrace zero;
    for (int i = 0; i < 5; ++i) {
        TraceRow r;
        r.t = 0.1 * i;
        zero.rows.push_back(r);
    }
    CHECK(energy_identity_residual(zero, symbol_zero(3)) == 0.0);

    EnergyTrace single;
    single.rows.push_back(TraceRow{});
    CHECK_THROWS_AS(energy_identity_residual(single, symbol_zero(3)), std::invalid_argument);
}

TEST_CASE("energy identity residual: live linear run at recorded cadence") {
    auto lat = make_lattice(3, 16, 2.0 * M_PI);
    SimConfig cfg;
    cfg.d = 3;
    cfg.n = 16;
    cfg.dt = 1e-3;
    cfg.t_end = 0.1;
    cfg.symbol = symbol_navier_stokes(3);
    cfg.nonlinearity = false;
    cfg.record_every = 10; // h = 1e-2
    auto res = run(cfg, single_mode(lat, {1, 1, 0}, {0.0, 0.0, 2.0}));
    CHECK(energy_identity_residual(res.trace, cfg.symbol) <= 1e-6);
}

TEST_CASE("dissipation budget: analytic decay saturates E0/2 as T grows") {
    // int_0^inf a dt = E0/2 exactly for a pure mode
    auto tr = linear_decay_trace(2.0, 4.0, 5e-3, 2001); // T = 10, e^{-40} tail
    auto b = dissipation_budget(tr);
    CHECK(b.budget == 2.0);
    CHECK(b.integral == doctest::Approx(2.0).epsilon(1e-7));
    CHECK(b.satisfied);

    CHECK_THROWS_AS(dissipation_budget(EnergyTrace{}), std::invalid_argument);

    EnergyTrace zero;
    TraceRow r;
    zero.rows.push_back(r);
    auto bz = dissipation_budget(zero);
    CHECK(bz.integral == 0.0);
    CHECK(bz.budget == 0.0);
    CHECK(bz.satisfied);
}

TEST_CASE("dissipation budget: finite runs match the discrete energy identity") {
    auto lat = make_lattice(3, 16, 2.0 * M_PI);
    SimConfig cfg;
    cfg.d = 3;
    cfg.n = 16;
    cfg.dt = 5e-4;
    cfg.t_end = 0.05;
    cfg.symbol = symbol_log_supercritical(3);
    cfg.record_every = 10;
    auto res = run(cfg, random_band(lat, 1.0, 2.5, 1.5, 77));
    auto b = dissipation_budget(res.trace);
    const double identity = (res.trace.front().E - res.trace.back().E) / 2.0;
    CHECK(b.integral == doctest::Approx(identity).epsilon(1e-6));
    CHECK(b.satisfied);
}

TEST_CASE("bound ratio: pure decay has non-positive ratios and zero empirical C") {
    auto tr = linear_decay_trace(1.0, 3.0, 1e-2, 21);
    auto br = bound_ratio(tr, growth_log_quarter());
    CHECK(br.ratios.size() == 20);
    for (double r : br.ratios) CHECK(r <= 0.0);
    CHECK(br.sup_positive == 0.0);
    CHECK(std::isfinite(br.sup));
}

TEST_CASE("bound ratio: rejects degenerate segments") {
    EnergyTrace tr;
    TraceRow r;
    r.E_k = 0.0;
    tr.rows.push_back(r);
    tr.rows.push_back(r);
    CHECK_THROWS_AS(bound_ratio(tr, growth_one()), std::invalid_argument); // zero E_k

    EnergyTrace single;
    TraceRow s;
    s.E_k = 1.0;
    single.rows.push_back(s);
    CHECK_THROWS_AS(bound_ratio(single, growth_one()), std::invalid_argument);
}

TEST_CASE("bound ratio: a constant-C synthetic growth is recovered exactly") {
    // rows built as the Euler majorant with C = 0.375: every interval ratio
    // must come back as exactly that C
    const double C = 0.375;
    auto g = growth_log_quarter();
    EnergyTrace tr;
    TraceRow r;
    r.t = 0.0;
    r.E_k = 2.0;
    r.a = 1.0;
    tr.rows.push_back(r);
    for (int i = 1; i <= 10; ++i) {
        const auto& prev = tr.rows.back();
        TraceRow nxt = prev;
        nxt.t = prev.t + 0.01;
        nxt.a = prev.a * 0.9;
        const double gv = std::pow(g(1.0 + prev.E_k), 4);
        const double abar = 0.5 * (prev.a + nxt.a);
        nxt.E_k = prev.E_k + 0.01 * C * gv * prev.E_k * (1.0 + abar);
        tr.rows.push_back(nxt);
    }
    auto br = bound_ratio(tr, g);
    for (double x : br.ratios) CHECK(x == doctest::Approx(C).epsilon(1e-12));
    CHECK(br.sup_positive == doctest::Approx(C).epsilon(1e-12));
}

TEST_CASE("spectrum health: low band is healthy, top band is not") {
    auto lat = make_lattice(2, 32, 2.0 * M_PI);
    auto low = single_mode(lat, {1, 0, 0}, {0.0, 1.0, 0.0});
    CHECK(spectrum_health(low) == 0.0);
    // n=32: active band |k| <= 10.67, top third beyond 7.1
    auto high = single_mode(lat, {9, 0, 0}, {0.0, 1.0, 0.0});
    CHECK(spectrum_health(high) == doctest::Approx(1.0).epsilon(1e-12));
    SpectralField zero(lat);
    CHECK(spectrum_health(zero) == 0.0);
}
