#include "hns/diagnostics.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "hns/internal/kahan.hpp"

namespace hns {

const std::array<const char*, 9>& EnergyTrace::column_names() {
    static const std::array<const char*, 9> names = {
        "t", "E", "a", "E_k", "N_sqrt_ratio", "N_sobolev", "N_centroid",
        "ratio", "spectrum_health"};
    return names;
}

namespace {

double volume_factor(const WavenumberLattice& lat) {
    double v = 1.0;
    for (int ax = 0; ax < lat.dim(); ++ax) v *= lat.period();
    return v;
}

double coeff_abs2(const SpectralField& u, std::size_t idx) {
    double w = 0.0;
    for (const auto& c : u.comp) w += std::norm(c[idx]);
    return w;
}

} // namespace

double energy(const SpectralField& u) {
    detail::KahanSum s;
    for (const auto& c : u.comp)
        for (const auto& z : c) s.add(std::norm(z));
    return volume_factor(u.lattice) * s.value();
}

double dissipation_rate(const SpectralField& u, const DissipationSymbol& sym) {
    detail::KahanSum s;
    for_each_mode(u.lattice, [&](std::size_t idx, const std::array<double, 3>& xi) {
        const double r = std::sqrt(xi[0] * xi[0] + xi[1] * xi[1] + xi[2] * xi[2]);
        const double m = sym.eval(r);
        s.add(m * m * coeff_abs2(u, idx));
    });
    return volume_factor(u.lattice) * s.value();
}

double higher_energy(const SpectralField& u, int k) {
    if (k < 0 || k > 64)
        throw std::invalid_argument("higher_energy: k must be in [0, 64]");
    detail::KahanSum s;
    for_each_mode(u.lattice, [&](std::size_t idx, const std::array<double, 3>& xi) {
        const double xi2 = xi[0] * xi[0] + xi[1] * xi[1] + xi[2] * xi[2];
        double weight = 1.0;
        double pw = 1.0;
        for (int j = 1; j <= k; ++j) {
            pw *= xi2;
            weight += pw;
        }
        s.add(weight * coeff_abs2(u, idx));
    });
    return volume_factor(u.lattice) * s.value();
}

double frequency_scale(const SpectralField& u, FrequencyEstimator est) {
    detail::KahanSum w_sum, r2w_sum, rw_sum;
    for_each_mode(u.lattice, [&](std::size_t idx, const std::array<double, 3>& xi) {
        const double xi2 = xi[0] * xi[0] + xi[1] * xi[1] + xi[2] * xi[2];
        const double w = coeff_abs2(u, idx);
        w_sum.add(w);
        r2w_sum.add(xi2 * w);
        rw_sum.add(std::sqrt(xi2) * w);
    });
    const double w = w_sum.value();
    if (!(w > 0.0))
        throw std::invalid_argument("frequency_scale: zero field has no frequency scale");
    switch (est) {
        case FrequencyEstimator::SqrtRatio:
            return std::sqrt(r2w_sum.value() / w);
        case FrequencyEstimator::SobolevRatio: {
            // deliberately routed through the E_k functionals as a cross-check
            const double e0 = higher_energy(u, 0);
            const double e1 = higher_energy(u, 1);
            return std::sqrt(std::max(0.0, e1 / e0 - 1.0));
        }
        case FrequencyEstimator::Centroid:
            return rw_sum.value() / w;
    }
    throw std::logic_error("frequency_scale: unreachable");
}

double spectrum_health(const SpectralField& u) {
    // Active band per axis is |k| <= n/3 (the dealias cap); "top third" is the
    // upper third of that band in the max-norm.
    const int n = u.lattice.modes_per_dim();
    const double band = (2.0 / 3.0) * (n / 2.0);
    const double cut = (2.0 / 3.0) * band;
    const double fund = u.lattice.fundamental();
    detail::KahanSum total, top;
    for_each_mode(u.lattice, [&](std::size_t idx, const std::array<double, 3>& xi) {
        double kmax = 0.0;
        for (int ax = 0; ax < u.lattice.dim(); ++ax)
            kmax = std::max(kmax, std::abs(xi[static_cast<std::size_t>(ax)]) / fund);
        const double w = coeff_abs2(u, idx);
        total.add(w);
        if (kmax > cut) top.add(w);
    });
    if (!(total.value() > 0.0)) return 0.0;
    return top.value() / total.value();
}

double integrate_rows(const std::vector<double>& t, const std::vector<double>& y) {
    if (t.size() != y.size())
        throw std::invalid_argument("integrate_rows: length mismatch");
    const std::size_t m = t.size();
    if (m < 2) return 0.0;
    for (std::size_t i = 1; i < m; ++i)
        if (!(t[i] > t[i - 1]))
            throw std::invalid_argument("integrate_rows: times must increase strictly");

    const double h = t[1] - t[0];
    bool uniform = true;
    for (std::size_t i = 1; i < m; ++i)
        if (std::abs((t[i] - t[i - 1]) - h) > 1e-9 * h) uniform = false;

    if (!uniform || m < 3) {
        detail::KahanSum s;
        for (std::size_t i = 0; i + 1 < m; ++i)
            s.add(0.5 * (y[i] + y[i + 1]) * (t[i + 1] - t[i]));
        return s.value();
    }

    // Composite Simpson on an even interval count; an odd count gets a 3/8
    // block at the end. 4th order either way, which the identity-residual
    // convergence contract needs.
    std::size_t intervals = m - 1;
    std::size_t simpson_end = intervals % 2 == 0 ? intervals : intervals - 3;
    detail::KahanSum s;
    for (std::size_t i = 0; i + 2 <= simpson_end; i += 2)
        s.add(h / 3.0 * (y[i] + 4.0 * y[i + 1] + y[i + 2]));
    if (simpson_end != intervals) {
        const std::size_t i = simpson_end;
        if (intervals >= 3) {
            s.add(3.0 * h / 8.0 * (y[i] + 3.0 * y[i + 1] + 3.0 * y[i + 2] + y[i + 3]));
        } else {
            s.add(0.5 * h * (y[i] + y[i + 1])); // 2 rows: plain trapezoid
        }
    }
    return s.value();
}

double energy_identity_residual(const EnergyTrace& trace, const DissipationSymbol&) {
    if (trace.size() < 2)
        throw std::invalid_argument("energy_identity_residual: need at least 2 rows");
    std::vector<double> t, a;
    t.reserve(trace.size());
    a.reserve(trace.size());
    for (const auto& r : trace.rows) {
        t.push_back(r.t);
        a.push_back(r.a);
    }
    const double integral = integrate_rows(t, a);
    const double e1 = trace.front().E;
    const double e2 = trace.back().E;
    const double eps = 1e-300;
    return std::abs(e2 - e1 + 2.0 * integral) / std::max(e1, eps);
}

DissipationBudget dissipation_budget(const EnergyTrace& trace) {
    if (trace.empty())
        throw std::invalid_argument("dissipation_budget: empty trace");
    DissipationBudget b;
    b.budget = trace.front().E / 2.0;
    if (trace.size() >= 2) {
        std::vector<double> t, a;
        for (const auto& r : trace.rows) {
            t.push_back(r.t);
            a.push_back(r.a);
        }
        b.integral = integrate_rows(t, a);
    }
    b.satisfied = b.integral <= b.budget * (1.0 + 1e-6) + 1e-300;
    return b;
}

BoundRatioSeries bound_ratio(const EnergyTrace& trace, const GrowthFunction& g) {
    if (trace.size() < 2)
        throw std::invalid_argument("bound_ratio: need at least 2 rows");
    for (const auto& r : trace.rows)
        if (!(r.E_k > 0.0))
            throw std::invalid_argument("bound_ratio: E_k must be positive on the segment");

    BoundRatioSeries out;
    out.ratios.reserve(trace.size() - 1);
    out.sup = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i + 1 < trace.size(); ++i) {
        const auto& r0 = trace.rows[i];
        const auto& r1 = trace.rows[i + 1];
        const double dt = r1.t - r0.t;
        if (!(dt > 0.0))
            throw std::invalid_argument("bound_ratio: degenerate time interval");
        const double abar = 0.5 * (r0.a + r1.a);
        const double gv = g.eval(1.0 + r0.E_k);
        const double denom = gv * gv * gv * gv * r0.E_k * (1.0 + abar);
        const double ratio = ((r1.E_k - r0.E_k) / dt) / denom;
        out.ratios.push_back(ratio);
        out.sup = std::max(out.sup, ratio);
    }
    out.sup_positive = std::max(0.0, out.sup);
    return out;
}

} // namespace hns
