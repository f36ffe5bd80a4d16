#include "hns/gronwall.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "hns/errors.hpp"

namespace hns {

Forcing Forcing::zero() { return Forcing{}; }

Forcing Forcing::constant(double value) {
    if (!std::isfinite(value) || value < 0.0)
        throw std::invalid_argument("Forcing::constant: value must be finite and >= 0");
    Forcing f;
    f.kind_ = Kind::Constant;
    f.value_ = value;
    return f;
}

Forcing Forcing::table(std::vector<double> t, std::vector<double> a) {
    if (t.size() != a.size() || t.size() < 2)
        throw std::invalid_argument("Forcing::table: need >= 2 matching samples");
    for (std::size_t i = 0; i < t.size(); ++i) {
        if (!std::isfinite(a[i]))
            throw std::invalid_argument("Forcing::table: non-finite forcing sample");
        if (i > 0 && !(t[i] > t[i - 1]))
            throw std::invalid_argument("Forcing::table: times must increase strictly");
    }
    Forcing f;
    f.kind_ = Kind::Table;
    f.t_ = std::move(t);
    f.a_ = std::move(a);
    return f;
}

Forcing Forcing::from_trace(const EnergyTrace& trace) {
    std::vector<double> t, a;
    t.reserve(trace.size());
    a.reserve(trace.size());
    for (const auto& r : trace.rows) {
        t.push_back(r.t);
        a.push_back(r.a);
    }
    return table(std::move(t), std::move(a));
}

double Forcing::operator()(double t) const {
    switch (kind_) {
        case Kind::Zero: return 0.0;
        case Kind::Constant: return value_;
        case Kind::Table: {
            if (t <= t_.front()) return a_.front();
            if (t >= t_.back()) return a_.back();
            const auto it = std::upper_bound(t_.begin(), t_.end(), t);
            const std::size_t i = static_cast<std::size_t>(it - t_.begin());
            const double w = (t - t_[i - 1]) / (t_[i] - t_[i - 1]);
            return a_[i - 1] + w * (a_[i] - a_[i - 1]);
        }
    }
    return 0.0;
}

void ComparisonProblem::validate() const {
    if (!(C > 0.0)) throw std::invalid_argument("comparison: C must be positive");
    if (!(E0 >= 0.0)) throw std::invalid_argument("comparison: E0 must be >= 0");
    if (!(t_end > 0.0)) throw std::invalid_argument("comparison: t_end must be positive");
    if (q != 2 && q != 4) throw std::invalid_argument("comparison: q must be 2 or 4");
    if (!g.eval) throw std::invalid_argument("comparison: no growth function");
}

namespace {

// Adaptive Simpson in sigma = log s; the criterion integrand becomes
// g(exp(sigma))^{-q}, smooth and monotone.
double adaptive_simpson(const std::function<double(double)>& f, double a, double b, double fa,
                        double fm, double fb, double tol, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = f(lm);
    const double frm = f(rm);
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double delta = left + right - whole;
    if (depth <= 0 || std::abs(delta) <= 15.0 * tol)
        return left + right + delta / 15.0;
    return adaptive_simpson(f, a, m, fa, flm, fm, tol / 2.0, depth - 1) +
           adaptive_simpson(f, m, b, fm, frm, fb, tol / 2.0, depth - 1);
}

double integrate_log_substituted(const GrowthFunction& g, int q, double sigma_lo,
                                 double sigma_hi) {
    auto integrand = [&](double sigma) {
        const double s = std::exp(sigma);
        const double gv = g.eval(s);
        if (!(gv > 0.0) || !std::isfinite(gv))
            throw std::domain_error("criterion_integral: g evaluated non-positive at s=" +
                                    std::to_string(s));
        return std::pow(gv, -static_cast<double>(q));
    };
    const double fa = integrand(sigma_lo);
    const double fb = integrand(sigma_hi);
    const double fm = integrand(0.5 * (sigma_lo + sigma_hi));
    const double span = sigma_hi - sigma_lo;
    // scale-aware absolute tolerance targeting ~1e-9 relative
    const double rough = span * std::max({fa, fm, fb});
    const double tol = std::max(1e-15, 1e-10 * std::max(rough, 1e-6));
    return adaptive_simpson(integrand, sigma_lo, sigma_hi, fa, fm, fb, tol, 48);
}

} // namespace

double criterion_integral(const GrowthFunction& g, int q, double S) {
    if (!(S > 1.0)) throw std::invalid_argument("criterion_integral: S must exceed 1");
    if (q != 2 && q != 4) throw std::invalid_argument("criterion_integral: q must be 2 or 4");
    return integrate_log_substituted(g, q, 0.0, std::log(S));
}

std::string to_string(DivergenceVerdict v) {
    switch (v) {
        case DivergenceVerdict::Diverges: return "diverges";
        case DivergenceVerdict::Converges: return "converges";
        case DivergenceVerdict::Inconclusive: return "inconclusive";
    }
    return "?";
}

DivergenceReport classify_divergence(const GrowthFunction& g, int q) {
    constexpr int j_lo = 10;
    constexpr int j_hi = 40; // g must be evaluable up to 2^40 ~ 1.1e12
    const double ln2 = std::log(2.0);

    DivergenceReport rep;
    auto& ev = rep.evidence;
    for (int j = j_lo; j < j_hi; ++j) {
        const double inc = integrate_log_substituted(g, q, j * ln2, (j + 1) * ln2);
        ev.exponents.push_back(j);
        ev.increments.push_back(inc);
    }
    const std::size_t m = ev.increments.size();
    const std::size_t tail_start = m / 2;

    // a fast-vanishing tail is already summable
    const double i_first = ev.increments.front();
    const double i_last = ev.increments.back();
    if (i_last < 1e-13 * std::max(i_first, 1e-300)) {
        rep.verdict = DivergenceVerdict::Converges;
        ev.rule = "tail increments vanish";
        return rep;
    }

    // increment ratios over the tail
    std::vector<double> ratios;
    for (std::size_t i = tail_start; i + 1 < m; ++i)
        ratios.push_back(ev.increments[i + 1] / ev.increments[i]);
    std::vector<double> sorted = ratios;
    std::sort(sorted.begin(), sorted.end());
    ev.ratio_median = sorted[sorted.size() / 2];

    // per-dyad drift of the ratios (least squares in the dyad index)
    {
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        const double n = static_cast<double>(ratios.size());
        for (std::size_t i = 0; i < ratios.size(); ++i) {
            sx += static_cast<double>(i);
            sy += ratios[i];
            sxx += static_cast<double>(i) * static_cast<double>(i);
            sxy += static_cast<double>(i) * ratios[i];
        }
        ev.ratio_slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    }

    // log-log fit I_j ~ j^{-p} over the tail
    {
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        double n = 0;
        for (std::size_t i = tail_start; i < m; ++i) {
            if (!(ev.increments[i] > 0.0)) continue;
            const double x = std::log(static_cast<double>(ev.exponents[i]));
            const double y = std::log(ev.increments[i]);
            sx += x;
            sy += y;
            sxx += x * x;
            sxy += x * y;
            n += 1;
        }
        ev.power_fit = n > 1 ? -(n * sxy - sx * sy) / (n * sxx - sx * sx) : 0.0;
    }

    if (ev.ratio_median >= 0.9995) {
        // effectively constant increments: harmonic-or-slower within the window
        rep.verdict = DivergenceVerdict::Diverges;
        ev.rule = "increments stay bounded below (non-decaying)";
        return rep;
    }
    if (std::abs(ev.ratio_slope) <= 1e-4) {
        // flat geometric decay: the tail sum extrapolates finite
        ev.tail_estimate = i_last * ev.ratio_median / (1.0 - ev.ratio_median);
        rep.verdict = DivergenceVerdict::Converges;
        ev.rule = "geometric increment decay";
        return rep;
    }
    // ratios drift toward 1: power-law-in-j tail; the harmonic exponent p = 1
    // is the borderline
    if (ev.power_fit <= 1.05) {
        rep.verdict = DivergenceVerdict::Diverges;
        ev.rule = "power-law tail with exponent <= 1";
    } else if (ev.power_fit >= 1.25) {
        rep.verdict = DivergenceVerdict::Converges;
        ev.rule = "power-law tail with exponent > 1";
    } else {
        rep.verdict = DivergenceVerdict::Inconclusive;
        ev.rule = "tail exponent too close to the harmonic borderline";
    }
    return rep;
}

namespace {

double rk4_step(const std::function<double(double, double)>& f, double t, double y, double h) {
    const double k1 = f(t, y);
    const double k2 = f(t + h / 2.0, y + h / 2.0 * k1);
    const double k3 = f(t + h / 2.0, y + h / 2.0 * k2);
    const double k4 = f(t + h, y + h * k3);
    return y + h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

constexpr double kOverflowGuard = 1e300;

} // namespace

OdeSolution integrate_scalar_ode(const std::function<double(double, double)>& f, double y0,
                                 double t0, double t1, double reltol,
                                 const std::vector<double>& checkpoints) {
    if (!(t1 > t0)) throw std::invalid_argument("integrate_scalar_ode: empty time interval");
    if (!std::isfinite(y0)) throw std::invalid_argument("integrate_scalar_ode: bad initial value");

    OdeSolution sol;
    double t = t0;
    double y = y0;
    double h = (t1 - t0) / 64.0;
    std::size_t next_cp = 0;

    sol.t.push_back(t);
    sol.y.push_back(y);

    const double h_floor_rel = 1e-14;
    int rejects_in_a_row = 0;

    while (t1 - t > 1e-12 * std::max(1.0, std::abs(t1))) {
        while (next_cp < checkpoints.size() &&
               checkpoints[next_cp] - t <= 1e-12 * std::max(1.0, std::abs(t)))
            ++next_cp;
        double target = t1;
        if (next_cp < checkpoints.size()) target = std::min(target, checkpoints[next_cp]);
        if (h > target - t) h = target - t;
        const double h_floor = h_floor_rel * std::max(std::abs(t), std::abs(t1 - t0));

        const double y_big = rk4_step(f, t, y, h);
        const double y_mid = rk4_step(f, t, y, h / 2.0);
        const double y_two = rk4_step(f, t + h / 2.0, y_mid, h / 2.0);

        const bool finite = std::isfinite(y_big) && std::isfinite(y_two);
        const double err = finite ? std::abs(y_two - y_big) / 15.0
                                  : std::numeric_limits<double>::infinity();
        const double scale = std::max({std::abs(y), std::abs(y_two), 1e-30});

        if (finite && err <= reltol * scale) {
            t += h;
            y = y_two + (y_two - y_big) / 15.0; // local extrapolation, 5th order
            sol.t.push_back(t);
            sol.y.push_back(y);
            rejects_in_a_row = 0;
            if (std::abs(y) >= kOverflowGuard) {
                sol.outcome = OdeOutcome::BlowupAt;
                sol.t_star = t;
                sol.t_star_width = h;
                sol.detail = "overflow guard 1e300 crossed";
                return sol;
            }
            const double grow = err > 0.0 ? 0.9 * std::pow(reltol * scale / err, 0.2) : 5.0;
            h *= std::min(5.0, std::max(0.2, grow));
        } else {
            const double shrink = finite && err > 0.0
                                      ? std::max(0.1, 0.9 * std::pow(reltol * scale / err, 0.25))
                                      : 0.1;
            h *= shrink;
            ++rejects_in_a_row;
            if (h < h_floor || rejects_in_a_row > 200) {
                // step collapse: explosive growth means blowup, otherwise give up
                const double rhs = f(t, y);
                if (std::abs(y) > 1e6 * std::max(1.0, std::abs(y0)) && rhs > 0.0) {
                    sol.outcome = OdeOutcome::BlowupAt;
                    sol.t_star = t;
                    sol.t_star_width = std::max(h, h_floor) * 16.0;
                    sol.detail = "step size collapsed under explosive growth";
                    return sol;
                }
                throw NumericalFailure("adaptive step size underflow at t=" + std::to_string(t),
                                       t, sol.t.size());
            }
        }
    }
    sol.outcome = OdeOutcome::Global;
    return sol;
}

OdeSolution integrate_comparison(const ComparisonProblem& prob, double reltol) {
    prob.validate();
    if (prob.E0 == 0.0) {
        // absorbing fixed point: E stays exactly 0
        OdeSolution sol;
        sol.t = {0.0, prob.t_end};
        sol.y = {0.0, 0.0};
        sol.outcome = OdeOutcome::Global;
        return sol;
    }
    const double C = prob.C;
    const int q = prob.q;
    const auto& g = prob.g;
    const auto& forcing = prob.forcing;
    auto rhs = [&, C, q](double t, double E) {
        const double a = forcing(t);
        if (!std::isfinite(a))
            throw NumericalFailure("non-finite forcing sample at t=" + std::to_string(t), t, 0);
        const double gv = g.eval(1.0 + std::abs(E));
        double gq = gv * gv;
        if (q == 4) gq *= gq;
        return C * gq * E * (1.0 + a);
    };
    return integrate_scalar_ode(rhs, prob.E0, 0.0, prob.t_end, reltol);
}

EnvelopeResult bound_envelope(const EnergyTrace& trace, double C_emp, const GrowthFunction& g,
                              int q) {
    if (trace.size() < 2)
        throw std::invalid_argument("bound_envelope: need a trace with >= 2 rows");
    EnvelopeResult res;
    res.C_emp = C_emp >= 0.0 ? C_emp : bound_ratio(trace, g).sup_positive;

    std::vector<double> row_times;
    for (const auto& r : trace.rows) {
        res.t.push_back(r.t);
        res.observed.push_back(r.E_k);
        row_times.push_back(r.t);
    }

    if (res.C_emp == 0.0) {
        res.envelope.assign(trace.size(), trace.front().E_k);
    } else {
        ComparisonProblem prob;
        prob.C = res.C_emp;
        prob.g = g;
        prob.q = q;
        prob.forcing = Forcing::from_trace(trace);
        prob.E0 = trace.front().E_k;
        prob.t_end = trace.back().t - trace.front().t;

        std::vector<double> cps;
        for (std::size_t i = 1; i < row_times.size(); ++i)
            cps.push_back(row_times[i] - row_times.front());

        auto rhs = [&](double tau, double E) {
            const double a = prob.forcing(tau + row_times.front());
            const double gv = g.eval(1.0 + std::abs(E));
            double gq = gv * gv;
            if (q == 4) gq *= gq;
            return prob.C * gq * E * (1.0 + a);
        };
        const auto sol = integrate_scalar_ode(rhs, prob.E0, 0.0, prob.t_end, 1e-10, cps);
        if (sol.outcome != OdeOutcome::Global)
            throw NumericalFailure("bound_envelope: envelope ODE blew up before the trace end",
                                   sol.t_star, 0);
        // pick the solution at each row time
        res.envelope.resize(trace.size());
        res.envelope[0] = prob.E0;
        std::size_t si = 0;
        for (std::size_t i = 1; i < row_times.size(); ++i) {
            const double target = row_times[i] - row_times.front();
            while (si + 1 < sol.t.size() &&
                   sol.t[si] < target - 1e-12 * std::max(1.0, target))
                ++si;
            res.envelope[i] = sol.y[si];
        }
    }

    for (std::size_t i = 0; i < trace.size(); ++i) {
        const double slack = 1e-8 * std::abs(res.envelope[i]) + 1e-300;
        if (res.observed[i] > res.envelope[i] + slack) res.violations.push_back(i);
    }
    res.dominated = res.violations.empty();
    return res;
}

} // namespace hns
