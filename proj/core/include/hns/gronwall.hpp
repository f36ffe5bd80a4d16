#pragma once

#include <functional>
#include <string>
#include <vector>

#include "hns/diagnostics.hpp"
#include "hns/symbols.hpp"

namespace hns {

/// Time-dependent forcing a(t) for the comparison ODE: zero, a constant, or
/// piecewise-linear interpolation of trace samples (clamped outside).
class Forcing {
public:
    Forcing() = default;
    static Forcing zero();
    static Forcing constant(double value);
    static Forcing table(std::vector<double> t, std::vector<double> a);
    static Forcing from_trace(const EnergyTrace& trace);

    double operator()(double t) const;
    bool is_zero() const { return kind_ == Kind::Zero; }

private:
    enum class Kind { Zero, Constant, Table };
    Kind kind_ = Kind::Zero;
    double value_ = 0.0;
    std::vector<double> t_;
    std::vector<double> a_;
};

/// The comparison problem dE/dt = C g(1+E)^q E (1+a(t)), E(0) = E0.
struct ComparisonProblem {
    double C = 1.0;
    GrowthFunction g;
    int q = 4; // 4 is the proven regime; 2 the conjectured one
    Forcing forcing;
    std::string forcing_spec = "none"; // config spelling, kept for canonicalization
    double E0 = 1.0;
    double t_end = 1.0;

    void validate() const; // throws std::invalid_argument
};

/// int_1^S ds / (s g(s)^q), computed by adaptive quadrature in the
/// log-substituted variable s = exp(sigma) to relative error <= 1e-8.
/// Throws std::domain_error if g evaluates non-positive, std::invalid_argument
/// for S <= 1.
double criterion_integral(const GrowthFunction& g, int q, double S);

enum class DivergenceVerdict { Diverges, Converges, Inconclusive };

std::string to_string(DivergenceVerdict v);

/// Evidence behind a divergence classification: the dyadic increment table
/// I_j = int over [2^j, 2^{j+1}] and the fitted decay statistics.
struct DivergenceEvidence {
    std::vector<int> exponents;      // j
    std::vector<double> increments;  // I_j
    double ratio_median = 0.0;       // median of I_{j+1}/I_j over the tail
    double ratio_slope = 0.0;        // per-dyad drift of the ratios
    double power_fit = 0.0;          // p in I_j ~ j^{-p} (tail log-log fit)
    double tail_estimate = 0.0;      // geometric tail sum when applicable
    std::string rule;                // which branch decided
};

struct DivergenceReport {
    DivergenceVerdict verdict = DivergenceVerdict::Inconclusive;
    DivergenceEvidence evidence;
};

/// Heuristic classification of int_1^inf ds/(s g(s)^q) from the dyadic
/// increment table over S in [2^10, 2^40]: constant increments diverge,
/// geometric decay converges, power-law-in-j decay is decided by the fitted
/// exponent against the harmonic borderline. Never throws on an undecidable
/// tail; that is what Inconclusive is for.
DivergenceReport classify_divergence(const GrowthFunction& g, int q);

enum class OdeOutcome { Global, BlowupAt };

struct OdeSolution {
    std::vector<double> t;
    std::vector<double> y;
    OdeOutcome outcome = OdeOutcome::Global;
    double t_star = 0.0;        // blowup time estimate (left bracket edge)
    double t_star_width = 0.0;  // bracket width
    std::string detail;
};

/// Adaptive RK4 with step-halving error control (Richardson estimate,
/// relative tolerance reltol) for a scalar ODE y' = f(t, y). Blowup is
/// declared when y crosses the 1e300 overflow guard or the step size
/// collapses under explosive growth; t_star is bracketed by the last
/// accepted point and the failed step. checkpoints, when given, are times
/// the integrator lands on exactly (solution recorded there).
OdeSolution integrate_scalar_ode(const std::function<double(double, double)>& f, double y0,
                                 double t0, double t1, double reltol = 1e-8,
                                 const std::vector<double>& checkpoints = {});

/// Integrate the comparison problem. E0 = 0 stays exactly 0.
OdeSolution integrate_comparison(const ComparisonProblem& prob, double reltol = 1e-8);

struct EnvelopeResult {
    std::vector<double> t;        // trace row times
    std::vector<double> envelope; // comparison-ODE envelope at those times
    std::vector<double> observed; // E_k column
    std::vector<std::size_t> violations; // rows where observed > envelope
    double C_emp = 0.0;
    bool dominated = false;
};

/// Integrate dE/dt = C_emp g(1+E)^q E (1+a(t)) with a(t) interpolated from
/// the trace and E(0) = E_k(first row), then check E_k <= envelope row by
/// row (violation means exceeding by more than 1e-8 relative, the envelope
/// integration tolerance). C_emp < 0 is replaced by the trace's own
/// sup-positive bound ratio. Throws std::invalid_argument on < 2 rows.
EnvelopeResult bound_envelope(const EnergyTrace& trace, double C_emp, const GrowthFunction& g,
                              int q = 4);

} // namespace hns
