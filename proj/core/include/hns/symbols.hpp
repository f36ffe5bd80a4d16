#pragma once

#include <functional>
#include <string>
#include <vector>

namespace hns {

enum class SymbolFamily { Zero, NavierStokes, Hyper, Critical, LogSupercritical, Custom };

/// Non-negative radial dissipation symbol m(|xi|). Value object; the
/// evaluator is pure and safe to call concurrently.
struct DissipationSymbol {
    SymbolFamily family = SymbolFamily::Zero;
    int dim = 3;
    double alpha = 0.0; // exponent for Hyper/Critical; (dim+2)/4 for the log family
    std::function<double(double)> eval;

    double operator()(double r) const { return eval(r); }

    /// True when the exponent equals (dim+2)/4 exactly.
    bool is_critical() const { return family == SymbolFamily::Critical; }

    std::string name() const;
};

DissipationSymbol symbol_zero(int d = 3);

/// m(r) = r, essentially Navier-Stokes.
DissipationSymbol symbol_navier_stokes(int d = 3);

/// m(r) = r^alpha; the family is marked Critical when alpha == (d+2)/4
/// exactly. Throws std::invalid_argument for alpha <= 0.
DissipationSymbol symbol_hyper(double alpha, int d);

/// The critical exponent alpha = (d+2)/4.
DissipationSymbol symbol_critical(int d);

/// m(r) = r^{(d+2)/4} / log^{1/4}(2 + r^2), the log-supercritical symbol.
/// d = 2 is allowed for testing and flagged outside the d >= 3 regime.
DissipationSymbol symbol_log_supercritical(int d);

DissipationSymbol symbol_custom(std::function<double(double)> eval, int d);

enum class GrowthFamily { One, Power, LogQuarter, LogPower, Custom };

/// Positive non-decreasing growth function g(s) on s >= 0. Families:
///   one:          g = 1
///   power(eps):   g(s) = s^eps
///   log_quarter:  g(s) = log^{1/4}(2 + s^2)
///   log_power(b): g(s) = max(1, log^b(2 + s^2))
struct GrowthFunction {
    GrowthFamily family = GrowthFamily::One;
    double param = 0.0;
    std::function<double(double)> eval;

    double operator()(double s) const { return eval(s); }
    std::string name() const;
};

GrowthFunction growth_one();
GrowthFunction growth_power(double eps);
GrowthFunction growth_log_quarter();
GrowthFunction growth_log_power(double beta);
GrowthFunction growth_custom(std::function<double(double)> eval);

/// Build a growth function from its family name ("one", "power", CLI spellings
/// like "power:0.25"). Throws std::invalid_argument for bad parameters.
GrowthFunction growth_from_family(const std::string& family, double param = 0.0);

/// Result of sampling the lower bound m(r) >= r^{(d+2)/4} / g(r) on a
/// geometric grid. `holds` means the bound held from threshold_r0 up to the
/// top of the sampled range; otherwise worst_ratio/worst_r describe the
/// violation nearest the top. ratio = m(r) g(r) / r^{(d+2)/4}.
struct BoundCheckReport {
    bool holds = false;
    double threshold_r0 = 0.0;
    double worst_ratio = 0.0;  // min ratio over the sampled range
    double worst_r = 0.0;
    double min_ratio_above_threshold = 0.0;
    bool outside_theorem = false; // d < 3
    int sample_count = 0;
    double r_min = 0.0;
    double r_max = 0.0;
};

/// Sample the structural hypothesis on a geometric grid of n_points in
/// [r_min, r_max] (n_points >= 100). Never throws on a failed bound; the
/// report carries the verdict.
BoundCheckReport check_lower_bound(const DissipationSymbol& sym, const GrowthFunction& g,
                                   int d, double r_min = 9.765625e-4 /* 2^-10 */,
                                   double r_max = 1048576.0 /* 2^20 */, int n_points = 512);

} // namespace hns
