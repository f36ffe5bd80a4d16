#include "hns/symbols.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>

namespace hns {

namespace {

std::string param_string(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

} // namespace

std::string DissipationSymbol::name() const {
    switch (family) {
        case SymbolFamily::Zero: return "zero";
        case SymbolFamily::NavierStokes: return "navier_stokes";
        case SymbolFamily::Hyper: return "hyper:" + param_string(alpha);
        case SymbolFamily::Critical: return "critical";
        case SymbolFamily::LogSupercritical: return "log_supercritical";
        case SymbolFamily::Custom: return "custom";
    }
    return "?";
}

DissipationSymbol symbol_zero(int d) {
    return DissipationSymbol{SymbolFamily::Zero, d, 0.0, [](double) { return 0.0; }};
}

DissipationSymbol symbol_navier_stokes(int d) {
    return DissipationSymbol{SymbolFamily::NavierStokes, d, 1.0, [](double r) { return r; }};
}

DissipationSymbol symbol_hyper(double alpha, int d) {
    if (!(alpha > 0.0))
        throw std::invalid_argument("symbol_hyper: exponent must be positive, got " +
                                    std::to_string(alpha));
    const double crit = (d + 2) / 4.0;
    const auto family = alpha == crit ? SymbolFamily::Critical : SymbolFamily::Hyper;
    return DissipationSymbol{family, d, alpha,
                             [alpha](double r) { return r == 0.0 ? 0.0 : std::pow(r, alpha); }};
}

DissipationSymbol symbol_critical(int d) { return symbol_hyper((d + 2) / 4.0, d); }

DissipationSymbol symbol_log_supercritical(int d) {
    if (d != 2 && d != 3)
        throw std::invalid_argument("symbol_log_supercritical: d must be 2 or 3");
    const double expo = (d + 2) / 4.0;
    return DissipationSymbol{SymbolFamily::LogSupercritical, d, expo, [expo](double r) {
                                 if (r == 0.0) return 0.0;
                                 return std::pow(r, expo) / std::pow(std::log(2.0 + r * r), 0.25);
                             }};
}

DissipationSymbol symbol_custom(std::function<double(double)> eval, int d) {
    return DissipationSymbol{SymbolFamily::Custom, d, 0.0, std::move(eval)};
}

std::string GrowthFunction::name() const {
    switch (family) {
        case GrowthFamily::One: return "one";
        case GrowthFamily::Power: return "power:" + param_string(param);
        case GrowthFamily::LogQuarter: return "log_quarter";
        case GrowthFamily::LogPower: return "log_power:" + param_string(param);
        case GrowthFamily::Custom: return "custom";
    }
    return "?";
}

GrowthFunction growth_one() {
    return GrowthFunction{GrowthFamily::One, 0.0, [](double) { return 1.0; }};
}

GrowthFunction growth_power(double eps) {
    if (!(eps > 0.0))
        throw std::invalid_argument("growth_power: exponent must be positive, got " +
                                    std::to_string(eps));
    return GrowthFunction{GrowthFamily::Power, eps,
                          [eps](double s) { return s == 0.0 ? 0.0 : std::pow(s, eps); }};
}

GrowthFunction growth_log_quarter() {
    return GrowthFunction{GrowthFamily::LogQuarter, 0.25,
                          [](double s) { return std::pow(std::log(2.0 + s * s), 0.25); }};
}

GrowthFunction growth_log_power(double beta) {
    if (!(beta > 0.0))
        throw std::invalid_argument("growth_log_power: exponent must be positive, got " +
                                    std::to_string(beta));
    return GrowthFunction{GrowthFamily::LogPower, beta, [beta](double s) {
                              return std::max(1.0, std::pow(std::log(2.0 + s * s), beta));
                          }};
}

GrowthFunction growth_custom(std::function<double(double)> eval) {
    return GrowthFunction{GrowthFamily::Custom, 0.0, std::move(eval)};
}

GrowthFunction growth_from_family(const std::string& family, double param) {
    if (family == "one") return growth_one();
    if (family == "power") return growth_power(param);
    if (family == "log_quarter") return growth_log_quarter();
    if (family == "log_power") return growth_log_power(param);
    throw std::invalid_argument("unknown growth family '" + family + "'");
}

BoundCheckReport check_lower_bound(const DissipationSymbol& sym, const GrowthFunction& g,
                                   int d, double r_min, double r_max, int n_points) {
    if (n_points < 100)
        throw std::invalid_argument("check_lower_bound: need a grid of >= 100 points");
    if (!(r_min > 0.0) || !(r_max > r_min))
        throw std::invalid_argument("check_lower_bound: bad range");

    BoundCheckReport rep;
    rep.outside_theorem = d < 3;
    rep.sample_count = n_points;
    rep.r_min = r_min;
    rep.r_max = r_max;

    const double expo = (d + 2) / 4.0;
    const double log_step = std::log(r_max / r_min) / (n_points - 1);

    std::vector<double> rs(static_cast<std::size_t>(n_points));
    std::vector<double> ratios(static_cast<std::size_t>(n_points));
    int last_violation = -1;
    rep.worst_ratio = std::numeric_limits<double>::infinity();
    for (int i = 0; i < n_points; ++i) {
        const double r = r_min * std::exp(log_step * i);
        const double required = std::pow(r, expo) / g.eval(r);
        const double ratio = sym.eval(r) * g.eval(r) / std::pow(r, expo);
        rs[static_cast<std::size_t>(i)] = r;
        ratios[static_cast<std::size_t>(i)] = ratio;
        if (ratio < rep.worst_ratio) {
            rep.worst_ratio = ratio;
            rep.worst_r = r;
        }
        if (sym.eval(r) < required * (1.0 - 1e-12)) last_violation = i;
    }

    if (last_violation == n_points - 1) {
        rep.holds = false; // violated through the top of the range
        rep.threshold_r0 = 0.0;
        rep.min_ratio_above_threshold = ratios.back();
        return rep;
    }
    rep.holds = true;
    const int first_ok = last_violation + 1;
    rep.threshold_r0 = rs[static_cast<std::size_t>(first_ok)];
    rep.min_ratio_above_threshold =
        *std::min_element(ratios.begin() + first_ok, ratios.end());
    return rep;
}

} // namespace hns
