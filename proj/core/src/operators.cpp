#include "hns/operators.hpp"

#include <cmath>
#include <stdexcept>

#include "hns/symbols.hpp"

namespace hns {

SpectralField leray_project(const SpectralField& f) {
    SpectralField out = f;
    const int d = f.dim();
    for_each_mode(f.lattice, [&](std::size_t idx, const std::array<double, 3>& xi) {
        const double xi2 = xi[0] * xi[0] + xi[1] * xi[1] + xi[2] * xi[2];
        if (xi2 == 0.0) return; // mean mode passes through
        Complex dot{0.0, 0.0};
        for (int ax = 0; ax < d; ++ax)
            dot += xi[static_cast<std::size_t>(ax)] * f.comp[static_cast<std::size_t>(ax)][idx];
        const Complex scale = dot / xi2;
        for (int ax = 0; ax < d; ++ax)
            out.comp[static_cast<std::size_t>(ax)][idx] -= xi[static_cast<std::size_t>(ax)] * scale;
    });
    out.divergence_free = true;
    return out;
}

SpectralField apply_multiplier(const std::function<double(double)>& m, const SpectralField& f) {
    SpectralField out = f;
    for_each_mode(f.lattice, [&](std::size_t idx, const std::array<double, 3>& xi) {
        const double r = std::sqrt(xi[0] * xi[0] + xi[1] * xi[1] + xi[2] * xi[2]);
        const double v = m(r);
        if (!std::isfinite(v) || v < 0.0)
            throw std::domain_error("apply_multiplier: symbol returned " + std::to_string(v) +
                                    " at |xi|=" + std::to_string(r));
        for (auto& c : out.comp) c[idx] *= v;
    });
    return out;
}

SpectralField apply_multiplier(const DissipationSymbol& m, const SpectralField& f) {
    return apply_multiplier(m.eval, f);
}

namespace {

SpectralField lp_select(double N, const SpectralField& f, bool keep_low) {
    if (!(N > 0.0))
        throw std::invalid_argument("Littlewood-Paley cutoff N must be positive");
    SpectralField out = f;
    for_each_mode(f.lattice, [&](std::size_t idx, const std::array<double, 3>& xi) {
        const double r = std::sqrt(xi[0] * xi[0] + xi[1] * xi[1] + xi[2] * xi[2]);
        const bool low = r <= N; // inclusive boundary lives in the low region
        if (low != keep_low)
            for (auto& c : out.comp) c[idx] = Complex{0.0, 0.0};
    });
    return out;
}

} // namespace

SpectralField lp_low(double N, const SpectralField& f) { return lp_select(N, f, true); }
SpectralField lp_high(double N, const SpectralField& f) { return lp_select(N, f, false); }

} // namespace hns
