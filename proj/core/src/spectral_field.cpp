#include "hns/spectral_field.hpp"

#include <cmath>

#include "hns/internal/kahan.hpp"

namespace hns {

SpectralField::SpectralField(const WavenumberLattice& lat) : lattice(lat) {
    comp.assign(static_cast<std::size_t>(lat.dim()),
                std::vector<Complex>(lat.mode_count(), Complex{0.0, 0.0}));
}

void SpectralField::sanitize() {
    const int n = lattice.modes_per_dim();
    for_each_mode_indexed(lattice, [&](std::size_t idx, const std::array<int, 3>& iv,
                                       const std::array<double, 3>&) {
        bool nyquist = false;
        for (int ax = 0; ax < lattice.dim(); ++ax)
            if (iv[static_cast<std::size_t>(ax)] == n / 2) nyquist = true;
        if (nyquist)
            for (auto& c : comp) c[idx] = Complex{0.0, 0.0};
    });
    for (auto& c : comp) c[0] = Complex{c[0].real(), 0.0};
}

double SpectralField::coeff_norm() const {
    detail::KahanSum s;
    for (const auto& c : comp)
        for (const auto& z : c) s.add(std::norm(z));
    return std::sqrt(s.value());
}

double SpectralField::max_divergence() const {
    double worst = 0.0;
    for_each_mode(lattice, [&](std::size_t idx, const std::array<double, 3>& xi) {
        Complex dot{0.0, 0.0};
        for (int ax = 0; ax < lattice.dim(); ++ax)
            dot += xi[static_cast<std::size_t>(ax)] * comp[static_cast<std::size_t>(ax)][idx];
        worst = std::max(worst, std::abs(dot));
    });
    return worst;
}

double SpectralField::hermitian_defect() const {
    double worst = 0.0;
    const int n = lattice.modes_per_dim();
    for_each_mode_indexed(lattice, [&](std::size_t idx, const std::array<int, 3>& iv,
                                       const std::array<double, 3>&) {
        std::array<int, 3> neg{0, 0, 0};
        bool nyquist = false;
        for (int ax = 0; ax < lattice.dim(); ++ax) {
            const int j = iv[static_cast<std::size_t>(ax)];
            if (j == n / 2) nyquist = true;
            neg[static_cast<std::size_t>(ax)] = lattice.negate_index(j);
        }
        if (nyquist) return; // unpaired rows are pinned to zero by sanitize()
        const std::size_t nidx = lattice.flat_index(neg);
        for (const auto& c : comp)
            worst = std::max(worst, std::abs(c[nidx] - std::conj(c[idx])));
    });
    return worst;
}

bool SpectralField::all_finite() const {
    for (const auto& c : comp)
        for (const auto& z : c)
            if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
    return true;
}

PhysicalField::PhysicalField(const WavenumberLattice& lat) : lattice(lat) {
    comp.assign(static_cast<std::size_t>(lat.dim()),
                std::vector<double>(lat.mode_count(), 0.0));
}

double PhysicalField::max_abs() const {
    double worst = 0.0;
    for (const auto& c : comp)
        for (double v : c) worst = std::max(worst, std::abs(v));
    return worst;
}

double PhysicalField::l2_norm() const {
    detail::KahanSum s;
    for (const auto& c : comp)
        for (double v : c) s.add(v * v);
    double cell = 1.0;
    for (int ax = 0; ax < lattice.dim(); ++ax)
        cell *= lattice.period() / lattice.modes_per_dim();
    return std::sqrt(s.value() * cell);
}

} // namespace hns
