#include "hns/lattice.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace hns {

WavenumberLattice::WavenumberLattice(int d, int n, double period)
    : d_(d), n_(n), period_(period) {
    fundamental_ = 2.0 * M_PI / period_;
    mode_count_ = 1;
    for (int i = 0; i < d_; ++i) mode_count_ *= static_cast<std::size_t>(n_);
    axis_wavenumbers_.resize(static_cast<std::size_t>(n_));
    for (int j = 0; j < n_; ++j)
        axis_wavenumbers_[static_cast<std::size_t>(j)] = fundamental_ * k_int(j);
}

std::size_t WavenumberLattice::flat_index(const std::array<int, 3>& iv) const {
    std::size_t idx = 0;
    for (int ax = 0; ax < d_; ++ax)
        idx = idx * static_cast<std::size_t>(n_) + static_cast<std::size_t>(iv[static_cast<std::size_t>(ax)]);
    return idx;
}

WavenumberLattice make_lattice(int d, int n, double period) {
    if (d != 2 && d != 3)
        throw std::invalid_argument("make_lattice: unsupported dimension " + std::to_string(d) +
                                    " (d must be 2 or 3)");
    if (n % 2 != 0)
        throw std::invalid_argument("make_lattice: n must be even, got " + std::to_string(n));
    if (n < 8 || n > 1024)
        throw std::invalid_argument("make_lattice: n must be in [8, 1024], got " + std::to_string(n));
    if (!(period > 0.0) || !std::isfinite(period))
        throw std::invalid_argument("make_lattice: period must be positive and finite");
    return WavenumberLattice(d, n, period);
}

bool operator==(const WavenumberLattice& a, const WavenumberLattice& b) {
    return a.dim() == b.dim() && a.modes_per_dim() == b.modes_per_dim() &&
           a.period() == b.period();
}

} // namespace hns
