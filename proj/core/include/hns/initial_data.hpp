#pragma once

#include <array>
#include <cstdint>

#include "hns/spectral_field.hpp"

namespace hns {

/// 2D Taylor-Green vortex u = A (sin kx cos ky, -cos kx sin ky), k = 2pi/period.
/// Its nonlinearity is a pure gradient, so under any radial symbol the exact
/// solution is u0 * exp(-m(sqrt2 * k)^2 t). d = 2 lattices only.
SpectralField taylor_green_2d(const WavenumberLattice& lat, double amplitude = 1.0);

/// Single Hermitian mode pair at integer wavevector `mode` with the given
/// real amplitude vector projected transverse to the mode; the physical field
/// is amp_perp * cos(xi.x). Throws if the mode is outside the lattice or the
/// transverse part vanishes.
SpectralField single_mode(const WavenumberLattice& lat, const std::array<int, 3>& mode,
                          const std::array<double, 3>& amplitude);

/// Divergence-free random field supported on kmin <= |xi| <= kmax, scaled to
/// total energy amplitude^2. Deterministic in `seed` (fixed iteration order,
/// Box-Muller on a seeded mt19937_64). Throws if the band misses the lattice.
SpectralField random_band(const WavenumberLattice& lat, double kmin, double kmax,
                          double amplitude, std::uint64_t seed);

/// Smooth vortex blob with numerically compact support: the curl of a
/// Gaussian stream function of width sigma centered mid-torus. Approximates
/// compactly supported data when sigma << period.
SpectralField bump_approx(const WavenumberLattice& lat, double amplitude, double sigma);

} // namespace hns
