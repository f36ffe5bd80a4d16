#include "hns/initial_data.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

#include "hns/diagnostics.hpp"
#include "hns/operators.hpp"
#include "hns/transform.hpp"

namespace hns {

namespace {

// Deterministic standard normal via Box-Muller on mt19937_64 uniforms;
// std::normal_distribution is implementation-defined, this is not.
class NormalSource {
public:
    explicit NormalSource(std::uint64_t seed) : gen_(seed) {}

    double next() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1 = uniform01();
        while (u1 <= 0.0) u1 = uniform01();
        const double u2 = uniform01();
        const double mag = std::sqrt(-2.0 * std::log(u1));
        spare_ = mag * std::sin(2.0 * M_PI * u2);
        have_spare_ = true;
        return mag * std::cos(2.0 * M_PI * u2);
    }

private:
    double uniform01() {
        return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
    }
    std::mt19937_64 gen_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

// True for the representative of each Hermitian pair (first nonzero integer
// component positive); the mirror mode gets the conjugate.
bool is_pair_representative(const WavenumberLattice& lat, const std::array<int, 3>& iv) {
    for (int ax = 0; ax < lat.dim(); ++ax) {
        const int k = lat.k_int(iv[static_cast<std::size_t>(ax)]);
        if (k > 0) return true;
        if (k < 0) return false;
    }
    return false; // the zero mode is handled separately
}

} // namespace

SpectralField taylor_green_2d(const WavenumberLattice& lat, double amplitude) {
    if (lat.dim() != 2)
        throw std::invalid_argument("taylor_green_2d: needs a 2-dimensional lattice");
    PhysicalField u(lat);
    const int n = lat.modes_per_dim();
    const double kappa = 2.0 * M_PI / lat.period();
    const double hx = lat.period() / n;
    for (int i = 0; i < n; ++i) {
        const double x = kappa * hx * i;
        for (int j = 0; j < n; ++j) {
            const double y = kappa * hx * j;
            const std::size_t idx = static_cast<std::size_t>(i) * n + j;
            u.comp[0][idx] = amplitude * std::sin(x) * std::cos(y);
            u.comp[1][idx] = -amplitude * std::cos(x) * std::sin(y);
        }
    }
    SpectralField f = forward_transform(u);
    f.divergence_free = true;
    return f;
}

SpectralField single_mode(const WavenumberLattice& lat, const std::array<int, 3>& mode,
                          const std::array<double, 3>& amplitude) {
    const int n = lat.modes_per_dim();
    std::array<int, 3> iv{0, 0, 0};
    std::array<int, 3> neg{0, 0, 0};
    double xi2 = 0.0;
    for (int ax = 0; ax < lat.dim(); ++ax) {
        const int k = mode[static_cast<std::size_t>(ax)];
        if (k <= -n / 2 || k >= n / 2) // Nyquist row is unusable as a pair
            throw std::invalid_argument("single_mode: mode outside the paired lattice");
        iv[static_cast<std::size_t>(ax)] = k >= 0 ? k : k + n;
        neg[static_cast<std::size_t>(ax)] = (-k) >= 0 ? -k : -k + n;
        const double x = lat.fundamental() * k;
        xi2 += x * x;
    }
    if (xi2 == 0.0)
        throw std::invalid_argument("single_mode: zero wavevector");

    // project the amplitude transverse to the mode
    double dot = 0.0;
    for (int ax = 0; ax < lat.dim(); ++ax)
        dot += lat.fundamental() * mode[static_cast<std::size_t>(ax)] *
               amplitude[static_cast<std::size_t>(ax)];
    std::array<double, 3> perp{0.0, 0.0, 0.0};
    double norm2 = 0.0;
    for (int ax = 0; ax < lat.dim(); ++ax) {
        const double x = lat.fundamental() * mode[static_cast<std::size_t>(ax)];
        perp[static_cast<std::size_t>(ax)] =
            amplitude[static_cast<std::size_t>(ax)] - x * dot / xi2;
        norm2 += perp[static_cast<std::size_t>(ax)] * perp[static_cast<std::size_t>(ax)];
    }
    if (norm2 == 0.0)
        throw std::invalid_argument("single_mode: amplitude is purely longitudinal");

    SpectralField f(lat);
    const std::size_t ip = lat.flat_index(iv);
    const std::size_t im = lat.flat_index(neg);
    for (int ax = 0; ax < lat.dim(); ++ax) {
        // u = perp * cos(xi.x): both pair members get perp/2, real
        f.comp[static_cast<std::size_t>(ax)][ip] =
            Complex{perp[static_cast<std::size_t>(ax)] / 2.0, 0.0};
        f.comp[static_cast<std::size_t>(ax)][im] =
            Complex{perp[static_cast<std::size_t>(ax)] / 2.0, 0.0};
    }
    f.divergence_free = true;
    return f;
}

SpectralField random_band(const WavenumberLattice& lat, double kmin, double kmax,
                          double amplitude, std::uint64_t seed) {
    if (!(kmin <= kmax) || !(kmax > 0.0))
        throw std::invalid_argument("random_band: bad band");
    SpectralField f(lat);
    NormalSource rng(seed);
    const int n = lat.modes_per_dim();
    bool any = false;
    // Fixed row-major iteration: bit-identical fields for a fixed seed.
    for_each_mode_indexed(lat, [&](std::size_t idx, const std::array<int, 3>& iv,
                                   const std::array<double, 3>& xi) {
        bool nyquist = false;
        for (int ax = 0; ax < lat.dim(); ++ax)
            if (iv[static_cast<std::size_t>(ax)] == n / 2) nyquist = true;
        if (nyquist || !is_pair_representative(lat, iv)) return;
        const double r = std::sqrt(xi[0] * xi[0] + xi[1] * xi[1] + xi[2] * xi[2]);
        if (r < kmin || r > kmax) return;
        any = true;
        std::array<int, 3> neg{0, 0, 0};
        for (int ax = 0; ax < lat.dim(); ++ax)
            neg[static_cast<std::size_t>(ax)] =
                lat.negate_index(iv[static_cast<std::size_t>(ax)]);
        const std::size_t nidx = lat.flat_index(neg);
        for (int ax = 0; ax < lat.dim(); ++ax) {
            const Complex z{rng.next(), rng.next()};
            f.comp[static_cast<std::size_t>(ax)][idx] = z;
            f.comp[static_cast<std::size_t>(ax)][nidx] = std::conj(z);
        }
    });
    if (!any)
        throw std::invalid_argument("random_band: band contains no lattice modes");
    SpectralField g = leray_project(f);
    g.sanitize();
    const double e = energy(g);
    if (!(e > 0.0))
        throw std::invalid_argument("random_band: projected band is empty");
    const double scale = amplitude / std::sqrt(e);
    for (auto& c : g.comp)
        for (auto& z : c) z *= scale;
    g.divergence_free = true;
    return g;
}

SpectralField bump_approx(const WavenumberLattice& lat, double amplitude, double sigma) {
    if (!(sigma > 0.0) || !(sigma < lat.period()))
        throw std::invalid_argument("bump_approx: width must be in (0, period)");
    const int n = lat.modes_per_dim();
    const double h = lat.period() / n;
    const double c = lat.period() / 2.0;
    PhysicalField u(lat);

    auto wrap = [&](double dx) {
        // nearest-image offset on the torus
        while (dx > lat.period() / 2.0) dx -= lat.period();
        while (dx < -lat.period() / 2.0) dx += lat.period();
        return dx;
    };
    // u = curl of a Gaussian stream bump: divergence-free by construction,
    // tails below roundoff once sigma << period.
    auto psi_x = [&](double dx, double dy, double dz) {
        const double r2 = dx * dx + dy * dy + dz * dz;
        return std::exp(-r2 / (2.0 * sigma * sigma));
    };
    if (lat.dim() == 2) {
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                const double dx = wrap(h * i - c), dy = wrap(h * j - c);
                const double psi = psi_x(dx, dy, 0.0);
                const std::size_t idx = static_cast<std::size_t>(i) * n + j;
                u.comp[0][idx] = amplitude * (-dy / (sigma * sigma)) * psi;
                u.comp[1][idx] = amplitude * (dx / (sigma * sigma)) * psi;
            }
    } else {
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                for (int l = 0; l < n; ++l) {
                    const double dx = wrap(h * i - c), dy = wrap(h * j - c), dz = wrap(h * l - c);
                    const double psi = psi_x(dx, dy, dz);
                    const std::size_t idx =
                        (static_cast<std::size_t>(i) * n + j) * n + l;
                    // curl of (0, 0, psi)
                    u.comp[0][idx] = amplitude * (-dy / (sigma * sigma)) * psi;
                    u.comp[1][idx] = amplitude * (dx / (sigma * sigma)) * psi;
                    u.comp[2][idx] = 0.0;
                }
    }
    SpectralField f = leray_project(forward_transform(u));
    f.sanitize();
    f.divergence_free = true;
    return f;
}

} // namespace hns
