#pragma once

#include <array>
#include <cstddef>
#include <vector>

namespace hns {

/// Integer wavenumber lattice of the d-torus [0, period)^d, n modes per
/// dimension. Wavevector components are k * (2*pi/period) with integer
/// k in {-n/2+1, ..., n/2}; the axis index j in [0, n) maps to
/// k = j for j <= n/2 and k = j - n otherwise (FFT storage order).
/// The k = n/2 row is the unpaired Nyquist row.
class WavenumberLattice {
public:
    WavenumberLattice() = default;
    WavenumberLattice(int d, int n, double period);

    int dim() const { return d_; }
    int modes_per_dim() const { return n_; }
    double period() const { return period_; }

    std::size_t mode_count() const { return mode_count_; }

    /// 2*pi/period, the spacing of the wavenumber lattice.
    double fundamental() const { return fundamental_; }

    /// Scaled wavenumber along one axis for axis index j in [0, n).
    double wavenumber(int j) const { return axis_wavenumbers_[static_cast<std::size_t>(j)]; }

    /// Integer wavenumber along one axis for axis index j.
    int k_int(int j) const { return j <= n_ / 2 ? j : j - n_; }

    bool is_nyquist(int j) const { return j == n_ / 2; }

    /// Largest |xi_i| on any axis: pi*n/period.
    double axis_radius() const { return fundamental_ * (n_ / 2); }

    /// Flat row-major index of the mode with axis indices iv.
    std::size_t flat_index(const std::array<int, 3>& iv) const;

    /// Axis index of the mode -xi given the axis index of xi
    /// (Nyquist maps to itself).
    int negate_index(int j) const { return j == 0 ? 0 : n_ - j; }

private:
    int d_ = 0;
    int n_ = 0;
    double period_ = 0.0;
    double fundamental_ = 0.0;
    std::size_t mode_count_ = 0;
    std::vector<double> axis_wavenumbers_;
};

/// Build a lattice; throws std::invalid_argument for unsupported d or odd n.
WavenumberLattice make_lattice(int d, int n, double period);

bool operator==(const WavenumberLattice& a, const WavenumberLattice& b);
inline bool operator!=(const WavenumberLattice& a, const WavenumberLattice& b) { return !(a == b); }

/// Visit every mode in row-major order. f(idx, xi) with xi zero-padded to 3
/// components. The loop nest is unrolled per dimension to keep this usable in
/// hot paths.
template <typename F>
void for_each_mode(const WavenumberLattice& lat, F&& f) {
    const int n = lat.modes_per_dim();
    std::array<double, 3> xi{0.0, 0.0, 0.0};
    std::size_t idx = 0;
    if (lat.dim() == 2) {
        for (int i0 = 0; i0 < n; ++i0) {
            xi[0] = lat.wavenumber(i0);
            for (int i1 = 0; i1 < n; ++i1) {
                xi[1] = lat.wavenumber(i1);
                f(idx++, xi);
            }
        }
    } else {
        for (int i0 = 0; i0 < n; ++i0) {
            xi[0] = lat.wavenumber(i0);
            for (int i1 = 0; i1 < n; ++i1) {
                xi[1] = lat.wavenumber(i1);
                for (int i2 = 0; i2 < n; ++i2) {
                    xi[2] = lat.wavenumber(i2);
                    f(idx++, xi);
                }
            }
        }
    }
}

/// Same as for_each_mode but also passes the axis indices.
template <typename F>
void for_each_mode_indexed(const WavenumberLattice& lat, F&& f) {
    const int n = lat.modes_per_dim();
    std::array<int, 3> iv{0, 0, 0};
    std::array<double, 3> xi{0.0, 0.0, 0.0};
    std::size_t idx = 0;
    if (lat.dim() == 2) {
        for (int i0 = 0; i0 < n; ++i0) {
            iv[0] = i0;
            xi[0] = lat.wavenumber(i0);
            for (int i1 = 0; i1 < n; ++i1) {
                iv[1] = i1;
                xi[1] = lat.wavenumber(i1);
                f(idx++, iv, xi);
            }
        }
    } else {
        for (int i0 = 0; i0 < n; ++i0) {
            iv[0] = i0;
            xi[0] = lat.wavenumber(i0);
            for (int i1 = 0; i1 < n; ++i1) {
                iv[1] = i1;
                xi[1] = lat.wavenumber(i1);
                for (int i2 = 0; i2 < n; ++i2) {
                    iv[2] = i2;
                    xi[2] = lat.wavenumber(i2);
                    f(idx++, iv, xi);
                }
            }
        }
    }
}

} // namespace hns
