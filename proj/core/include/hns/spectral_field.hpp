#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include "hns/lattice.hpp"

namespace hns {

using Complex = std::complex<double>;

/// Velocity field on the torus stored as d complex coefficient arrays over
/// the wavenumber lattice (component-major, row-major within a component).
/// Coefficients follow the mean-per-cell convention
///   u_hat(xi) = period^{-d} * integral of u(x) exp(-i xi.x) dx,
/// so energy is period^d * sum |u_hat|^2. Hermitian symmetry
/// u_hat(-xi) = conj(u_hat(xi)) is an invariant; the unpaired Nyquist rows
/// are held at zero and the mean mode is real.
struct SpectralField {
    WavenumberLattice lattice;
    std::vector<std::vector<Complex>> comp;
    bool divergence_free = false;

    SpectralField() = default;
    explicit SpectralField(const WavenumberLattice& lat);

    int dim() const { return lattice.dim(); }
    std::size_t mode_count() const { return lattice.mode_count(); }

    /// Zero the Nyquist rows and the imaginary part of the mean mode.
    void sanitize();

    /// sqrt(sum over components and modes of |u_hat|^2). No period^d weight.
    double coeff_norm() const;

    /// max over modes of |xi . u_hat(xi)|.
    double max_divergence() const;

    /// max over paired modes of |u_hat(-xi) - conj(u_hat(xi))|.
    double hermitian_defect() const;

    bool all_finite() const;
};

/// Real-valued physical-space samples on the uniform n^d grid of the torus,
/// same component-major layout as SpectralField.
struct PhysicalField {
    WavenumberLattice lattice;
    std::vector<std::vector<double>> comp;

    PhysicalField() = default;
    explicit PhysicalField(const WavenumberLattice& lat);

    int dim() const { return lattice.dim(); }
    double max_abs() const;
    double l2_norm() const; // sqrt(sum u^2 * cell_volume)
};

} // namespace hns
