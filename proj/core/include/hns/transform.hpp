#pragma once

#include <complex>
#include <vector>

#include "hns/lattice.hpp"
#include "hns/spectral_field.hpp"

namespace hns {

/// Forward transform of real samples to mean-per-cell Fourier coefficients.
/// The result is sanitized (Nyquist rows zeroed, mean mode made real), so the
/// represented subspace is exactly the Hermitian-paired lattice modes.
SpectralField forward_transform(const PhysicalField& u);

/// Inverse transform back to real samples. The imaginary residue of the
/// complex back-transform (roundoff for a Hermitian field) is discarded;
/// pass max_imag to retrieve its max absolute value.
PhysicalField inverse_transform(const SpectralField& f, double* max_imag = nullptr);

/// Single-component transforms on raw arrays, used by the solver's hot loop.
void forward_component(const WavenumberLattice& lat, const std::vector<double>& phys,
                       std::vector<Complex>& coeffs);
void inverse_component(const WavenumberLattice& lat, const std::vector<Complex>& coeffs,
                       std::vector<double>& phys, double* max_imag = nullptr);

/// Number of threads the FFT backend uses. Defaults to 1; the HN_THREADS
/// environment variable (positive integer) raises the cap. Plans are created
/// once per lattice size and cached.
int transform_thread_count();

} // namespace hns
