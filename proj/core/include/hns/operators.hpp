#pragma once

#include <functional>

#include "hns/spectral_field.hpp"

namespace hns {

struct DissipationSymbol;

/// Leray projection onto divergence-free fields:
/// P f_hat(xi) = f_hat(xi) - xi (xi . f_hat(xi)) / |xi|^2, xi = 0 passed
/// through. Idempotent; annihilates gradients.
SpectralField leray_project(const SpectralField& f);

/// Apply a radial Fourier multiplier: coeff(xi) *= m(|xi|). Throws
/// std::domain_error if the symbol returns a negative or non-finite value
/// on a lattice wavenumber. Preserves Hermitian symmetry and the
/// divergence-free flag.
SpectralField apply_multiplier(const std::function<double(double)>& m, const SpectralField& f);
SpectralField apply_multiplier(const DissipationSymbol& m, const SpectralField& f);

/// Sharp low-pass projection P_{<=N}: keeps modes with |xi| <= N (inclusive).
SpectralField lp_low(double N, const SpectralField& f);

/// Sharp high-pass projection P_{>N}: keeps modes with |xi| > N.
/// lp_low(N,f) + lp_high(N,f) == f exactly.
SpectralField lp_high(double N, const SpectralField& f);

} // namespace hns
