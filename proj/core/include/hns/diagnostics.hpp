#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <vector>

#include "hns/spectral_field.hpp"
#include "hns/symbols.hpp"

namespace hns {

/// One recorded sample of the run diagnostics. Column order is the on-disk
/// trace schema and must not be reordered.
struct TraceRow {
    double t = 0.0;
    double E = 0.0;        // energy
    double a = 0.0;        // dissipation rate ||D u||^2
    double E_k = 0.0;      // higher Sobolev energy
    double N_sqrt_ratio = 0.0;
    double N_sobolev = 0.0;
    double N_centroid = 0.0;
    double ratio = 0.0;    // empirical differential-inequality ratio
    double spectrum_health = 0.0; // energy fraction in the top third of the resolved band
};

struct EnergyTrace {
    std::vector<TraceRow> rows;

    static const std::array<const char*, 9>& column_names();

    bool empty() const { return rows.empty(); }
    std::size_t size() const { return rows.size(); }
    const TraceRow& front() const { return rows.front(); }
    const TraceRow& back() const { return rows.back(); }
};

/// E = period^d * sum |u_hat|^2 (Plancherel under the mean-per-cell convention).
double energy(const SpectralField& u);

/// a = period^d * sum m(|xi|)^2 |u_hat|^2 = ||D u||^2.
double dissipation_rate(const SpectralField& u, const DissipationSymbol& sym);

/// E_k = period^d * sum (sum_{j<=k} |xi|^{2j}) |u_hat|^2. k in [0, 64].
double higher_energy(const SpectralField& u, int k);

enum class FrequencyEstimator { SqrtRatio, SobolevRatio, Centroid };

/// Frequency-scale estimate of the field. All three estimators return |xi|
/// exactly for a single-mode field; they are generally inequivalent.
/// Throws std::invalid_argument on a zero field.
double frequency_scale(const SpectralField& u, FrequencyEstimator est);

/// Fraction of E carried by modes whose largest axis wavenumber exceeds two
/// thirds of the active (dealiased) band. 0 for a zero field.
double spectrum_health(const SpectralField& u);

/// Integrate samples y(t) over recorded rows. Uniformly spaced rows get
/// 4th-order composite Newton-Cotes (Simpson, with a 3/8 tail for an odd
/// interval count); non-uniform spacing falls back to trapezoid.
double integrate_rows(const std::vector<double>& t, const std::vector<double>& y);

/// |E(t2) - E(t1) + 2*int_{t1}^{t2} a dt| / max(E(t1), eps) over the whole
/// trace segment. Requires >= 2 rows.
double energy_identity_residual(const EnergyTrace& trace, const DissipationSymbol& sym);

struct DissipationBudget {
    double integral = 0.0;  // int_0^T a dt
    double budget = 0.0;    // E(0)/2
    bool satisfied = false; // integral <= budget * (1 + 1e-6)
};

/// Quadrature of the dissipation-rate column against the E(0)/2 budget.
/// Throws std::invalid_argument on an empty trace.
DissipationBudget dissipation_budget(const EnergyTrace& trace);

struct BoundRatioSeries {
    std::vector<double> ratios; // one per forward interval, size rows-1
    double sup = 0.0;           // max ratio (may be negative)
    double sup_positive = 0.0;  // max(0, sup): the empirical constant C
};

/// Empirical differential-inequality ratio per recorded interval:
///   ratio_i = (dE_k/dt)_i / [ g(1+E_k(t_i))^4 * E_k(t_i) * (1 + abar_i) ]
/// with forward differences and abar the trapezoid average of a over the
/// interval (so a constant-C Euler majorant of the rows is exact).
/// Requires >= 2 rows, E_k > 0 on the segment, strictly increasing t.
BoundRatioSeries bound_ratio(const EnergyTrace& trace, const GrowthFunction& g);

} // namespace hns
