#pragma once

namespace hns::detail {

/// Compensated (Kahan) accumulator. Fixed-order summation keeps the big
/// lattice reductions both accurate (the 1e-12 Plancherel tolerances) and
/// bitwise reproducible.
struct KahanSum {
    double sum = 0.0;
    double carry = 0.0;

    void add(double x) {
        const double y = x - carry;
        const double t = sum + y;
        carry = (t - sum) - y;
        sum = t;
    }
    double value() const { return sum; }
};

} // namespace hns::detail
