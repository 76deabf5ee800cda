#pragma once

namespace eprweyl {

/// Outcome of a tolerance-gated comparison: pass and the worst deviation seen.
struct CheckResult {
    bool pass = true;
    double deviation = 0.0;

    void absorb(double dev, double tol) {
        if (dev > deviation) deviation = dev;
        if (!(dev <= tol)) pass = false;
    }
};

} // namespace eprweyl
