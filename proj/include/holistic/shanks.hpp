#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

namespace holistic {

struct ShanksResult {
    double value = 0;
    int degenerate_cells = 0;  // cells where the transform denominator vanished
};

/// Iterated Shanks transform S(A)_n = (A_{n+1} A_{n-1} - A_n^2) /
/// (A_{n+1} + A_{n-1} - 2 A_n), exact on sequences A + alpha q^n. Each
/// application shortens the sequence by two; the result is the centre value
/// after the requested number of applications. A vanishing denominator makes
/// that cell copy its input and is flagged in the result.
inline ShanksResult shanks(std::vector<double> seq, int iterations) {
    if (iterations < 1) throw std::invalid_argument("shanks: iterations must be >= 1");
    if ((int)seq.size() < 2 * iterations + 1)
        throw std::invalid_argument("shanks: need at least 2*iterations + 1 terms");
    ShanksResult out;
    for (int it = 0; it < iterations; ++it) {
        std::vector<double> next(seq.size() - 2);
        for (std::size_t n = 1; n + 1 < seq.size(); ++n) {
            const double den = seq[n + 1] + seq[n - 1] - 2 * seq[n];
            if (den == 0.0 || !std::isfinite(den)) {
                next[n - 1] = seq[n];
                ++out.degenerate_cells;
            } else {
                next[n - 1] = (seq[n + 1] * seq[n - 1] - seq[n] * seq[n]) / den;
            }
        }
        seq = std::move(next);
    }
    out.value = seq[seq.size() / 2];
    return out;
}

}  // namespace holistic
