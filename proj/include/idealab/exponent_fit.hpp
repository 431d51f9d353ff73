#pragma once

#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace idealab {

// Error-term exponents for a degree-n field collected for comparison runs:
//   landau    1 - 2/(n+1)
//   lao       1 - 3/(n+6)
//   withdrawn 1 - 4/(2n+1)      (the retracted bound)
//   lambda_n  3/4 - 3/(2n) for 2 <= n <= 6, 1 - 3/n for n >= 6
//   theorem   1 - 3/n, defined only for n >= 6
// Both lambda branches give 1/2 at n = 6.
struct ReferenceExponents {
    int n = 0;
    double landau = 0;
    double lao = 0;
    double withdrawn = 0;
    double lambda_n = 0;
    std::optional<double> theorem;
};

double lambda_low_branch(int n);  // 3/4 - 3/(2n)
double lambda_high_branch(int n); // 1 - 3/n

ReferenceExponents reference_exponents(int n); // n >= 2

// Least-squares fit of log|residual| against log x.  Residuals below the
// floor are dropped (log of a near-cancellation carries no exponent
// information); at least 8 points must survive and fewer than half may be
// dropped.
struct FitReport {
    std::vector<std::pair<double, double>> pairs; // (x, |residual|) actually fitted
    double fitted_theta = 0;
    double stderr_theta = 0;
    size_t dropped_points = 0;
};

FitReport fit_exponent(std::span<const std::pair<double, double>> series, double floor = 1e-9);

} // namespace idealab
