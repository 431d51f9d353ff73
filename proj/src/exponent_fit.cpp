#include "idealab/exponent_fit.hpp"

#include <cmath>
#include <stdexcept>

namespace idealab {

double lambda_low_branch(int n) { return 0.75 - 1.5 / n; }
double lambda_high_branch(int n) { return 1.0 - 3.0 / n; }

ReferenceExponents reference_exponents(int n) {
    if (n < 2) throw std::invalid_argument("reference_exponents: n must be >= 2");
    ReferenceExponents r;
    r.n = n;
    r.landau = 1.0 - 2.0 / (n + 1);
    r.lao = 1.0 - 3.0 / (n + 6);
    r.withdrawn = 1.0 - 4.0 / (2.0 * n + 1.0);
    r.lambda_n = n <= 6 ? lambda_low_branch(n) : lambda_high_branch(n);
    if (n >= 6) r.theorem = lambda_high_branch(n);
    return r;
}

FitReport fit_exponent(std::span<const std::pair<double, double>> series, double floor) {
    FitReport rep;
    for (const auto& [x, res] : series) {
        if (!(x > 0)) throw std::invalid_argument("fit_exponent: x values must be positive");
        const double a = std::abs(res);
        if (a < floor) {
            ++rep.dropped_points;
            continue;
        }
        rep.pairs.emplace_back(x, a);
    }
    if (rep.pairs.size() < 8)
        throw std::invalid_argument("fit_exponent: fewer than 8 points above the floor");
    if (rep.dropped_points * 2 >= series.size())
        throw std::invalid_argument("fit_exponent: more than half the grid dropped");

    const size_t n = rep.pairs.size();
    double mx = 0, my = 0;
    for (const auto& [x, r] : rep.pairs) {
        mx += std::log(x);
        my += std::log(r);
    }
    mx /= n;
    my /= n;
    double sxx = 0, sxy = 0;
    for (const auto& [x, r] : rep.pairs) {
        const double dx = std::log(x) - mx;
        sxx += dx * dx;
        sxy += dx * (std::log(r) - my);
    }
    if (!(sxx > 0)) throw std::invalid_argument("fit_exponent: degenerate x grid");
    rep.fitted_theta = sxy / sxx;
    const double b0 = my - rep.fitted_theta * mx;
    double rss = 0;
    for (const auto& [x, r] : rep.pairs) {
        const double d = std::log(r) - (b0 + rep.fitted_theta * std::log(x));
        rss += d * d;
    }
    rep.stderr_theta = n > 2 ? std::sqrt(rss / static_cast<double>(n - 2) / sxx) : 0.0;
    return rep;
}

} // namespace idealab
