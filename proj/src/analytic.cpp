#include "idealab/analytic.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>

#include "idealab/quadrature.hpp"

namespace idealab {

namespace {

constexpr double kEulerGamma = 0.57721566490153286060651209008240243104;

double require_table_x(const RkTable& T, double x, double lo) {
    if (!(x >= lo)) throw std::invalid_argument("x below admissible range");
    if (!(x <= static_cast<double>(T.x_max)))
        throw std::invalid_argument("x exceeds table range x_max=" + std::to_string(T.x_max));
    return x;
}

} // namespace

double exp_integral_E1_series(double X) {
    // E1(x) = -gamma - ln x + sum_{k>=1} (-1)^(k+1) x^k / (k k!)
    double sum = 0.0, pk = 1.0;
    for (int k = 1; k <= 64; ++k) {
        pk *= X / k;
        double term = pk / k;
        sum += (k % 2 == 1) ? term : -term;
        if (term < 1e-18 * (1.0 + std::abs(sum))) break;
    }
    return -kEulerGamma - std::log(X) + sum;
}

double exp_integral_E1_contfrac(double X) {
    // Modified Lentz evaluation of e^{-x}/(x+1- 1/(x+3- 4/(x+5- 9/(...))))
    const double tiny = 1e-300;
    double b = X + 1.0;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i <= 400; ++i) {
        const double a = -static_cast<double>(i) * i;
        b += 2.0;
        d = 1.0 / (a * d + b);
        c = b + a / c;
        const double del = c * d;
        h *= del;
        if (std::abs(del - 1.0) < 1e-16) break;
    }
    return h * std::exp(-X);
}

double exp_integral_E1(double X) {
    if (!(X > 0)) throw std::invalid_argument("exp_integral_E1: X must be > 0");
    return X <= 1.0 ? exp_integral_E1_series(X) : exp_integral_E1_contfrac(X);
}

double plain_sum(const RkTable& T, double x) {
    require_table_x(T, x, 1.0);
    const uint64_t mx = static_cast<uint64_t>(x);
    neumaier_sum acc;
    for (uint64_t m = 1; m <= mx; ++m) acc.add(T.values[m]);
    return acc.value();
}

double cesaro_mean(const RkTable& T, double x) {
    require_table_x(T, x, 1.0);
    const uint64_t mx = static_cast<uint64_t>(x);
    neumaier_sum acc;
    for (uint64_t m = 1; m <= mx; ++m)
        acc.add(static_cast<double>(T.values[m]) * (x - static_cast<double>(m)));
    return acc.value() / x;
}

double log_weighted_sum(const RkTable& T, double x) {
    if (x < 1.0) throw std::invalid_argument("log_weighted_sum: x must be >= 1");
    require_table_x(T, x, 1.0);
    const uint64_t mx = static_cast<uint64_t>(x);
    neumaier_sum acc;
    for (uint64_t m = 1; m <= mx; ++m) {
        if (T.values[m] == 0) continue;
        acc.add(static_cast<double>(T.values[m]) * std::log(x / static_cast<double>(m)));
    }
    return acc.value();
}

double loglog_weighted_sum(const RkTable& T, double x) {
    if (x < M_E * (1.0 - 1e-15)) throw std::invalid_argument("loglog_weighted_sum: x must be >= e");
    const double y = x / M_E;
    if (y > static_cast<double>(T.x_max) * (1.0 + 1e-15))
        throw std::invalid_argument("loglog_weighted_sum: x/e exceeds table range");
    const uint64_t mx = std::min(static_cast<uint64_t>(y), T.x_max);
    neumaier_sum acc;
    for (uint64_t m = 1; m <= mx; ++m) {
        if (T.values[m] == 0) continue;
        const double w = std::log(std::log(x / static_cast<double>(m)));
        acc.add(static_cast<double>(T.values[m]) * w);
    }
    return acc.value();
}

namespace {

// Cohen-Rodriguez Villegas-Zagier acceleration of sum (-1)^k a_k.
double accelerate_alternating(const std::vector<double>& a) {
    const int n = static_cast<int>(a.size());
    double d = std::pow(3.0 + std::sqrt(8.0), n);
    d = 0.5 * (d + 1.0 / d);
    double b = -1.0, c = -d, s = 0.0;
    for (int k = 0; k < n; ++k) {
        c = b - c;
        s += c * a[k];
        b *= (k + n) * (k - n) / ((k + 0.5) * (k + 1.0));
    }
    return s / d;
}

} // namespace

KappaEstimate kappa_closed_form(const NumberField& K) {
    if (K.degree != 2)
        throw std::invalid_argument("kappa_closed_form: only quadratic catalog fields are supported");
    if (!K.poly_disc.fits_slong_p())
        throw std::invalid_argument("kappa_closed_form: discriminant out of range");
    const int64_t D = K.poly_disc.get_si();
    if (!is_fundamental_discriminant(D))
        throw std::invalid_argument("kappa_closed_form: polynomial discriminant is not fundamental");

    KappaEstimate est;
    est.method = KappaEstimate::Method::closed_form;
    if (D == -4) {
        // Leibniz series 1 - 1/3 + 1/5 - ... accelerated
        std::vector<double> a(48);
        for (size_t k = 0; k < a.size(); ++k) a[k] = 1.0 / (2.0 * k + 1.0);
        est.value = accelerate_alternating(a);
        est.uncertainty = 1e-13;
        return est;
    }
    // L(1, chi_D) by full-period blocks; the block mean cancellation makes
    // the block sums O(j^-2) or better, with a conservative tail bound.
    const uint64_t q = static_cast<uint64_t>(D < 0 ? -D : D);
    std::vector<int> chi(q + 1);
    for (uint64_t a = 1; a <= q; ++a) chi[a] = kronecker_symbol(D, a);
    neumaier_sum acc;
    double last_block = 0.0;
    uint64_t j = 0;
    const uint64_t j_max = 4'000'000;
    for (; j < j_max; ++j) {
        double block = 0.0;
        for (uint64_t a = 1; a <= q; ++a) {
            if (chi[a] == 0) continue;
            block += chi[a] / static_cast<double>(j * q + a);
        }
        acc.add(block);
        last_block = std::abs(block);
        if (j >= 64 && last_block < 1e-16) break;
    }
    est.value = acc.value();
    est.uncertainty = std::max(last_block * static_cast<double>(j + 1) * 2.0, 1e-15);
    if (!(est.value > 0)) throw std::logic_error("kappa_closed_form: nonpositive estimate");
    return est;
}

KappaEstimate kappa_grid_fit(const RkTable& T, std::span<const double> x_grid) {
    const size_t n = x_grid.size();
    if (n < 8) throw std::invalid_argument("kappa_grid_fit: grid must have at least 8 points");
    std::vector<double> ys(n);
    double mean_x = 0, mean_y = 0;
    for (size_t i = 0; i < n; ++i) {
        ys[i] = plain_sum(T, x_grid[i]);
        mean_x += x_grid[i];
        mean_y += ys[i];
    }
    mean_x /= n;
    mean_y /= n;
    double sxx = 0, sxy = 0;
    for (size_t i = 0; i < n; ++i) {
        sxx += (x_grid[i] - mean_x) * (x_grid[i] - mean_x);
        sxy += (x_grid[i] - mean_x) * (ys[i] - mean_y);
    }
    if (!(sxx > 0)) throw std::invalid_argument("kappa_grid_fit: degenerate grid");
    const double slope = sxy / sxx;
    const double intercept = mean_y - slope * mean_x;
    double rss = 0;
    for (size_t i = 0; i < n; ++i) {
        const double r = ys[i] - (intercept + slope * x_grid[i]);
        rss += r * r;
    }
    KappaEstimate est;
    est.method = KappaEstimate::Method::grid_fit;
    est.value = slope;
    est.uncertainty = std::sqrt(rss / static_cast<double>(n - 2) / sxx);
    return est;
}

namespace {

// Prefix data for sum_{m<=t} r(m) log(t/m) = S(floor t) log t - W(floor t).
struct LogSumPrefix {
    std::vector<double> S; // S[k] = sum_{m<=k} r(m)
    std::vector<double> W; // W[k] = sum_{m<=k} r(m) log m

    explicit LogSumPrefix(const RkTable& T, uint64_t up_to) {
        S.resize(up_to + 1, 0.0);
        W.resize(up_to + 1, 0.0);
        neumaier_sum ws;
        double s = 0;
        for (uint64_t m = 1; m <= up_to; ++m) {
            s += T.values[m];
            ws.add(static_cast<double>(T.values[m]) * std::log(static_cast<double>(m)));
            S[m] = s;
            W[m] = ws.value();
        }
    }

    double eval(double t) const {
        const uint64_t k = std::min(static_cast<uint64_t>(t), static_cast<uint64_t>(S.size() - 1));
        if (k < 1) return 0.0;
        return S[k] * std::log(t) - W[k];
    }
};

} // namespace

double check_partial_summation_identity(const RkTable& A, const RkTable& B, double x, double quad_tol) {
    if (x < M_E * (1.0 - 1e-15))
        throw std::invalid_argument("check_partial_summation_identity: x must be >= e");
    const double y = x / M_E;
    if (y > static_cast<double>(A.x_max) * (1.0 + 1e-15) ||
        y > static_cast<double>(B.x_max) * (1.0 + 1e-15))
        throw std::invalid_argument("check_partial_summation_identity: x/e exceeds table range");

    const double lhs = loglog_weighted_sum(A, x);

    const uint64_t my = std::min(static_cast<uint64_t>(y), B.x_max);
    neumaier_sum s1;
    for (uint64_t m = 1; m <= my; ++m) {
        if (B.values[m] == 0) continue;
        s1.add(static_cast<double>(B.values[m]) * (std::log(x / static_cast<double>(m)) - 1.0));
    }

    LogSumPrefix prefix(B, my);
    auto integrand = [&](double t) {
        const double lg = std::log(x / t);
        return prefix.eval(t) / (t * lg * lg);
    };
    neumaier_sum integral;
    for (uint64_t k = 1; static_cast<double>(k) < y; ++k) {
        const double a = static_cast<double>(k);
        const double b = std::min(a + 1.0, y);
        integral.add(integrate_adaptive(integrand, a, b, quad_tol));
    }
    const double rhs = s1.value() - integral.value();
    return std::abs(lhs - rhs) / std::max(1.0, std::abs(lhs));
}

double check_partial_summation_identity(const RkTable& T, double x, double quad_tol) {
    return check_partial_summation_identity(T, T, x, quad_tol);
}

double check_e1_identity(double x, double quad_tol) {
    if (x < M_E * M_E * (1.0 - 1e-15))
        throw std::invalid_argument("check_e1_identity: x must be >= e^2");
    const double L = std::log(x);
    const double lhs =
        integrate_adaptive([](double u) { return std::exp(-u) / (u * u); }, 1.0, L, quad_tol);
    const double rhs = std::exp(-1.0) - exp_integral_E1(1.0) + exp_integral_E1(L) - 1.0 / (x * L);
    return std::abs(lhs - rhs);
}

WeightedSumReport make_report(const RkTable& T, double x, double kappa) {
    if (x < M_E * (1.0 - 1e-15)) throw std::invalid_argument("make_report: x must be >= e");
    require_table_x(T, x, 1.0);
    WeightedSumReport r;
    r.x = x;
    r.kappa = kappa;
    r.plain = plain_sum(T, x);
    r.cesaro = cesaro_mean(T, x);
    r.log_sum = log_weighted_sum(T, x);
    r.loglog_sum = loglog_weighted_sum(T, x);
    const double e1 = exp_integral_E1(1.0);
    r.residual_plain = r.plain - kappa * x;
    r.residual_cesaro = r.cesaro - kappa * x / 2.0;
    r.residual_log = r.log_sum - kappa * x;
    r.residual_loglog = r.loglog_sum - e1 * kappa * x;

    const double slack = 1e-9 * (1.0 + r.plain);
    if (r.cesaro > r.plain + slack || r.log_sum > r.plain * std::log(x) + slack ||
        r.loglog_sum > r.plain * std::max(std::log(std::log(x)), 0.0) + slack)
        throw std::logic_error("make_report: sum ordering invariant violated");
    return r;
}

void write_reports_csv(std::span<const WeightedSumReport> reports, std::ostream& out) {
    out << "x,plain_sum,cesaro_mean,log_sum,loglog_sum,kappa,"
           "residual_plain,residual_cesaro,residual_log,residual_loglog\n";
    char buf[64];
    auto put = [&](double v, char sep) {
        std::snprintf(buf, sizeof buf, "%.17g", v);
        out << buf << sep;
    };
    for (const auto& r : reports) {
        put(r.x, ',');
        put(r.plain, ',');
        put(r.cesaro, ',');
        put(r.log_sum, ',');
        put(r.loglog_sum, ',');
        put(r.kappa, ',');
        put(r.residual_plain, ',');
        put(r.residual_cesaro, ',');
        put(r.residual_log, ',');
        put(r.residual_loglog, '\n');
    }
}

} // namespace idealab
