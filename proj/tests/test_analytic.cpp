#include <doctest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "idealab/analytic.hpp"
#include "oracles.hpp"

using namespace idealab;

namespace {

RkTable table_from(std::vector<uint32_t> values, std::string label = "synthetic") {
    RkTable t;
    t.field_label = std::move(label);
    t.x_max = values.size();
    t.values.assign(1, 0);
    t.values.insert(t.values.end(), values.begin(), values.end());
    return t;
}

RkTable random_table(uint64_t n, uint64_t seed, uint32_t bound = 100) {
    std::mt19937_64 rng(seed);
    std::vector<uint32_t> v(n);
    for (auto& x : v) x = static_cast<uint32_t>(rng() % bound);
    return table_from(std::move(v), "random");
}

} // namespace

TEST_SUITE_BEGIN("analytic");

TEST_CASE("E1 at the crossover and against the quadrature oracle") {
    const double frozen = 0.21938393439552027; // adaptive-quadrature value of int_1^inf e^-t/t
    CHECK(std::abs(exp_integral_E1(1.0) - frozen) <= 1e-12);
    CHECK(std::abs(oracles::e1_quadrature(1.0) - frozen) <= 1e-12);
    CHECK(std::abs(exp_integral_E1_series(1.0) - exp_integral_E1_contfrac(1.0)) <= 1e-12);

    for (double X : {0.01, 0.1, 0.5, 0.9, 1.5, 3.0, 7.0, 13.0}) {
        CHECK(std::abs(exp_integral_E1(X) - oracles::e1_quadrature(X)) <= 1e-12);
    }
    CHECK_THROWS_AS(exp_integral_E1(0.0), std::invalid_argument);
    CHECK_THROWS_AS(exp_integral_E1(-1.0), std::invalid_argument);
}

TEST_CASE("E1 sandwich bounds hold strictly on a 50-point log grid") {
    for (int i = 0; i < 50; ++i) {
        const double x = std::pow(10.0, 1.0 + 7.0 * i / 49.0); // [10, 1e8]
        const double E = exp_integral_E1(std::log(x));
        CHECK(1.0 / (x * std::log(M_E * x)) < E);
        CHECK(E < 1.0 / (x * std::log(x)));
    }
    // large argument: e^-X/(X+1) < E1(X) < e^-X/X
    const double E50 = exp_integral_E1(50.0);
    CHECK(std::exp(-50.0) / 51.0 < E50);
    CHECK(E50 < std::exp(-50.0) / 50.0);
}

TEST_CASE("cesaro_mean: hand expansion, boundary, quadrature oracle") {
    // the weight x - m vanishes at m = x
    RkTable hand = table_from({1, 1, 1, 1, 2});
    CHECK(cesaro_mean(hand, 5.0) == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(cesaro_mean(hand, 1.0) == 0.0);

    RkTable qi = sieve_rk(*catalog_find("Q(i)"), 10);
    CHECK(cesaro_mean(qi, 5.0) == doctest::Approx(1.6).epsilon(1e-15));

    // independent evaluation: integrate the step function S(t) piecewise,
    // int_1^10 S(t) dt = sum_{m=1}^{9} S(m)
    RkTable r = random_table(10, 321);
    const double x = 10.0;
    double build = 0, S = 0;
    for (uint64_t m = 1; m < 10; ++m) {
        S += r.values[m];
        build += S;
    }
    CHECK(cesaro_mean(r, x) == doctest::Approx(build / x).epsilon(1e-12));

    CHECK_THROWS_AS(cesaro_mean(r, 11.0), std::invalid_argument);
}

TEST_CASE("log_weighted_sum: hand values, boundary, derivative consistency") {
    RkTable ones = table_from({1, 1, 1, 1});
    const double hand = std::log(4.0) + std::log(2.0) + std::log(4.0 / 3.0);
    CHECK(log_weighted_sum(ones, 4.0) == doctest::Approx(hand).epsilon(1e-15));
    CHECK(hand == doctest::Approx(2.36712).epsilon(1e-5));

    RkTable qi = sieve_rk(*catalog_find("Q(i)"), 1000);
    CHECK(log_weighted_sum(qi, 4.0) ==
          doctest::Approx(std::log(4.0) + std::log(2.0)).epsilon(1e-15)); // r(3) = 0
    CHECK(log_weighted_sum(qi, 1.0) == 0.0);
    CHECK_THROWS_AS(log_weighted_sum(qi, 0.5), std::invalid_argument);

    // d/dx sum r(m) log(x/m) = plain_sum(x)/x between integers
    for (double x : {500.5, 700.25, 999.5}) {
        const double h = 1e-3;
        const double fd = (log_weighted_sum(qi, x + h) - log_weighted_sum(qi, x - h)) / (2 * h);
        CHECK(fd == doctest::Approx(plain_sum(qi, x) / x).epsilon(1e-7));
    }
}

TEST_CASE("loglog_weighted_sum: single term, boundary, asymptotic ratio") {
    RkTable qi = sieve_rk(*catalog_find("Q(i)"), 100000);
    // x = 2e: only m = 1 contributes weight, m = 2 sits at weight zero
    CHECK(loglog_weighted_sum(qi, 2.0 * M_E) ==
          doctest::Approx(std::log(std::log(2.0 * M_E))).epsilon(1e-15));
    CHECK(std::log(std::log(2.0 * M_E)) == doctest::Approx(0.5265890341).epsilon(1e-9));
    CHECK(loglog_weighted_sum(qi, M_E) == 0.0);
    CHECK_THROWS_AS(loglog_weighted_sum(qi, 2.0), std::invalid_argument);

    const double kappa = M_PI / 4.0;
    const double e1 = exp_integral_E1(1.0);
    const double x = 1e5;
    CHECK(std::abs(loglog_weighted_sum(qi, x) / (kappa * x) - e1) <= 0.01 * e1);
}

TEST_CASE("kappa closed form: Q(i) and Q(sqrt5)") {
    KappaEstimate qi = kappa_closed_form(*catalog_find("Q(i)"));
    CHECK(qi.method == KappaEstimate::Method::closed_form);
    CHECK(std::abs(qi.value - 0.7853981633974483) <= 1e-12);
    CHECK(qi.uncertainty <= 1e-10);

    KappaEstimate q5 = kappa_closed_form(*catalog_find("Q(sqrt5)"));
    const double phi = (1.0 + std::sqrt(5.0)) / 2.0;
    const double exact = 2.0 / std::sqrt(5.0) * std::log(phi); // L(1, chi_5)
    CHECK(std::abs(q5.value - exact) <= 10 * q5.uncertainty);
    CHECK(q5.uncertainty <= 1e-9);

    CHECK_THROWS_AS(kappa_closed_form(*catalog_find("Q(zeta7)")), std::invalid_argument);
    CHECK_THROWS_AS(kappa_closed_form(*catalog_find("Q(zeta5)")), std::invalid_argument);
}

TEST_CASE("kappa grid fit: catalog and synthetic tables") {
    RkTable qi = sieve_rk(*catalog_find("Q(i)"), 1 << 20, {.threads = 2});
    std::vector<double> grid;
    for (int k = 0; k <= 9; ++k) grid.push_back(1e3 * std::pow(2.0, k));
    KappaEstimate fit = kappa_grid_fit(qi, grid);
    CHECK(fit.method == KappaEstimate::Method::grid_fit);
    CHECK(std::abs(fit.value - M_PI / 4.0) <= 0.01);
    CHECK(std::abs(fit.value - M_PI / 4.0) <= 3.0 * fit.uncertainty);

    // r = 1 identically: plain_sum(x) = floor(x), slope 1
    RkTable ones = table_from(std::vector<uint32_t>(200000, 1), "ones");
    std::vector<double> g2;
    for (int k = 0; k <= 9; ++k) g2.push_back(200.0 * std::pow(2.0, k));
    KappaEstimate one_fit = kappa_grid_fit(ones, g2);
    CHECK(std::abs(one_fit.value - 1.0) <= 1e-9);
    CHECK(one_fit.uncertainty <= 1e-9);

    // cross-check closed form within 0.5%
    RkTable q5 = sieve_rk(*catalog_find("Q(sqrt5)"), 1 << 20, {.threads = 2});
    KappaEstimate q5fit = kappa_grid_fit(q5, grid);
    KappaEstimate q5closed = kappa_closed_form(*catalog_find("Q(sqrt5)"));
    CHECK(std::abs(q5fit.value - q5closed.value) <= 0.005 * q5closed.value);

    std::vector<double> tiny(grid.begin(), grid.begin() + 5);
    CHECK_THROWS_AS(kappa_grid_fit(qi, tiny), std::invalid_argument);
    std::vector<double> degenerate(10, 5000.0);
    CHECK_THROWS_AS(kappa_grid_fit(qi, degenerate), std::invalid_argument);
}

TEST_CASE("grid-fit stability for zeta7 under a 1.5x grid shift") {
    RkTable z7 = sieve_rk(*catalog_find("Q(zeta7)"), 1 << 20, {.threads = 2});
    std::vector<double> grid, shifted;
    for (int k = 0; k <= 9; ++k) {
        grid.push_back(1e3 * std::pow(2.0, k));
        shifted.push_back(1.5 * 1e3 * std::pow(2.0, k)); // still <= x_max
    }
    KappaEstimate a = kappa_grid_fit(z7, grid);
    KappaEstimate b = kappa_grid_fit(z7, shifted);
    CHECK(a.value > 0);
    CHECK(std::abs(b.value - a.value) <= 0.02 * a.value);
}

TEST_CASE("partial-summation identity: catalog, random, zero sequences") {
    RkTable qi = sieve_rk(*catalog_find("Q(i)"), 1000);
    CHECK(check_partial_summation_identity(qi, 1000.0) <= 1e-8);
    CHECK(check_partial_summation_identity(qi, 100.0) <= 1e-8);

    for (uint64_t s = 1; s <= 20; ++s) {
        RkTable r = random_table(50, s);
        CHECK(check_partial_summation_identity(r, 100.0) <= 1e-8);
    }

    RkTable zero = table_from(std::vector<uint32_t>(50, 0), "zero");
    CHECK(check_partial_summation_identity(zero, 100.0) == 0.0);

    for (const NumberField& K : builtin_catalog()) {
        RkTable t = sieve_rk(K, 400);
        CHECK(check_partial_summation_identity(t, 400.0) <= 1e-8);
    }

    CHECK_THROWS_AS(check_partial_summation_identity(qi, 2.0), std::invalid_argument);
    CHECK_THROWS_AS(check_partial_summation_identity(qi, 1000.0 * M_E * 1.01),
                    std::invalid_argument);
}

TEST_CASE("cross-table identity detects a corrupted entry") {
    RkTable fresh = sieve_rk(*catalog_find("Q(i)"), 1000);
    RkTable stored = fresh;
    CHECK(check_partial_summation_identity(stored, fresh, 1000.0) <= 1e-8);
    stored.values[50] += 1;
    CHECK(check_partial_summation_identity(stored, fresh, 1000.0) > 1e-6);
}

TEST_CASE("E1 integration-by-parts identity") {
    CHECK(check_e1_identity(10.0) <= 1e-10);
    CHECK(check_e1_identity(1e3) <= 1e-10);
    CHECK(check_e1_identity(1e6) <= 1e-10);
    CHECK(check_e1_identity(M_E * M_E) <= 1e-10); // smallest admissible point
    CHECK_THROWS_AS(check_e1_identity(5.0), std::invalid_argument);
}

TEST_CASE("weighted-sum report invariants and CSV layout") {
    RkTable qi = sieve_rk(*catalog_find("Q(i)"), 10000);
    const double kappa = M_PI / 4.0;
    std::vector<WeightedSumReport> reports;
    for (double x : {10.0, 100.0, 1000.0, 9999.5}) {
        WeightedSumReport r = make_report(qi, x, kappa);
        CHECK(r.plain >= r.cesaro);
        CHECK(r.log_sum <= r.plain * std::log(x) + 1e-9);
        CHECK(r.loglog_sum <= r.plain * std::log(std::log(x)) + 1e-9);
        CHECK(r.residual_plain == doctest::Approx(r.plain - kappa * x));
        CHECK(r.residual_cesaro == doctest::Approx(r.cesaro - kappa * x / 2));
        reports.push_back(r);
    }
    std::ostringstream csv;
    write_reports_csv(reports, csv);
    std::string first_line = csv.str().substr(0, csv.str().find('\n'));
    CHECK(first_line ==
          "x,plain_sum,cesaro_mean,log_sum,loglog_sum,kappa,"
          "residual_plain,residual_cesaro,residual_log,residual_loglog");
    CHECK_THROWS_AS(make_report(qi, 2.0, kappa), std::invalid_argument);
}

TEST_SUITE_END();
