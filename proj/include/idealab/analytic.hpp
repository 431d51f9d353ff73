#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "idealab/number_field.hpp"
#include "idealab/sieve.hpp"

namespace idealab {

// E_1(X) = int_X^inf e^{-t}/t dt for X > 0; absolute error <= 1e-12.
// Convergent series for X <= 1, modified-Lentz continued fraction beyond.
double exp_integral_E1(double X);

// Series branch / continued-fraction branch exposed for the crossover test.
double exp_integral_E1_series(double X);
double exp_integral_E1_contfrac(double X);

// --- weighted sums over an r_K table ---

// sum_{m<=x} r(m)
double plain_sum(const RkTable& T, double x);

// (1/x) int_1^x (sum_{m<=t} r(m)) dt  =  (1/x) sum_{m<=x} r(m) (x - m),
// exact piecewise evaluation of the step-function integral.
double cesaro_mean(const RkTable& T, double x);

// sum_{m<=x} r(m) log(x/m)
double log_weighted_sum(const RkTable& T, double x);

// sum_{m<=x/e} r(m) log log(x/m); the boundary term m = x/e carries
// weight 0 and is included.
double loglog_weighted_sum(const RkTable& T, double x);

// --- kappa (residue of zeta_K at 1) estimators ---

struct KappaEstimate {
    double value = 0;
    enum class Method { closed_form, grid_fit } method = Method::closed_form;
    double uncertainty = 0;
};

// Quadratic catalog fields only: kappa = L(1, chi_D).  D = -4 is summed by
// the accelerated alternating (Leibniz) series; other fundamental D by
// period blocks with a tail bound.
KappaEstimate kappa_closed_form(const NumberField& K);

// Ordinary least-squares slope of plain_sum(x) against x over the grid
// (>= 8 points); uncertainty is the standard error of the slope.
KappaEstimate kappa_grid_fit(const RkTable& T, std::span<const double> x_grid);

// --- exact identity checkers ---

// Relative residual of the partial-summation identity
//   sum_{m<=x/e} r(m) loglog(x/m)
//     = sum_{m<=x/e} r(m) log(x/(e m))
//       - int_1^{x/e} (sum_{m<=t} r(m) log(t/m)) / (t log^2(x/t)) dt,
// which holds for every coefficient sequence; the residual is pure
// quadrature error.  The integrand is smooth between consecutive integers,
// so the integral is refined per unit interval.
double check_partial_summation_identity(const RkTable& T, double x, double quad_tol = 1e-10);

// Cross-table variant: the left-hand sum reads table A, everything on the
// right reads table B.  Zero residual certifies that the two tables agree
// on the weighted functionals; used by the check command against a fresh
// re-sieve.
double check_partial_summation_identity(const RkTable& A, const RkTable& B, double x,
                                         double quad_tol = 1e-10);

// Absolute residual of
//   int_1^{log x} e^{-u}/u^2 du = e^{-1} - E_1(1) + E_1(log x) - 1/(x log x)
// for x >= e^2.
double check_e1_identity(double x, double quad_tol = 1e-12);

// --- report over a grid point ---

struct WeightedSumReport {
    double x = 0;
    double plain = 0;
    double cesaro = 0;       // (1/x) int_1^x sum_{m<=t} r(m) dt
    double log_sum = 0;
    double loglog_sum = 0;
    double kappa = 0;
    double residual_plain = 0;   // plain - kappa x
    double residual_cesaro = 0;  // cesaro - kappa x / 2
    double residual_log = 0;     // log_sum - kappa x
    double residual_loglog = 0;  // loglog_sum - E_1(1) kappa x
};

WeightedSumReport make_report(const RkTable& T, double x, double kappa);

// CSV columns: x, plain_sum, cesaro_mean, log_sum, loglog_sum, kappa,
// residual_plain, residual_cesaro, residual_log, residual_loglog.
void write_reports_csv(std::span<const WeightedSumReport> reports, std::ostream& out);

} // namespace idealab
