#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <string>

namespace idealab {

// Coefficient generators for the bilinear sum
//   S = sum_{M<m<=M1} a_m sum_{N<n<=N1} b_n e(X (m/M)^alpha (n/N)^beta).
// conjugate_phase sets a_m = e(-X (m/M)^alpha (n0/N)^beta) for a designated
// inner index n0, which turns every summand of the n = n0 column into 1.
enum class CoeffGen { constant_one, random_unimodular, conjugate_phase };

struct ExpSumSpec {
    double X = 1.0;
    uint64_t M = 1, M1 = 2;
    uint64_t N = 1, N1 = 2;
    double alpha = 3.0, beta = 1.0;
    CoeffGen a_gen = CoeffGen::constant_one;
    CoeffGen b_gen = CoeffGen::constant_one;
    uint64_t seed = 1;
    uint64_t n0 = 0; // designated index for conjugate_phase, must lie in (N, N1]

    void validate() const; // throws std::invalid_argument on any violation
    uint64_t term_count() const { return (M1 - M) * (N1 - N); }
};

// Evaluation work bound: |S| costs one complex exponential per term.
constexpr uint64_t kExpSumWorkBound = 1'000'000'000ULL;

struct BoundReport {
    double X = 0;
    uint64_t M = 0, N = 0;
    double lhs_abs = 0;
    std::array<double, 5> rhs_terms{}; // (XM^5N^7)^{1/8}, N(X^-2 M^11)^{1/12},
                                       // (X^-3 M^21 N^23)^{1/24}, M^{3/4} N, X^{-1/4} M N
    double rhs_total = 0;
    double epsilon_used = 0;
    double violation_ratio = 0; // lhs_abs / ((MN)^eps * rhs_total)
};

// Compensated double sum; phases are reduced mod 1 before evaluating
// e(x) = exp(2 pi i x).  Deterministic for fixed spec: fixed 4096-element
// m-blocks evaluated independently (in parallel when threads > 1) and
// combined in block order.
std::complex<double> evaluate_bilinear_sum(const ExpSumSpec& spec, int threads = 1);

// Plain serial double loop kept as the reference kernel for testing and
// benchmarking; optionally skips the mod-1 phase reduction.
std::complex<double> evaluate_bilinear_sum_reference(const ExpSumSpec& spec, bool reduce_phase = true);

// Evaluates |S| and the five-term bound the sum was once claimed to obey.
BoundReport claimed_rhs(const ExpSumSpec& spec, double eps, int threads = 1);

// Conjugate-phase construction at X = M, alpha = 3/2, beta = 1, N = 1,
// N1 = 2, n0 = 2: every summand equals 1, so |S| = M1 - M = M, which
// outgrows the claimed bound like M^{1/4}.
BoundReport counterexample_driver(uint64_t M, double eps, int threads = 1);

std::string bound_report_json(const BoundReport& r);

} // namespace idealab
