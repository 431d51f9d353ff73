#include "idealab/expsum.hpp"

#include <cmath>
#include <cstdio>
#include <random>
#include <stdexcept>
#include <vector>

#include "idealab/util.hpp"

namespace idealab {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

std::complex<double> unit_phase(double w, bool reduce) {
    if (reduce) w -= std::floor(w);
    const double t = kTwoPi * w;
    return {std::cos(t), std::sin(t)};
}

// Outer coefficients a_m for m = M+1..M1, inner b_n for n = N+1..N1.
std::vector<std::complex<double>> make_coeffs(const ExpSumSpec& spec, bool outer, bool reduce) {
    const uint64_t lo = outer ? spec.M : spec.N;
    const uint64_t hi = outer ? spec.M1 : spec.N1;
    const CoeffGen gen = outer ? spec.a_gen : spec.b_gen;
    std::vector<std::complex<double>> c(hi - lo);
    switch (gen) {
    case CoeffGen::constant_one:
        for (auto& z : c) z = 1.0;
        break;
    case CoeffGen::random_unimodular: {
        std::mt19937_64 rng(split_seed(spec.seed, outer ? 0 : 1));
        for (auto& z : c) z = unit_phase(uniform01(rng()), false);
        break;
    }
    case CoeffGen::conjugate_phase: {
        // a_m = e(-X (m/M)^alpha (n0/N)^beta)
        const double vn0 = std::pow(static_cast<double>(spec.n0) / static_cast<double>(spec.N), spec.beta);
        for (uint64_t i = 0; i < c.size(); ++i) {
            const double um =
                std::pow(static_cast<double>(lo + 1 + i) / static_cast<double>(spec.M), spec.alpha);
            c[i] = unit_phase(-spec.X * um * vn0, reduce);
        }
        break;
    }
    }
    return c;
}

struct complex_accumulator {
    neumaier_sum re, im;
    void add(std::complex<double> z) {
        re.add(z.real());
        im.add(z.imag());
    }
    std::complex<double> value() const { return {re.value(), im.value()}; }
};

// Sum over one m-range against the full inner range.
std::complex<double> sum_m_range(const ExpSumSpec& spec, uint64_t m_begin, uint64_t m_end,
                                 const std::vector<std::complex<double>>& a,
                                 const std::vector<std::complex<double>>& b,
                                 const std::vector<double>& vn, bool reduce) {
    complex_accumulator acc;
    for (uint64_t m = m_begin; m < m_end; ++m) {
        const double um = std::pow(static_cast<double>(m) / static_cast<double>(spec.M), spec.alpha);
        complex_accumulator inner;
        for (uint64_t j = 0; j < vn.size(); ++j)
            inner.add(b[j] * unit_phase(spec.X * um * vn[j], reduce));
        acc.add(a[m - spec.M - 1] * inner.value());
    }
    return acc.value();
}

std::complex<double> evaluate_impl(const ExpSumSpec& spec, bool reduce, int threads, bool blocked) {
    spec.validate();
    if (spec.term_count() > kExpSumWorkBound)
        throw contract_error("bilinear sum work bound exceeded: " + std::to_string(spec.term_count()) +
                             " terms > " + std::to_string(kExpSumWorkBound));

    const auto a = make_coeffs(spec, true, reduce);
    const auto b = make_coeffs(spec, false, reduce);
    std::vector<double> vn(spec.N1 - spec.N);
    for (uint64_t j = 0; j < vn.size(); ++j)
        vn[j] = std::pow(static_cast<double>(spec.N + 1 + j) / static_cast<double>(spec.N), spec.beta);

    if (!blocked) return sum_m_range(spec, spec.M + 1, spec.M1 + 1, a, b, vn, reduce);

    // fixed block size, sequential block combine: bit-reproducible for any
    // thread count
    constexpr uint64_t kBlock = 4096;
    const uint64_t m_count = spec.M1 - spec.M;
    const uint64_t nblocks = (m_count + kBlock - 1) / kBlock;
    std::vector<std::complex<double>> partial(nblocks);

#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) num_threads(threads > 1 ? threads : 1) if (threads > 1)
#endif
    for (ptrdiff_t bi = 0; bi < static_cast<ptrdiff_t>(nblocks); ++bi) {
        const uint64_t m_begin = spec.M + 1 + static_cast<uint64_t>(bi) * kBlock;
        const uint64_t m_end = std::min(m_begin + kBlock, spec.M1 + 1);
        partial[bi] = sum_m_range(spec, m_begin, m_end, a, b, vn, reduce);
    }
    complex_accumulator total;
    for (const auto& z : partial) total.add(z);
    return total.value();
}

} // namespace

void ExpSumSpec::validate() const {
    if (!(X >= 1.0)) throw std::invalid_argument("expsum: X must be >= 1");
    if (!(1 <= M && M < M1 && M1 <= 2 * M)) throw std::invalid_argument("expsum: need 1 <= M < M1 <= 2M");
    if (!(1 <= N && N < N1 && N1 <= 2 * N)) throw std::invalid_argument("expsum: need 1 <= N < N1 <= 2N");
    const double nonvanish = (alpha - 1.0) * (alpha - 2.0) * alpha * beta;
    if (nonvanish == 0.0)
        throw std::invalid_argument("expsum: (alpha-1)(alpha-2) alpha beta must be nonzero");
    if (a_gen == CoeffGen::conjugate_phase && !(N < n0 && n0 <= N1))
        throw std::invalid_argument("expsum: conjugate_phase needs n0 in (N, N1]");
    if (b_gen == CoeffGen::conjugate_phase)
        throw std::invalid_argument("expsum: conjugate_phase applies to the outer coefficients only");
}

std::complex<double> evaluate_bilinear_sum(const ExpSumSpec& spec, int threads) {
    return evaluate_impl(spec, true, threads, true);
}

std::complex<double> evaluate_bilinear_sum_reference(const ExpSumSpec& spec, bool reduce_phase) {
    return evaluate_impl(spec, reduce_phase, 1, false);
}

BoundReport claimed_rhs(const ExpSumSpec& spec, double eps, int threads) {
    if (!(eps >= 0.0 && eps <= 0.1)) throw std::invalid_argument("claimed_rhs: eps must be in [0, 0.1]");
    spec.validate();
    const double lX = std::log(spec.X);
    const double lM = std::log(static_cast<double>(spec.M));
    const double lN = std::log(static_cast<double>(spec.N));

    BoundReport r;
    r.X = spec.X;
    r.M = spec.M;
    r.N = spec.N;
    r.epsilon_used = eps;
    r.rhs_terms[0] = std::exp((lX + 5.0 * lM + 7.0 * lN) / 8.0);
    r.rhs_terms[1] = std::exp(lN + (-2.0 * lX + 11.0 * lM) / 12.0);
    r.rhs_terms[2] = std::exp((-3.0 * lX + 21.0 * lM + 23.0 * lN) / 24.0);
    r.rhs_terms[3] = std::exp(0.75 * lM + lN);
    r.rhs_terms[4] = std::exp(-0.25 * lX + lM + lN);
    neumaier_sum total;
    for (double t : r.rhs_terms) total.add(t);
    r.rhs_total = total.value();
    r.lhs_abs = std::abs(evaluate_bilinear_sum(spec, threads));
    const double mn_eps = std::exp(eps * (lM + lN));
    r.violation_ratio = r.lhs_abs / (mn_eps * r.rhs_total);
    return r;
}

BoundReport counterexample_driver(uint64_t M, double eps, int threads) {
    if (M < (1ULL << 10)) throw std::invalid_argument("counterexample_driver: M must be >= 2^10");
    ExpSumSpec spec;
    spec.X = static_cast<double>(M);
    spec.M = M;
    spec.M1 = 2 * M;
    spec.N = 1;
    spec.N1 = 2;
    spec.alpha = 1.5;
    spec.beta = 1.0;
    spec.a_gen = CoeffGen::conjugate_phase;
    spec.b_gen = CoeffGen::constant_one;
    spec.n0 = 2;
    return claimed_rhs(spec, eps, threads);
}

std::string bound_report_json(const BoundReport& r) {
    char buf[512];
    std::snprintf(buf, sizeof buf,
                  "{\"M\":%llu,\"N\":%llu,\"X\":%.17g,\"lhs\":%.17g,"
                  "\"rhs_terms\":[%.17g,%.17g,%.17g,%.17g,%.17g],"
                  "\"rhs_total\":%.17g,\"eps\":%.17g,\"ratio\":%.17g}",
                  static_cast<unsigned long long>(r.M), static_cast<unsigned long long>(r.N), r.X,
                  r.lhs_abs, r.rhs_terms[0], r.rhs_terms[1], r.rhs_terms[2], r.rhs_terms[3],
                  r.rhs_terms[4], r.rhs_total, r.epsilon_used, r.violation_ratio);
    return buf;
}

} // namespace idealab
