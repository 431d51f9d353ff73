// Benchmark: serial reference kernels vs the blocked kernels, single and
// multi-threaded.  Verifies that every variant produces identical output
// while timing them.

#include <chrono>
#include <complex>
#include <cstdio>
#include <string>

#include <CLI11.hpp>

#include "idealab/expsum.hpp"
#include "idealab/number_field.hpp"
#include "idealab/sieve.hpp"

using namespace idealab;
using clock_type = std::chrono::steady_clock;

namespace {

double seconds_since(clock_type::time_point t0) {
    return std::chrono::duration<double>(clock_type::now() - t0).count();
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"idealab kernel benchmark"};
    uint64_t x_max = 2'000'000;
    uint64_t M = 1 << 18;
    int threads = 4;
    std::string label = "Q(zeta7)";
    app.add_option("--xmax", x_max, "sieve size")->capture_default_str();
    app.add_option("--m", M, "bilinear sum size (M1 = 2M, N1 = 2N = 512)")->capture_default_str();
    app.add_option("--threads", threads, "thread count for parallel variants")->capture_default_str();
    app.add_option("--field", label, "catalog field")->capture_default_str();
    CLI11_PARSE(app, argc, argv);

    const NumberField* K = catalog_find(label);
    if (!K) {
        std::fprintf(stderr, "unknown field %s\n", label.c_str());
        return 1;
    }

    std::printf("== sieve_rk  field=%s  x_max=%llu ==\n", label.c_str(),
                static_cast<unsigned long long>(x_max));
    auto t0 = clock_type::now();
    RkTable ref = sieve_rk_reference(*K, x_max);
    double t_ref = seconds_since(t0);
    std::printf("reference (linear spf, serial)   %8.3f s\n", t_ref);

    t0 = clock_type::now();
    RkTable serial = sieve_rk(*K, x_max, {.threads = 1});
    double t_serial = seconds_since(t0);
    std::printf("blocked, serial                  %8.3f s   (%.2fx vs reference)\n", t_serial,
                t_ref / t_serial);

    t0 = clock_type::now();
    RkTable parallel = sieve_rk(*K, x_max, {.threads = threads});
    double t_par = seconds_since(t0);
    std::printf("blocked, %2d threads              %8.3f s   (%.2fx vs blocked serial)\n", threads,
                t_par, t_serial / t_par);

    if (ref.values != serial.values || serial.values != parallel.values) {
        std::printf("MISMATCH between sieve variants!\n");
        return 1;
    }
    std::printf("all sieve variants identical (checksum 0x%016llx)\n\n",
                static_cast<unsigned long long>(serial.checksum()));

    ExpSumSpec spec;
    spec.X = 1000.0;
    spec.M = M;
    spec.M1 = 2 * M;
    spec.N = 256;
    spec.N1 = 512;
    spec.alpha = 1.5;
    spec.beta = 1.0;
    spec.a_gen = CoeffGen::random_unimodular;
    spec.b_gen = CoeffGen::random_unimodular;
    std::printf("== bilinear sum  M=%llu  terms=%llu ==\n", static_cast<unsigned long long>(M),
                static_cast<unsigned long long>(spec.term_count()));

    t0 = clock_type::now();
    std::complex<double> s_ref = evaluate_bilinear_sum_reference(spec);
    double e_ref = seconds_since(t0);
    std::printf("reference (serial double loop)   %8.3f s\n", e_ref);

    t0 = clock_type::now();
    std::complex<double> s_b1 = evaluate_bilinear_sum(spec, 1);
    double e_b1 = seconds_since(t0);
    std::printf("blocked, serial                  %8.3f s\n", e_b1);

    t0 = clock_type::now();
    std::complex<double> s_bp = evaluate_bilinear_sum(spec, threads);
    double e_bp = seconds_since(t0);
    std::printf("blocked, %2d threads              %8.3f s   (%.2fx vs blocked serial)\n", threads,
                e_bp, e_b1 / e_bp);

    const double scale = std::abs(s_ref) + 1.0;
    if (std::abs(s_b1 - s_bp) != 0.0) {
        std::printf("MISMATCH: parallel block sum is not bit-identical to serial block sum\n");
        return 1;
    }
    std::printf("blocked serial == blocked parallel (bitwise); |blocked - reference|/|S| = %.2e\n",
                std::abs(s_b1 - s_ref) / scale);
    return 0;
}
