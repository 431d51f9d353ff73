#include "idealab/sieve.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <cstring>
#include <fstream>
#include <ostream>
#include <stdexcept>
#include <unordered_map>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace idealab {

uint64_t RkTable::checksum() const {
    uint64_t h = fnv1a64(field_label.data(), field_label.size());
    h = fnv1a64(&x_max, sizeof(x_max), h);
    if (x_max > 0) h = fnv1a64(values.data() + 1, x_max * sizeof(uint32_t), h);
    return h;
}

uint64_t r_prime_power(const SplittingType& s, int k) {
    if (k < 0) throw std::invalid_argument("r_prime_power: k must be >= 0");
    if (k == 0) return 1;
    // coin-change DP over residue degrees
    std::vector<uint64_t> dp(static_cast<size_t>(k) + 1, 0);
    dp[0] = 1;
    for (auto [e, f] : s.pairs) {
        (void)e;
        for (int j = f; j <= k; ++j) dp[j] += dp[j - f];
    }
    return dp[k];
}

namespace {

// Primes up to limit inclusive, simple odd-only sieve.
std::vector<uint32_t> primes_up_to(uint64_t limit) {
    std::vector<uint32_t> primes;
    if (limit < 2) return primes;
    primes.push_back(2);
    const uint64_t half = (limit - 1) / 2; // odd numbers 3,5,... indexed 1..half
    std::vector<uint8_t> composite(half + 1, 0);
    for (uint64_t i = 1; i <= half; ++i) {
        uint64_t n = 2 * i + 1;
        if (composite[i]) continue;
        primes.push_back(static_cast<uint32_t>(n));
        if (n * n > limit) continue;
        for (uint64_t j = (n * n - 1) / 2; j <= half; j += n) composite[j] = 1;
    }
    return primes;
}

uint32_t checked_r32(uint64_t v, uint64_t where) {
    if (v > 0xffffffffULL)
        throw std::overflow_error("r_K(" + std::to_string(where) + ") does not fit in 32 bits");
    return static_cast<uint32_t>(v);
}

// Read-only per-prime data driving the multiplicative combination pass.
struct PrimeStore {
    std::vector<uint32_t> primes;                  // all primes <= x_max
    size_t small_count = 0;                        // primes <= sqrt(x_max)
    std::vector<std::vector<uint32_t>> profiles;   // small primes: r(p^k), k = 0..kmax
    std::vector<uint32_t> r1_large;                // large primes: r(p)
};

PrimeStore build_prime_store(uint64_t x_max, const SplittingProvider& split,
                             const std::function<uint64_t(uint64_t p)>& r1, int threads) {
    PrimeStore st;
    st.primes = primes_up_to(x_max);
    uint64_t sqrt_x = static_cast<uint64_t>(std::sqrt(static_cast<double>(x_max)));
    while (sqrt_x * sqrt_x > x_max) --sqrt_x;
    while ((sqrt_x + 1) * (sqrt_x + 1) <= x_max) ++sqrt_x;
    st.small_count = static_cast<size_t>(
        std::upper_bound(st.primes.begin(), st.primes.end(), sqrt_x) - st.primes.begin());

    st.profiles.resize(st.small_count);
    st.r1_large.resize(st.primes.size() - st.small_count);

    // exceptions (uncertified prime, overflow) may not escape an OpenMP
    // region; capture the first one and rethrow outside
    std::exception_ptr err = nullptr;
    auto capture = [&err](std::exception_ptr e) {
#ifdef _OPENMP
#pragma omp critical(idealab_sieve_err)
#endif
        {
            if (!err) err = e;
        }
    };

    (void)threads;
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 16) num_threads(std::max(threads, 1)) if (threads > 1)
#endif
    for (ptrdiff_t i = 0; i < static_cast<ptrdiff_t>(st.small_count); ++i) {
        try {
            const uint64_t p = st.primes[i];
            const SplittingType s = split(p);
            std::vector<uint32_t> prof;
            uint64_t pk = 1;
            for (int k = 0;; ++k) {
                prof.push_back(checked_r32(r_prime_power(s, k), pk));
                if (pk > x_max / p) break;
                pk *= p;
            }
            st.profiles[i] = std::move(prof);
        } catch (...) {
            capture(std::current_exception());
        }
    }
    if (err) std::rethrow_exception(err);

#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 1024) num_threads(std::max(threads, 1)) if (threads > 1)
#endif
    for (ptrdiff_t i = static_cast<ptrdiff_t>(st.small_count);
         i < static_cast<ptrdiff_t>(st.primes.size()); ++i) {
        try {
            const uint64_t p = st.primes[i];
            st.r1_large[i - st.small_count] = checked_r32(r1(p), p);
        } catch (...) {
            capture(std::current_exception());
        }
    }
    if (err) std::rethrow_exception(err);
    return st;
}

// Fill values[L..R) (1-based table positions) from the prime store.
void combine_block(const PrimeStore& st, uint64_t L, uint64_t R, std::vector<uint64_t>& val,
                   std::vector<uint32_t>& rem, uint32_t* out) {
    const size_t len = static_cast<size_t>(R - L);
    val.assign(len, 1);
    rem.resize(len);
    for (size_t i = 0; i < len; ++i) rem[i] = static_cast<uint32_t>(L + i);

    for (size_t pi = 0; pi < st.small_count; ++pi) {
        const uint64_t p = st.primes[pi];
        const auto& prof = st.profiles[pi];
        uint64_t m = ((L + p - 1) / p) * p;
        for (; m < R; m += p) {
            size_t idx = static_cast<size_t>(m - L);
            uint32_t r = rem[idx];
            int k = 0;
            while (r % p == 0) {
                r /= p;
                ++k;
            }
            rem[idx] = r;
            val[idx] *= prof[k];
        }
    }
    const uint32_t* large_begin = st.primes.data() + st.small_count;
    const uint32_t* large_end = st.primes.data() + st.primes.size();
    for (size_t i = 0; i < len; ++i) {
        uint64_t v = val[i];
        if (rem[i] > 1) {
            const uint32_t* it = std::lower_bound(large_begin, large_end, rem[i]);
            assert(it != large_end && *it == rem[i]);
            v *= st.r1_large[it - large_begin];
        }
        out[i] = checked_r32(v, L + i);
    }
}

RkTable sieve_from_store(const std::string& label, uint64_t x_max, const PrimeStore& st,
                         const SieveOptions& opts) {
    RkTable t;
    t.field_label = label;
    t.x_max = x_max;
    t.values.assign(x_max + 1, 0);

    const uint64_t B = std::max<uint64_t>(opts.block_size, 1024);
    const uint64_t nblocks = (x_max + B - 1) / B;

#ifdef _OPENMP
    if (opts.threads > 1) {
        std::exception_ptr err = nullptr;
#pragma omp parallel num_threads(opts.threads)
        {
            std::vector<uint64_t> val;
            std::vector<uint32_t> rem;
#pragma omp for schedule(dynamic)
            for (ptrdiff_t b = 0; b < static_cast<ptrdiff_t>(nblocks); ++b) {
                try {
                    uint64_t L = 1 + static_cast<uint64_t>(b) * B;
                    uint64_t R = std::min(L + B, x_max + 1);
                    combine_block(st, L, R, val, rem, t.values.data() + L);
                } catch (...) {
#pragma omp critical(idealab_sieve_err)
                    {
                        if (!err) err = std::current_exception();
                    }
                }
            }
        }
        if (err) std::rethrow_exception(err);
        return t;
    }
#endif
    std::vector<uint64_t> val;
    std::vector<uint32_t> rem;
    for (uint64_t b = 0; b < nblocks; ++b) {
        uint64_t L = 1 + b * B;
        uint64_t R = std::min(L + B, x_max + 1);
        combine_block(st, L, R, val, rem, t.values.data() + L);
    }
    return t;
}

void check_budget(uint64_t x_max) {
    if (x_max < 1) throw std::invalid_argument("sieve_rk: x_max must be >= 1");
    if (x_max > kSieveXMaxLimit)
        throw contract_error("sieve_rk: x_max " + std::to_string(x_max) + " exceeds the 2^31 table limit (" +
                             std::to_string(4 * x_max) + " bytes)");
}

} // namespace

RkTable sieve_rk(const NumberField& K, uint64_t x_max, const SieveOptions& opts) {
    check_budget(x_max);
    // Certification happens per prime inside splitting_type /
    // degree_one_prime_count and aborts naming the offending prime.
    auto split = [&](uint64_t p) { return splitting_type(K, p, opts.seed); };
    auto r1 = [&](uint64_t p) -> uint64_t {
        return static_cast<uint64_t>(degree_one_prime_count(K, p));
    };
    PrimeStore st = build_prime_store(x_max, split, r1, opts.threads);
    return sieve_from_store(K.label, x_max, st, opts);
}

RkTable sieve_rk(const std::string& label, uint64_t x_max, const SplittingProvider& provider,
                 const SieveOptions& opts) {
    check_budget(x_max);
    auto r1 = [&](uint64_t p) -> uint64_t { return r_prime_power(provider(p), 1); };
    PrimeStore st = build_prime_store(x_max, provider, r1, opts.threads);
    return sieve_from_store(label, x_max, st, opts);
}

namespace {

RkTable reference_impl(const std::string& label, uint64_t x_max, const SplittingProvider& provider) {
    check_budget(x_max);
    RkTable t;
    t.field_label = label;
    t.x_max = x_max;
    t.values.assign(x_max + 1, 0);
    t.values[1] = 1;
    if (x_max == 1) return t;

    std::vector<uint32_t> spf(x_max + 1, 0), pk(x_max + 1, 0);
    std::vector<uint32_t> primes;
    std::unordered_map<uint64_t, SplittingType> memo;
    auto rpk = [&](uint64_t p, int k) -> uint64_t {
        auto it = memo.find(p);
        if (it == memo.end()) it = memo.emplace(p, provider(p)).first;
        return r_prime_power(it->second, k);
    };

    for (uint64_t m = 2; m <= x_max; ++m) {
        if (spf[m] == 0) {
            spf[m] = static_cast<uint32_t>(m);
            pk[m] = static_cast<uint32_t>(m);
            primes.push_back(static_cast<uint32_t>(m));
        }
        for (uint32_t p : primes) {
            if (p > spf[m] || p > x_max / m) break;
            spf[p * m] = p;
            pk[p * m] = (p == spf[m]) ? pk[m] * p : p;
        }
        const uint64_t q = pk[m];
        const uint64_t rest = m / q;
        uint64_t v;
        if (rest == 1) {
            int k = 0;
            for (uint64_t w = q; w > 1; w /= spf[m]) ++k;
            v = rpk(spf[m], k);
        } else {
            v = static_cast<uint64_t>(t.values[q]) * t.values[rest];
        }
        t.values[m] = checked_r32(v, m);
    }
    return t;
}

} // namespace

RkTable sieve_rk_reference(const NumberField& K, uint64_t x_max, uint64_t seed) {
    return reference_impl(K.label, x_max,
                          [&](uint64_t p) { return splitting_type(K, p, seed); });
}

RkTable sieve_rk_reference(const std::string& label, uint64_t x_max, const SplittingProvider& provider) {
    return reference_impl(label, x_max, provider);
}

// --- persistence ---

namespace {

void put_u32(std::ostream& out, uint32_t v) {
    unsigned char b[4];
    for (int i = 0; i < 4; ++i) b[i] = static_cast<unsigned char>(v >> (8 * i));
    out.write(reinterpret_cast<const char*>(b), 4);
}

void put_u64(std::ostream& out, uint64_t v) {
    unsigned char b[8];
    for (int i = 0; i < 8; ++i) b[i] = static_cast<unsigned char>(v >> (8 * i));
    out.write(reinterpret_cast<const char*>(b), 8);
}

uint32_t get_u32(std::istream& in) {
    unsigned char b[4] = {0, 0, 0, 0};
    in.read(reinterpret_cast<char*>(b), 4);
    uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v |= static_cast<uint32_t>(b[i]) << (8 * i);
    return v;
}

uint64_t get_u64(std::istream& in) {
    unsigned char b[8] = {0};
    in.read(reinterpret_cast<char*>(b), 8);
    uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= static_cast<uint64_t>(b[i]) << (8 * i);
    return v;
}

} // namespace

void write_rkt(const RkTable& table, const std::string& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("write_rkt: cannot open " + path);
    out.write("RKT1", 4);
    put_u32(out, 1); // version
    put_u64(out, table.x_max);
    put_u32(out, static_cast<uint32_t>(table.field_label.size()));
    out.write(table.field_label.data(), static_cast<std::streamsize>(table.field_label.size()));
    for (uint64_t m = 1; m <= table.x_max; ++m) put_u32(out, table.values[m]);
    if (!out) throw std::runtime_error("write_rkt: write failed for " + path);
}

RkTable read_rkt(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("read_rkt: cannot open " + path);
    char magic[4] = {0, 0, 0, 0};
    in.read(magic, 4);
    if (!in || std::memcmp(magic, "RKT1", 4) != 0)
        throw std::runtime_error("read_rkt: bad magic in " + path);
    uint32_t version = get_u32(in);
    if (version != 1) throw std::runtime_error("read_rkt: unsupported version");
    RkTable t;
    t.x_max = get_u64(in);
    if (t.x_max > kSieveXMaxLimit) throw std::runtime_error("read_rkt: x_max out of range");
    uint32_t label_len = get_u32(in);
    if (label_len > 4096) throw std::runtime_error("read_rkt: label too long");
    t.field_label.resize(label_len);
    in.read(t.field_label.data(), label_len);
    t.values.assign(t.x_max + 1, 0);
    for (uint64_t m = 1; m <= t.x_max; ++m) t.values[m] = get_u32(in);
    if (!in) throw std::runtime_error("read_rkt: truncated file " + path);
    return t;
}

void write_csv(const RkTable& table, std::ostream& out) {
    out << "m,r\n";
    for (uint64_t m = 1; m <= table.x_max; ++m) out << m << ',' << table.values[m] << '\n';
}

} // namespace idealab
