#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "idealab/number_field.hpp"

namespace idealab {

// Dense table of the ideal-counting function: values[m] = r_K(m) for
// 1 <= m <= x_max (values[0] unused).  Immutable once built; safe for
// concurrent reads.
struct RkTable {
    std::string field_label;
    uint64_t x_max = 0;
    std::vector<uint32_t> values;

    uint32_t r(uint64_t m) const { return values[m]; }
    uint64_t checksum() const;
};

// Number of ideals of norm p^k given the splitting type: nonnegative
// solutions of sum f_i * a_i = k.  Ramification indices do not enter.
uint64_t r_prime_power(const SplittingType& s, int k);

struct SieveOptions {
    int threads = 1;           // >1 enables the block-parallel mode
    uint64_t block_size = 1 << 18;
    uint64_t seed = 1;         // drives factorization inside splitting_type
};

// Hard cap: the dense 32-bit table refuses x_max beyond 2^31.
constexpr uint64_t kSieveXMaxLimit = 1ULL << 31;

using SplittingProvider = std::function<SplittingType(uint64_t p)>;

// Exact table via a blocked multiplicative sieve.  Splitting data for all
// primes <= x_max is precomputed into a read-only store, then each block of
// the table is combined independently; the result is identical for any
// thread count or block size.
RkTable sieve_rk(const NumberField& K, uint64_t x_max, const SieveOptions& opts = {});

// Same sieve with an injected splitting source (used to cross-build tables
// from the closed-form oracles).
RkTable sieve_rk(const std::string& label, uint64_t x_max, const SplittingProvider& provider,
                 const SieveOptions& opts = {});

// Serial reference implementation (linear smallest-prime-factor sieve),
// kept for testing and benchmarking against the blocked kernel.
RkTable sieve_rk_reference(const NumberField& K, uint64_t x_max, uint64_t seed = 1);
RkTable sieve_rk_reference(const std::string& label, uint64_t x_max, const SplittingProvider& provider);

// Binary persistence: 16-byte header (magic "RKT1", u32 version, u64 x_max),
// label block (u32 length + bytes), then x_max little-endian u32 values.
void write_rkt(const RkTable& table, const std::string& path);
RkTable read_rkt(const std::string& path);

void write_csv(const RkTable& table, std::ostream& out); // columns m,r

} // namespace idealab
