#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <vector>

#include "idealab/modpoly.hpp"

namespace idealab {

// Univariate polynomial with arbitrary-precision integer coefficients,
// ascending by degree, no high zeros (zero polynomial = empty vector).
struct IntPoly {
    std::vector<mpz_class> c;

    IntPoly() = default;
    explicit IntPoly(std::vector<mpz_class> coeffs);
    static IntPoly from_int64(const std::vector<int64_t>& coeffs);

    int degree() const { return static_cast<int>(c.size()) - 1; }
    bool is_zero() const { return c.empty(); }
    const mpz_class& lc() const { return c.back(); }
    bool is_monic() const { return !c.empty() && c.back() == 1; }
    void trim();

    std::string to_string(const std::string& var = "x") const;
    bool operator==(const IntPoly& o) const { return c == o.c; }
};

IntPoly derivative(const IntPoly& f);

// Reduction into F_p[x]; rejects composite p. The degree may drop when the
// leading coefficient vanishes mod p.
PolyZp reduce_mod_p(const IntPoly& f, uint64_t p);

// Exact resultant Res(f, g) via fraction-free (Bareiss) elimination of the
// Sylvester matrix.
mpz_class resultant(const IntPoly& f, const IntPoly& g);

// disc(f) = (-1)^(n(n-1)/2) Res(f, f') / lc(f), exact; requires deg f >= 1.
mpz_class discriminant(const IntPoly& f);

} // namespace idealab
