#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "idealab/util.hpp"

namespace idealab {

// Dense univariate polynomial over F_p, p prime in 63-bit range.
// Coefficients ascending by degree, reduced into [0, p), no high zeros;
// the zero polynomial has an empty coefficient vector.
struct PolyZp {
    uint64_t p = 0;
    std::vector<uint64_t> c;

    PolyZp() = default;
    PolyZp(uint64_t prime, std::vector<uint64_t> coeffs);

    int degree() const { return static_cast<int>(c.size()) - 1; }
    bool is_zero() const { return c.empty(); }
    bool is_one() const { return c.size() == 1 && c[0] == 1; }
    uint64_t lc() const { return c.back(); }
    uint64_t coeff(size_t i) const { return i < c.size() ? c[i] : 0; }
    void trim();

    bool operator==(const PolyZp& o) const { return p == o.p && c == o.c; }
};

// Ordering used everywhere a factor list must be canonical:
// by degree, then lexicographically on the ascending coefficient vector.
bool canonical_less(const PolyZp& a, const PolyZp& b);

uint64_t inv_mod(uint64_t a, uint64_t p);

PolyZp zp_add(const PolyZp& a, const PolyZp& b);
PolyZp zp_sub(const PolyZp& a, const PolyZp& b);
PolyZp zp_mul(const PolyZp& a, const PolyZp& b);
PolyZp zp_scale(const PolyZp& a, uint64_t k);
void zp_divrem(const PolyZp& a, const PolyZp& b, PolyZp& q, PolyZp& r);
PolyZp zp_rem(const PolyZp& a, const PolyZp& b);
PolyZp zp_monic(const PolyZp& a);
PolyZp zp_gcd(const PolyZp& a, const PolyZp& b); // monic
PolyZp zp_powmod(const PolyZp& base, uint64_t e, const PolyZp& mod);
PolyZp zp_derivative(const PolyZp& a);
PolyZp zp_x(uint64_t p); // the monomial x

// Complete factorization of a nonzero polynomial over F_p into monic
// irreducibles.  `factors` multiplies back to the monic normalization of
// the input; the list is sorted canonically, so the output does not depend
// on the seed that drives the equal-degree splitting stage.
struct ModFactorization {
    uint64_t p = 0;
    std::vector<std::pair<PolyZp, int>> factors;
};

ModFactorization factor_mod_p(const PolyZp& f, uint64_t seed = 1);

} // namespace idealab
