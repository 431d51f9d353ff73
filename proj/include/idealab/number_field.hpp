#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "idealab/intpoly.hpp"

namespace idealab {

// Splitting data of a rational prime p: one (e, f) pair per prime ideal
// above p, sorted by residue degree f then ramification index e.
// Always satisfies sum e_i * f_i = degree of the field.
struct SplittingType {
    uint64_t p = 0;
    std::vector<std::pair<int, int>> pairs; // (e, f)

    int degree_sum() const;
    bool operator==(const SplittingType& o) const { return p == o.p && pairs == o.pairs; }
};

struct NumberField {
    std::string label;
    IntPoly defining_poly; // monic, trusted irreducible over Q
    int degree = 0;
    mpz_class poly_disc;
    bool index_is_one = false;

    static NumberField make(std::string label, IntPoly poly, bool index_is_one);
};

// Dedekind splitting certification: the factorization of the defining
// polynomial mod p mirrors the prime factorization only when p does not
// divide the index [O_K : Z[theta]].  Enforced as index_is_one, or p^2
// not dividing the polynomial discriminant; otherwise contract_error.
void require_certified_prime(const NumberField& K, uint64_t p);
bool is_certified_prime(const NumberField& K, uint64_t p);

SplittingType splitting_type(const NumberField& K, uint64_t p, uint64_t seed = 1);

// Number of prime ideals of residue degree one above p = number of distinct
// roots of the defining polynomial mod p.  Same certification contract as
// splitting_type, much cheaper; this is all the sieve needs for p > sqrt(x).
int degree_one_prime_count(const NumberField& K, uint64_t p);

// Independent closed-form oracles.
SplittingType cyclotomic_splitting_oracle(uint64_t q, uint64_t p); // K = Q(zeta_q), q odd prime
SplittingType quadratic_splitting_oracle(int64_t D, uint64_t p);   // K of fundamental discriminant D

// Kronecker symbol (a/n) for n >= 1.
int kronecker_symbol(int64_t a, uint64_t n);
bool is_fundamental_discriminant(int64_t D);

// Built-in field catalog: Q(i), Q(sqrt5), Q(zeta5), Q(zeta7), Q(zeta9).
const std::vector<NumberField>& builtin_catalog();
const NumberField* catalog_find(const std::string& label);

// Catalog file: one field per line,
//   label : coefficients (ascending, comma-separated) : index_is_one
// e.g.  Q(i) : 1,0,1 : true
std::vector<NumberField> parse_catalog(std::istream& in);
NumberField parse_catalog_line(const std::string& line);

} // namespace idealab
