#include <doctest.h>

#include <sstream>

#include "idealab/number_field.hpp"

using namespace idealab;

namespace {

SplittingType pairs_of(std::vector<std::pair<int, int>> v) {
    SplittingType s;
    s.pairs = std::move(v);
    return s;
}

} // namespace

TEST_SUITE_BEGIN("number_field");

TEST_CASE("Q(i) splitting at 2, 5, 3") {
    const NumberField& K = *catalog_find("Q(i)");
    CHECK(splitting_type(K, 2).pairs == pairs_of({{2, 1}}).pairs);
    CHECK(splitting_type(K, 5).pairs == pairs_of({{1, 1}, {1, 1}}).pairs);
    CHECK(splitting_type(K, 3).pairs == pairs_of({{1, 2}}).pairs);
}

TEST_CASE("cyclotomic oracle for q=7") {
    // ord_7(2) = 3, so two primes of residue degree 3
    CHECK(cyclotomic_splitting_oracle(7, 2).pairs == pairs_of({{1, 3}, {1, 3}}).pairs);
    // 3 is a primitive root mod 7
    CHECK(cyclotomic_splitting_oracle(7, 3).pairs == pairs_of({{1, 6}}).pairs);
    // total ramification at q
    CHECK(cyclotomic_splitting_oracle(7, 7).pairs == pairs_of({{6, 1}}).pairs);
    CHECK_THROWS_AS(cyclotomic_splitting_oracle(2, 5), std::invalid_argument);
    CHECK_THROWS_AS(cyclotomic_splitting_oracle(9, 5), std::invalid_argument);
}

TEST_CASE("quadratic oracle for D=-4") {
    CHECK(quadratic_splitting_oracle(-4, 5).pairs == pairs_of({{1, 1}, {1, 1}}).pairs);
    CHECK(quadratic_splitting_oracle(-4, 3).pairs == pairs_of({{1, 2}}).pairs);
    CHECK(quadratic_splitting_oracle(-4, 2).pairs == pairs_of({{2, 1}}).pairs);
}

TEST_CASE("fundamental discriminant screening") {
    for (int64_t D : {-4, 5, 8, 12, -3, -7, -8, 13}) CHECK(is_fundamental_discriminant(D));
    for (int64_t D : {0, 1, 9, -16, 20, 45, -12}) CHECK_FALSE(is_fundamental_discriminant(D));
    CHECK_THROWS_AS(quadratic_splitting_oracle(9, 5), std::invalid_argument);
    CHECK_THROWS_AS(quadratic_splitting_oracle(20, 5), std::invalid_argument);
}

TEST_CASE("kronecker symbol matches Euler's criterion at odd primes") {
    for (uint64_t p : {3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 97ULL, 101ULL, 199ULL}) {
        for (int64_t a = -50; a <= 50; ++a) {
            int64_t am = ((a % static_cast<int64_t>(p)) + static_cast<int64_t>(p)) %
                         static_cast<int64_t>(p);
            int expect;
            if (am == 0) {
                expect = 0;
            } else {
                uint64_t e = pow_mod(static_cast<uint64_t>(am), (p - 1) / 2, p);
                expect = e == 1 ? 1 : -1;
            }
            CHECK(kronecker_symbol(a, p) == expect);
        }
    }
    // (a/2) by a mod 8
    CHECK(kronecker_symbol(7, 2) == 1);
    CHECK(kronecker_symbol(3, 2) == -1);
    CHECK(kronecker_symbol(6, 2) == 0);
}

TEST_CASE("splitting agrees with the quadratic oracle for all p <= 1e5") {
    const NumberField& K = *catalog_find("Q(i)");
    for (uint64_t p = 2; p <= 100000; ++p) {
        if (!is_prime_u64(p)) continue;
        SplittingType s = splitting_type(K, p);
        CHECK(s.pairs == quadratic_splitting_oracle(-4, p).pairs);
        CHECK(s.degree_sum() == 2);
    }
}

TEST_CASE("splitting agrees with the quadratic oracle for Q(sqrt5)") {
    const NumberField& K = *catalog_find("Q(sqrt5)");
    for (uint64_t p = 2; p <= 2000; ++p) {
        if (!is_prime_u64(p)) continue;
        CHECK(splitting_type(K, p).pairs == quadratic_splitting_oracle(5, p).pairs);
    }
}

TEST_CASE("degree-sum invariant across the catalog") {
    for (const NumberField& K : builtin_catalog()) {
        for (uint64_t p : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 101ULL, 65537ULL}) {
            SplittingType s = splitting_type(K, p);
            CHECK(s.degree_sum() == K.degree);
            int linear = 0;
            for (auto [e, f] : s.pairs)
                if (f == 1) ++linear;
            CHECK(degree_one_prime_count(K, p) == linear);
        }
    }
}

TEST_CASE("uncertified prime is a hard error") {
    NumberField K = NumberField::make("bad", IntPoly::from_int64({4, 0, 1}), false); // x^2+4, disc -16
    CHECK_THROWS_AS(splitting_type(K, 2), contract_error);
    CHECK_THROWS_AS(degree_one_prime_count(K, 2), contract_error);
    CHECK(splitting_type(K, 3).pairs == pairs_of({{1, 2}}).pairs); // 3 does not divide -16
    NumberField Kok = NumberField::make("ok", IntPoly::from_int64({4, 0, 1}), true);
    CHECK_NOTHROW(splitting_type(Kok, 2)); // declared index 1 certifies every prime
}

TEST_CASE("catalog contents and file format") {
    CHECK(builtin_catalog().size() == 5);
    CHECK(catalog_find("Q(zeta9)")->poly_disc == -19683);
    CHECK(catalog_find("Q(zeta7)")->poly_disc == -16807);
    CHECK(catalog_find("Q(zeta5)")->poly_disc == 125);
    CHECK(catalog_find("nope") == nullptr);

    NumberField K = parse_catalog_line("Q(i) : 1,0,1 : true");
    CHECK(K.label == "Q(i)");
    CHECK(K.degree == 2);
    CHECK(K.poly_disc == -4);
    CHECK(K.index_is_one);

    std::istringstream in("# comment\n\nQ(i) : 1,0,1 : true\nfoo : -1,-1,1 : false\n");
    auto fields = parse_catalog(in);
    REQUIRE(fields.size() == 2);
    CHECK(fields[1].label == "foo");
    CHECK_FALSE(fields[1].index_is_one);

    CHECK_THROWS_AS(parse_catalog_line("Q(i) : 1,0,1"), std::invalid_argument);
    CHECK_THROWS_AS(parse_catalog_line("Q(i) : 1,0,1 : yes"), std::invalid_argument);
    CHECK_THROWS_AS(parse_catalog_line("c : 7 : true"), std::invalid_argument); // degree < 2
    CHECK_THROWS_AS(parse_catalog_line("c : 1,1,2 : true"), std::invalid_argument); // not monic
}

TEST_SUITE_END();
