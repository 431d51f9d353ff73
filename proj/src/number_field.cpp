#include "idealab/number_field.hpp"

#include <algorithm>
#include <istream>
#include <sstream>
#include <stdexcept>

namespace idealab {

int SplittingType::degree_sum() const {
    int s = 0;
    for (auto [e, f] : pairs) s += e * f;
    return s;
}

NumberField NumberField::make(std::string label, IntPoly poly, bool index_is_one) {
    if (poly.degree() < 2) throw std::invalid_argument("number field: degree must be >= 2");
    if (!poly.is_monic()) throw std::invalid_argument("number field: defining polynomial must be monic");
    NumberField K;
    K.label = std::move(label);
    K.degree = poly.degree();
    K.poly_disc = discriminant(poly);
    K.defining_poly = std::move(poly);
    K.index_is_one = index_is_one;
    return K;
}

bool is_certified_prime(const NumberField& K, uint64_t p) {
    if (K.index_is_one) return true;
    if (mpz_fdiv_ui(K.poly_disc.get_mpz_t(), p) != 0) return true;
    mpz_class q;
    mpz_divexact_ui(q.get_mpz_t(), K.poly_disc.get_mpz_t(), p);
    return mpz_fdiv_ui(q.get_mpz_t(), p) != 0; // certified iff p^2 does not divide disc
}

void require_certified_prime(const NumberField& K, uint64_t p) {
    if (!is_certified_prime(K, p))
        throw contract_error("uncertified prime p=" + std::to_string(p) + " for field " + K.label +
                             " (index not declared 1 and p^2 divides disc)");
}

namespace {

void sort_pairs(std::vector<std::pair<int, int>>& pairs) {
    std::sort(pairs.begin(), pairs.end(), [](const auto& a, const auto& b) {
        if (a.second != b.second) return a.second < b.second;
        return a.first < b.first;
    });
}

} // namespace

SplittingType splitting_type(const NumberField& K, uint64_t p, uint64_t seed) {
    if (!is_prime_u64(p)) throw std::invalid_argument("splitting_type: p must be prime");
    require_certified_prime(K, p);
    ModFactorization fac = factor_mod_p(reduce_mod_p(K.defining_poly, p), seed);
    SplittingType s;
    s.p = p;
    for (const auto& [g, mult] : fac.factors)
        s.pairs.emplace_back(mult, g.degree()); // (e, f)
    sort_pairs(s.pairs);
    if (s.degree_sum() != K.degree)
        throw std::logic_error("splitting_type: sum e_i f_i != n");
    return s;
}

int degree_one_prime_count(const NumberField& K, uint64_t p) {
    require_certified_prime(K, p);
    PolyZp f = reduce_mod_p(K.defining_poly, p);
    if (p <= static_cast<uint64_t>(2 * K.degree)) {
        // tiny p: x^p mod f gains nothing, count linear factors directly
        SplittingType s = splitting_type(K, p);
        int count = 0;
        for (auto [e, fi] : s.pairs)
            if (fi == 1) ++count;
        return count;
    }
    PolyZp xp = zp_powmod(zp_x(p), p, f);
    PolyZp g = zp_gcd(zp_sub(xp, zp_x(p)), f);
    return g.degree();
}

SplittingType cyclotomic_splitting_oracle(uint64_t q, uint64_t p) {
    if (q == 2) throw std::invalid_argument("cyclotomic oracle: q = 2 gives a degree-1 field");
    if (!is_prime_u64(q) || !is_prime_u64(p))
        throw std::invalid_argument("cyclotomic oracle: q and p must be prime");
    SplittingType s;
    s.p = p;
    const int n = static_cast<int>(q - 1);
    if (p == q) {
        s.pairs.emplace_back(n, 1); // totally ramified
        return s;
    }
    // f = multiplicative order of p mod q, g = (q-1)/f unramified primes
    uint64_t pm = p % q;
    int f = 1;
    uint64_t acc = pm;
    while (acc != 1) {
        acc = mul_mod(acc, pm, q);
        ++f;
    }
    for (int i = 0; i < n / f; ++i) s.pairs.emplace_back(1, f);
    sort_pairs(s.pairs);
    return s;
}

int kronecker_symbol(int64_t a, uint64_t n) {
    if (n == 0) return (a == 1 || a == -1) ? 1 : 0;
    int result = 1;
    // factor out 2s of n; (a/2) = 0 for even a, +-1 by a mod 8
    while ((n & 1) == 0) {
        n >>= 1;
        if ((a & 1) == 0) return 0;
        int64_t r = ((a % 8) + 8) % 8;
        if (r == 3 || r == 5) result = -result;
    }
    if (n == 1) return result;
    // n odd > 1: Jacobi symbol with reciprocity; periodic in a mod n
    int64_t aa = a % static_cast<int64_t>(n);
    if (aa < 0) aa += static_cast<int64_t>(n);
    uint64_t x = static_cast<uint64_t>(aa), y = n;
    while (x != 0) {
        while ((x & 1) == 0) {
            x >>= 1;
            uint64_t r = y % 8;
            if (r == 3 || r == 5) result = -result;
        }
        std::swap(x, y);
        if ((x & 3) == 3 && (y & 3) == 3) result = -result;
        x %= y;
    }
    return y == 1 ? result : 0;
}

namespace {

bool is_squarefree_small(uint64_t m) {
    if (m % 4 == 0) return false;
    for (uint64_t d = 2; d * d <= m; ++d) {
        uint64_t dd = d * d;
        if (m % dd == 0) return false;
    }
    return true;
}

} // namespace

bool is_fundamental_discriminant(int64_t D) {
    if (D == 0 || D == 1) return false;
    uint64_t a = static_cast<uint64_t>(D < 0 ? -D : D);
    if (a > (1ULL << 50)) throw std::invalid_argument("fundamental discriminant check: |D| too large");
    int64_t r4 = ((D % 4) + 4) % 4;
    if (r4 == 1) return is_squarefree_small(a);
    if (r4 == 0) {
        int64_t m = D / 4;
        int64_t m4 = ((m % 4) + 4) % 4;
        if (m4 != 2 && m4 != 3) return false;
        return is_squarefree_small(static_cast<uint64_t>(m < 0 ? -m : m));
    }
    return false;
}

SplittingType quadratic_splitting_oracle(int64_t D, uint64_t p) {
    if (!is_fundamental_discriminant(D))
        throw std::invalid_argument("quadratic oracle: D is not a fundamental discriminant");
    if (!is_prime_u64(p)) throw std::invalid_argument("quadratic oracle: p must be prime");
    SplittingType s;
    s.p = p;
    int chi = kronecker_symbol(D, p);
    if (chi == 1) {
        s.pairs = {{1, 1}, {1, 1}};
    } else if (chi == -1) {
        s.pairs = {{1, 2}};
    } else {
        s.pairs = {{2, 1}};
    }
    return s;
}

const std::vector<NumberField>& builtin_catalog() {
    static const std::vector<NumberField> catalog = [] {
        std::vector<NumberField> v;
        v.push_back(NumberField::make("Q(i)", IntPoly::from_int64({1, 0, 1}), true));
        v.push_back(NumberField::make("Q(sqrt5)", IntPoly::from_int64({-1, -1, 1}), true));
        v.push_back(NumberField::make("Q(zeta5)", IntPoly::from_int64({1, 1, 1, 1, 1}), true));
        v.push_back(NumberField::make("Q(zeta7)", IntPoly::from_int64({1, 1, 1, 1, 1, 1, 1}), true));
        v.push_back(NumberField::make("Q(zeta9)", IntPoly::from_int64({1, 0, 0, 1, 0, 0, 1}), true));
        return v;
    }();
    return catalog;
}

const NumberField* catalog_find(const std::string& label) {
    for (const auto& K : builtin_catalog())
        if (K.label == label) return &K;
    return nullptr;
}

namespace {

std::string strip(const std::string& s) {
    size_t a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    size_t b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

} // namespace

NumberField parse_catalog_line(const std::string& line) {
    std::vector<std::string> parts;
    size_t start = 0;
    while (true) {
        size_t pos = line.find(':', start);
        if (pos == std::string::npos) {
            parts.push_back(strip(line.substr(start)));
            break;
        }
        parts.push_back(strip(line.substr(start, pos - start)));
        start = pos + 1;
    }
    if (parts.size() != 3)
        throw std::invalid_argument("catalog line must be 'label : coeffs : index_is_one': " + line);
    std::vector<mpz_class> coeffs;
    std::stringstream cs(parts[1]);
    std::string tok;
    while (std::getline(cs, tok, ',')) {
        tok = strip(tok);
        if (tok.empty()) throw std::invalid_argument("catalog line: empty coefficient");
        coeffs.emplace_back(tok); // mpz parses decimal strings
    }
    bool idx;
    if (parts[2] == "true") idx = true;
    else if (parts[2] == "false") idx = false;
    else throw std::invalid_argument("catalog line: index_is_one must be true or false");
    return NumberField::make(parts[0], IntPoly(std::move(coeffs)), idx);
}

std::vector<NumberField> parse_catalog(std::istream& in) {
    std::vector<NumberField> out;
    std::string line;
    while (std::getline(in, line)) {
        std::string t = strip(line);
        if (t.empty() || t[0] == '#') continue;
        out.push_back(parse_catalog_line(t));
    }
    return out;
}

} // namespace idealab
