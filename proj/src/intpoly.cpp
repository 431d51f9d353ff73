#include "idealab/intpoly.hpp"

#include <sstream>
#include <stdexcept>

namespace idealab {

IntPoly::IntPoly(std::vector<mpz_class> coeffs) : c(std::move(coeffs)) { trim(); }

IntPoly IntPoly::from_int64(const std::vector<int64_t>& coeffs) {
    std::vector<mpz_class> v;
    v.reserve(coeffs.size());
    for (int64_t x : coeffs) v.emplace_back(static_cast<long>(x));
    return IntPoly(std::move(v));
}

void IntPoly::trim() {
    while (!c.empty() && c.back() == 0) c.pop_back();
}

std::string IntPoly::to_string(const std::string& var) const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (int i = degree(); i >= 0; --i) {
        const mpz_class& a = c[i];
        if (a == 0) continue;
        if (!first) os << (a < 0 ? " - " : " + ");
        else if (a < 0) os << "-";
        first = false;
        mpz_class m = abs(a);
        if (m != 1 || i == 0) os << m.get_str();
        if (i >= 1) {
            os << var;
            if (i >= 2) os << "^" << i;
        }
    }
    return os.str();
}

IntPoly derivative(const IntPoly& f) {
    if (f.degree() < 1) return IntPoly();
    std::vector<mpz_class> d(f.c.size() - 1);
    for (size_t i = 1; i < f.c.size(); ++i) d[i - 1] = f.c[i] * static_cast<long>(i);
    return IntPoly(std::move(d));
}

PolyZp reduce_mod_p(const IntPoly& f, uint64_t p) {
    if (!is_prime_u64(p)) throw std::invalid_argument("reduce_mod_p: modulus is not prime");
    std::vector<uint64_t> c(f.c.size());
    for (size_t i = 0; i < f.c.size(); ++i)
        c[i] = mpz_fdiv_ui(f.c[i].get_mpz_t(), p); // nonnegative remainder
    PolyZp r;
    r.p = p;
    r.c = std::move(c);
    r.trim();
    return r;
}

namespace {

// Bareiss fraction-free determinant; all divisions are exact.
mpz_class bareiss_det(std::vector<std::vector<mpz_class>> m) {
    const size_t k = m.size();
    if (k == 0) return 1;
    int sign = 1;
    mpz_class prev = 1;
    for (size_t col = 0; col < k; ++col) {
        size_t pivot = col;
        while (pivot < k && m[pivot][col] == 0) ++pivot;
        if (pivot == k) return 0;
        if (pivot != col) {
            std::swap(m[pivot], m[col]);
            sign = -sign;
        }
        for (size_t i = col + 1; i < k; ++i) {
            for (size_t j = col + 1; j < k; ++j) {
                mpz_class t = m[i][j] * m[col][col] - m[i][col] * m[col][j];
                mpz_divexact(m[i][j].get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
            }
            m[i][col] = 0;
        }
        prev = m[col][col];
    }
    return sign > 0 ? m[k - 1][k - 1] : mpz_class(-m[k - 1][k - 1]);
}

} // namespace

mpz_class resultant(const IntPoly& f, const IntPoly& g) {
    if (f.is_zero() || g.is_zero()) return 0;
    const int m = f.degree(), n = g.degree();
    if (m == 0) {
        mpz_class r;
        mpz_pow_ui(r.get_mpz_t(), f.c[0].get_mpz_t(), static_cast<unsigned long>(n));
        return r;
    }
    if (n == 0) {
        mpz_class r;
        mpz_pow_ui(r.get_mpz_t(), g.c[0].get_mpz_t(), static_cast<unsigned long>(m));
        return r;
    }
    // Sylvester matrix: n shifted rows of f, m shifted rows of g.
    const size_t k = static_cast<size_t>(m + n);
    std::vector<std::vector<mpz_class>> s(k, std::vector<mpz_class>(k, mpz_class(0)));
    for (int row = 0; row < n; ++row)
        for (int i = 0; i <= m; ++i)
            s[row][row + i] = f.c[m - i];
    for (int row = 0; row < m; ++row)
        for (int i = 0; i <= n; ++i)
            s[n + row][row + i] = g.c[n - i];
    return bareiss_det(std::move(s));
}

mpz_class discriminant(const IntPoly& f) {
    const int n = f.degree();
    if (n < 1) throw std::invalid_argument("discriminant: polynomial must have degree >= 1");
    mpz_class res = resultant(f, derivative(f));
    mpz_class disc;
    mpz_divexact(disc.get_mpz_t(), res.get_mpz_t(), f.lc().get_mpz_t());
    if ((static_cast<long>(n) * (n - 1) / 2) % 2 != 0) disc = -disc;
    return disc;
}

} // namespace idealab
