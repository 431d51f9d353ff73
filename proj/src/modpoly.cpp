#include "idealab/modpoly.hpp"

#include <algorithm>
#include <cassert>
#include <map>
#include <random>
#include <stdexcept>

namespace idealab {

PolyZp::PolyZp(uint64_t prime, std::vector<uint64_t> coeffs) : p(prime), c(std::move(coeffs)) {
    for (auto& x : c) x %= p;
    trim();
}

void PolyZp::trim() {
    while (!c.empty() && c.back() == 0) c.pop_back();
}

bool canonical_less(const PolyZp& a, const PolyZp& b) {
    if (a.degree() != b.degree()) return a.degree() < b.degree();
    return std::lexicographical_compare(a.c.begin(), a.c.end(), b.c.begin(), b.c.end());
}

uint64_t inv_mod(uint64_t a, uint64_t p) {
    a %= p;
    if (a == 0) throw std::domain_error("inv_mod: zero has no inverse");
    return pow_mod(a, p - 2, p); // p prime
}

PolyZp zp_x(uint64_t p) { return PolyZp(p, {0, 1}); }

PolyZp zp_add(const PolyZp& a, const PolyZp& b) {
    const uint64_t p = a.p;
    PolyZp r;
    r.p = p;
    r.c.resize(std::max(a.c.size(), b.c.size()), 0);
    for (size_t i = 0; i < r.c.size(); ++i) {
        uint64_t s = a.coeff(i) + b.coeff(i);
        r.c[i] = s >= p ? s - p : s;
    }
    r.trim();
    return r;
}

PolyZp zp_sub(const PolyZp& a, const PolyZp& b) {
    const uint64_t p = a.p;
    PolyZp r;
    r.p = p;
    r.c.resize(std::max(a.c.size(), b.c.size()), 0);
    for (size_t i = 0; i < r.c.size(); ++i) {
        uint64_t x = a.coeff(i), y = b.coeff(i);
        r.c[i] = x >= y ? x - y : x + p - y;
    }
    r.trim();
    return r;
}

PolyZp zp_mul(const PolyZp& a, const PolyZp& b) {
    const uint64_t p = a.p;
    if (a.is_zero() || b.is_zero()) return PolyZp(p, {});
    PolyZp r;
    r.p = p;
    r.c.assign(a.c.size() + b.c.size() - 1, 0);
    for (size_t i = 0; i < a.c.size(); ++i) {
        if (a.c[i] == 0) continue;
        for (size_t j = 0; j < b.c.size(); ++j) {
            uint64_t t = r.c[i + j] + mul_mod(a.c[i], b.c[j], p);
            r.c[i + j] = t >= p ? t - p : t;
        }
    }
    r.trim();
    return r;
}

PolyZp zp_scale(const PolyZp& a, uint64_t k) {
    PolyZp r = a;
    k %= a.p;
    for (auto& x : r.c) x = mul_mod(x, k, a.p);
    r.trim();
    return r;
}

void zp_divrem(const PolyZp& a, const PolyZp& b, PolyZp& q_out, PolyZp& r_out) {
    if (b.is_zero()) throw std::domain_error("zp_divrem: division by zero polynomial");
    const uint64_t p = a.p;
    PolyZp r = a; // local copies: callers may alias outputs with inputs
    PolyZp q(p, {});
    if (r.degree() >= b.degree()) {
        const uint64_t inv_lc = inv_mod(b.lc(), p);
        q.c.assign(a.c.size() - b.c.size() + 1, 0);
        while (!r.is_zero() && r.degree() >= b.degree()) {
            const int shift = r.degree() - b.degree();
            const uint64_t coef = mul_mod(r.lc(), inv_lc, p);
            q.c[shift] = coef;
            // r -= coef * x^shift * b
            for (size_t i = 0; i < b.c.size(); ++i) {
                uint64_t sub = mul_mod(coef, b.c[i], p);
                uint64_t& dst = r.c[shift + i];
                dst = dst >= sub ? dst - sub : dst + p - sub;
            }
            r.trim();
        }
        q.trim();
    }
    q_out = std::move(q);
    r_out = std::move(r);
}

PolyZp zp_rem(const PolyZp& a, const PolyZp& b) {
    PolyZp q, r;
    zp_divrem(a, b, q, r);
    return r;
}

PolyZp zp_monic(const PolyZp& a) {
    if (a.is_zero()) return a;
    if (a.lc() == 1) return a;
    return zp_scale(a, inv_mod(a.lc(), a.p));
}

PolyZp zp_gcd(const PolyZp& a, const PolyZp& b) {
    PolyZp x = a, y = b;
    while (!y.is_zero()) {
        PolyZp r = zp_rem(x, y);
        x = std::move(y);
        y = std::move(r);
    }
    return zp_monic(x);
}

PolyZp zp_powmod(const PolyZp& base, uint64_t e, const PolyZp& mod) {
    if (mod.degree() < 1) throw std::domain_error("zp_powmod: modulus must have degree >= 1");
    PolyZp result(base.p, {1});
    PolyZp b = zp_rem(base, mod);
    while (e) {
        if (e & 1) result = zp_rem(zp_mul(result, b), mod);
        e >>= 1;
        if (e) b = zp_rem(zp_mul(b, b), mod);
    }
    return result;
}

PolyZp zp_derivative(const PolyZp& a) {
    PolyZp r;
    r.p = a.p;
    if (a.degree() < 1) return r;
    r.c.resize(a.c.size() - 1);
    for (size_t i = 1; i < a.c.size(); ++i)
        r.c[i - 1] = mul_mod(a.c[i], i % a.p, a.p);
    r.trim();
    return r;
}

namespace {

// f with f' = 0 over F_p is v(x)^p where v keeps the coefficients at
// indices divisible by p (Frobenius fixes F_p).
PolyZp pth_root(const PolyZp& f) {
    const uint64_t p = f.p;
    PolyZp v;
    v.p = p;
    v.c.resize(f.c.size() / p + 1, 0);
    for (size_t i = 0; i < f.c.size(); ++i) {
        if (f.c[i] == 0) continue;
        assert(i % p == 0);
        v.c[i / p] = f.c[i];
    }
    v.trim();
    return v;
}

// Yun-style squarefree decomposition in characteristic p: f (monic) =
// prod g_i^i with the g_i squarefree and pairwise coprime.
void squarefree_rec(const PolyZp& f, int mult, std::vector<std::pair<PolyZp, int>>& out) {
    if (f.degree() < 1) return;
    PolyZp fp = zp_derivative(f);
    if (fp.is_zero()) {
        squarefree_rec(pth_root(f), mult * static_cast<int>(f.p), out);
        return;
    }
    PolyZp c = zp_gcd(f, fp);
    PolyZp w, dummy;
    zp_divrem(f, c, w, dummy);
    int i = 1;
    while (!w.is_one()) {
        PolyZp y = zp_gcd(w, c);
        PolyZp z, r;
        zp_divrem(w, y, z, r);
        if (z.degree() > 0) out.emplace_back(zp_monic(z), i * mult);
        w = std::move(y);
        PolyZp cq;
        zp_divrem(c, w, cq, r);
        c = std::move(cq);
        ++i;
    }
    if (!c.is_one()) squarefree_rec(pth_root(c), mult * static_cast<int>(f.p), out);
}

// Distinct-degree stage: splits squarefree monic g into products of
// irreducibles of equal degree d.
std::vector<std::pair<PolyZp, int>> distinct_degree(const PolyZp& g0) {
    std::vector<std::pair<PolyZp, int>> out; // (product, factor degree d)
    const uint64_t p = g0.p;
    PolyZp g = g0;
    PolyZp x = zp_x(p);
    PolyZp frob = zp_powmod(x, p, g); // x^(p^d) mod g, d = 1 initially
    int d = 1;
    while (g.degree() >= 2 * d) {
        PolyZp gd = zp_gcd(zp_sub(frob, x), g);
        if (gd.degree() > 0) {
            out.emplace_back(gd, d);
            PolyZp q, r;
            zp_divrem(g, gd, q, r);
            g = std::move(q);
            if (g.degree() < 1) return out;
            frob = zp_rem(frob, g);
        }
        ++d;
        if (g.degree() < 2 * d) break;
        frob = zp_powmod(frob, p, g);
    }
    if (g.degree() > 0) out.emplace_back(g, g.degree());
    return out;
}

PolyZp random_poly(uint64_t p, int max_deg, std::mt19937_64& rng) {
    std::vector<uint64_t> c(static_cast<size_t>(max_deg) + 1);
    for (auto& x : c) x = rng() % p; // modulo bias is irrelevant for a splitting probe
    return PolyZp(p, std::move(c));
}

// r^((p^d - 1)/2) mod h without big-integer exponents:
// (p^d-1)/2 = (p-1)/2 * (1 + p + ... + p^(d-1)).
PolyZp half_order_power(const PolyZp& r, const PolyZp& h, int d) {
    const uint64_t p = r.p;
    PolyZp b = zp_powmod(r, (p - 1) / 2, h);
    PolyZp acc = b;
    PolyZp frob = b;
    for (int i = 1; i < d; ++i) {
        frob = zp_powmod(frob, p, h);
        acc = zp_rem(zp_mul(acc, frob), h);
    }
    return acc;
}

// Cantor-Zassenhaus equal-degree splitting of h = product of distinct monic
// irreducibles of degree d.
void equal_degree(const PolyZp& h, int d, std::mt19937_64& rng, std::vector<PolyZp>& out) {
    if (h.degree() == d) {
        out.push_back(zp_monic(h));
        return;
    }
    const uint64_t p = h.p;
    for (int attempt = 0; attempt < 256; ++attempt) {
        PolyZp r = random_poly(p, h.degree() - 1, rng);
        if (r.degree() < 1) continue;
        PolyZp probe;
        if (p == 2) {
            // trace map r + r^2 + ... + r^(2^(d-1))
            PolyZp t = zp_rem(r, h);
            probe = t;
            for (int i = 1; i < d; ++i) {
                t = zp_rem(zp_mul(t, t), h);
                probe = zp_add(probe, t);
            }
        } else {
            probe = zp_sub(half_order_power(r, h, d), PolyZp(p, {1}));
        }
        PolyZp s = zp_gcd(probe, h);
        if (s.degree() > 0 && s.degree() < h.degree()) {
            PolyZp q, rem;
            zp_divrem(h, s, q, rem);
            equal_degree(s, d, rng, out);
            equal_degree(q, d, rng, out);
            return;
        }
    }
    throw std::logic_error("equal_degree: splitting did not converge");
}

} // namespace

ModFactorization factor_mod_p(const PolyZp& f, uint64_t seed) {
    if (f.is_zero()) throw std::invalid_argument("factor_mod_p: zero polynomial");
    if (!is_prime_u64(f.p)) throw std::invalid_argument("factor_mod_p: modulus is not prime");

    ModFactorization out;
    out.p = f.p;
    PolyZp g = zp_monic(f);
    if (g.degree() < 1) return out; // unit

    std::mt19937_64 rng(split_seed(seed, f.p));

    std::vector<std::pair<PolyZp, int>> sqf;
    squarefree_rec(g, 1, sqf);

    std::map<std::vector<uint64_t>, std::pair<PolyZp, int>> merged;
    for (const auto& [part, mult] : sqf) {
        for (const auto& [prod, d] : distinct_degree(part)) {
            std::vector<PolyZp> irr;
            equal_degree(prod, d, rng, irr);
            for (auto& fac : irr) {
                auto it = merged.find(fac.c);
                if (it == merged.end())
                    merged.emplace(fac.c, std::make_pair(fac, mult));
                else
                    it->second.second += mult;
            }
        }
    }
    for (auto& [key, fm] : merged) out.factors.push_back(fm);
    std::sort(out.factors.begin(), out.factors.end(), [](const auto& a, const auto& b) {
        return canonical_less(a.first, b.first);
    });

    // Certify: degrees add up and the product reconstructs the input.
    int degsum = 0;
    PolyZp prod(f.p, {1});
    for (const auto& [fac, mult] : out.factors) {
        degsum += fac.degree() * mult;
        for (int i = 0; i < mult; ++i) prod = zp_mul(prod, fac);
    }
    if (degsum != g.degree() || !(prod == g))
        throw std::logic_error("factor_mod_p: factorization failed verification");
    return out;
}

} // namespace idealab
