// Exact integers and rationals (GMP-backed) plus the small number-theory
// helpers used throughout: factorization of machine-size integers, Euler phi,
// p-adic valuations, primality.
#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace curtis {

using Int = mpz_class;
using Rat = mpq_class;

inline Int int_pow(const Int& base, unsigned long e) {
    Int r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
    return r;
}

inline Int int_gcd(const Int& a, const Int& b) {
    Int r;
    mpz_gcd(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

inline Int int_lcm(const Int& a, const Int& b) {
    Int r;
    mpz_lcm(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

inline bool is_prime(const Int& n) {
    return mpz_probab_prime_p(n.get_mpz_t(), 40) != 0;
}

// Largest e with p^e | n (n != 0).
inline unsigned valuation(Int n, const Int& p) {
    if (n == 0) throw std::invalid_argument("valuation of zero");
    unsigned v = 0;
    Int q, r;
    for (;;) {
        mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), n.get_mpz_t(), p.get_mpz_t());
        if (r != 0) return v;
        n = q;
        ++v;
    }
}

inline bool is_power_of(const Int& n, const Int& p) {
    Int m = abs(n);
    if (m == 0) return false;
    while (m % p == 0) m /= p;
    return m == 1;
}

// Trial-division factorization; inputs here are tiny (group exponents, field sizes).
inline std::map<std::uint64_t, unsigned> factorize(std::uint64_t n) {
    std::map<std::uint64_t, unsigned> f;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        while (n % d == 0) { ++f[d]; n /= d; }
    if (n > 1) ++f[n];
    return f;
}

inline std::uint64_t euler_phi(std::uint64_t n) {
    std::uint64_t r = n;
    for (auto& [p, e] : factorize(n)) r = r / p * (p - 1);
    return r;
}

inline std::vector<std::uint64_t> divisors(std::uint64_t n) {
    std::vector<std::uint64_t> d{1};
    for (auto& [p, e] : factorize(n)) {
        std::size_t sz = d.size();
        std::uint64_t pe = 1;
        for (unsigned i = 0; i < e; ++i) {
            pe *= p;
            for (std::size_t j = 0; j < sz; ++j) d.push_back(d[j] * pe);
        }
    }
    std::sort(d.begin(), d.end());
    return d;
}

inline std::uint64_t gcd_u64(std::uint64_t a, std::uint64_t b) {
    while (b) { std::uint64_t t = a % b; a = b; b = t; }
    return a;
}

inline std::uint64_t lcm_u64(std::uint64_t a, std::uint64_t b) {
    return a / gcd_u64(a, b) * b;
}

inline std::uint64_t pow_u64(std::uint64_t b, unsigned e) {
    std::uint64_t r = 1;
    while (e--) r *= b;
    return r;
}

// a^e mod m for machine integers (m^2 must fit in u64; all our moduli are tiny).
inline std::uint64_t pow_mod_u64(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
    std::uint64_t r = 1 % m;
    a %= m;
    while (e) {
        if (e & 1) r = r * a % m;
        a = a * a % m;
        e >>= 1;
    }
    return r;
}

inline std::uint64_t inv_mod_u64(std::uint64_t a, std::uint64_t m) {
    std::int64_t t = 0, nt = 1, r = (std::int64_t)m, nr = (std::int64_t)(a % m);
    while (nr != 0) {
        std::int64_t q = r / nr;
        std::int64_t tmp = t - q * nt; t = nt; nt = tmp;
        tmp = r - q * nr; r = nr; nr = tmp;
    }
    if (r != 1) throw std::invalid_argument("inv_mod: not invertible");
    return (std::uint64_t)(t < 0 ? t + (std::int64_t)m : t);
}

inline Rat make_rat(const Int& num, const Int& den) {
    if (den == 0) throw std::invalid_argument("zero denominator");
    Rat r(num, den);
    r.canonicalize();
    return r;
}

// True iff the denominator of x (in lowest terms) is a power of p.
inline bool denominator_is_p_power(const Rat& x, const Int& p) {
    Int d = x.get_den();
    if (d == 1) return true;
    while (d % p == 0) d /= p;
    return d == 1;
}

inline std::string to_string(const Int& x) { return x.get_str(); }
inline std::string to_string(const Rat& x) {
    if (x.get_den() == 1) return x.get_num().get_str();
    return x.get_num().get_str() + "/" + x.get_den().get_str();
}

}  // namespace curtis
