// Finite fields F_{p^e} with Zech-logarithm tables, built from a deterministic
// (lexicographically smallest) irreducible polynomial and a fixed primitive
// generator. One "top" field per group family is built; every needed subfield
// lives inside it, so embeddings are literal inclusions and all discrete logs
// are taken against norm-compatible generators derived from the top generator.
//
// Element encoding: 0 is zero, 1 + k is g^k. Digit codes (base-p integer whose
// digits are the polynomial coordinates) are used for construction, canonical
// ordering and serialization.
#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <vector>

#include "curtis/rational.hpp"

namespace curtis {

using ff = std::uint32_t;  // field element (log encoding)

class FqField {
  public:
    const std::uint64_t p, deg, size, gsize;  // size = p^deg, gsize = size - 1

    FqField(std::uint64_t p_, std::uint64_t deg_)
        : p(p_), deg(deg_), size(pow_u64(p_, (unsigned)deg_)), gsize(size - 1) {
        build();
    }

    static std::shared_ptr<const FqField> get(std::uint64_t p, std::uint64_t deg) {
        static std::map<std::pair<std::uint64_t, std::uint64_t>, std::shared_ptr<const FqField>> cache;
        static std::mutex mtx;
        std::lock_guard<std::mutex> lock(mtx);
        auto key = std::make_pair(p, deg);
        auto it = cache.find(key);
        if (it != cache.end()) return it->second;
        auto f = std::make_shared<const FqField>(p, deg);
        cache.emplace(key, f);
        return f;
    }

    ff zero() const { return 0; }
    ff one() const { return 1; }
    ff gen() const { return from_dlog(1); }  // g^1 (equals 1 in F_2)
    bool is_zero(ff x) const { return x == 0; }
    std::uint64_t dlog(ff x) const {
        if (x == 0) throw std::domain_error("dlog of zero");
        return x - 1;
    }
    ff from_dlog(std::uint64_t k) const { return (ff)(1 + k % gsize_or_one()); }

    ff mul(ff a, ff b) const {
        if (a == 0 || b == 0) return 0;
        return from_dlog((std::uint64_t)(a - 1) + (b - 1));
    }
    ff inv(ff a) const {
        if (a == 0) throw std::domain_error("inverse of zero");
        return from_dlog((gsize - (a - 1) % gsize_or_one()) % gsize_or_one());
    }
    ff neg(ff a) const {
        if (a == 0) return 0;
        if (p == 2) return a;
        return from_dlog((std::uint64_t)(a - 1) + gsize / 2);
    }
    ff add(ff a, ff b) const {
        if (a == 0) return b;
        if (b == 0) return a;
        std::uint64_t la = a - 1, lb = b - 1;
        std::uint64_t k = (lb + gsize - la) % gsize_or_one();
        ff z = zech_[k];
        if (z == kZechMinusOne) return 0;
        return from_dlog(la + z);
    }
    ff sub(ff a, ff b) const { return add(a, neg(b)); }
    ff pow(ff a, Int e) const {
        if (a == 0) {
            if (e <= 0) throw std::domain_error("0^nonpositive");
            return 0;
        }
        Int k = Int((unsigned long)(a - 1)) * e;
        Int g = Int((unsigned long)gsize_or_one());
        Int r = k % g;
        if (r < 0) r += g;
        return from_dlog(r.get_ui());
    }
    ff frobenius(ff a, unsigned times = 1) const {  // a -> a^(p^times)
        if (a == 0) return 0;
        return pow(a, int_pow(Int((unsigned long)p), times));
    }

    // Digit code <-> element.
    std::uint64_t digits(ff a) const { return a == 0 ? 0 : exp_digits_[a - 1]; }
    ff from_digits(std::uint64_t code) const {
        if (code == 0) return 0;
        return log_of_digits_[code];
    }

    // Multiplicative order of a nonzero element.
    std::uint64_t order(ff a) const {
        std::uint64_t l = dlog(a) % gsize_or_one();
        return gsize_or_one() / gcd_u64(gsize_or_one(), l == 0 ? gsize_or_one() : l);
    }

    // ---- subfield machinery (d | deg) ----
    std::uint64_t subfield_size(std::uint64_t d) const { return pow_u64(p, (unsigned)d); }
    bool in_subfield(ff x, std::uint64_t sub_size) const {
        if (x == 0) return true;
        std::uint64_t step = gsize / (sub_size - 1);
        return (x - 1) % step == 0;
    }
    // Norm from the full field down to the subfield of given size.
    ff norm_to(ff x, std::uint64_t sub_size) const {
        if (x == 0) return 0;
        return from_dlog((std::uint64_t)(x - 1) * (gsize / (sub_size - 1)));
    }
    // Canonical generator of the subfield: g^{(size-1)/(sub-1)} (norm of g).
    ff subfield_gen(std::uint64_t sub_size) const { return from_dlog(gsize / (sub_size - 1)); }
    // Discrete log within the subfield w.r.t. its canonical generator.
    std::uint64_t subfield_dlog(ff x, std::uint64_t sub_size) const {
        if (x == 0) throw std::domain_error("dlog of zero");
        std::uint64_t step = gsize / (sub_size - 1);
        if ((x - 1) % step != 0) throw std::domain_error("element not in subfield");
        return (x - 1) / step;
    }
    ff from_subfield_dlog(std::uint64_t k, std::uint64_t sub_size) const {
        return from_dlog((k % (sub_size - 1)) * (gsize / (sub_size - 1)));
    }
    // Trace from subfield E (size esize) to subfield F (size fsize), fsize^r = esize.
    ff trace(ff x, std::uint64_t esize, std::uint64_t fsize) const {
        std::uint64_t r = 0, s = 1;
        while (s != esize) { s *= fsize; ++r; }
        ff acc = 0, cur = x;
        for (std::uint64_t i = 0; i < r; ++i) {
            acc = add(acc, cur);
            cur = pow(cur, Int((unsigned long)fsize));
        }
        return acc;
    }

    const std::vector<std::uint8_t>& modulus_coeffs() const { return irred_; }

  private:
    static constexpr ff kZechMinusOne = 0xffffffff;
    std::uint64_t gsize_or_one() const { return gsize == 0 ? 1 : gsize; }

    std::vector<std::uint8_t> irred_;            // monic irreducible, degree deg (coeff of x^i)
    std::vector<ff> zech_;                       // zech_[k] = log(1 + g^k), sentinel if zero
    std::vector<std::uint64_t> exp_digits_;      // dlog -> digit code
    std::vector<ff> log_of_digits_;              // digit code -> element

    using Poly8 = std::vector<std::uint8_t>;  // dense coeffs mod p, degree < deg after reduce

    Poly8 poly_mul_mod(const Poly8& a, const Poly8& b, const Poly8& f) const {
        std::vector<std::uint32_t> t(a.size() + b.size() - 1, 0);
        for (std::size_t i = 0; i < a.size(); ++i)
            if (a[i])
                for (std::size_t j = 0; j < b.size(); ++j) t[i + j] = (t[i + j] + a[i] * b[j]) % p;
        // reduce by monic f of degree deg
        for (std::size_t i = t.size(); i-- > deg;) {
            std::uint32_t c = t[i] % p;
            if (!c) continue;
            for (std::size_t j = 0; j < deg; ++j)
                t[i - deg + j] = (t[i - deg + j] + c * (p - f[j])) % p;
            t[i] = 0;
        }
        Poly8 r(deg, 0);
        for (std::size_t i = 0; i < deg && i < t.size(); ++i) r[i] = (std::uint8_t)(t[i] % p);
        return r;
    }
    Poly8 poly_pow_mod(Poly8 base, Int e, const Poly8& f) const {
        Poly8 r(deg, 0);
        r[0] = 1;
        while (e > 0) {
            if (mpz_odd_p(e.get_mpz_t())) r = poly_mul_mod(r, base, f);
            base = poly_mul_mod(base, base, f);
            e >>= 1;
        }
        return r;
    }
    static bool is_zero_poly(const Poly8& a) {
        for (auto c : a)
            if (c) return false;
        return true;
    }

    bool irreducible(const Poly8& f) const {
        // x^{p^deg} == x mod f, and x^{p^{deg/l}} - x coprime with f for prime l | deg
        Poly8 x(deg, 0);
        if (deg == 1) return true;
        x[1] = 1;
        Poly8 xp = poly_pow_mod(x, int_pow(Int((unsigned long)p), (unsigned)deg), f);
        Poly8 diff = xp;
        diff[1] = (std::uint8_t)((diff[1] + p - 1) % p);
        if (!is_zero_poly(diff)) return false;
        for (auto& [l, e] : factorize(deg)) {
            Poly8 xq = poly_pow_mod(x, int_pow(Int((unsigned long)p), (unsigned)(deg / l)), f);
            xq[1] = (std::uint8_t)((xq[1] + p - 1) % p);
            // gcd(xq, f) must be 1; f irreducible-candidate is monic degree deg
            Poly8 a = f, b = xq;
            auto degree_of = [](const Poly8& t) -> long {
                for (std::size_t i = t.size(); i-- > 0;)
                    if (t[i]) return (long)i;
                return -1;
            };
            while (!is_zero_poly(b)) {
                // a mod b
                long da = degree_of(a), db = degree_of(b);
                while (da >= db && da >= 0) {
                    std::uint32_t lead_b = b[(std::size_t)db];
                    std::uint32_t invb = (std::uint32_t)inv_mod_u64(lead_b, p);
                    std::uint32_t c = (std::uint32_t)(a[(std::size_t)da] * invb % p);
                    for (long j = 0; j <= db; ++j)
                        a[(std::size_t)(da - db + j)] =
                            (std::uint8_t)((a[(std::size_t)(da - db + j)] + c * (p - b[(std::size_t)j])) % p);
                    da = degree_of(a);
                }
                std::swap(a, b);
            }
            if (degree_of(a) != 0) return false;
        }
        return true;
    }

    void build() {
        if (!is_prime(Int((unsigned long)p))) throw std::invalid_argument("p not prime");
        // lexicographically smallest monic irreducible of degree deg
        Poly8 f(deg + 1, 0);
        f[deg] = 1;
        std::uint64_t ncand = pow_u64(p, (unsigned)deg);
        bool found = false;
        for (std::uint64_t c = 0; c < ncand; ++c) {
            std::uint64_t t = c;
            for (std::size_t i = 0; i < deg; ++i) { f[i] = (std::uint8_t)(t % p); t /= p; }
            if (f[0] == 0) continue;  // x | f
            if (irreducible(f)) { found = true; break; }
        }
        if (!found) throw std::logic_error("no irreducible polynomial found");
        irred_ = f;

        // enumerate powers of each candidate generator; pick smallest digit code that is primitive
        auto digits_of = [&](const Poly8& a) {
            std::uint64_t code = 0;
            for (std::size_t i = deg; i-- > 0;) code = code * p + (i < a.size() ? a[i] : 0);
            return code;
        };
        auto order_of = [&](const Poly8& a) -> std::uint64_t {
            // order divides gsize; test via prime factors
            std::uint64_t o = gsize;
            for (auto& [l, e] : factorize(gsize)) {
                for (unsigned i = 0; i < e; ++i) {
                    Poly8 t = poly_pow_mod(a, Int((unsigned long)(o / l)), f);
                    std::uint64_t d = digits_of(t);
                    if (d == 1) o /= l;
                    else break;
                }
            }
            return o;
        };
        Poly8 g;
        if (gsize == 1) {
            g = Poly8(deg, 0);
            g[0] = 1;
        } else {
            bool got = false;
            for (std::uint64_t c = 2; c < size && !got; ++c) {  // skip 0, 1
                Poly8 a(deg, 0);
                std::uint64_t t = c;
                for (std::size_t i = 0; i < deg; ++i) { a[i] = (std::uint8_t)(t % p); t /= p; }
                if (order_of(a) == gsize) { g = a; got = true; }
            }
            if (!got) throw std::logic_error("no primitive element found");
        }

        exp_digits_.assign(gsize_or_one(), 0);
        log_of_digits_.assign(size, 0);
        Poly8 cur(deg, 0);
        cur[0] = 1;
        for (std::uint64_t k = 0; k < gsize_or_one(); ++k) {
            std::uint64_t code = digits_of(cur);
            exp_digits_[k] = code;
            log_of_digits_[code] = (ff)(1 + k);
            cur = poly_mul_mod(cur, g, f);
        }
        if (digits_of(cur) != 1) throw std::logic_error("generator order mismatch");

        // Zech table: zech_[k] = log(1 + g^k), sentinel when 1 + g^k = 0
        zech_.assign(gsize_or_one(), kZechMinusOne);
        for (std::uint64_t k = 0; k < gsize_or_one(); ++k) {
            std::uint64_t code = exp_digits_[k];
            std::uint64_t low = code % p;
            std::uint64_t code1 = code - low + (low + 1) % p;  // add 1 to the constant digit
            zech_[k] = (code1 == 0) ? kZechMinusOne : (ff)(log_of_digits_[code1] - 1);
        }
    }
};

// ---- small dense matrices over an FqField ----

struct FMatrix {
    std::uint8_t n = 0;                 // square, n <= 3 for group elements
    std::array<ff, 9> e{};              // row-major

    ff at(unsigned i, unsigned j) const { return e[i * n + j]; }
    ff& at(unsigned i, unsigned j) { return e[i * n + j]; }

    static FMatrix identity(std::uint8_t n) {
        FMatrix m;
        m.n = n;
        for (unsigned i = 0; i < n; ++i) m.at(i, i) = 1;
        return m;
    }
    friend bool operator==(const FMatrix& a, const FMatrix& b) {
        return a.n == b.n && a.e == b.e;
    }
};

inline FMatrix fmat_mul(const FqField& F, const FMatrix& a, const FMatrix& b) {
    FMatrix c;
    c.n = a.n;
    for (unsigned i = 0; i < a.n; ++i)
        for (unsigned j = 0; j < a.n; ++j) {
            ff s = 0;
            for (unsigned k = 0; k < a.n; ++k) s = F.add(s, F.mul(a.at(i, k), b.at(k, j)));
            c.at(i, j) = s;
        }
    return c;
}

inline ff fmat_det(const FqField& F, const FMatrix& m) {
    if (m.n == 1) return m.at(0, 0);
    if (m.n == 2)
        return F.sub(F.mul(m.at(0, 0), m.at(1, 1)), F.mul(m.at(0, 1), m.at(1, 0)));
    ff d = 0;
    d = F.add(d, F.mul(m.at(0, 0), F.sub(F.mul(m.at(1, 1), m.at(2, 2)), F.mul(m.at(1, 2), m.at(2, 1)))));
    d = F.sub(d, F.mul(m.at(0, 1), F.sub(F.mul(m.at(1, 0), m.at(2, 2)), F.mul(m.at(1, 2), m.at(2, 0)))));
    d = F.add(d, F.mul(m.at(0, 2), F.sub(F.mul(m.at(1, 0), m.at(2, 1)), F.mul(m.at(1, 1), m.at(2, 0)))));
    return d;
}

inline FMatrix fmat_inv(const FqField& F, const FMatrix& m) {
    FMatrix inv;
    inv.n = m.n;
    if (m.n == 1) {
        inv.at(0, 0) = F.inv(m.at(0, 0));
        return inv;
    }
    // Gauss-Jordan on [m | I]
    std::array<std::array<ff, 6>, 3> w{};
    unsigned n = m.n;
    for (unsigned i = 0; i < n; ++i) {
        for (unsigned j = 0; j < n; ++j) w[i][j] = m.at(i, j);
        for (unsigned j = 0; j < n; ++j) w[i][n + j] = (i == j) ? F.one() : 0;
    }
    for (unsigned c = 0; c < n; ++c) {
        unsigned piv = c;
        while (piv < n && F.is_zero(w[piv][c])) ++piv;
        if (piv == n) throw std::domain_error("singular matrix");
        std::swap(w[piv], w[c]);
        ff ic = F.inv(w[c][c]);
        for (unsigned j = 0; j < 2 * n; ++j) w[c][j] = F.mul(w[c][j], ic);
        for (unsigned r = 0; r < n; ++r) {
            if (r == c || F.is_zero(w[r][c])) continue;
            ff f = w[r][c];
            for (unsigned j = 0; j < 2 * n; ++j) w[r][j] = F.sub(w[r][j], F.mul(f, w[c][j]));
        }
    }
    for (unsigned i = 0; i < n; ++i)
        for (unsigned j = 0; j < n; ++j) inv.at(i, j) = w[i][n + j];
    return inv;
}

inline FMatrix fmat_pow(const FqField& F, FMatrix a, Int e) {
    FMatrix r = FMatrix::identity(a.n);
    if (e < 0) { a = fmat_inv(F, a); e = -e; }
    while (e > 0) {
        if (mpz_odd_p(e.get_mpz_t())) r = fmat_mul(F, r, a);
        a = fmat_mul(F, a, a);
        e >>= 1;
    }
    return r;
}

inline FMatrix fmat_frobenius(const FqField& F, const FMatrix& m, std::uint64_t qpow) {
    FMatrix r = m;
    for (auto& x : r.e)
        if (x) x = F.pow(x, Int((unsigned long)qpow));
    return r;
}

// Generic rank / kernel over the field for rectangular matrices (vectors of rows).
inline unsigned frank(const FqField& F, std::vector<std::vector<ff>> m) {
    unsigned rank = 0;
    std::size_t rows = m.size(), cols = rows ? m[0].size() : 0;
    for (std::size_t c = 0; c < cols && rank < rows; ++c) {
        std::size_t piv = rank;
        while (piv < rows && F.is_zero(m[piv][c])) ++piv;
        if (piv == rows) continue;
        std::swap(m[piv], m[rank]);
        ff ic = F.inv(m[rank][c]);
        for (std::size_t j = c; j < cols; ++j) m[rank][j] = F.mul(m[rank][j], ic);
        for (std::size_t r = 0; r < rows; ++r) {
            if (r == rank || F.is_zero(m[r][c])) continue;
            ff f = m[r][c];
            for (std::size_t j = c; j < cols; ++j) m[r][j] = F.sub(m[r][j], F.mul(f, m[rank][j]));
        }
        ++rank;
    }
    return rank;
}

// Basis of the right kernel of m (rows x cols).
inline std::vector<std::vector<ff>> fkernel(const FqField& F, std::vector<std::vector<ff>> m) {
    std::size_t rows = m.size(), cols = rows ? m[0].size() : 0;
    std::vector<long> pivot_of_col(cols, -1);
    unsigned rank = 0;
    for (std::size_t c = 0; c < cols && rank < rows; ++c) {
        std::size_t piv = rank;
        while (piv < rows && F.is_zero(m[piv][c])) ++piv;
        if (piv == rows) continue;
        std::swap(m[piv], m[rank]);
        ff ic = F.inv(m[rank][c]);
        for (std::size_t j = c; j < cols; ++j) m[rank][j] = F.mul(m[rank][j], ic);
        for (std::size_t r = 0; r < rows; ++r) {
            if (r == rank || F.is_zero(m[r][c])) continue;
            ff f = m[r][c];
            for (std::size_t j = c; j < cols; ++j) m[r][j] = F.sub(m[r][j], F.mul(f, m[rank][j]));
        }
        pivot_of_col[c] = rank;
        ++rank;
    }
    std::vector<std::vector<ff>> basis;
    for (std::size_t c = 0; c < cols; ++c) {
        if (pivot_of_col[c] >= 0) continue;
        std::vector<ff> v(cols, 0);
        v[c] = F.one();
        for (std::size_t c2 = 0; c2 < cols; ++c2)
            if (pivot_of_col[c2] >= 0) v[c2] = F.neg(m[(std::size_t)pivot_of_col[c2]][c]);
        basis.push_back(std::move(v));
    }
    return basis;
}

}  // namespace curtis
