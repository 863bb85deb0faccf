// Symmetric group and symmetric function combinatorics: partitions, S_n
// characters (Murnaghan-Nakayama), Kostka-Foulkes polynomials via the charge
// statistic, Green polynomials for general linear and unitary groups, and
// F-twisted class data for Weyl groups of Levi factors.
#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <mutex>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "curtis/intpoly.hpp"
#include "curtis/rational.hpp"

namespace curtis {

using Partition = std::vector<unsigned>;  // weakly decreasing positive parts

inline unsigned partition_sum(const Partition& p) {
    unsigned s = 0;
    for (unsigned x : p) s += x;
    return s;
}

inline std::vector<Partition> partitions_of(unsigned n) {
    std::vector<Partition> out;
    Partition cur;
    std::function<void(unsigned, unsigned)> rec = [&](unsigned rem, unsigned maxpart) {
        if (rem == 0) { out.push_back(cur); return; }
        for (unsigned k = std::min(rem, maxpart); k >= 1; --k) {
            cur.push_back(k);
            rec(rem - k, k);
            cur.pop_back();
        }
    };
    rec(n, n == 0 ? 1 : n);
    return out;
}

// n(lambda) = sum (i-1) lambda_i
inline unsigned partition_n(const Partition& p) {
    unsigned s = 0;
    for (std::size_t i = 0; i < p.size(); ++i) s += (unsigned)i * p[i];
    return s;
}

// Centralizer order of a cycle type in S_n: prod i^{m_i} m_i!
inline std::uint64_t cycle_type_centralizer(const Partition& mu) {
    std::map<unsigned, unsigned> mult;
    for (unsigned x : mu) ++mult[x];
    std::uint64_t z = 1;
    for (auto& [len, m] : mult) {
        for (unsigned i = 0; i < m; ++i) z *= len;
        for (unsigned i = 2; i <= m; ++i) z *= i;
    }
    return z;
}

inline std::uint64_t factorial(unsigned n) {
    std::uint64_t f = 1;
    for (unsigned i = 2; i <= n; ++i) f *= i;
    return f;
}

// (-1)^{n - #parts}: the sign character of S_n on cycle type mu.
inline int cycle_type_sign(const Partition& mu) {
    return (partition_sum(mu) - (unsigned)mu.size()) % 2 == 0 ? 1 : -1;
}

// Parity of a permutation given in one-line form (image of i at word[i]).
inline int sign_parity(const std::vector<unsigned>& word) {
    std::size_t n = word.size();
    std::vector<bool> seen(n, false);
    unsigned cycles = 0;
    for (std::size_t i = 0; i < n; ++i) {
        if (seen[i]) continue;
        ++cycles;
        std::size_t j = i;
        while (!seen[j]) { seen[j] = true; j = word[j]; }
    }
    return ((n - cycles) % 2 == 0) ? 1 : -1;
}

// ---- Murnaghan-Nakayama ----

// chi^lambda evaluated at cycle type mu, |lambda| = |mu|.
inline long long sn_character(const Partition& lambda, const Partition& mu) {
    if (partition_sum(lambda) != partition_sum(mu))
        throw std::invalid_argument("sn_character: size mismatch");
    // beta-set recursion on border strips
    std::function<long long(std::vector<long long>, std::size_t)> rec =
        [&](std::vector<long long> beta, std::size_t k) -> long long {
        if (k == mu.size()) return 1;
        long long r = mu[k];
        long long total = 0;
        for (std::size_t i = 0; i < beta.size(); ++i) {
            long long nb = beta[i] - r;
            if (nb < 0) continue;
            bool clash = false;
            std::size_t crossings = 0;
            for (std::size_t j = 0; j < beta.size(); ++j) {
                if (j == i) continue;
                if (beta[j] == nb) { clash = true; break; }
                if (beta[j] < beta[i] && beta[j] > nb) ++crossings;
            }
            if (clash) continue;
            std::vector<long long> nbeta = beta;
            nbeta[i] = nb;
            long long sgn = (crossings % 2 == 0) ? 1 : -1;
            total += sgn * rec(std::move(nbeta), k + 1);
        }
        return total;
    };
    std::size_t rows = lambda.size();
    std::vector<long long> beta(rows);
    for (std::size_t i = 0; i < rows; ++i) beta[i] = (long long)lambda[i] + (long long)(rows - 1 - i);
    // sort mu descending for mild pruning (any order is valid)
    return rec(std::move(beta), 0);
}

// ---- Kostka-Foulkes via charge ----

namespace detail {

// charge of a word with dominant (partition) content, letters 1-based
inline unsigned word_charge(std::vector<unsigned> w) {
    unsigned total = 0;
    while (!w.empty()) {
        unsigned maxletter = *std::max_element(w.begin(), w.end());
        // extract a standard subword: rightmost 1, then nearest letter k+1
        // strictly to the left (cyclic wrap to the rightmost occurrence)
        std::vector<std::size_t> pos(maxletter + 1, SIZE_MAX);
        long cur = -1;
        for (std::size_t i = w.size(); i-- > 0;)
            if (w[i] == 1) { cur = (long)i; break; }
        if (cur < 0) throw std::logic_error("word_charge: content not dominant");
        pos[1] = (std::size_t)cur;
        unsigned label = 0, charge = 0;
        for (unsigned letter = 2; letter <= maxletter; ++letter) {
            long found = -1;
            for (long i = cur - 1; i >= 0; --i)
                if (w[(std::size_t)i] == letter) { found = i; break; }
            bool wrapped = false;
            if (found < 0) {
                for (std::size_t i = w.size(); i-- > 0;)
                    if (w[i] == letter) { found = (long)i; wrapped = true; break; }
                if (found < 0) throw std::logic_error("word_charge: missing letter");
            }
            if ((std::size_t)found > (std::size_t)cur) label += 1;
            (void)wrapped;
            charge += label;
            pos[letter] = (std::size_t)found;
            cur = found;
        }
        total += charge;
        // remove the extracted subword
        std::vector<bool> kill(w.size(), false);
        for (unsigned letter = 1; letter <= maxletter; ++letter) kill[pos[letter]] = true;
        std::vector<unsigned> rest;
        for (std::size_t i = 0; i < w.size(); ++i)
            if (!kill[i]) rest.push_back(w[i]);
        w = std::move(rest);
    }
    return total;
}

// enumerate semistandard tableaux of shape lambda, content mu; call f(reading word)
template <typename F>
inline void for_each_ssyt(const Partition& lambda, const Partition& mu, F&& f) {
    std::size_t rows = lambda.size();
    std::vector<std::vector<unsigned>> t(rows);
    for (std::size_t i = 0; i < rows; ++i) t[i].assign(lambda[i], 0);
    std::vector<unsigned> remaining(mu.begin(), mu.end());
    std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t r, std::size_t c) {
        if (r == rows) {
            std::vector<unsigned> word;
            for (std::size_t i = rows; i-- > 0;)
                for (unsigned x : t[i]) word.push_back(x);
            f(word);
            return;
        }
        std::size_t nr = r, nc = c + 1;
        if (nc >= t[r].size()) { nr = r + 1; nc = 0; }
        unsigned lo = 1;
        if (c > 0) lo = std::max(lo, t[r][c - 1]);          // rows weakly increase
        if (r > 0) lo = std::max(lo, t[r - 1][c] + 1);      // columns strictly increase
        for (unsigned v = lo; v <= remaining.size(); ++v) {
            if (remaining[v - 1] == 0) continue;
            t[r][c] = v;
            --remaining[v - 1];
            rec(nr, nc);
            ++remaining[v - 1];
        }
        t[r][c] = 0;
    };
    if (rows == 0) {
        std::vector<unsigned> empty;
        f(empty);
        return;
    }
    rec(0, 0);
}

}  // namespace detail

// K_{lambda,mu}(t) = sum over SSYT of shape lambda, content mu of t^{charge}.
inline IntPoly kostka_foulkes(const Partition& lambda, const Partition& mu) {
    if (partition_sum(lambda) != partition_sum(mu))
        throw std::invalid_argument("kostka_foulkes: size mismatch");
    std::vector<Int> coeffs;
    detail::for_each_ssyt(lambda, mu, [&](const std::vector<unsigned>& word) {
        unsigned c = detail::word_charge(word);
        if (coeffs.size() <= c) coeffs.resize(c + 1, Int(0));
        coeffs[c] += 1;
    });
    return IntPoly(std::move(coeffs));
}

// ---- Green polynomials ----

// Q^{G}_{T_rho}(u_lambda) as a polynomial in q for GL_n:
//   q^{n(lambda)} sum_mu chi^mu(rho) K_{mu,lambda}(1/q).
// The unitary value is the same polynomial evaluated at -q (Ennola twist); the
// torus label rho is the partition with |T^F| = prod (q^{rho_i} - (-1)^{rho_i}).
inline const IntPoly& green_polynomial_gl(const Partition& torus_rho, const Partition& unip_lambda) {
    static std::map<std::pair<Partition, Partition>, IntPoly> cache;
    static std::mutex mtx;
    std::lock_guard<std::mutex> lock(mtx);
    auto key = std::make_pair(torus_rho, unip_lambda);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    unsigned n = partition_sum(torus_rho);
    if (partition_sum(unip_lambda) != n)
        throw std::invalid_argument("green_polynomial: size mismatch");
    unsigned nl = partition_n(unip_lambda);
    IntPoly total;
    for (const Partition& mu : partitions_of(n)) {
        long long chi = sn_character(mu, torus_rho);
        if (chi == 0) continue;
        IntPoly K = kostka_foulkes(mu, unip_lambda);
        // q^{n(lambda)} K(1/q)
        IntPoly flipped = K.reverse_shift(nl);
        total = total + IntPoly::constant(Int((long)chi)) * flipped;
    }
    return cache.emplace(key, std::move(total)).first->second;
}

enum class Family : std::uint8_t { GL, U, SL };

inline Int green_value(Family fam, const Partition& torus_rho, const Partition& unip_lambda,
                       const Int& q) {
    const IntPoly& P = green_polynomial_gl(torus_rho, unip_lambda);
    if (fam == Family::U) return P.eval(-q);
    return P.eval(q);
}

// ---- F-twisted Weyl data for Levi factors ----

// One Levi factor: GL_m over F_{q^d} (fam GL), or U_m over F_{q^d} (fam U,
// d odd). The factor's Weyl group is (S_m)^d with cyclic F-twist, composed
// with conjugation by the longest element for unitary factors. F-classes are
// labelled by partitions of m via the folded cycle type.
struct WeylFactor {
    Family fam = Family::GL;
    unsigned m = 1;  // rank of the factor
    unsigned d = 1;  // field extension degree over the ambient base field
};

struct WeylFClass {
    std::vector<Partition> rho;  // one partition of m_i per factor
    std::uint64_t size = 1;      // F-class size in W_L
    int sign = 1;                // (-1)^{l(w)} for any representative
};

inline std::uint64_t weyl_order(const std::vector<WeylFactor>& factors) {
    std::uint64_t o = 1;
    for (const auto& f : factors)
        for (unsigned i = 0; i < f.d; ++i) o *= factorial(f.m);
    return o;
}

inline std::vector<WeylFClass> weyl_f_classes(const std::vector<WeylFactor>& factors) {
    std::vector<WeylFClass> out{WeylFClass{}};
    for (const auto& f : factors) {
        std::vector<WeylFClass> next;
        std::uint64_t wsize = 1;
        for (unsigned i = 0; i < f.d; ++i) wsize *= factorial(f.m);
        for (const Partition& rho : partitions_of(f.m)) {
            std::uint64_t clsize = wsize / cycle_type_centralizer(rho);
            int sgn = cycle_type_sign(rho);
            if (f.fam == Family::U && (f.m / 2) % 2 == 1) sgn = -sgn;  // sign of w0
            for (const auto& base : out) {
                WeylFClass c = base;
                c.rho.push_back(rho);
                c.size *= clsize;
                c.sign *= sgn;
                next.push_back(std::move(c));
            }
        }
        out = std::move(next);
    }
    return out;
}

// F-stable irreducible characters of W_L are labelled by partition tuples.
inline std::vector<std::vector<Partition>> weyl_irr_labels(const std::vector<WeylFactor>& factors) {
    std::vector<std::vector<Partition>> out{{}};
    for (const auto& f : factors) {
        std::vector<std::vector<Partition>> next;
        for (const Partition& lam : partitions_of(f.m))
            for (const auto& base : out) {
                auto t = base;
                t.push_back(lam);
                next.push_back(std::move(t));
            }
        out = std::move(next);
    }
    return out;
}

// Extension value chi~(wF) on the F-class labelled rho: product of S_m
// character values at the folded cycle types (the longest-element twist of
// unitary factors is folded into the class label).
inline long long weyl_ext_character(const std::vector<Partition>& chi,
                                    const WeylFClass& cls) {
    long long v = 1;
    for (std::size_t i = 0; i < chi.size(); ++i) v *= sn_character(chi[i], cls.rho[i]);
    return v;
}

}  // namespace curtis
