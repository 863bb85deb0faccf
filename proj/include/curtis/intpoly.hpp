// Dense univariate polynomials over Z, just enough for cyclotomic polynomials,
// Kostka-Foulkes polynomials and Green polynomial evaluation.
#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <mutex>
#include <stdexcept>
#include <string>
#include <vector>

#include "curtis/rational.hpp"

namespace curtis {

struct IntPoly {
    std::vector<Int> c;  // c[i] = coefficient of x^i, trailing zeros stripped

    IntPoly() = default;
    explicit IntPoly(std::vector<Int> coeffs) : c(std::move(coeffs)) { strip(); }
    static IntPoly constant(Int v) { return IntPoly(std::vector<Int>{std::move(v)}); }
    static IntPoly monomial(Int v, std::size_t deg) {
        std::vector<Int> co(deg + 1, 0);
        co[deg] = std::move(v);
        return IntPoly(std::move(co));
    }

    void strip() {
        while (!c.empty() && c.back() == 0) c.pop_back();
    }
    bool is_zero() const { return c.empty(); }
    long degree() const { return c.empty() ? -1 : (long)c.size() - 1; }
    const Int& operator[](std::size_t i) const {
        static const Int zero = 0;
        return i < c.size() ? c[i] : zero;
    }

    friend IntPoly operator+(const IntPoly& a, const IntPoly& b) {
        std::vector<Int> r(std::max(a.c.size(), b.c.size()), 0);
        for (std::size_t i = 0; i < a.c.size(); ++i) r[i] += a.c[i];
        for (std::size_t i = 0; i < b.c.size(); ++i) r[i] += b.c[i];
        return IntPoly(std::move(r));
    }
    friend IntPoly operator-(const IntPoly& a, const IntPoly& b) {
        std::vector<Int> r(std::max(a.c.size(), b.c.size()), 0);
        for (std::size_t i = 0; i < a.c.size(); ++i) r[i] += a.c[i];
        for (std::size_t i = 0; i < b.c.size(); ++i) r[i] -= b.c[i];
        return IntPoly(std::move(r));
    }
    friend IntPoly operator*(const IntPoly& a, const IntPoly& b) {
        if (a.is_zero() || b.is_zero()) return IntPoly();
        std::vector<Int> r(a.c.size() + b.c.size() - 1, 0);
        for (std::size_t i = 0; i < a.c.size(); ++i) {
            if (a.c[i] == 0) continue;
            for (std::size_t j = 0; j < b.c.size(); ++j)
                if (b.c[j] != 0) r[i + j] += a.c[i] * b.c[j];
        }
        return IntPoly(std::move(r));
    }
    friend bool operator==(const IntPoly& a, const IntPoly& b) { return a.c == b.c; }

    // Exact division, throws if the remainder is nonzero or divisor is not monic-friendly.
    friend IntPoly exact_div(const IntPoly& a, const IntPoly& b) {
        if (b.is_zero()) throw std::invalid_argument("division by zero polynomial");
        std::vector<Int> rem = a.c;
        long db = b.degree();
        if ((long)rem.size() - 1 < db) {
            if (a.is_zero()) return IntPoly();
            throw std::invalid_argument("exact_div: degree too small");
        }
        std::vector<Int> q((long)rem.size() - db, 0);
        for (long i = (long)rem.size() - 1; i >= db; --i) {
            if (rem[i] == 0) continue;
            Int f = rem[i] / b.c[db];
            if (f * b.c[db] != rem[i]) throw std::invalid_argument("exact_div: not exact");
            q[i - db] = f;
            for (long j = 0; j <= db; ++j) rem[i - db + j] -= f * b.c[j];
        }
        for (const Int& v : rem)
            if (v != 0) throw std::invalid_argument("exact_div: nonzero remainder");
        return IntPoly(std::move(q));
    }

    Int eval(const Int& x) const {
        Int r = 0;
        for (std::size_t i = c.size(); i-- > 0;) r = r * x + c[i];
        return r;
    }

    // p(x) -> x^shift * p(1/x), valid when shift >= degree.
    IntPoly reverse_shift(std::size_t shift) const {
        if ((long)shift < degree()) throw std::invalid_argument("reverse_shift: shift < degree");
        std::vector<Int> r(shift + 1, 0);
        for (std::size_t i = 0; i < c.size(); ++i) r[shift - i] = c[i];
        return IntPoly(std::move(r));
    }

    std::string str() const {
        if (is_zero()) return "0";
        std::string s;
        for (std::size_t i = c.size(); i-- > 0;) {
            if (c[i] == 0) continue;
            if (!s.empty()) s += (c[i] > 0 ? " + " : " - ");
            else if (c[i] < 0) s += "-";
            Int a = abs(c[i]);
            if (i == 0) s += a.get_str();
            else {
                if (a != 1) s += a.get_str() + "*";
                s += "t";
                if (i > 1) s += "^" + std::to_string(i);
            }
        }
        return s;
    }
};

// m-th cyclotomic polynomial via Phi_m = (x^m - 1) / prod_{d | m, d < m} Phi_d.
inline const IntPoly& cyclotomic_polynomial(std::uint64_t m) {
    static std::map<std::uint64_t, IntPoly> cache;
    static std::mutex mtx;
    std::lock_guard<std::mutex> lock(mtx);
    auto it = cache.find(m);
    if (it != cache.end()) return it->second;
    std::function<const IntPoly&(std::uint64_t)> get = [&](std::uint64_t k) -> const IntPoly& {
        auto jt = cache.find(k);
        if (jt != cache.end()) return jt->second;
        std::vector<Int> xm(k + 1, 0);
        xm[0] = -1;
        xm[k] = 1;
        IntPoly num{std::move(xm)};
        for (std::uint64_t d : divisors(k))
            if (d < k) num = exact_div(num, get(d));
        return cache.emplace(k, std::move(num)).first->second;
    };
    return get(m);
}

}  // namespace curtis
