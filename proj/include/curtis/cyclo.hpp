// Exact arithmetic in cyclotomic fields Q(zeta_m), power-basis representation
// modulo the m-th cyclotomic polynomial. Values are immutable; contexts are
// shared and cached per modulus.
#pragma once

#include <cstdint>
#include <memory>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include "curtis/intpoly.hpp"
#include "curtis/rational.hpp"

namespace curtis {

struct CycloContext {
    std::uint64_t m;
    std::size_t phi;
    IntPoly poly;  // Phi_m, monic of degree phi
    // power_red[k - phi] = coordinates of zeta^k in the power basis, phi <= k < m (m > 1)
    std::vector<std::vector<Int>> power_red;

    explicit CycloContext(std::uint64_t mm) : m(mm), poly(cyclotomic_polynomial(mm)) {
        phi = (std::size_t)poly.degree();
        std::size_t top = (m > phi) ? (std::size_t)(m - phi) : 0;
        power_red.reserve(top);
        std::vector<Int> cur(phi, 0);  // x^phi reduced: -(lower coefficients of Phi)
        for (std::size_t j = 0; j < phi; ++j) cur[j] = -poly[j];
        for (std::size_t k = 0; k < top; ++k) {
            power_red.push_back(cur);
            // multiply by x, reduce the overflow coefficient
            Int head = cur[phi - 1];
            for (std::size_t j = phi - 1; j > 0; --j) cur[j] = cur[j - 1];
            cur[0] = 0;
            if (head != 0)
                for (std::size_t j = 0; j < phi; ++j) cur[j] += head * (-poly[j]);
        }
    }
};

inline std::shared_ptr<const CycloContext> cyclo_context(std::uint64_t m) {
    static std::unordered_map<std::uint64_t, std::shared_ptr<const CycloContext>> cache;
    static std::mutex mtx;
    std::lock_guard<std::mutex> lock(mtx);
    auto it = cache.find(m);
    if (it != cache.end()) return it->second;
    auto ctx = std::make_shared<const CycloContext>(m);
    cache.emplace(m, ctx);
    return ctx;
}

class Cyclo {
  public:
    Cyclo() : m_(1), a_(1, Rat(0)) {}
    explicit Cyclo(const Rat& r, std::uint64_t m = 1)
        : m_(m), a_((std::size_t)euler_phi(m), Rat(0)) {
        a_[0] = r;
    }
    Cyclo(std::uint64_t m, std::vector<Rat> coords) : m_(m), a_(std::move(coords)) {
        if (a_.size() != euler_phi(m)) throw std::invalid_argument("coordinate length != phi(m)");
    }
    static Cyclo zero(std::uint64_t m = 1) { return Cyclo(Rat(0), m); }
    static Cyclo one(std::uint64_t m = 1) { return Cyclo(Rat(1), m); }

    std::uint64_t modulus() const { return m_; }
    const std::vector<Rat>& coords() const { return a_; }

    bool is_zero() const {
        for (const Rat& x : a_)
            if (x != 0) return false;
        return true;
    }
    bool is_rational() const {
        for (std::size_t j = 1; j < a_.size(); ++j)
            if (a_[j] != 0) return false;
        return true;
    }
    Rat rational_part() const {
        if (!is_rational()) throw std::domain_error("value is not rational");
        return a_[0];
    }

    // Lift into Q(zeta_M); m must divide M.
    Cyclo lifted(std::uint64_t M) const {
        if (M == m_) return *this;
        if (M % m_ != 0) throw std::invalid_argument("lift target not a multiple of modulus");
        auto ctx = cyclo_context(M);
        std::vector<Rat> out(ctx->phi, Rat(0));
        std::uint64_t step = M / m_;
        for (std::size_t j = 0; j < a_.size(); ++j) {
            if (a_[j] == 0) continue;
            accumulate_power(*ctx, out, (std::uint64_t)j * step % M, a_[j]);
        }
        return Cyclo(M, std::move(out));
    }

    friend Cyclo operator+(const Cyclo& x, const Cyclo& y) {
        auto [a, b] = aligned(x, y);
        for (std::size_t j = 0; j < b.a_.size(); ++j) a.a_[j] += b.a_[j];
        return a;
    }
    friend Cyclo operator-(const Cyclo& x, const Cyclo& y) {
        auto [a, b] = aligned(x, y);
        for (std::size_t j = 0; j < b.a_.size(); ++j) a.a_[j] -= b.a_[j];
        return a;
    }
    Cyclo operator-() const {
        Cyclo r = *this;
        for (Rat& x : r.a_) x = -x;
        return r;
    }
    friend Cyclo operator*(const Cyclo& x, const Cyclo& y) {
        auto [a, b] = aligned(x, y);
        auto ctx = cyclo_context(a.m_);
        std::size_t phi = ctx->phi;
        std::vector<Rat> conv(2 * phi - 1, Rat(0));
        for (std::size_t i = 0; i < phi; ++i) {
            if (a.a_[i] == 0) continue;
            for (std::size_t j = 0; j < phi; ++j)
                if (b.a_[j] != 0) conv[i + j] += a.a_[i] * b.a_[j];
        }
        std::vector<Rat> out(conv.begin(), conv.begin() + phi);
        for (std::size_t k = phi; k < conv.size(); ++k)
            if (conv[k] != 0) accumulate_power(*ctx, out, k, conv[k]);
        return Cyclo(a.m_, std::move(out));
    }
    friend Cyclo operator*(const Rat& s, const Cyclo& x) {
        Cyclo r = x;
        for (Rat& v : r.a_) v *= s;
        return r;
    }
    friend Cyclo operator*(const Cyclo& x, const Rat& s) { return s * x; }
    Cyclo& operator+=(const Cyclo& y) { return *this = *this + y; }
    Cyclo& operator-=(const Cyclo& y) { return *this = *this - y; }
    Cyclo& operator*=(const Cyclo& y) { return *this = *this * y; }

    friend bool operator==(const Cyclo& x, const Cyclo& y) {
        if (x.m_ == y.m_) return x.a_ == y.a_;
        auto [a, b] = aligned(x, y);
        return a.a_ == b.a_;
    }
    friend bool operator!=(const Cyclo& x, const Cyclo& y) { return !(x == y); }

    std::string str() const {
        std::ostringstream os;
        os << "cyclo(m=" << m_ << ";";
        for (std::size_t j = 0; j < a_.size(); ++j) {
            if (j) os << ",";
            os << to_string(a_[j]);
        }
        os << ")";
        return os.str();
    }

    static void accumulate_power(const CycloContext& ctx, std::vector<Rat>& out,
                                 std::uint64_t k, const Rat& coeff) {
        k %= ctx.m;
        if (k < ctx.phi) {
            out[(std::size_t)k] += coeff;
            return;
        }
        const auto& row = ctx.power_red[(std::size_t)(k - ctx.phi)];
        for (std::size_t j = 0; j < ctx.phi; ++j)
            if (row[j] != 0) out[j] += coeff * row[j];
    }

  private:
    static std::pair<Cyclo, Cyclo> aligned(const Cyclo& x, const Cyclo& y) {
        if (x.m_ == y.m_) return {x, y};
        std::uint64_t M = lcm_u64(x.m_, y.m_);
        return {x.lifted(M), y.lifted(M)};
    }

    std::uint64_t m_;
    std::vector<Rat> a_;
};

// zeta_m^k, reduced in Q(zeta_m).
inline Cyclo root_of_unity(std::int64_t k, std::uint64_t m) {
    if (m < 1) throw std::invalid_argument("root_of_unity: m must be positive");
    auto ctx = cyclo_context(m);
    std::vector<Rat> out(ctx->phi, Rat(0));
    std::int64_t kk = k % (std::int64_t)m;
    if (kk < 0) kk += (std::int64_t)m;
    Cyclo::accumulate_power(*ctx, out, (std::uint64_t)kk, Rat(1));
    return Cyclo(m, std::move(out));
}

// Complex conjugation zeta -> zeta^{-1} (a ring automorphism).
inline Cyclo conj(const Cyclo& x) {
    std::uint64_t m = x.modulus();
    auto ctx = cyclo_context(m);
    std::vector<Rat> out(ctx->phi, Rat(0));
    for (std::size_t j = 0; j < x.coords().size(); ++j) {
        if (x.coords()[j] == 0) continue;
        Cyclo::accumulate_power(*ctx, out, (m - (std::uint64_t)j % m) % m, x.coords()[j]);
    }
    return Cyclo(m, std::move(out));
}

// Multiplicative inverse via extended Euclid against Phi_m over Q.
inline Cyclo inverse(const Cyclo& x) {
    if (x.is_zero()) throw std::domain_error("inverse of zero");
    if (x.is_rational()) return Cyclo(Rat(1) / x.rational_part(), x.modulus());
    auto ctx = cyclo_context(x.modulus());
    using Poly = std::vector<Rat>;  // dense, may carry trailing zeros
    auto deg = [](const Poly& p) -> long {
        for (std::size_t i = p.size(); i-- > 0;)
            if (p[i] != 0) return (long)i;
        return -1;
    };
    Poly r0(ctx->phi + 1), r1(x.coords().begin(), x.coords().end());
    for (std::size_t i = 0; i <= ctx->phi; ++i) r0[i] = Rat(ctx->poly[i]);
    Poly s0{Rat(0)}, s1{Rat(1)};  // coefficients of x in the Bezout identity
    while (deg(r1) > 0) {
        // divide r0 by r1
        Poly q(std::max<long>(deg(r0) - deg(r1) + 1, 1), Rat(0));
        Poly rem = r0;
        long d1 = deg(r1);
        Rat lead = r1[(std::size_t)d1];
        for (long i = deg(rem); i >= d1; --i) {
            if (rem[(std::size_t)i] == 0) continue;
            Rat f = rem[(std::size_t)i] / lead;
            q[(std::size_t)(i - d1)] = f;
            for (long j = 0; j <= d1; ++j) rem[(std::size_t)(i - d1 + j)] -= f * r1[(std::size_t)j];
        }
        // (r0, r1) <- (r1, rem); (s0, s1) <- (s1, s0 - q*s1)
        Poly s2(std::max(s0.size(), q.size() + s1.size()), Rat(0));
        for (std::size_t i = 0; i < s0.size(); ++i) s2[i] = s0[i];
        for (std::size_t i = 0; i < q.size(); ++i) {
            if (q[i] == 0) continue;
            for (std::size_t j = 0; j < s1.size(); ++j) s2[i + j] -= q[i] * s1[j];
        }
        r0 = std::move(r1);
        r1 = std::move(rem);
        s0 = std::move(s1);
        s1 = std::move(s2);
    }
    long d = deg(r1);
    if (d != 0) throw std::domain_error("inverse: zero divisor (non-coprime with Phi_m)");
    Rat scale = Rat(1) / r1[0];
    std::vector<Rat> out(ctx->phi, Rat(0));
    for (std::size_t i = 0; i < s1.size() && i < out.size(); ++i) out[i] = s1[i] * scale;
    // s1 may exceed phi-1 in raw degree only via cancellation; verify
    for (std::size_t i = out.size(); i < s1.size(); ++i)
        if (s1[i] != 0) throw std::logic_error("inverse: unreduced Bezout coefficient");
    return Cyclo(x.modulus(), std::move(out));
}

// True iff p^k * x is an algebraic integer for some k >= 0. Decided on power-basis
// coordinates (the power basis is an integral basis for cyclotomic fields):
// every coordinate denominator must be a power of p. Rejects non-prime p.
inline bool p_integral(const Cyclo& x, const Int& p) {
    if (!is_prime(p)) throw std::invalid_argument("p_integral: p must be prime");
    for (const Rat& c : x.coords())
        if (!denominator_is_p_power(c, p)) return false;
    return true;
}

inline bool is_algebraic_integer(const Cyclo& x) {
    for (const Rat& c : x.coords())
        if (c.get_den() != 1) return false;
    return true;
}

// Power-basis coordinates in a fixed ambient modulus (Q-linear and injective).
inline std::vector<Rat> flatten(const Cyclo& x, std::uint64_t ambient_m) {
    if (ambient_m % x.modulus() != 0)
        throw std::invalid_argument("flatten: modulus does not divide ambient modulus");
    return x.lifted(ambient_m).coords();
}

// Express x in the subfield Q(zeta_sub) (sub | modulus); throws if x is not in it.
inline Cyclo to_modulus(const Cyclo& x, std::uint64_t sub) {
    if (x.modulus() == sub) return x;
    if (x.modulus() % sub != 0) return x.lifted(lcm_u64(x.modulus(), sub));
    std::size_t phi_sub = (std::size_t)euler_phi(sub);
    // basis images of zeta_sub^j inside Q(zeta_m), solved by Gaussian elimination
    auto ctx = cyclo_context(x.modulus());
    std::size_t phi_m = ctx->phi;
    std::vector<std::vector<Rat>> col(phi_sub);
    for (std::size_t j = 0; j < phi_sub; ++j)
        col[j] = root_of_unity((std::int64_t)j, sub).lifted(x.modulus()).coords();
    // solve sum_j c_j col[j] = x.coords()
    std::vector<std::vector<Rat>> aug(phi_m, std::vector<Rat>(phi_sub + 1, Rat(0)));
    for (std::size_t i = 0; i < phi_m; ++i) {
        for (std::size_t j = 0; j < phi_sub; ++j) aug[i][j] = col[j][i];
        aug[i][phi_sub] = x.coords()[i];
    }
    std::vector<long> pivot_col(phi_m, -1);
    std::size_t row = 0;
    for (std::size_t c = 0; c < phi_sub && row < phi_m; ++c) {
        std::size_t pr = row;
        while (pr < phi_m && aug[pr][c] == 0) ++pr;
        if (pr == phi_m) continue;
        std::swap(aug[pr], aug[row]);
        Rat inv = Rat(1) / aug[row][c];
        for (std::size_t j = c; j <= phi_sub; ++j) aug[row][j] *= inv;
        for (std::size_t r = 0; r < phi_m; ++r) {
            if (r == row || aug[r][c] == 0) continue;
            Rat f = aug[r][c];
            for (std::size_t j = c; j <= phi_sub; ++j) aug[r][j] -= f * aug[row][j];
        }
        pivot_col[row] = (long)c;
        ++row;
    }
    std::vector<Rat> out(phi_sub, Rat(0));
    for (std::size_t r = 0; r < row; ++r) out[(std::size_t)pivot_col[r]] = aug[r][phi_sub];
    for (std::size_t r = row; r < phi_m; ++r)
        if (aug[r][phi_sub] != 0) throw std::domain_error("to_modulus: value not in subfield");
    // consistency rows with pivots already zeroed; verify reconstruction
    return Cyclo(sub, std::move(out));
}

}  // namespace curtis
