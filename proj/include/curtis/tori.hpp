// F-stable maximal tori of GL_n(q), U_n(q), SL_2(q) up to rational conjugacy:
// explicit block constructions with eigenvalue coordinates, the torus duality
// dictionary via norm-compatible discrete logarithms, and the W(T)^F symmetry
// model for torus characters.
//
// A torus of folded type (k_1 >= k_2 >= ...) is assembled from cyclic parts:
//   GL/SL ambient: part k = F_{q^k}^x acting by multiplication on F_{q^k}/F_q;
//   U ambient, k odd: part mu_{q^k+1} acting on F_{q^{2k}}/F_{q^2}, unitary for
//     the trace hermitian form;
//   U ambient, k even: part F_{q^k}^x realized as diag(A, (A^(q))^-T) with A
//     the multiplication action on F_{q^k}/F_{q^2}, preserving a hyperbolic form.
// For U the assembled block form is transported to the fixed antidiagonal form
// by one global change of basis.
#pragma once

#include <set>
#include <unordered_map>

#include "curtis/class_function.hpp"

namespace curtis {

// ---- small generic linear algebra over the top field ----

// Coefficients of x in the given basis of the extension E/F (F of size sub):
// solved via the Frobenius-power system, so the coefficients land in F.
inline std::vector<ff> coords_in_basis(const FqField& F, ff x, const std::vector<ff>& basis,
                                       std::uint64_t sub) {
    std::size_t deg = basis.size();
    std::vector<std::vector<ff>> aug(deg, std::vector<ff>(deg + 1, 0));
    for (std::size_t i = 0; i < deg; ++i) {
        Int s = int_pow(Int((unsigned long)sub), (unsigned)i);
        for (std::size_t j = 0; j < deg; ++j) aug[i][j] = F.pow(basis[j], s);
        aug[i][deg] = F.pow(x, s);
    }
    for (std::size_t c = 0; c < deg; ++c) {
        std::size_t piv = c;
        while (piv < deg && F.is_zero(aug[piv][c])) ++piv;
        if (piv == deg) throw std::logic_error("coords_in_basis: singular basis system");
        std::swap(aug[piv], aug[c]);
        ff ic = F.inv(aug[c][c]);
        for (std::size_t j = c; j <= deg; ++j) aug[c][j] = F.mul(aug[c][j], ic);
        for (std::size_t r = 0; r < deg; ++r) {
            if (r == c || F.is_zero(aug[r][c])) continue;
            ff f = aug[r][c];
            for (std::size_t j = c; j <= deg; ++j) aug[r][j] = F.sub(aug[r][j], F.mul(f, aug[c][j]));
        }
    }
    std::vector<ff> out(deg);
    for (std::size_t j = 0; j < deg; ++j) {
        out[j] = aug[j][deg];
        if (!F.in_subfield(out[j], sub)) throw std::logic_error("coords_in_basis: not in subfield");
    }
    return out;
}

struct VMatrix {
    unsigned n = 0;
    std::vector<ff> e;
    VMatrix() = default;
    explicit VMatrix(unsigned n_) : n(n_), e(n_ * n_, 0) {}
    ff& at(unsigned i, unsigned j) { return e[i * n + j]; }
    ff at(unsigned i, unsigned j) const { return e[i * n + j]; }
    static VMatrix identity(unsigned n) {
        VMatrix m(n);
        for (unsigned i = 0; i < n; ++i) m.at(i, i) = 1;
        return m;
    }
};

inline VMatrix vmul(const FqField& F, const VMatrix& a, const VMatrix& b) {
    VMatrix c(a.n);
    for (unsigned i = 0; i < a.n; ++i)
        for (unsigned k = 0; k < a.n; ++k) {
            ff v = a.at(i, k);
            if (F.is_zero(v)) continue;
            for (unsigned j = 0; j < a.n; ++j)
                c.at(i, j) = F.add(c.at(i, j), F.mul(v, b.at(k, j)));
        }
    return c;
}

inline VMatrix vinv(const FqField& F, const VMatrix& m) {
    unsigned n = m.n;
    std::vector<std::vector<ff>> aug(n, std::vector<ff>(2 * n, 0));
    for (unsigned i = 0; i < n; ++i) {
        for (unsigned j = 0; j < n; ++j) aug[i][j] = m.at(i, j);
        aug[i][n + i] = F.one();
    }
    for (unsigned c = 0; c < n; ++c) {
        unsigned piv = c;
        while (piv < n && F.is_zero(aug[piv][c])) ++piv;
        if (piv == n) throw std::domain_error("vinv: singular");
        std::swap(aug[piv], aug[c]);
        ff ic = F.inv(aug[c][c]);
        for (unsigned j = 0; j < 2 * n; ++j) aug[c][j] = F.mul(aug[c][j], ic);
        for (unsigned r = 0; r < n; ++r) {
            if (r == c || F.is_zero(aug[r][c])) continue;
            ff f = aug[r][c];
            for (unsigned j = 0; j < 2 * n; ++j) aug[r][j] = F.sub(aug[r][j], F.mul(f, aug[c][j]));
        }
    }
    VMatrix inv(n);
    for (unsigned i = 0; i < n; ++i)
        for (unsigned j = 0; j < n; ++j) inv.at(i, j) = aug[i][n + j];
    return inv;
}

inline VMatrix vfrob(const FqField& F, const VMatrix& m, std::uint64_t q) {
    VMatrix r = m;
    for (auto& x : r.e)
        if (x) x = F.pow(x, Int((unsigned long)q));
    return r;
}

inline VMatrix vtranspose(const VMatrix& m) {
    VMatrix t(m.n);
    for (unsigned i = 0; i < m.n; ++i)
        for (unsigned j = 0; j < m.n; ++j) t.at(j, i) = m.at(i, j);
    return t;
}

inline bool preserves_hermitian(const FqField& F, const VMatrix& g, const VMatrix& H,
                                std::uint64_t q) {
    VMatrix lhs = vmul(F, vmul(F, vtranspose(vfrob(F, g, q)), H), g);
    return lhs.e == H.e;
}

// Orthonormal basis for a nondegenerate hermitian form H over F_{q^2}:
// returns Q with (Q^(q))^T H Q = I.
inline VMatrix hermitian_orthonormal_basis(const FqField& F, const VMatrix& H, std::uint64_t q) {
    unsigned n = H.n;
    std::uint64_t q2 = q * q;
    auto form = [&](const std::vector<ff>& x, const std::vector<ff>& y) {
        ff acc = 0;
        for (unsigned i = 0; i < n; ++i) {
            if (F.is_zero(x[i])) continue;
            ff xi = F.pow(x[i], Int((unsigned long)q));
            for (unsigned j = 0; j < n; ++j)
                acc = F.add(acc, F.mul(F.mul(xi, H.at(i, j)), y[j]));
        }
        return acc;
    };
    std::vector<ff> fq2{0};
    {
        std::uint64_t step = F.gsize / (q2 - 1);
        for (std::uint64_t k = 0; k < q2 - 1; ++k) fq2.push_back(F.from_dlog(k * step));
    }
    std::vector<std::vector<ff>> out;
    std::vector<std::vector<ff>> rem(n, std::vector<ff>(n, 0));
    for (unsigned i = 0; i < n; ++i) rem[i][i] = F.one();
    while (!rem.empty()) {
        std::vector<ff> v;
        for (auto& cand : rem)
            if (!F.is_zero(form(cand, cand))) { v = cand; break; }
        if (v.empty()) {
            bool found = false;
            for (std::size_t a = 0; a < rem.size() && !found; ++a)
                for (std::size_t b = 0; b < rem.size() && !found; ++b) {
                    if (a == b) continue;
                    for (ff d : fq2) {
                        if (F.is_zero(d)) continue;
                        std::vector<ff> cand = rem[a];
                        for (unsigned i = 0; i < n; ++i)
                            cand[i] = F.add(cand[i], F.mul(d, rem[b][i]));
                        if (!F.is_zero(form(cand, cand))) { v = cand; found = true; break; }
                    }
                }
            if (!found) throw std::logic_error("hermitian form degenerate on subspace");
        }
        ff c = form(v, v);
        if (!F.in_subfield(c, q)) throw std::logic_error("hermitian diagonal not in F_q");
        ff mu = F.from_subfield_dlog(F.subfield_dlog(c, q), q2);  // mu^{q+1} = c
        ff mu_inv = F.inv(mu);
        for (auto& x : v) x = F.mul(x, mu_inv);
        out.push_back(v);
        std::vector<std::vector<ff>> keep, rows;
        for (auto& w : rem) {
            std::vector<ff> w2 = w;
            ff f = form(v, w);
            if (!F.is_zero(f))
                for (unsigned i = 0; i < n; ++i) w2[i] = F.sub(w2[i], F.mul(f, v[i]));
            bool zero = true;
            for (ff x : w2) zero &= F.is_zero(x);
            if (zero) continue;
            rows.push_back(w2);
            if (frank(F, rows) == rows.size()) keep.push_back(std::move(w2));
            else rows.pop_back();
        }
        rem = std::move(keep);
    }
    if (out.size() != n) throw std::logic_error("hermitian basis: wrong count");
    VMatrix Q(n);
    for (unsigned j = 0; j < n; ++j)
        for (unsigned i = 0; i < n; ++i) Q.at(i, j) = out[j][i];
    return Q;
}

// P with H = (P^(q))^T J P for the antidiagonal form J.
inline VMatrix hermitian_transport(const FqField& F, const VMatrix& H, std::uint64_t q) {
    unsigned n = H.n;
    VMatrix J(n);
    for (unsigned i = 0; i < n; ++i) J.at(i, n - 1 - i) = F.one();
    VMatrix Q = hermitian_orthonormal_basis(F, H, q);
    VMatrix W = hermitian_orthonormal_basis(F, J, q);
    return vmul(F, W, vinv(F, Q));
}

// ---- torus data ----

struct TorusPart {
    unsigned k = 1;                 // folded part size (number of slots)
    bool u_ambient = false;
    bool u_odd = false;             // U ambient, k odd: mu_{q^k+1}
    bool sl_split = false;          // SL_2 split torus: diag(a, a^{-1})
    std::uint64_t N = 1;            // order of the cyclic part
    std::uint64_t coord_field = 2;  // field containing the coordinate
    ff gen = 0;                     // canonical generator
    int pairing_sign = 1;           // -1 for U-ambient even parts
    std::unordered_map<ff, std::uint64_t> dlog;

    std::uint64_t dlog_of(ff x) const {
        auto it = dlog.find(x);
        if (it == dlog.end()) throw std::domain_error("torus part: element outside part");
        return it->second;
    }
    bool in_part(ff x) const { return dlog.find(x) != dlog.end(); }
};

struct TorusDatum {
    std::shared_ptr<const GroupTable> G;
    Partition type;                       // folded type, weakly decreasing
    std::vector<TorusPart> parts;
    std::vector<std::uint32_t> elements;  // mixed-radix rank -> group element index
    std::unordered_map<std::uint32_t, std::uint64_t> rank_of;
    std::uint64_t order = 1;
    int epsilon = 1;
    std::uint64_t weyl_size = 1;
    std::vector<std::pair<unsigned, unsigned>> slots;  // (part, power index)
    std::vector<unsigned> sigma;                       // Frobenius permutation on slots

    std::vector<std::uint64_t> exps_of_rank(std::uint64_t r) const {
        std::vector<std::uint64_t> a(parts.size());
        for (std::size_t i = 0; i < parts.size(); ++i) {
            a[i] = r % parts[i].N;
            r /= parts[i].N;
        }
        return a;
    }
    std::uint64_t rank_of_exps(const std::vector<std::uint64_t>& a) const {
        std::uint64_t r = 0;
        for (std::size_t i = parts.size(); i-- > 0;) r = r * parts[i].N + (a[i] % parts[i].N);
        return r;
    }
    std::vector<std::uint64_t> exps_of_element(std::uint32_t idx) const {
        auto it = rank_of.find(idx);
        if (it == rank_of.end()) throw std::domain_error("element not in torus");
        return exps_of_rank(it->second);
    }

    // eigenvalue at a slot for part-coordinate value t
    ff slot_value(unsigned slot, ff t) const {
        const FqField& F = *G->F;
        auto [pi, j] = slots[slot];
        const TorusPart& P = parts[pi];
        if (P.sl_split) return j == 0 ? t : F.inv(t);
        ff v = t;
        for (unsigned s = 0; s < j; ++s) {
            v = F.pow(v, Int((unsigned long)G->spec.q));
            if (P.u_ambient) v = F.inv(v);
        }
        return v;
    }
};

using TorusChar = std::vector<std::uint64_t>;  // exponents against part generators

inline Cyclo torus_char_value(const TorusDatum& T, const TorusChar& theta,
                              const std::vector<std::uint64_t>& elem_exps, std::uint64_t m) {
    std::uint64_t acc = 0;
    for (std::size_t i = 0; i < T.parts.size(); ++i) {
        std::uint64_t Ni = T.parts[i].N;
        if (m % Ni != 0) throw std::logic_error("torus char: part order does not divide modulus");
        std::uint64_t contrib = (theta[i] % Ni) * (elem_exps[i] % Ni) % Ni;
        acc = (acc + contrib * (m / Ni)) % m;
    }
    return root_of_unity((std::int64_t)acc, m);
}

// Duality dictionary: the character of T^F matched to the element s of T^F.
inline TorusChar dual_torus_char(const TorusDatum& T, const std::vector<std::uint64_t>& s_exps) {
    TorusChar theta(T.parts.size());
    for (std::size_t i = 0; i < T.parts.size(); ++i) {
        std::uint64_t Ni = T.parts[i].N;
        std::uint64_t e = s_exps[i] % Ni;
        theta[i] = T.parts[i].pairing_sign > 0 ? e : (Ni - e) % Ni;
    }
    return theta;
}

namespace torus_detail {

inline VMatrix regrep(const FqField& F, ff t, const std::vector<ff>& basis, std::uint64_t sub) {
    unsigned k = (unsigned)basis.size();
    VMatrix A(k);
    for (unsigned j = 0; j < k; ++j) {
        auto col = coords_in_basis(F, F.mul(t, basis[j]), basis, sub);
        for (unsigned i = 0; i < k; ++i) A.at(i, j) = col[i];
    }
    return A;
}

inline std::vector<ff> power_basis(const FqField& F, std::uint64_t ext_size, unsigned deg) {
    ff w = F.subfield_gen(ext_size);
    std::vector<ff> b(deg);
    ff cur = F.one();
    for (unsigned j = 0; j < deg; ++j) { b[j] = cur; cur = F.mul(cur, w); }
    return b;
}

}  // namespace torus_detail

inline TorusDatum make_torus(std::shared_ptr<const GroupTable> Gp, Partition type) {
    const GroupTable& G = *Gp;
    const FqField& F = *G.F;
    std::uint64_t q = G.spec.q;
    std::sort(type.begin(), type.end(), std::greater<unsigned>());
    if (partition_sum(type) != G.spec.n) throw std::invalid_argument("torus type size");

    TorusDatum T;
    T.G = Gp;
    T.type = type;
    bool uamb = G.spec.family == Family::U;
    bool slamb = G.spec.family == Family::SL;

    auto fill_dlog = [&](TorusPart& P) {
        ff cur = F.one();
        for (std::uint64_t a = 0; a < P.N; ++a) {
            P.dlog.emplace(cur, a);
            cur = F.mul(cur, P.gen);
        }
        if (cur != F.one()) throw std::logic_error("torus part generator order mismatch");
    };

    if (slamb) {
        TorusPart P;
        P.k = 2;
        if (type == Partition{1, 1}) {
            P.sl_split = true;
            P.N = q - 1;
            P.coord_field = q;
            P.gen = F.subfield_gen(q);
        } else {
            P.N = q + 1;
            P.coord_field = q * q;
            P.gen = F.pow(F.subfield_gen(q * q), Int((unsigned long)(q - 1)));
        }
        fill_dlog(P);
        T.order = P.N;
        T.parts.push_back(std::move(P));
        T.epsilon = (type == Partition{1, 1}) ? -1 : 1;
        T.weyl_size = 2;
    } else {
        for (unsigned k : type) {
            TorusPart P;
            P.k = k;
            P.u_ambient = uamb;
            if (uamb) {
                P.u_odd = (k % 2 == 1);
                if (P.u_odd) {
                    P.N = pow_u64(q, k) + 1;
                    P.coord_field = pow_u64(q, 2 * k);
                    P.gen = F.inv(
                        F.pow(F.subfield_gen(P.coord_field), Int((unsigned long)(pow_u64(q, k) - 1))));
                    P.pairing_sign = 1;
                } else {
                    P.N = pow_u64(q, k) - 1;
                    P.coord_field = pow_u64(q, k);
                    P.gen = F.subfield_gen(P.coord_field);
                    P.pairing_sign = -1;
                }
            } else {
                P.N = pow_u64(q, k) - 1;
                P.coord_field = pow_u64(q, k);
                P.gen = F.subfield_gen(P.coord_field);
                P.pairing_sign = 1;
            }
            fill_dlog(P);
            T.order *= P.N;
            T.parts.push_back(std::move(P));
        }
        if (G.spec.family == Family::GL) {
            T.epsilon = (type.size() % 2 == 0) ? 1 : -1;
        } else {
            unsigned even = 0;
            for (unsigned k : type)
                if (k % 2 == 0) ++even;
            T.epsilon = (even % 2 == 0) ? 1 : -1;
        }
        std::map<unsigned, unsigned> mult;
        for (unsigned k : type) { T.weyl_size *= k; ++mult[k]; }
        for (auto& [k, m] : mult) T.weyl_size *= factorial(m);
    }

    // slots and the Frobenius slot permutation
    for (unsigned i = 0; i < T.parts.size(); ++i)
        for (unsigned j = 0; j < T.parts[i].k; ++j) T.slots.emplace_back(i, j);
    T.sigma.resize(T.slots.size());
    {
        unsigned base = 0;
        for (unsigned i = 0; i < T.parts.size(); ++i) {
            unsigned k = T.parts[i].k;
            for (unsigned j = 0; j < k; ++j)
                T.sigma[base + j] = T.parts[i].sl_split ? base + j : base + (j + 1) % k;
            base += k;
        }
    }

    // ---- block assembly ----
    unsigned n = G.spec.n;
    auto build_raw = [&](const std::vector<std::uint64_t>& exps) {
        VMatrix B(n);
        unsigned at = 0;
        for (std::size_t i = 0; i < T.parts.size(); ++i) {
            const TorusPart& P = T.parts[i];
            ff t = F.pow(P.gen, Int((unsigned long)exps[i]));
            if (slamb) {
                if (P.sl_split) {
                    B.at(0, 0) = t;
                    B.at(1, 1) = F.inv(t);
                } else {
                    auto basis = torus_detail::power_basis(F, q * q, 2);
                    VMatrix A = torus_detail::regrep(F, t, basis, q);
                    for (unsigned r = 0; r < 2; ++r)
                        for (unsigned c = 0; c < 2; ++c) B.at(r, c) = A.at(r, c);
                }
                at = n;
                continue;
            }
            unsigned k = P.k;
            if (!uamb) {
                auto basis = torus_detail::power_basis(F, P.coord_field, k);
                VMatrix A = torus_detail::regrep(F, t, basis, q);
                for (unsigned r = 0; r < k; ++r)
                    for (unsigned c = 0; c < k; ++c) B.at(at + r, at + c) = A.at(r, c);
            } else if (P.u_odd) {
                auto basis = torus_detail::power_basis(F, P.coord_field, k);
                VMatrix A = torus_detail::regrep(F, t, basis, q * q);
                for (unsigned r = 0; r < k; ++r)
                    for (unsigned c = 0; c < k; ++c) B.at(at + r, at + c) = A.at(r, c);
            } else {
                unsigned half = k / 2;
                auto basis = torus_detail::power_basis(F, P.coord_field, half);
                VMatrix A = torus_detail::regrep(F, t, basis, q * q);
                VMatrix C = vinv(F, vtranspose(vfrob(F, A, q)));
                for (unsigned r = 0; r < half; ++r)
                    for (unsigned c = 0; c < half; ++c) {
                        B.at(at + r, at + c) = A.at(r, c);
                        B.at(at + half + r, at + half + c) = C.at(r, c);
                    }
            }
            at += k;
        }
        return B;
    };

    VMatrix Pglob = VMatrix::identity(n), Pinv = VMatrix::identity(n);
    if (uamb) {
        VMatrix H(n);
        unsigned at = 0;
        for (const TorusPart& P : T.parts) {
            unsigned k = P.k;
            if (P.u_odd) {
                // trace hermitian form, first argument conjugated:
                // h(x, y) = Tr_{E/F_{q^2}}(x^{q^k} y)
                auto basis = torus_detail::power_basis(F, P.coord_field, k);
                std::uint64_t qk = pow_u64(q, k);
                for (unsigned i = 0; i < k; ++i)
                    for (unsigned j = 0; j < k; ++j) {
                        ff prod = F.mul(F.pow(basis[i], Int((unsigned long)qk)), basis[j]);
                        H.at(at + i, at + j) = F.trace(prod, P.coord_field, q * q);
                    }
            } else {
                unsigned half = k / 2;
                for (unsigned i = 0; i < half; ++i) {
                    H.at(at + i, at + half + i) = F.one();
                    H.at(at + half + i, at + i) = F.one();
                }
            }
            at += k;
        }
        // hermitian sanity: H^dagger = H
        for (unsigned i = 0; i < n; ++i)
            for (unsigned j = 0; j < n; ++j)
                if (H.at(j, i) != F.pow(H.at(i, j), Int((unsigned long)q)))
                    throw std::logic_error("torus form not hermitian");
        // generators must preserve the block form
        {
            std::vector<std::uint64_t> gexp(T.parts.size(), 0);
            for (std::size_t i = 0; i < T.parts.size(); ++i) {
                gexp.assign(T.parts.size(), 0);
                gexp[i] = 1;
                if (!preserves_hermitian(F, build_raw(gexp), H, q))
                    throw std::logic_error("torus block does not preserve its form");
            }
        }
        Pglob = hermitian_transport(F, H, q);
        Pinv = vinv(F, Pglob);
    }

    std::uint64_t total = T.order;
    T.elements.resize(total);
    for (std::uint64_t r = 0; r < total; ++r) {
        auto exps = T.exps_of_rank(r);
        VMatrix B = build_raw(exps);
        if (uamb) B = vmul(F, vmul(F, Pglob, B), Pinv);
        FMatrix M;
        M.n = (std::uint8_t)n;
        for (unsigned i = 0; i < n; ++i)
            for (unsigned j = 0; j < n; ++j) M.at(i, j) = B.at(i, j);
        std::uint32_t idx = G.index_of(M);  // throws if not a group member
        T.elements[r] = idx;
        T.rank_of.emplace(idx, r);
    }
    if (T.rank_of.size() != total) throw std::logic_error("torus enumeration collision");
    return T;
}

inline std::vector<TorusDatum> enumerate_tori(std::shared_ptr<const GroupTable> G) {
    std::vector<TorusDatum> out;
    if (G->spec.family == Family::SL) {
        out.push_back(make_torus(G, {1, 1}));
        out.push_back(make_torus(G, {2}));
        return out;
    }
    for (const Partition& type : partitions_of(G->spec.n)) out.push_back(make_torus(G, type));
    return out;
}

// ---- W(T)^F action on torus characters ----

inline std::uint64_t part_multiplier(const GroupTable& G, const TorusPart& P) {
    std::uint64_t q = G.spec.q;
    if (P.N == 1) return 0;
    if (G.spec.family == Family::U) return (P.N - q % P.N) % P.N;
    if (G.spec.family == Family::SL) return P.N - 1;  // Weyl flip
    return q % P.N;
}

inline std::vector<TorusChar> torus_char_orbit(const TorusDatum& T, const TorusChar& theta) {
    const GroupTable& G = *T.G;
    std::vector<TorusChar> orbit{theta};
    std::set<TorusChar> seen{theta};
    std::size_t head = 0;
    while (head < orbit.size()) {
        TorusChar cur = orbit[head++];
        for (std::size_t i = 0; i < T.parts.size(); ++i) {
            if (T.parts[i].N == 1) continue;
            TorusChar nxt = cur;
            nxt[i] = nxt[i] * part_multiplier(G, T.parts[i]) % T.parts[i].N;
            if (seen.insert(nxt).second) orbit.push_back(nxt);
        }
        for (std::size_t i = 0; i + 1 < T.parts.size(); ++i) {
            if (T.parts[i].N != T.parts[i + 1].N || T.parts[i].k != T.parts[i + 1].k) continue;
            TorusChar nxt = cur;
            std::swap(nxt[i], nxt[i + 1]);
            if (seen.insert(nxt).second) orbit.push_back(nxt);
        }
    }
    return orbit;
}

inline TorusChar canonical_torus_char(const TorusDatum& T, const TorusChar& theta) {
    auto orbit = torus_char_orbit(T, theta);
    return *std::min_element(orbit.begin(), orbit.end());
}

// #{w in W(T)^F : theta' = theta o ad(w)} for a pair of characters of one torus.
inline std::uint64_t torus_char_transporter_count(const TorusDatum& T, const TorusChar& a,
                                                  const TorusChar& b) {
    const GroupTable& G = *T.G;
    std::vector<std::size_t> perm(T.parts.size());
    for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = i;
    std::uint64_t count = 0;
    std::sort(perm.begin(), perm.end());
    do {
        bool ok = true;
        for (std::size_t i = 0; i < perm.size() && ok; ++i)
            ok = (T.parts[i].N == T.parts[perm[i]].N && T.parts[i].k == T.parts[perm[i]].k);
        if (!ok) continue;
        std::uint64_t ways = 1;
        for (std::size_t i = 0; i < perm.size() && ways; ++i) {
            std::uint64_t Ni = T.parts[i].N;
            std::uint64_t mlt = part_multiplier(G, T.parts[i]);
            std::uint64_t hits = 0, cur = b[perm[i]] % Ni;
            std::uint64_t kk = T.parts[i].sl_split || G.spec.family == Family::SL ? 2 : T.parts[i].k;
            for (std::uint64_t j = 0; j < kk; ++j) {
                if (cur == a[i] % Ni) ++hits;
                cur = Ni == 1 ? cur : cur * mlt % Ni;
            }
            ways *= hits;
        }
        count += ways;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return count;
}

}  // namespace curtis
