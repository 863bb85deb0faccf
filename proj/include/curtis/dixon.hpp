// Burnside-Dixon character table computation: simultaneous eigenvectors of the
// class-multiplication matrices over a prime field F_l with l = 1 mod exp(G),
// lifted exactly to cyclotomic values. Serves as the independent oracle for
// the Deligne-Lusztig construction of the irreducible table.
#pragma once

#include <vector>

#include "curtis/class_function.hpp"

namespace curtis {

namespace dixon_detail {

using u64 = std::uint64_t;

struct ModMatrix {
    std::size_t rows = 0, cols = 0;
    u64 mod = 0;
    std::vector<u64> a;
    ModMatrix() = default;
    ModMatrix(std::size_t r, std::size_t c, u64 m) : rows(r), cols(c), mod(m), a(r * c, 0) {}
    u64& at(std::size_t i, std::size_t j) { return a[i * cols + j]; }
    u64 at(std::size_t i, std::size_t j) const { return a[i * cols + j]; }
};

inline ModMatrix mul(const ModMatrix& x, const ModMatrix& y) {
    ModMatrix z(x.rows, y.cols, x.mod);
    for (std::size_t i = 0; i < x.rows; ++i)
        for (std::size_t k = 0; k < x.cols; ++k) {
            u64 v = x.at(i, k);
            if (!v) continue;
            for (std::size_t j = 0; j < y.cols; ++j)
                z.at(i, j) = (z.at(i, j) + v * y.at(k, j)) % x.mod;
        }
    return z;
}

// Solve B R = C for R, where B (r x d) has full column rank d.
inline ModMatrix solve_rect(const ModMatrix& B, const ModMatrix& C) {
    std::size_t r = B.rows, d = B.cols, w = C.cols;
    u64 mod = B.mod;
    ModMatrix aug(r, d + w, mod);
    for (std::size_t i = 0; i < r; ++i) {
        for (std::size_t j = 0; j < d; ++j) aug.at(i, j) = B.at(i, j);
        for (std::size_t j = 0; j < w; ++j) aug.at(i, d + j) = C.at(i, j);
    }
    std::size_t row = 0;
    std::vector<std::size_t> pivot_row(d, SIZE_MAX);
    for (std::size_t c = 0; c < d && row < r; ++c) {
        std::size_t pr = row;
        while (pr < r && aug.at(pr, c) == 0) ++pr;
        if (pr == r) throw std::logic_error("solve_rect: rank deficient");
        for (std::size_t j = 0; j < d + w; ++j) std::swap(aug.a[pr * (d + w) + j], aug.a[row * (d + w) + j]);
        u64 inv = inv_mod_u64(aug.at(row, c), mod);
        for (std::size_t j = c; j < d + w; ++j) aug.at(row, j) = aug.at(row, j) * inv % mod;
        for (std::size_t i2 = 0; i2 < r; ++i2) {
            if (i2 == row || aug.at(i2, c) == 0) continue;
            u64 f = aug.at(i2, c);
            for (std::size_t j = c; j < d + w; ++j)
                aug.at(i2, j) = (aug.at(i2, j) + (mod - f) * aug.at(row, j)) % mod;
        }
        pivot_row[c] = row;
        ++row;
    }
    ModMatrix R(d, w, mod);
    for (std::size_t c = 0; c < d; ++c)
        for (std::size_t j = 0; j < w; ++j) R.at(c, j) = aug.at(pivot_row[c], d + j);
    return R;
}

// Kernel basis (columns) of a square matrix.
inline std::vector<std::vector<u64>> kernel(ModMatrix m) {
    std::size_t n = m.rows;
    u64 mod = m.mod;
    std::vector<long> pivot_of_col(n, -1);
    std::size_t rank = 0;
    for (std::size_t c = 0; c < n && rank < n; ++c) {
        std::size_t pr = rank;
        while (pr < n && m.at(pr, c) == 0) ++pr;
        if (pr == n) continue;
        for (std::size_t j = 0; j < n; ++j) std::swap(m.a[pr * n + j], m.a[rank * n + j]);
        u64 inv = inv_mod_u64(m.at(rank, c), mod);
        for (std::size_t j = c; j < n; ++j) m.at(rank, j) = m.at(rank, j) * inv % mod;
        for (std::size_t i = 0; i < n; ++i) {
            if (i == rank || m.at(i, c) == 0) continue;
            u64 f = m.at(i, c);
            for (std::size_t j = c; j < n; ++j)
                m.at(i, j) = (m.at(i, j) + (mod - f) * m.at(rank, j)) % mod;
        }
        pivot_of_col[c] = (long)rank;
        ++rank;
    }
    std::vector<std::vector<u64>> basis;
    for (std::size_t c = 0; c < n; ++c) {
        if (pivot_of_col[c] >= 0) continue;
        std::vector<u64> v(n, 0);
        v[c] = 1;
        for (std::size_t c2 = 0; c2 < n; ++c2)
            if (pivot_of_col[c2] >= 0)
                v[c2] = (mod - m.at((std::size_t)pivot_of_col[c2], c)) % mod;
        basis.push_back(std::move(v));
    }
    return basis;
}

}  // namespace dixon_detail

inline std::vector<ClassFunction> dixon_character_table(const GroupTable& G) {
    using namespace dixon_detail;
    std::size_t r = G.num_classes();
    if (r > 400) throw std::invalid_argument("dixon: too many classes");
    std::uint64_t n = G.order();

    // modulus: l = 1 mod exp(G), l coprime to |G|, l > 2 sqrt(|G|)
    u64 l = 0;
    {
        u64 m = G.exponent;
        u64 cand = m + 1;
        for (;; cand += m) {
            if (!is_prime(Int((unsigned long)cand))) continue;
            if (n % cand == 0) continue;
            if ((double)cand * cand <= 4.0 * (double)n) continue;
            l = cand;
            break;
        }
    }

    // class multiplication matrix N_i with (N_i)_{jk} = a_{ijk},
    // a_{ijk} = #{(x,y) in C_i x C_j : xy = rep_k}
    auto class_matrix = [&](std::size_t i) {
        ModMatrix N(r, r, l);
        for (std::uint32_t u : G.members[i]) {
            std::uint32_t uinv = G.inv(u);
            for (std::size_t k = 0; k < r; ++k) {
                std::uint32_t v = G.mul(uinv, G.classes[k].rep);
                N.at(G.class_of[v], k) = (N.at(G.class_of[v], k) + 1) % l;
            }
        }
        return N;
    };

    // split the class algebra into common eigenspaces
    std::vector<ModMatrix> spaces;  // r x d bases (columns)
    {
        ModMatrix full(r, r, l);
        for (std::size_t i = 0; i < r; ++i) full.at(i, i) = 1;
        spaces.push_back(std::move(full));
    }
    for (std::size_t i = 0; i < r; ++i) {
        bool all_one = true;
        for (auto& s : spaces) all_one &= (s.cols == 1);
        if (all_one) break;
        ModMatrix Ni = class_matrix(i);
        std::vector<ModMatrix> next;
        for (auto& B : spaces) {
            if (B.cols == 1) { next.push_back(B); continue; }
            ModMatrix NiB = mul(Ni, B);
            ModMatrix R = solve_rect(B, NiB);  // d x d action
            std::size_t d = B.cols;
            std::size_t found = 0;
            for (u64 lam = 0; lam < l && found < d; ++lam) {
                ModMatrix shifted = R;
                for (std::size_t t = 0; t < d; ++t)
                    shifted.at(t, t) = (shifted.at(t, t) + l - lam % l) % l;
                auto ker = kernel(shifted);
                if (ker.empty()) continue;
                found += ker.size();
                ModMatrix sub(r, ker.size(), l);
                for (std::size_t j = 0; j < ker.size(); ++j)
                    for (std::size_t row = 0; row < r; ++row) {
                        u64 acc = 0;
                        for (std::size_t t = 0; t < d; ++t)
                            acc = (acc + B.at(row, t) * ker[j][t]) % l;
                        sub.at(row, j) = acc;
                    }
                next.push_back(std::move(sub));
            }
            if (found != d) throw std::logic_error("dixon: eigenspace split incomplete");
        }
        spaces = std::move(next);
    }
    if (spaces.size() != r) throw std::logic_error("dixon: wrong number of eigenvectors");

    std::uint32_t idclass = G.class_of[G.id_index];

    // normalize eigenvectors and recover character values mod l
    std::vector<std::vector<u64>> chi_mod(r, std::vector<u64>(r, 0));
    std::vector<u64> degree(r, 0);
    for (std::size_t t = 0; t < r; ++t) {
        std::vector<u64> w(r);
        for (std::size_t k = 0; k < r; ++k) w[k] = spaces[t].at(k, 0);
        if (w[idclass] == 0) throw std::logic_error("dixon: eigenvector vanishes at identity");
        u64 scale = inv_mod_u64(w[idclass], l);
        for (auto& x : w) x = x * scale % l;
        // degree^2 = |G| / sum_k w_k w_{kbar} / |C_k|
        u64 acc = 0;
        for (std::size_t k = 0; k < r; ++k) {
            u64 wk = w[k], wkb = w[G.classes[k].inverse_class];
            u64 inv_sz = inv_mod_u64(G.classes[k].size % l, l);
            acc = (acc + wk % l * wkb % l * inv_sz) % l;
        }
        u64 target = n % l * inv_mod_u64(acc, l) % l;
        u64 d = 0;
        for (u64 cand = 1; cand * cand <= n; ++cand)
            if (cand * cand % l == target) { d = cand; break; }
        if (d == 0) throw std::logic_error("dixon: degree recovery failed");
        degree[t] = d;
        for (std::size_t k = 0; k < r; ++k)
            chi_mod[t][k] = d % l * w[k] % l * inv_mod_u64(G.classes[k].size % l, l) % l;
    }

    // primitive root mod l
    u64 wprim = 0;
    {
        auto fac = factorize(l - 1);
        for (u64 cand = 2; cand < l; ++cand) {
            bool ok = true;
            for (auto& [pf, ex] : fac)
                if (pow_mod_u64(cand, (l - 1) / pf, l) == 1) { ok = false; break; }
            if (ok) { wprim = cand; break; }
        }
    }

    // exact lift: chi(g_k) = sum_j m_j zeta_o^j with multiplicities m_j < l
    std::uint64_t m_exp = G.exponent;
    std::vector<ClassFunction> table;
    for (std::size_t t = 0; t < r; ++t) {
        std::vector<Cyclo> vals(r, Cyclo::zero(m_exp));
        for (std::size_t k = 0; k < r; ++k) {
            u64 o = G.classes[k].rep_order;
            u64 z = pow_mod_u64(wprim, (l - 1) / o, l);
            u64 zinv = inv_mod_u64(z, l);
            u64 oinv = inv_mod_u64(o % l, l);
            std::vector<u64> chi_on_powers(o);
            {
                std::uint32_t cur = G.id_index;
                for (u64 e2 = 0; e2 < o; ++e2) {
                    chi_on_powers[e2] = chi_mod[t][G.class_of[cur]];
                    cur = G.mul(cur, G.classes[k].rep);
                }
            }
            Cyclo val = Cyclo::zero(m_exp);
            for (u64 j = 0; j < o; ++j) {
                // m_j = (1/o) sum_e chi(g^e) z^{-je}
                u64 acc = 0;
                for (u64 e2 = 0; e2 < o; ++e2)
                    acc = (acc + chi_on_powers[e2] * pow_mod_u64(zinv, j * e2 % (l - 1), l)) % l;
                u64 mj = acc * oinv % l;
                if (mj > degree[t]) throw std::logic_error("dixon: multiplicity lift out of range");
                if (mj) val += Rat(Int((unsigned long)mj)) * root_of_unity((std::int64_t)(j * (m_exp / o)), m_exp);
            }
            vals[k] = val;
        }
        table.push_back(make_class_function(G, std::move(vals), "irr"));
    }

    // deterministic order: by degree, then by value vector encoding
    std::sort(table.begin(), table.end(), [&](const ClassFunction& a, const ClassFunction& b) {
        const Cyclo& da = a.v[idclass];
        const Cyclo& db = b.v[idclass];
        Rat ra = da.rational_part(), rb = db.rational_part();
        if (ra != rb) return ra < rb;
        for (std::size_t k = 0; k < r; ++k) {
            std::string sa = a.v[k].str(), sb = b.v[k].str();
            if (sa != sb) return sa < sb;
        }
        return false;
    });
    for (std::size_t t = 0; t < table.size(); ++t)
        table[t].label = "irr" + std::to_string(t);
    return table;
}

}  // namespace curtis
