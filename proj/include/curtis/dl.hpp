// Deligne-Lusztig virtual characters via the standard character formula with
// Green functions: R_{T,theta}(su) is a sum over the intersection of the class
// of s with T^F of theta(t) times a product of factor Green values for the
// centralizer of s. On top of this: Lusztig induction of linear characters of
// Levis, almost characters, and the Jordan-decomposition construction of the
// full irreducible table.
#pragma once

#include "curtis/dixon.hpp"
#include "curtis/intmatrix.hpp"
#include "curtis/levis.hpp"

namespace curtis {

struct CentralizerFactor {
    Family fam = Family::GL;   // Green-function family of the factor
    unsigned m = 1;            // multiplicity (factor rank)
    unsigned d = 1;            // eigenvalue orbit size; factor field is F_{q^d}
    ff base = 0;               // canonical base eigenvalue of the orbit
    std::vector<ff> orbit;     // full eigenvalue orbit
    Partition jordan;          // Jordan type of the unipotent part on the base eigenspace
};

struct ClassAnalysis {
    std::uint32_t s = 0, u = 0;        // Jordan decomposition of the representative
    std::uint32_t s_class = 0;
    std::vector<CentralizerFactor> factors;
};

// ---- eigenvalue analysis over the top field ----

namespace dl_detail {

// kernel basis of (M - lambda I) over the top field, as column vectors
inline std::vector<std::vector<ff>> eigenspace(const FqField& F, const FMatrix& M, ff lambda) {
    unsigned n = M.n;
    std::vector<std::vector<ff>> rows(n, std::vector<ff>(n));
    for (unsigned i = 0; i < n; ++i)
        for (unsigned j = 0; j < n; ++j)
            rows[i][j] = (i == j) ? F.sub(M.at(i, j), lambda) : M.at(i, j);
    return fkernel(F, rows);
}

// coordinates of v in the span of basis columns (all over the top field)
inline std::vector<ff> coords_in_span(const FqField& F, const std::vector<std::vector<ff>>& basis,
                                      const std::vector<ff>& v) {
    std::size_t n = v.size(), d = basis.size();
    std::vector<std::vector<ff>> aug(n, std::vector<ff>(d + 1));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < d; ++j) aug[i][j] = basis[j][i];
        aug[i][d] = v[i];
    }
    std::size_t row = 0;
    std::vector<std::size_t> prow(d, SIZE_MAX);
    for (std::size_t c = 0; c < d && row < n; ++c) {
        std::size_t piv = row;
        while (piv < n && F.is_zero(aug[piv][c])) ++piv;
        if (piv == n) throw std::logic_error("coords_in_span: dependent basis");
        std::swap(aug[piv], aug[row]);
        ff ic = F.inv(aug[row][c]);
        for (std::size_t j = c; j <= d; ++j) aug[row][j] = F.mul(aug[row][j], ic);
        for (std::size_t r = 0; r < n; ++r) {
            if (r == row || F.is_zero(aug[r][c])) continue;
            ff f = aug[r][c];
            for (std::size_t j = c; j <= d; ++j) aug[r][j] = F.sub(aug[r][j], F.mul(f, aug[row][j]));
        }
        prow[c] = row++;
    }
    for (std::size_t r = row; r < n; ++r)
        if (!F.is_zero(aug[r][d])) throw std::logic_error("coords_in_span: not in span");
    std::vector<ff> out(d);
    for (std::size_t c = 0; c < d; ++c) out[c] = aug[prow[c]][d];
    return out;
}

}  // namespace dl_detail

inline ClassAnalysis analyze_class(const GroupTable& G, std::uint32_t class_idx) {
    const FqField& F = *G.F;
    std::uint64_t q = G.spec.q;
    bool uamb = G.spec.family == Family::U;

    ClassAnalysis A;
    auto [s, u] = G.jordan(G.classes[class_idx].rep);
    A.s = s;
    A.u = u;
    A.s_class = G.class_of[s];
    const FMatrix& S = G.elems[s];
    const FMatrix& U = G.elems[u];
    unsigned n = G.spec.n;

    // eigenvalues with multiplicities (scan the top field once)
    std::vector<std::pair<ff, unsigned>> eig;
    unsigned total = 0;
    for (std::uint64_t dcode = 0; total < n && dcode < F.size; ++dcode) {
        ff lam = F.from_digits(dcode);
        if (F.is_zero(lam)) continue;
        FMatrix shifted = S;
        bool root = true;
        for (unsigned i = 0; i < n && root; ++i) shifted.at(i, i) = F.sub(S.at(i, i), lam);
        root = F.is_zero(fmat_det(F, shifted));
        if (!root) continue;
        unsigned mult = (unsigned)dl_detail::eigenspace(F, S, lam).size();
        eig.push_back({lam, mult});
        total += mult;
    }
    if (total != n) throw std::logic_error("eigenvalue analysis incomplete");

    // orbits under the twisted Frobenius on eigenvalues
    auto phi = [&](ff x) {
        ff y = F.pow(x, Int((unsigned long)q));
        return uamb ? F.inv(y) : y;
    };
    std::set<ff> used;
    for (auto& [lam, mult] : eig) {
        if (used.count(lam)) continue;
        std::vector<ff> orbit;
        ff cur = lam;
        do {
            orbit.push_back(cur);
            used.insert(cur);
            cur = phi(cur);
        } while (cur != lam);
        // canonical base: minimal digit code
        ff base = orbit[0];
        for (ff x : orbit) if (F.digits(x) < F.digits(base)) base = x;
        // rotate so the orbit starts at base
        std::vector<ff> rot;
        std::size_t b0 = std::find(orbit.begin(), orbit.end(), base) - orbit.begin();
        for (std::size_t i = 0; i < orbit.size(); ++i) rot.push_back(orbit[(b0 + i) % orbit.size()]);

        CentralizerFactor cf;
        cf.d = (unsigned)orbit.size();
        cf.m = mult;
        cf.base = base;
        cf.orbit = rot;
        cf.fam = (uamb && cf.d % 2 == 1) ? Family::U : Family::GL;

        // Jordan type of u on the base eigenspace
        auto basis = dl_detail::eigenspace(F, S, base);
        if (basis.size() != mult) throw std::logic_error("eigenspace dimension mismatch");
        // nilpotent N = (u - 1) restricted to the eigenspace
        std::vector<std::vector<ff>> Nmat(mult, std::vector<ff>(mult));
        for (std::size_t j = 0; j < basis.size(); ++j) {
            std::vector<ff> img(n, 0);
            for (unsigned r = 0; r < n; ++r) {
                for (unsigned c = 0; c < n; ++c)
                    img[r] = F.add(img[r], F.mul(U.at(r, c), basis[j][c]));
                img[r] = F.sub(img[r], basis[j][r]);
            }
            auto co = dl_detail::coords_in_span(F, basis, img);
            for (std::size_t i = 0; i < mult; ++i) Nmat[i][j] = co[i];
        }
        std::vector<unsigned> ranks{mult};
        {
            std::vector<std::vector<ff>> Npow = Nmat;
            for (unsigned j = 1; j <= mult; ++j) {
                ranks.push_back(frank(F, Npow));
                // next power
                std::vector<std::vector<ff>> nxt(mult, std::vector<ff>(mult, 0));
                for (std::size_t i = 0; i < mult; ++i)
                    for (std::size_t k = 0; k < mult; ++k) {
                        if (F.is_zero(Npow[i][k])) continue;
                        for (std::size_t l = 0; l < mult; ++l)
                            nxt[i][l] = F.add(nxt[i][l], F.mul(Npow[i][k], Nmat[k][l]));
                    }
                Npow = std::move(nxt);
            }
        }
        // number of blocks of size >= j is ranks[j-1] - ranks[j]
        Partition jordan;
        std::vector<unsigned> blocks_ge(mult + 2, 0);
        for (unsigned j = 1; j <= mult + 1; ++j)
            blocks_ge[j] = (j <= mult) ? ranks[j - 1] - ranks[j] : 0;
        for (unsigned j = 1; j <= mult; ++j) {
            unsigned exactly = blocks_ge[j] - blocks_ge[j + 1];
            for (unsigned b = 0; b < exactly; ++b) jordan.push_back(j);
        }
        std::sort(jordan.begin(), jordan.end(), std::greater<unsigned>());
        if (partition_sum(jordan) != mult) throw std::logic_error("jordan type size mismatch");
        cf.jordan = jordan;
        A.factors.push_back(std::move(cf));
    }
    std::sort(A.factors.begin(), A.factors.end(), [&](const CentralizerFactor& a,
                                                      const CentralizerFactor& b) {
        WeylFactor wa{a.fam, a.m, a.d}, wb{b.fam, b.m, b.d};
        if (!(wa.fam == wb.fam && wa.m == wb.m && wa.d == wb.d)) return factor_less(wa, wb);
        return F.digits(a.base) < F.digits(b.base);
    });

    // centralizer order check (the SL_2 center is the exception by design:
    // its centralizer is SL_2 while the factor bookkeeping says GL_2)
    if (G.spec.family != Family::SL) {
        Int prod = 1;
        for (const auto& cf : A.factors)
            prod *= Int((unsigned long)group_order_of_factor({cf.fam, cf.m, cf.d}, q));
        if (prod != Int((unsigned long)G.classes[A.s_class].centralizer))
            throw std::logic_error("centralizer order mismatch in eigen analysis");
    }
    return A;
}

// ---- the session: caches per group ----

struct DLSession {
    std::shared_ptr<const GroupTable> G;
    std::uint64_t m = 1;  // cyclotomic modulus (the group exponent)
    std::vector<TorusDatum> tori;
    std::map<Partition, std::size_t> torus_index;
    std::vector<LeviDatum> levis;  // ambient Levi classes (empty for SL)
    std::vector<ClassAnalysis> analyses;
    mutable std::map<std::pair<std::size_t, TorusChar>, ClassFunction> dl_cache;

    const TorusDatum& torus_of_type(const Partition& type) const {
        auto it = torus_index.find(type);
        if (it == torus_index.end()) throw std::invalid_argument("unknown torus type");
        return tori[it->second];
    }
};

inline DLSession make_session(std::shared_ptr<const GroupTable> G) {
    DLSession S;
    S.G = G;
    S.m = G->exponent;
    S.tori = enumerate_tori(G);
    for (std::size_t i = 0; i < S.tori.size(); ++i) S.torus_index[S.tori[i].type] = i;
    if (G->spec.family != Family::SL) S.levis = enumerate_levis(G);
    for (std::uint32_t c = 0; c < G->num_classes(); ++c) S.analyses.push_back(analyze_class(*G, c));
    return S;
}

// ---- the character formula ----

// Green product for a class analysis at the torus element with coordinates t
// (the element exps of the reference torus T).
inline Int green_term(const DLSession& S, const ClassAnalysis& A, const TorusDatum& T,
                      const std::vector<std::uint64_t>& exps) {
    const FqField& F = *S.G->F;
    std::uint64_t q = S.G->spec.q;
    // slot values of t
    std::vector<ff> vals(T.slots.size());
    std::vector<ff> coords(T.parts.size());
    for (std::size_t i = 0; i < T.parts.size(); ++i)
        coords[i] = F.pow(T.parts[i].gen, Int((unsigned long)exps[i]));
    for (std::size_t sl = 0; sl < T.slots.size(); ++sl)
        vals[sl] = T.slot_value((unsigned)sl, coords[T.slots[sl].first]);

    Int prod = 1;
    for (const CentralizerFactor& cf : A.factors) {
        // slots carrying the base eigenvalue
        std::vector<std::size_t> K;
        for (std::size_t sl = 0; sl < vals.size(); ++sl)
            if (vals[sl] == cf.base) K.push_back(sl);
        if (K.size() != cf.m) throw std::logic_error("green_term: base eigenvalue slot count");
        // partition of m from cycles of sigma^d on K
        std::set<std::size_t> left(K.begin(), K.end());
        Partition mu;
        while (!left.empty()) {
            std::size_t start = *left.begin();
            std::size_t cur = start;
            unsigned len = 0;
            do {
                left.erase(cur);
                ++len;
                for (unsigned step = 0; step < cf.d; ++step) cur = T.sigma[cur];
            } while (cur != start);
            mu.push_back(len);
        }
        std::sort(mu.begin(), mu.end(), std::greater<unsigned>());
        prod *= green_value(cf.fam, mu, cf.jordan, Int((unsigned long)pow_u64(q, cf.d)));
        if (prod == 0) return prod;
    }
    return prod;
}

// R_{T, theta} as an exact class function on all classes.
inline ClassFunction dl_character(const DLSession& S, const TorusDatum& T, const TorusChar& theta) {
    const GroupTable& G = *S.G;
    std::size_t tidx = SIZE_MAX;
    auto it = S.torus_index.find(T.type);
    if (it != S.torus_index.end()) tidx = it->second;
    TorusChar canon = canonical_torus_char(T, theta);
    if (tidx != SIZE_MAX) {
        auto jt = S.dl_cache.find({tidx, canon});
        if (jt != S.dl_cache.end()) return jt->second;
    }
    std::vector<Cyclo> vals;
    vals.reserve(G.num_classes());
    for (std::uint32_t c = 0; c < G.num_classes(); ++c) {
        const ClassAnalysis& A = S.analyses[c];
        Cyclo acc = Cyclo::zero(S.m);
        for (std::uint64_t r = 0; r < T.order; ++r) {
            std::uint32_t telem = T.elements[r];
            if (G.class_of[telem] != A.s_class) continue;
            auto exps = T.exps_of_rank(r);
            Int g = green_term(S, A, T, exps);
            if (g == 0) continue;
            acc += Rat(g) * torus_char_value(T, theta, exps, S.m);
        }
        vals.push_back(std::move(acc));
    }
    ClassFunction f = make_class_function(G, std::move(vals), "R_T");
    if (tidx != SIZE_MAX) S.dl_cache.emplace(std::make_pair(tidx, canon), f);
    return f;
}

// Literal brute-force reference: the x-sum over the whole group,
//   R(su) = |C(s)|^{-1} sum_{x: x^{-1} s x in T} theta(x^{-1} s x) Q(u-term).
// Exponentially slower; used by tests to pin the optimized path.
inline ClassFunction dl_character_bruteforce(const DLSession& S, const TorusDatum& T,
                                             const TorusChar& theta) {
    const GroupTable& G = *S.G;
    std::vector<Cyclo> vals;
    for (std::uint32_t c = 0; c < G.num_classes(); ++c) {
        const ClassAnalysis& A = S.analyses[c];
        Cyclo acc = Cyclo::zero(S.m);
        for (std::uint32_t x = 0; x < G.order(); ++x) {
            std::uint32_t t = G.conjugate(A.s, G.inv(x));  // x^{-1} s x
            auto rt = T.rank_of.find(t);
            if (rt == T.rank_of.end()) continue;
            auto exps = T.exps_of_rank(rt->second);
            Int g = green_term(S, A, T, exps);
            if (g == 0) continue;
            acc += Rat(g) * torus_char_value(T, theta, exps, S.m);
        }
        acc = make_rat(1, Int((unsigned long)G.classes[A.s_class].centralizer)) * acc;
        vals.push_back(std::move(acc));
    }
    return make_class_function(G, std::move(vals), "R_T(bf)");
}

// ---- Lusztig induction of a linear character of a Levi ----

inline ClassFunction lusztig_induce_linear(const DLSession& S, const LeviDatum& L,
                                           const LeviLinearChar& chi) {
    const GroupTable& G = *S.G;
    ClassFunction acc = make_class_function(
        G, std::vector<Cyclo>(G.num_classes(), Cyclo::zero(S.m)), "R_L");
    for (std::size_t c = 0; c < L.fclasses.size(); ++c) {
        const TorusDatum& T = S.torus_of_type(L.folded[c].type);
        TorusChar th = restrict_linear_to_fclass(L, c, chi);
        ClassFunction r = dl_character(S, T, th);
        Rat w = make_rat(Int((unsigned long)L.fclasses[c].size), Int((unsigned long)L.weyl));
        for (std::size_t i = 0; i < acc.v.size(); ++i) acc.v[i] += w * r.v[i];
    }
    acc.label = "R_L(linear)";
    return acc;
}

// ---- almost characters and the Jordan construction ----

// R_chi as a rational vector over the F-classes of W_L.
inline std::vector<Rat> almost_character_vector(const LeviDatum& L,
                                                const std::vector<Partition>& chi) {
    std::vector<Rat> a(L.fclasses.size(), Rat(0));
    for (std::size_t c = 0; c < L.fclasses.size(); ++c) {
        long long ext = weyl_ext_character(chi, L.fclasses[c]);
        if (ext == 0) continue;
        a[c] = make_rat(Int((long)ext) * Int((unsigned long)L.fclasses[c].size),
                        Int((unsigned long)L.weyl));
    }
    return a;
}

// Integer expansion of R_chi over { R_M^L(1) : M in L_L }, with the witness.
struct AlmostExpansion {
    std::vector<SubLevi> subs;
    std::vector<Int> coeff;   // one per sub-Levi
    int delta = 1;            // sign making delta * R_chi a genuine character
};

inline AlmostExpansion almost_character_expansion(const DLSession& S, const LeviDatum& L,
                                                  const std::vector<Partition>& chi) {
    AlmostExpansion E;
    E.subs = enumerate_sub_levis(L);
    std::vector<Rat> target = almost_character_vector(L, chi);
    // columns: R_M^L(1) vectors over L F-classes
    std::vector<std::vector<Rat>> cols;
    for (const auto& M : E.subs) cols.push_back(sub_levi_r1_vector(L, M));
    // clear denominators
    Int den = 1;
    for (const auto& col : cols)
        for (const Rat& v : col) den = int_lcm(den, v.get_den());
    for (const Rat& v : target) den = int_lcm(den, v.get_den());
    IntMatrix A(target.size(), cols.size());
    std::vector<Int> b(target.size());
    for (std::size_t i = 0; i < target.size(); ++i) {
        b[i] = Rat(target[i] * Rat(den)).get_num();
        for (std::size_t j = 0; j < cols.size(); ++j)
            A.at(i, j) = Rat(cols[j][i] * Rat(den)).get_num();
    }
    auto sol = solve_integer(A, b);
    if (!sol.x) throw std::logic_error("almost character is not an integer combination");
    E.coeff = *sol.x;
    // delta: sign of the degree R_chi(1); degrees of R_{T_w}(1) are eps-signed
    Rat deg(0);
    for (std::size_t c = 0; c < L.fclasses.size(); ++c) {
        // |L^F|_{p'} / |T^F| with sign eps_L eps_T = fclass sign
        const FoldedClass& fc = L.folded[c];
        Int torder = 1;
        std::uint64_t q = S.G->spec.q;
        for (unsigned k : fc.type)
            torder *= Int((unsigned long)ambient_part_order(S.G->spec.family, q, k));
        Int lf((unsigned long)L.lf_order);
        Int lf_pprime = lf;
        Int p((unsigned long)S.G->spec.p());
        while (lf_pprime % p == 0) lf_pprime /= p;
        Rat d = make_rat(lf_pprime, torder) * Rat(L.fclasses[c].sign);
        deg += target[c] * d;
    }
    if (deg == 0) throw std::logic_error("almost character has degree zero");
    E.delta = deg > 0 ? 1 : -1;
    return E;
}

// The irreducible character attached to (semisimple class s, chi label).
inline ClassFunction jordan_irreducible(const DLSession& S, std::uint32_t p_regular_class,
                                        const std::vector<Partition>& chi) {
    const GroupTable& G = *S.G;
    const ClassAnalysis& A = S.analyses[p_regular_class];
    if (S.analyses[p_regular_class].u != G.id_index)
        throw std::invalid_argument("jordan_irreducible: class not p-regular");
    // the centralizer Levi L (same combinatorial type on both sides by self-duality)
    std::vector<WeylFactor> facs;
    for (const auto& cf : A.factors) facs.push_back({cf.fam, cf.m, cf.d});
    LeviDatum L = make_levi(S.G, facs);
    // center coordinates of s per factor: base eigenvalues (factors are sorted
    // compatibly in analyze_class and make_levi)
    std::vector<std::uint64_t> b(L.factors.size());
    for (std::size_t i = 0; i < L.factors.size(); ++i)
        b[i] = cyclic_dlog(*G.F, L.center_gens[i], L.center_orders[i], A.factors[i].base);
    AlmostExpansion E = almost_character_expansion(S, L, chi);

    std::vector<WeylFactor> whole{{G.spec.family == Family::U ? Family::U : Family::GL,
                                   G.spec.n, 1}};
    int eps_G = make_levi(S.G, whole).epsilon;
    Rat sign = Rat(eps_G * L.epsilon * E.delta);

    ClassFunction acc = make_class_function(
        G, std::vector<Cyclo>(G.num_classes(), Cyclo::zero(S.m)), "jordan");
    for (std::size_t j = 0; j < E.subs.size(); ++j) {
        if (E.coeff[j] == 0) continue;
        const LeviDatum& M = E.subs[j].levi;
        // shat restricted to M: per M-factor exponent from the parent's center value
        LeviLinearChar chiM(M.factors.size());
        for (std::size_t i = 0; i < M.factors.size(); ++i) {
            unsigned pf = E.subs[j].parent_factor[i];
            ff z = G.F->pow(L.center_gens[pf], Int((unsigned long)b[pf]));
            std::uint64_t e = cyclic_dlog(*G.F, M.center_gens[i], M.center_orders[i], z);
            chiM[i] = M.center_signs[i] > 0 ? e : (M.center_orders[i] - e) % M.center_orders[i];
        }
        ClassFunction r = lusztig_induce_linear(S, M, chiM);
        for (std::size_t i = 0; i < acc.v.size(); ++i)
            acc.v[i] += Rat(E.coeff[j]) * sign * r.v[i];
    }
    acc.label = "irr(s,chi)";
    return acc;
}

// The complete irreducible table via the Jordan decomposition, checked for
// completeness; deterministic order (degree, then value encoding).
inline std::vector<ClassFunction> construct_irr_table(const DLSession& S) {
    const GroupTable& G = *S.G;
    std::vector<ClassFunction> table;
    for (std::uint32_t c = 0; c < G.num_classes(); ++c) {
        if (!G.classes[c].p_regular) continue;
        const ClassAnalysis& A = S.analyses[c];
        std::vector<WeylFactor> facs;
        for (const auto& cf : A.factors) facs.push_back({cf.fam, cf.m, cf.d});
        for (const auto& chi : weyl_irr_labels(facs))
            table.push_back(jordan_irreducible(S, c, chi));
    }
    if (table.size() != G.num_classes())
        throw std::logic_error("irreducible table: wrong count");
    std::uint32_t idc = G.class_of[G.id_index];
    for (auto& f : table) {
        Rat d = f.v[idc].rational_part();
        if (!(d > 0)) throw std::logic_error("irreducible table: nonpositive degree");
    }
    std::sort(table.begin(), table.end(), [&](const ClassFunction& a, const ClassFunction& b) {
        Rat da = a.v[idc].rational_part(), db = b.v[idc].rational_part();
        if (da != db) return da < db;
        for (std::size_t k = 0; k < a.v.size(); ++k) {
            std::string sa = a.v[k].str(), sb = b.v[k].str();
            if (sa != sb) return sa < sb;
        }
        return false;
    });
    for (std::size_t t = 0; t < table.size(); ++t) table[t].label = "irr" + std::to_string(t);
    return table;
}

// Match two character tables up to row permutation (exact value equality).
inline bool tables_match_up_to_permutation(const std::vector<ClassFunction>& a,
                                           const std::vector<ClassFunction>& b) {
    if (a.size() != b.size()) return false;
    std::vector<bool> used(b.size(), false);
    for (const auto& f : a) {
        bool hit = false;
        for (std::size_t j = 0; j < b.size() && !hit; ++j) {
            if (used[j]) continue;
            bool eq = true;
            for (std::size_t k = 0; k < f.v.size() && eq; ++k) eq = (f.v[k] == b[j].v[k]);
            if (eq) { used[j] = true; hit = true; }
        }
        if (!hit) return false;
    }
    return true;
}

}  // namespace curtis
