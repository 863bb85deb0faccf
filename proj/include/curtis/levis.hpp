// F-stable Levi subgroups up to rational conjugacy, represented by their
// factor lists: GL_m over F_{q^d}, or U_m over F_{q^d} (d odd, unitary ambient
// only). Carries the twisted Weyl data, centers with duality dictionaries,
// linear characters and their restriction to the tori of the Levi, and the
// sub-Levi lattice needed for almost-character expansions.
#pragma once

#include "curtis/tori.hpp"

namespace curtis {

// ---- factor-list enumeration ----

inline bool factor_less(const WeylFactor& a, const WeylFactor& b) {
    unsigned sa = a.m * a.d, sb = b.m * b.d;
    if (sa != sb) return sa > sb;
    if (a.m != b.m) return a.m > b.m;
    if (a.d != b.d) return a.d < b.d;
    return (int)a.fam < (int)b.fam;
}

// All Levi types of GL_m (fam = GL) or U_m (fam = U) over a base field; for
// the unitary family U-factors consume m*d with d odd, GL-factors with d even.
inline std::vector<std::vector<WeylFactor>> enumerate_levi_types(Family fam, unsigned m) {
    std::vector<std::vector<WeylFactor>> out;
    std::vector<WeylFactor> cur;
    // candidate factors in a fixed descending order to produce sorted multisets
    std::vector<WeylFactor> cands;
    for (unsigned mm = m; mm >= 1; --mm)
        for (unsigned d = 1; mm * d <= m; ++d) {
            if (fam == Family::U) {
                if (d % 2 == 1) cands.push_back({Family::U, mm, d});
                if (d % 2 == 0) cands.push_back({Family::GL, mm, d});
            } else {
                cands.push_back({Family::GL, mm, d});
            }
        }
    std::sort(cands.begin(), cands.end(), factor_less);
    std::function<void(unsigned, std::size_t)> rec = [&](unsigned rem, std::size_t from) {
        if (rem == 0) {
            out.push_back(cur);
            return;
        }
        for (std::size_t i = from; i < cands.size(); ++i) {
            unsigned consume = cands[i].m * cands[i].d;
            if (consume > rem) continue;
            cur.push_back(cands[i]);
            rec(rem - consume, i);
            cur.pop_back();
        }
    };
    rec(m, 0);
    return out;
}

// ---- shared part/center generator conventions ----

inline std::uint64_t ambient_part_order(Family fam, std::uint64_t q, unsigned k) {
    if (fam == Family::U && k % 2 == 1) return pow_u64(q, k) + 1;
    return pow_u64(q, k) - 1;
}

inline ff ambient_part_gen(const FqField& F, Family fam, std::uint64_t q, unsigned k) {
    if (fam == Family::U && k % 2 == 1)
        return F.inv(F.pow(F.subfield_gen(pow_u64(q, 2 * k)), Int((unsigned long)(pow_u64(q, k) - 1))));
    return F.subfield_gen(pow_u64(q, k));
}

inline std::uint64_t cyclic_dlog(const FqField& F, ff gen, std::uint64_t N, ff x) {
    ff cur = F.one();
    for (std::uint64_t a = 0; a < N; ++a) {
        if (cur == x) return a;
        cur = F.mul(cur, gen);
    }
    throw std::domain_error("cyclic_dlog: element outside cyclic group");
}

// norm between subfields: x in E, N_{E/E'}(x) = x^{(|E|-1)/(|E'|-1)}
inline ff subfield_norm(const FqField& F, ff x, std::uint64_t esize, std::uint64_t e2size) {
    if (F.is_zero(x)) return 0;
    return F.pow(x, Int((unsigned long)((esize - 1) / (e2size - 1))));
}

// ---- Levi data ----

struct FoldedPartOrigin {
    unsigned factor = 0;   // index into the Levi's factor list
    unsigned lambda = 1;   // the part of the factor's rho-partition
};

struct FoldedClass {
    Partition type;                          // ambient folded torus type
    std::vector<FoldedPartOrigin> origin;    // aligned with type
};

struct LeviDatum {
    std::shared_ptr<const GroupTable> G;
    std::vector<WeylFactor> factors;        // canonical order
    int epsilon = 1;
    std::uint64_t weyl = 1;                 // |W_L|
    std::vector<WeylFClass> fclasses;
    std::vector<FoldedClass> folded;        // aligned with fclasses
    std::vector<std::uint64_t> center_orders;  // per factor
    std::vector<ff> center_gens;               // per factor
    std::vector<int> center_signs;             // duality sign per factor
    std::uint64_t center_order = 1;            // |Z(L)^F|
    std::uint64_t lf_order = 1;                // |L^F|

    std::string type_key() const {
        std::string s;
        for (const auto& f : factors)
            s += (f.fam == Family::U ? "u" : "g") + std::to_string(f.m) + "." +
                 std::to_string(f.d) + ";";
        return s;
    }
};

inline std::uint64_t group_order_of_factor(const WeylFactor& f, std::uint64_t q) {
    std::uint64_t Q = pow_u64(q, f.d);
    Int o = 1;
    if (f.fam == Family::GL) {
        // |GL_m(Q)| = Q^{m(m-1)/2} prod (Q^i - 1)
        o = int_pow(Int((unsigned long)Q), f.m * (f.m - 1) / 2);
        for (unsigned i = 1; i <= f.m; ++i) o *= int_pow(Int((unsigned long)Q), i) - 1;
    } else {
        o = int_pow(Int((unsigned long)Q), f.m * (f.m - 1) / 2);
        for (unsigned i = 1; i <= f.m; ++i) {
            Int t = int_pow(Int((unsigned long)Q), i);
            o *= (i % 2 == 1) ? Int(t + 1) : Int(t - 1);
        }
    }
    return o.get_ui();
}

inline LeviDatum make_levi(std::shared_ptr<const GroupTable> Gp, std::vector<WeylFactor> factors) {
    const GroupTable& G = *Gp;
    const FqField& F = *G.F;
    std::uint64_t q = G.spec.q;
    std::sort(factors.begin(), factors.end(), factor_less);

    LeviDatum L;
    L.G = Gp;
    L.factors = factors;
    L.weyl = weyl_order(factors);
    L.fclasses = weyl_f_classes(factors);

    int eps = 1;
    for (const auto& f : factors) {
        unsigned rank = (f.fam == Family::GL) ? f.m : f.m / 2;
        if (rank % 2 == 1) eps = -eps;
        L.lf_order *= group_order_of_factor(f, q);
        std::uint64_t Q = pow_u64(q, f.d);
        std::uint64_t Z = (f.fam == Family::GL) ? Q - 1 : Q + 1;
        L.center_orders.push_back(Z);
        L.center_gens.push_back(ambient_part_gen(F, f.fam, q, f.d));
        L.center_signs.push_back((G.spec.family == Family::U && f.fam == Family::GL) ? -1 : 1);
        L.center_order *= Z;
    }
    L.epsilon = eps;

    // folded torus types per F-class
    for (const auto& cls : L.fclasses) {
        FoldedClass fc;
        std::vector<std::pair<unsigned, FoldedPartOrigin>> parts;
        for (std::size_t i = 0; i < factors.size(); ++i)
            for (unsigned lam : cls.rho[i])
                parts.push_back({factors[i].d * lam, FoldedPartOrigin{(unsigned)i, lam}});
        std::stable_sort(parts.begin(), parts.end(),
                         [](const auto& a, const auto& b) { return a.first > b.first; });
        for (auto& [k, org] : parts) {
            fc.type.push_back(k);
            fc.origin.push_back(org);
        }
        L.folded.push_back(std::move(fc));
    }
    return L;
}

// Levi classes of the ambient group (GL and U families).
inline std::vector<LeviDatum> enumerate_levis(std::shared_ptr<const GroupTable> G) {
    if (G->spec.family == Family::SL)
        throw std::invalid_argument("Levi enumeration: unitary/general-linear ambient only");
    std::vector<LeviDatum> out;
    for (auto& fl : enumerate_levi_types(G->spec.family, G->spec.n))
        out.push_back(make_levi(G, fl));
    return out;
}

// ---- linear characters of L^F and their torus restrictions ----

// A linear character of L^F: one exponent per factor against the factor's
// determinant character (values via the center generator dictionary).
using LeviLinearChar = std::vector<std::uint64_t>;

inline std::vector<LeviLinearChar> enumerate_linear_chars(const LeviDatum& L) {
    std::vector<LeviLinearChar> out{{}};
    for (std::uint64_t Z : L.center_orders) {
        std::vector<LeviLinearChar> next;
        for (std::uint64_t e = 0; e < Z; ++e)
            for (const auto& base : out) {
                auto t = base;
                t.push_back(e);
                next.push_back(std::move(t));
            }
        out = std::move(next);
    }
    return out;
}

// determinant contribution of a folded-part coordinate to its factor's center
inline ff part_det_contribution(const FqField& F, const WeylFactor& fac, std::uint64_t q,
                                unsigned lambda, ff t) {
    std::uint64_t Q = pow_u64(q, fac.d);
    if (fac.fam == Family::GL) return subfield_norm(F, t, pow_u64(Q, lambda), Q);
    if (lambda % 2 == 1)  // twisted norm mu_{Q^lam + 1} -> mu_{Q+1}
        return F.pow(t, Int((unsigned long)((pow_u64(Q, lambda) + 1) / (Q + 1))));
    return F.pow(subfield_norm(F, t, pow_u64(Q, lambda), Q * Q),
                 Int((long)1 - (long)Q));
}

// Restrict a linear character of L^F to the torus of the given F-class,
// producing exponents aligned with make_torus(folded type).parts.
inline TorusChar restrict_linear_to_fclass(const LeviDatum& L, std::size_t cls,
                                           const LeviLinearChar& chi) {
    const FqField& F = *L.G->F;
    std::uint64_t q = L.G->spec.q;
    const FoldedClass& fc = L.folded[cls];
    TorusChar theta(fc.type.size());
    for (std::size_t i = 0; i < fc.type.size(); ++i) {
        unsigned fi = fc.origin[i].factor;
        unsigned lam = fc.origin[i].lambda;
        const WeylFactor& fac = L.factors[fi];
        std::uint64_t Npart = ambient_part_order(L.G->spec.family, q, fc.type[i]);
        std::uint64_t Z = L.center_orders[fi];
        ff pg = ambient_part_gen(F, L.G->spec.family, q, fc.type[i]);
        ff dc = part_det_contribution(F, fac, q, lam, pg);
        std::uint64_t D = cyclic_dlog(F, L.center_gens[fi], Z, dc);
        if (Npart % Z != 0) throw std::logic_error("center order does not divide part order");
        theta[i] = (chi[fi] % Z) * D % Z * (Npart / Z) % Npart;
    }
    return theta;
}

// ---- the center Z(L)^F ----

// center elements are exponent tuples against center_gens
inline std::vector<std::vector<std::uint64_t>> enumerate_center(const LeviDatum& L) {
    std::vector<std::vector<std::uint64_t>> out{{}};
    for (std::uint64_t Z : L.center_orders) {
        std::vector<std::vector<std::uint64_t>> next;
        for (std::uint64_t b = 0; b < Z; ++b)
            for (const auto& base : out) {
                auto t = base;
                t.push_back(b);
                next.push_back(std::move(t));
            }
        out = std::move(next);
    }
    return out;
}

// The linear character of L^F dual to the central element (signs folded in).
inline LeviLinearChar dual_of_center(const LeviDatum& L, const std::vector<std::uint64_t>& b) {
    LeviLinearChar e(L.factors.size());
    for (std::size_t i = 0; i < L.factors.size(); ++i) {
        std::uint64_t Z = L.center_orders[i];
        std::uint64_t v = b[i] % Z;
        e[i] = L.center_signs[i] > 0 ? v : (Z - v) % Z;
    }
    return e;
}

// Exponent tuple of the embedded central element inside the reference torus of
// the given F-class (coordinates are literally the same field elements).
inline std::vector<std::uint64_t> embed_center_in_fclass(const LeviDatum& L, std::size_t cls,
                                                         const std::vector<std::uint64_t>& b) {
    const FqField& F = *L.G->F;
    std::uint64_t q = L.G->spec.q;
    const FoldedClass& fc = L.folded[cls];
    std::vector<std::uint64_t> exps(fc.type.size());
    for (std::size_t i = 0; i < fc.type.size(); ++i) {
        unsigned fi = fc.origin[i].factor;
        ff z = F.pow(L.center_gens[fi], Int((unsigned long)(b[fi] % L.center_orders[fi])));
        std::uint64_t Npart = ambient_part_order(L.G->spec.family, q, fc.type[i]);
        ff pg = ambient_part_gen(F, L.G->spec.family, q, fc.type[i]);
        exps[i] = cyclic_dlog(F, pg, Npart, z);
    }
    return exps;
}

// ---- sub-Levi lattice (for almost-character expansions) ----

struct SubLevi {
    LeviDatum levi;                       // as an ambient Levi datum
    std::vector<unsigned> parent_factor;  // for each factor of `levi`, the index
                                          // of the enclosing factor of the parent
};

inline std::vector<SubLevi> enumerate_sub_levis(const LeviDatum& L) {
    // per parent factor: all Levi types of that factor, with d scaled
    std::vector<std::vector<std::vector<WeylFactor>>> per(L.factors.size());
    for (std::size_t i = 0; i < L.factors.size(); ++i) {
        for (auto sub : enumerate_levi_types(L.factors[i].fam, L.factors[i].m)) {
            for (auto& f : sub) f.d *= L.factors[i].d;
            per[i].push_back(std::move(sub));
        }
    }
    std::vector<SubLevi> out;
    std::vector<std::size_t> pick(L.factors.size(), 0);
    for (;;) {
        std::vector<WeylFactor> all;
        std::vector<unsigned> parent;
        for (std::size_t i = 0; i < L.factors.size(); ++i)
            for (const auto& f : per[i][pick[i]]) {
                all.push_back(f);
                parent.push_back((unsigned)i);
            }
        // make_levi sorts the factors; sort the parent tags alongside
        std::vector<std::size_t> ord(all.size());
        for (std::size_t k = 0; k < ord.size(); ++k) ord[k] = k;
        std::stable_sort(ord.begin(), ord.end(), [&](std::size_t a, std::size_t b) {
            return factor_less(all[a], all[b]);
        });
        std::vector<WeylFactor> sorted;
        std::vector<unsigned> psorted;
        for (std::size_t k : ord) {
            sorted.push_back(all[k]);
            psorted.push_back(parent[k]);
        }
        SubLevi sl{make_levi(L.G, sorted), std::move(psorted)};
        out.push_back(std::move(sl));
        std::size_t i = 0;
        while (i < pick.size() && ++pick[i] == per[i].size()) pick[i++] = 0;
        if (i == pick.size()) break;
    }
    return out;
}

// R_M^L(1) expressed over the F-classes of W_L: for each M F-class, fold the
// per-factor partitions into the parent factors and add (size / |W_M|) at the
// matching L F-class label.
inline std::vector<Rat> sub_levi_r1_vector(const LeviDatum& L, const SubLevi& M) {
    std::vector<Rat> coeff(L.fclasses.size(), Rat(0));
    for (const auto& mcls : M.levi.fclasses) {
        // fold into one partition per parent factor
        std::vector<Partition> lab(L.factors.size());
        for (std::size_t i = 0; i < M.levi.factors.size(); ++i) {
            unsigned pf = M.parent_factor[i];
            unsigned scale = M.levi.factors[i].d / L.factors[pf].d;
            for (unsigned lam : mcls.rho[i]) lab[pf].push_back(lam * scale);
        }
        for (auto& p : lab) std::sort(p.begin(), p.end(), std::greater<unsigned>());
        bool found = false;
        for (std::size_t c = 0; c < L.fclasses.size(); ++c)
            if (L.fclasses[c].rho == lab) {
                coeff[c] += make_rat(Int((unsigned long)mcls.size),
                                     Int((unsigned long)M.levi.weyl));
                found = true;
                break;
            }
        if (!found) throw std::logic_error("sub-levi fold: missing parent F-class");
    }
    return coeff;
}

}  // namespace curtis
