// The Curtis homomorphism through the Fourier dictionary, the Omega lattice,
// Brauer-side pairings, the identity chain, and the verdict computations:
// lattice equality for the main theorem, the K-side spanning theorems, the
// perfect-pairing Gram determinant, and the SL_2 infeasibility certificates.
#pragma once

#include "curtis/dl.hpp"
#include "curtis/intmatrix.hpp"

namespace curtis {

// ---- flattening of class functions to integer / rational vectors ----

inline std::vector<Int> flatten_integral(const ClassFunction& f, std::uint64_t m) {
    std::vector<Int> out;
    for (const Cyclo& v : f.v)
        for (const Rat& c : flatten(v, m)) {
            if (c.get_den() != 1) throw std::logic_error("flatten_integral: non-integral value");
            out.push_back(c.get_num());
        }
    return out;
}

inline std::vector<Rat> flatten_rational(const std::vector<Cyclo>& vals, std::uint64_t m) {
    std::vector<Rat> out;
    for (const Cyclo& v : vals)
        for (const Rat& c : flatten(v, m)) out.push_back(c);
    return out;
}

// ---- the verification session ----

class CurtisVerifier {
  public:
    explicit CurtisVerifier(std::shared_ptr<const GroupTable> G) : S_(make_session(G)) {
        mprime_ = G->p_regular_exponent();
        p_ = Int((unsigned long)G->spec.p());
    }

    const DLSession& session() const { return S_; }
    const GroupTable& group() const { return *S_.G; }
    std::uint64_t restricted_modulus() const { return mprime_; }

    const std::vector<ClassFunction>& irr_table() {
        if (irr_.empty()) irr_ = construct_irr_table(S_);
        return irr_;
    }
    const std::vector<ClassFunction>& restricted_irr() {
        if (rest_.empty())
            for (const ClassFunction& f : irr_table()) rest_.push_back(p_regular_restrict(f));
        return rest_;
    }
    const ClassFunction& steinberg_char() {
        if (!st_) st_ = steinberg(*S_.G);
        return *st_;
    }
    const ClassFunction& restricted_steinberg() {
        if (!strest_) strest_ = p_regular_restrict(steinberg_char());
        return *strest_;
    }

    // A Z-basis of K = Z-span of the restricted irreducibles, kept as class
    // functions (integer combinations of restricted irreducibles).
    struct KBasis {
        IntMatrix matrix;                      // flattened basis columns
        std::vector<ClassFunction> functions;  // the basis elements
        std::vector<std::vector<Int>> combos;  // expression over restricted irreducibles
        IntMatrix expressing;                  // restricted irr -> basis coordinates
    };

    const KBasis& k_basis() {
        if (kb_.functions.empty()) build_k_basis();
        return kb_;
    }

    // Cur_S(f)(s): the restriction of f to the dual torus paired against the
    // character matched to s by toric duality.
    Cyclo cur_value(const ClassFunction& f, const TorusDatum& T,
                    const std::vector<std::uint64_t>& s_exps) {
        if (f.domain != Domain::PRegular)
            throw std::invalid_argument("cur_value: p-regular class function expected");
        const GroupTable& G = *S_.G;
        TorusChar shat = dual_torus_char(T, s_exps);
        Cyclo acc = Cyclo::zero(mprime_);
        for (std::uint64_t r = 0; r < T.order; ++r) {
            std::uint32_t t = T.elements[r];
            auto exps = T.exps_of_rank(r);
            const Cyclo& fv = cf_value_at(f, G.inv(t));  // f(t^{-1})
            if (fv.is_zero()) continue;
            acc += fv * torus_char_value(T, shat, exps, mprime_);
        }
        return make_rat(1, Int((unsigned long)T.order)) * acc;
    }

    // Brauer pairing on p-regular class functions.
    Cyclo brauer_pairing(const ClassFunction& f, const ClassFunction& phi) {
        return inner_product(f, phi);
    }

    // ---- pairing (Gram) ----

    struct GramResult {
        IntMatrix gram;
        Int det;
        bool unimodular = false;
    };

    GramResult gram_unimodularity() {
        const KBasis& K = k_basis();
        std::size_t r = K.functions.size();
        GramResult R;
        R.gram = IntMatrix(r, r);
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t j = 0; j < r; ++j) {
                ClassFunction stbj = cf_mul(restricted_steinberg(), K.functions[j]);
                Cyclo v = brauer_pairing(K.functions[i], stbj);
                if (!v.is_rational() || v.rational_part().get_den() != 1)
                    throw std::logic_error("gram entry not an integer");
                R.gram.at(i, j) = v.rational_part().get_num();
            }
        R.det = rational_det(R.gram);
        R.unimodular = (R.det == 1 || R.det == -1);
        return R;
    }

    // ---- identity chain ----

    // LHS - RHS for one basis element, Levi class and central element.
    Cyclo check_identity_31(const ClassFunction& f, const LeviDatum& L,
                            const std::vector<std::uint64_t>& center_exps) {
        Cyclo lhs = Cyclo::zero(mprime_);
        for (std::size_t c = 0; c < L.fclasses.size(); ++c) {
            const TorusDatum& T = S_.torus_of_type(L.folded[c].type);
            auto emb = embed_center_in_fclass(L, c, center_exps);
            Rat w = make_rat(Int((unsigned long)L.fclasses[c].size) * Int(L.fclasses[c].sign),
                             Int((unsigned long)L.weyl));
            lhs += w * cur_value(f, T, emb);
        }
        ClassFunction rg = lusztig_induce_linear(S_, L, dual_of_center(L, center_exps));
        ClassFunction strg = p_regular_restrict(cf_mul(steinberg_char(), rg));
        Cyclo rhs = brauer_pairing(f, strg);
        return lhs - rhs;
    }

    // ---- K-side spanning generators ----

    struct RLGenerator {
        std::size_t levi = 0;   // index into session().levis
        LeviLinearChar chi;
        ClassFunction full;     // R_L^G(chi) on all classes
    };

    const std::vector<RLGenerator>& rl_generators() {
        if (gens_.empty()) {
            for (std::size_t li = 0; li < S_.levis.size(); ++li)
                for (const LeviLinearChar& chi : enumerate_linear_chars(S_.levis[li])) {
                    RLGenerator g;
                    g.levi = li;
                    g.chi = chi;
                    g.full = lusztig_induce_linear(S_, S_.levis[li], chi);
                    gens_.push_back(std::move(g));
                }
        }
        return gens_;
    }

    // Theorem "K-thm0": K equals the Z-span of the reduced R_L(X(L^F)).
    LatticeComparison verify_kthm0() {
        const KBasis& K = k_basis();
        std::vector<std::vector<Int>> cols;
        for (const RLGenerator& g : rl_generators())
            cols.push_back(flatten_integral(p_regular_restrict(g.full), mprime_));
        IntMatrix A((cols.empty() ? 0 : cols[0].size()), cols.size());
        for (std::size_t j = 0; j < cols.size(); ++j)
            for (std::size_t i = 0; i < cols[j].size(); ++i) A.at(i, j) = cols[j][i];
        return lattice_compare(A, K.matrix, p_);
    }

    // Theorem "K-thm": every irreducible is an integer combination of the full
    // R_L(X(L^F)); returns the witnesses.
    struct KthmWitness {
        std::size_t irr_index = 0;
        bool feasible = false;
        std::vector<Int> coefficients;
        std::optional<InfeasibilityCertificate> certificate;
    };

    std::vector<KthmWitness> verify_kthm() {
        std::uint64_t m = S_.m;
        std::vector<std::vector<Int>> cols;
        for (const RLGenerator& g : rl_generators()) cols.push_back(flatten_integral(g.full, m));
        IntMatrix A(cols[0].size(), cols.size());
        for (std::size_t j = 0; j < cols.size(); ++j)
            for (std::size_t i = 0; i < cols[j].size(); ++i) A.at(i, j) = cols[j][i];
        SnfSolver solver(A);
        std::vector<KthmWitness> out;
        for (std::size_t t = 0; t < irr_table().size(); ++t) {
            KthmWitness w;
            w.irr_index = t;
            auto b = flatten_integral(irr_table()[t], m);
            auto res = solver.solve_integer(b);
            if (res.x) {
                w.feasible = true;
                w.coefficients = *res.x;
                if (A.apply(w.coefficients) != b)
                    throw std::logic_error("kthm witness re-expansion failed");
            } else {
                w.certificate = res.certificate;
            }
            out.push_back(std::move(w));
        }
        return out;
    }

    // ---- main theorem ----

    struct OmegaConditionRef {
        std::size_t levi = 0;
        std::vector<std::uint64_t> center;  // exponents
        bool nontrivial = false;            // weight denominator not a power of p
    };

    struct MainResult {
        LatticeComparison comparison;
        bool inclusion_holds = false;           // every basis Curtis vector is in Omega
        std::size_t num_conditions = 0;
        std::size_t num_nontrivial_conditions = 0;
        bool strictness_found = false;
        std::vector<Int> strictness_coeffs;     // over the per-torus-integral lattice basis
        std::string strictness_condition;       // which Omega condition is violated
    };

    // Curtis vector of a basis element: per torus class, values at all s.
    std::vector<Cyclo> curtis_vector(const ClassFunction& f) {
        std::vector<Cyclo> out;
        for (const TorusDatum& T : S_.tori)
            for (std::uint64_t r = 0; r < T.order; ++r)
                out.push_back(cur_value(f, T, T.exps_of_rank(r)));
        return out;
    }

    std::vector<OmegaConditionRef> omega_conditions() {
        std::vector<OmegaConditionRef> out;
        for (std::size_t li = 0; li < S_.levis.size(); ++li) {
            const LeviDatum& L = S_.levis[li];
            Int wl((unsigned long)L.weyl);
            Int wlp = wl;
            while (wlp % p_ == 0) wlp /= p_;
            bool nontrivial = wlp != 1;
            for (const auto& b : enumerate_center(L))
                out.push_back({li, b, nontrivial});
        }
        return out;
    }

    Cyclo omega_value(const ClassFunction& f, const OmegaConditionRef& cond) {
        const LeviDatum& L = S_.levis[cond.levi];
        Cyclo acc = Cyclo::zero(mprime_);
        for (std::size_t c = 0; c < L.fclasses.size(); ++c) {
            const TorusDatum& T = S_.torus_of_type(L.folded[c].type);
            auto emb = embed_center_in_fclass(L, c, cond.center);
            Rat w = make_rat(Int((unsigned long)L.fclasses[c].size) * Int(L.fclasses[c].sign),
                             Int((unsigned long)L.weyl));
            acc += w * cur_value(f, T, emb);
        }
        return acc;
    }

    MainResult verify_main_theorem(long strictness_box = 3) {
        const KBasis& K = k_basis();
        std::size_t r = K.functions.size();
        auto conds = omega_conditions();

        // rational constraint matrices over the basis coordinates x
        std::vector<std::vector<Rat>> torus_rows;  // per-torus integrality
        std::vector<std::vector<Rat>> omega_rows;  // Omega conditions
        {
            std::vector<std::vector<Rat>> cv(r);
            for (std::size_t j = 0; j < r; ++j)
                cv[j] = flatten_rational(curtis_vector(K.functions[j]), mprime_);
            std::size_t dim = cv.empty() ? 0 : cv[0].size();
            for (std::size_t i = 0; i < dim; ++i) {
                std::vector<Rat> row(r);
                for (std::size_t j = 0; j < r; ++j) row[j] = cv[j][i];
                torus_rows.push_back(std::move(row));
            }
            for (const auto& cond : conds) {
                std::vector<std::vector<Rat>> vals(r);
                for (std::size_t j = 0; j < r; ++j)
                    vals[j] = flatten_rational({omega_value(K.functions[j], cond)}, mprime_);
                for (std::size_t i = 0; i < vals[0].size(); ++i) {
                    std::vector<Rat> row(r);
                    for (std::size_t j = 0; j < r; ++j) row[j] = vals[j][i];
                    omega_rows.push_back(std::move(row));
                }
            }
        }

        MainResult R;
        R.num_conditions = conds.size();
        for (const auto& c : conds)
            if (c.nontrivial) ++R.num_nontrivial_conditions;

        // inclusion direction: every constraint value on basis vectors is p-integral
        R.inclusion_holds = true;
        for (const auto& row : torus_rows)
            for (const Rat& v : row) R.inclusion_holds &= denominator_is_p_power(v, p_);
        for (const auto& row : omega_rows)
            for (const Rat& v : row) R.inclusion_holds &= denominator_is_p_power(v, p_);

        auto constraint_lattice = [&](const std::vector<std::vector<Rat>>& rows) {
            Int den = 1;
            for (const auto& row : rows)
                for (const Rat& v : row) den = int_lcm(den, v.get_den());
            IntMatrix N(rows.size(), r);
            for (std::size_t i = 0; i < rows.size(); ++i)
                for (std::size_t j = 0; j < r; ++j)
                    N.at(i, j) = Rat(rows[i][j] * Rat(den)).get_num();
            Int dprime = den;
            while (dprime % p_ == 0) dprime /= p_;
            // {x : (N/den) x in Z[1/p]} is the p-saturation of {x : N x in d' Z}
            return dual_constraint_lattice(N, dprime);
        };
        std::vector<std::vector<Rat>> all_rows = torus_rows;
        for (auto& row : omega_rows) all_rows.push_back(row);
        QLattice X = constraint_lattice(all_rows);
        R.comparison = lattice_compare(QLattice{IntMatrix::identity(r), 1}, X, p_);

        // strictness of the inclusion (1.1): a vector with p-integral per-torus
        // coordinates violating some Omega condition. When the lattices differ,
        // some basis vector of the per-torus lattice is itself a witness.
        QLattice Y = constraint_lattice(torus_rows);
        auto violates = [&](const std::vector<Rat>& x, std::string& which) {
            for (std::size_t ci = 0; ci < conds.size(); ++ci) {
                Cyclo acc = Cyclo::zero(mprime_);
                for (std::size_t j = 0; j < r; ++j) {
                    if (x[j] == 0) continue;
                    acc += x[j] * omega_value(K.functions[j], conds[ci]);
                }
                if (!p_integral(acc, p_)) {
                    which = "levi=" + S_.levis[conds[ci].levi].type_key();
                    return true;
                }
            }
            return false;
        };
        for (std::size_t j = 0; j < (std::size_t)Y.num.cols && !R.strictness_found; ++j) {
            std::vector<Rat> x(r);
            for (std::size_t i = 0; i < r; ++i) x[i] = make_rat(Y.num.at(i, j), Y.den);
            std::string which;
            if (violates(x, which)) {
                R.strictness_found = true;
                R.strictness_coeffs.assign(r, 0);
                R.strictness_coeffs[j] = 1;
                R.strictness_condition = which;
            }
        }
        if (!R.strictness_found && strictness_box > 0) {
            // small combinations of two basis vectors
            for (std::size_t a = 0; a < (std::size_t)Y.num.cols && !R.strictness_found; ++a)
                for (std::size_t b = a + 1; b < (std::size_t)Y.num.cols && !R.strictness_found; ++b)
                    for (long ca = -strictness_box; ca <= strictness_box && !R.strictness_found; ++ca)
                        for (long cb = -strictness_box; cb <= strictness_box; ++cb) {
                            if (ca == 0 && cb == 0) continue;
                            std::vector<Rat> x(r);
                            for (std::size_t i = 0; i < r; ++i)
                                x[i] = make_rat(Int(ca) * Y.num.at(i, a) + Int(cb) * Y.num.at(i, b),
                                                Y.den);
                            std::string which;
                            if (violates(x, which)) {
                                R.strictness_found = true;
                                R.strictness_coeffs.assign(r, 0);
                                R.strictness_coeffs[a] = ca;
                                R.strictness_coeffs[b] = cb;
                                R.strictness_condition = which;
                                break;
                            }
                        }
        }
        return R;
    }

    // ---- SL_2 remark ----

    struct Sl2Result {
        std::vector<std::size_t> infeasible;   // indices into the Dixon table
        std::vector<Rat> degrees;
        std::vector<std::optional<InfeasibilityCertificate>> certificates;
        std::size_t expected_degree_count = 0;  // #irreducibles of degree (q+1)/2
    };

    Sl2Result sl2_remark() {
        const GroupTable& G = *S_.G;
        if (G.spec.family != Family::SL) throw std::invalid_argument("sl2_remark: SL ambient only");
        std::uint64_t m = S_.m;
        // generators: all R_{T,theta} up to the Weyl action
        std::vector<std::vector<Int>> cols;
        for (const TorusDatum& T : S_.tori) {
            std::set<TorusChar> seen;
            std::vector<TorusChar> chars;
            {
                std::vector<TorusChar> stack{{}};
                for (const auto& P : T.parts) {
                    std::vector<TorusChar> next;
                    for (std::uint64_t e = 0; e < P.N; ++e)
                        for (const auto& base : stack) {
                            auto t = base;
                            t.push_back(e);
                            next.push_back(std::move(t));
                        }
                    stack = std::move(next);
                }
                for (auto& th : stack)
                    if (seen.insert(canonical_torus_char(T, th)).second)
                        chars.push_back(canonical_torus_char(T, th));
            }
            for (const auto& th : chars)
                cols.push_back(flatten_integral(dl_character(S_, T, th), m));
        }
        IntMatrix A(cols[0].size(), cols.size());
        for (std::size_t j = 0; j < cols.size(); ++j)
            for (std::size_t i = 0; i < cols[j].size(); ++i) A.at(i, j) = cols[j][i];
        SnfSolver solver(A);

        Sl2Result R;
        auto table = dixon_character_table(G);
        std::uint32_t idc = G.class_of[G.id_index];
        Rat half((long)((G.spec.q + 1) / 2));
        for (std::size_t t = 0; t < table.size(); ++t) {
            Rat deg = table[t].v[idc].rational_part();
            R.degrees.push_back(deg);
            if (deg == half) ++R.expected_degree_count;
            auto res = solver.solve_integer(flatten_integral(table[t], m));
            if (!res.x) {
                R.infeasible.push_back(t);
                R.certificates.push_back(res.certificate);
            } else {
                R.certificates.push_back(std::nullopt);
            }
        }
        return R;
    }

  private:
    DLSession S_;
    std::uint64_t mprime_ = 1;
    Int p_;
    std::vector<ClassFunction> irr_, rest_;
    std::optional<ClassFunction> st_, strest_;
    KBasis kb_;
    std::vector<RLGenerator> gens_;

    static Int rational_det(const IntMatrix& M) {
        std::size_t n = M.rows;
        std::vector<std::vector<Rat>> a(n, std::vector<Rat>(n));
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) a[i][j] = Rat(M.at(i, j));
        Rat det(1);
        for (std::size_t c = 0; c < n; ++c) {
            std::size_t piv = c;
            while (piv < n && a[piv][c] == 0) ++piv;
            if (piv == n) return 0;
            if (piv != c) { std::swap(a[piv], a[c]); det = -det; }
            det *= a[c][c];
            Rat ic = Rat(1) / a[c][c];
            for (std::size_t j = c; j < n; ++j) a[c][j] *= ic;
            for (std::size_t r = c + 1; r < n; ++r) {
                if (a[r][c] == 0) continue;
                Rat f = a[r][c];
                for (std::size_t j = c; j < n; ++j) a[r][j] -= f * a[c][j];
            }
        }
        if (det.get_den() != 1) throw std::logic_error("integer determinant expected");
        return det.get_num();
    }

    void build_k_basis() {
        const auto& rest = restricted_irr();
        std::vector<std::vector<Int>> cols;
        for (const ClassFunction& f : rest) cols.push_back(flatten_integral(f, mprime_));
        IntMatrix A(cols[0].size(), cols.size());
        for (std::size_t j = 0; j < cols.size(); ++j)
            for (std::size_t i = 0; i < cols[j].size(); ++i) A.at(i, j) = cols[j][i];
        IntMatrix H = hnf_basis(A);
        std::size_t npreg = S_.G->p_regular_classes().size();
        if (H.cols != npreg) throw std::logic_error("K lattice rank mismatch");
        kb_.matrix = H;
        SnfSolver solver(A);
        for (std::size_t j = 0; j < H.cols; ++j) {
            auto res = solver.solve_integer(H.column(j));
            if (!res.x) throw std::logic_error("K basis: column not in lattice");
            kb_.combos.push_back(*res.x);
            ClassFunction acc = make_class_function(
                *S_.G, std::vector<Cyclo>(npreg, Cyclo::zero(mprime_)), "b" + std::to_string(j),
                Domain::PRegular);
            for (std::size_t i = 0; i < rest.size(); ++i) {
                if ((*res.x)[i] == 0) continue;
                for (std::size_t c = 0; c < npreg; ++c)
                    acc.v[c] += Rat((*res.x)[i]) * rest[i].v[c];
            }
            kb_.functions.push_back(std::move(acc));
        }
        // expressing matrix: each restricted irreducible over the basis
        SnfSolver bsolver(kb_.matrix);
        kb_.expressing = IntMatrix(kb_.functions.size(), rest.size());
        for (std::size_t i = 0; i < rest.size(); ++i) {
            auto res = bsolver.solve_integer(cols[i]);
            if (!res.x) throw std::logic_error("restricted irreducible outside K basis");
            for (std::size_t j = 0; j < kb_.functions.size(); ++j)
                kb_.expressing.at(j, i) = (*res.x)[j];
        }
    }
};

}  // namespace curtis
