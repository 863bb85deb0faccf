// Class functions with exact cyclotomic values, the standard inner product,
// induction from enumerated subgroups, standard parabolics and the Steinberg
// character, and restriction to p-regular classes.
#pragma once

#include <string>
#include <vector>

#include "curtis/cyclo.hpp"
#include "curtis/group_table.hpp"

namespace curtis {

enum class Domain : std::uint8_t { AllClasses, PRegular };

struct ClassFunction {
    const GroupTable* G = nullptr;
    Domain domain = Domain::AllClasses;
    std::vector<Cyclo> v;  // indexed by class (all) or by p-regular class position
    std::string label;

    std::size_t expected_size() const {
        return domain == Domain::AllClasses ? G->num_classes() : G->p_regular_classes().size();
    }
};

inline ClassFunction make_class_function(const GroupTable& G, std::vector<Cyclo> vals,
                                         std::string label, Domain dom = Domain::AllClasses) {
    ClassFunction f;
    f.G = &G;
    f.domain = dom;
    f.v = std::move(vals);
    f.label = std::move(label);
    if (f.v.size() != f.expected_size()) throw std::invalid_argument("class function length");
    return f;
}

inline ClassFunction trivial_character(const GroupTable& G) {
    return make_class_function(G, std::vector<Cyclo>(G.num_classes(), Cyclo::one()), "1");
}

inline ClassFunction cf_add(const ClassFunction& a, const ClassFunction& b) {
    if (a.G != b.G || a.domain != b.domain) throw std::invalid_argument("cf_add domain");
    ClassFunction r = a;
    for (std::size_t i = 0; i < r.v.size(); ++i) r.v[i] = r.v[i] + b.v[i];
    r.label = "(" + a.label + "+" + b.label + ")";
    return r;
}

inline ClassFunction cf_sub(const ClassFunction& a, const ClassFunction& b) {
    if (a.G != b.G || a.domain != b.domain) throw std::invalid_argument("cf_sub domain");
    ClassFunction r = a;
    for (std::size_t i = 0; i < r.v.size(); ++i) r.v[i] = r.v[i] - b.v[i];
    r.label = "(" + a.label + "-" + b.label + ")";
    return r;
}

inline ClassFunction cf_scale(const Rat& s, const ClassFunction& a) {
    ClassFunction r = a;
    for (auto& x : r.v) x = s * x;
    return r;
}

// pointwise (tensor) product
inline ClassFunction cf_mul(const ClassFunction& a, const ClassFunction& b) {
    if (a.G != b.G || a.domain != b.domain) throw std::invalid_argument("cf_mul domain");
    ClassFunction r = a;
    for (std::size_t i = 0; i < r.v.size(); ++i) r.v[i] = r.v[i] * b.v[i];
    r.label = a.label + "*" + b.label;
    return r;
}

// (1/|G|) sum over classes in the common domain of size * f(c^{-1}) g(c)
inline Cyclo inner_product(const ClassFunction& f, const ClassFunction& g) {
    if (f.G != g.G || f.domain != g.domain)
        throw std::invalid_argument("inner_product: domain mismatch");
    const GroupTable& G = *f.G;
    std::vector<std::uint32_t> cls;
    std::vector<std::size_t> pos(G.num_classes(), SIZE_MAX);
    if (f.domain == Domain::AllClasses) {
        for (std::uint32_t c = 0; c < G.num_classes(); ++c) { cls.push_back(c); pos[c] = c; }
    } else {
        auto pr = G.p_regular_classes();
        for (std::size_t i = 0; i < pr.size(); ++i) { cls.push_back(pr[i]); pos[pr[i]] = i; }
    }
    Cyclo acc = Cyclo::zero();
    for (std::size_t i = 0; i < cls.size(); ++i) {
        std::uint32_t c = cls[i];
        std::uint32_t cinv = G.classes[c].inverse_class;
        if (pos[cinv] == SIZE_MAX)
            throw std::logic_error("inner_product: inverse class outside domain");
        acc += Rat(Int((unsigned long)G.classes[c].size)) * (f.v[pos[cinv]] * g.v[i]);
    }
    return make_rat(1, Int((unsigned long)G.order())) * acc;
}

// value of f at an arbitrary element
inline const Cyclo& cf_value_at(const ClassFunction& f, std::uint32_t elem) {
    const GroupTable& G = *f.G;
    std::uint32_t c = G.class_of[elem];
    if (f.domain == Domain::AllClasses) return f.v[c];
    auto pr = G.p_regular_classes();
    for (std::size_t i = 0; i < pr.size(); ++i)
        if (pr[i] == c) return f.v[i];
    throw std::domain_error("value requested outside p-regular domain");
}

// ---- subgroups ----

struct Subgroup {
    const GroupTable* G = nullptr;
    std::vector<std::uint32_t> elems;              // sorted
    std::unordered_set<std::uint32_t> member_set;

    std::uint64_t order() const { return elems.size(); }
    bool contains(std::uint32_t x) const { return member_set.count(x) != 0; }
};

inline Subgroup make_subgroup(const GroupTable& G, std::vector<std::uint32_t> elems) {
    Subgroup H;
    H.G = &G;
    std::sort(elems.begin(), elems.end());
    elems.erase(std::unique(elems.begin(), elems.end()), elems.end());
    H.elems = std::move(elems);
    H.member_set.insert(H.elems.begin(), H.elems.end());
    // closure check
    for (std::uint32_t a : H.elems) {
        if (!H.member_set.count(G.inv(a))) throw std::invalid_argument("subgroup: not closed under inverse");
        for (std::uint32_t b : H.elems)
            if (!H.member_set.count(G.mul(a, b)))
                throw std::invalid_argument("subgroup: not closed under product");
    }
    return H;
}

inline Subgroup subgroup_where(const GroupTable& G,
                               const std::function<bool(const FMatrix&)>& pred) {
    std::vector<std::uint32_t> sel;
    for (std::uint32_t i = 0; i < G.order(); ++i)
        if (pred(G.elems[i])) sel.push_back(i);
    return make_subgroup(G, std::move(sel));
}

// Induction of a function given by values on the subgroup's elements:
// Ind(f)(g) = (1/|H|) sum_{x in G, x^{-1} g x in H} f(x^{-1} g x).
inline ClassFunction induce_from_values(
    const GroupTable& G, const Subgroup& H,
    const std::function<Cyclo(std::uint32_t)>& value_on_H, std::string label) {
    std::vector<Cyclo> vals;
    vals.reserve(G.num_classes());
    for (std::uint32_t c = 0; c < G.num_classes(); ++c) {
        // sum over the class, weighted by |C_G(g)| / |H| per member hit:
        // (1/|H|) sum_{x} f(x^{-1} g x) = (|C_G(g)|/|H|) sum_{y in class(g) cap H} f(y)
        Cyclo acc = Cyclo::zero();
        for (std::uint32_t y : G.members[c])
            if (H.contains(y)) acc += value_on_H(y);
        vals.push_back(make_rat(Int((unsigned long)G.classes[c].centralizer),
                                Int((unsigned long)H.order())) *
                       acc);
    }
    return make_class_function(G, std::move(vals), std::move(label));
}

inline ClassFunction induce_trivial(const GroupTable& G, const Subgroup& H, std::string label) {
    return induce_from_values(G, H, [](std::uint32_t) { return Cyclo::one(); }, std::move(label));
}

// ---- standard parabolic subgroups and the Steinberg character ----

// Block-upper-triangular membership for a composition (GL); for U and SL the
// relevant standard parabolics at rank <= 3 are the Borel and G itself.
inline Subgroup standard_parabolic_gl(const GroupTable& G, const std::vector<unsigned>& comp) {
    unsigned n = G.spec.n;
    std::vector<unsigned> block_of(n);
    unsigned b = 0, at = 0;
    for (unsigned part : comp)
        for (unsigned i = 0; i < part; ++i) block_of[at++] = b, b += (i + 1 == part ? 1 : 0);
    return subgroup_where(G, [&, block_of](const FMatrix& m) {
        for (unsigned i = 0; i < n; ++i)
            for (unsigned j = 0; j < n; ++j)
                if (block_of[i] > block_of[j] && !G.F->is_zero(m.at(i, j))) return false;
        return true;
    });
}

inline Subgroup borel_subgroup(const GroupTable& G) {
    unsigned n = G.spec.n;
    return subgroup_where(G, [&](const FMatrix& m) {
        for (unsigned i = 0; i < n; ++i)
            for (unsigned j = 0; j < i; ++j)
                if (!G.F->is_zero(m.at(i, j))) return false;
        return true;
    });
}

// Steinberg character as the alternating sum over standard parabolics.
inline ClassFunction steinberg(const GroupTable& G) {
    std::vector<std::pair<int, Subgroup>> parabolics;
    if (G.spec.family == Family::GL) {
        unsigned n = G.spec.n;
        unsigned r = n - 1;  // simple roots
        for (unsigned mask = 0; mask < (1u << r); ++mask) {
            // composition of n with cuts at positions not in the mask
            std::vector<unsigned> comp;
            unsigned run = 1;
            for (unsigned i = 0; i < r; ++i) {
                if (mask & (1u << i)) ++run;
                else { comp.push_back(run); run = 1; }
            }
            comp.push_back(run);
            int sign = (__builtin_popcount(mask) % 2 == 0) ? 1 : -1;
            parabolics.emplace_back(sign, standard_parabolic_gl(G, comp));
        }
    } else {
        // restricted rank is floor(n/2) <= 1 for n <= 3: P_empty = B, P_full = G
        parabolics.emplace_back(1, borel_subgroup(G));
        if (G.spec.n >= 2) {
            std::vector<std::uint32_t> all(G.order());
            for (std::uint32_t i = 0; i < G.order(); ++i) all[i] = i;
            Subgroup whole;
            whole.G = &G;
            whole.elems = std::move(all);
            whole.member_set.insert(whole.elems.begin(), whole.elems.end());
            parabolics.emplace_back(-1, std::move(whole));
        }
    }
    ClassFunction st = make_class_function(
        G, std::vector<Cyclo>(G.num_classes(), Cyclo::zero()), "St");
    for (auto& [sign, P] : parabolics) {
        ClassFunction ind = induce_trivial(G, P, "ind");
        st = (sign > 0) ? cf_add(st, ind) : cf_sub(st, ind);
    }
    st.label = "St";
    return st;
}

// Restriction to p-regular classes; values are re-expressed in the p'-part of
// the group exponent (always possible: eigenvalues of p-regular elements).
inline ClassFunction p_regular_restrict(const ClassFunction& f) {
    if (f.domain != Domain::AllClasses)
        throw std::invalid_argument("p_regular_restrict: already restricted");
    const GroupTable& G = *f.G;
    std::uint64_t m = G.p_regular_exponent();
    std::vector<Cyclo> vals;
    for (std::uint32_t c : G.p_regular_classes()) vals.push_back(to_modulus(f.v[c], m));
    return make_class_function(G, std::move(vals), f.label + "|p'", Domain::PRegular);
}

}  // namespace curtis
