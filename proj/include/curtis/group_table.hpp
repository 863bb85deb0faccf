// Fully enumerated finite matrix groups GL_n(F_q), U_n(F_q) (antidiagonal
// hermitian form, inside GL_n(F_{q^2})), SL_2(F_q), with conjugacy classes,
// class data and deterministic ordering. Entries live in one top field
// F_{p^{6e}} so that all eigenvalue analysis stays in a single tower.
#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "curtis/finite_field.hpp"
#include "curtis/weyl.hpp"

namespace curtis {

struct GroupSpec {
    Family family = Family::GL;
    unsigned n = 1;
    std::uint64_t q = 2;  // a prime power p^e

    std::uint64_t p() const {
        auto f = factorize(q);
        if (f.size() != 1) throw std::invalid_argument("q is not a prime power");
        return f.begin()->first;
    }
    unsigned e() const { return factorize(q).begin()->second; }

    std::string key() const {
        const char* fam = family == Family::GL ? "gl" : family == Family::U ? "u" : "sl";
        return std::string(fam) + std::to_string(n) + "q" + std::to_string(q);
    }
    friend bool operator==(const GroupSpec& a, const GroupSpec& b) {
        return a.family == b.family && a.n == b.n && a.q == b.q;
    }
};

struct FMatrixHash {
    std::size_t operator()(const FMatrix& m) const {
        std::size_t h = m.n;
        for (ff x : m.e) h = h * 1000003u + x;
        return h;
    }
};

struct ClassInfo {
    std::uint32_t rep = 0;          // element index of the lex-min representative
    std::uint64_t size = 0;
    std::uint64_t centralizer = 0;  // |G| / size
    std::uint64_t rep_order = 1;
    bool p_regular = true;
    std::uint32_t inverse_class = 0;
};

class GroupTable {
  public:
    GroupSpec spec;
    std::shared_ptr<const FqField> F;   // top field F_{p^{6e}}
    std::uint64_t entry_field = 0;      // q for GL/SL, q^2 for U
    std::vector<FMatrix> elems;
    std::vector<std::uint32_t> class_of;
    std::vector<ClassInfo> classes;
    std::vector<std::vector<std::uint32_t>> members;
    std::vector<std::uint32_t> generators;
    std::uint64_t exponent = 1;
    std::uint32_t id_index = 0;

    std::uint64_t order() const { return elems.size(); }
    std::size_t num_classes() const { return classes.size(); }

    std::uint32_t index_of(const FMatrix& m) const {
        auto it = index_.find(m);
        if (it == index_.end()) throw std::domain_error("matrix not in group");
        return it->second;
    }
    bool contains(const FMatrix& m) const { return index_.find(m) != index_.end(); }

    std::uint32_t mul(std::uint32_t a, std::uint32_t b) const {
        return index_of(fmat_mul(*F, elems[a], elems[b]));
    }
    std::uint32_t inv(std::uint32_t a) const { return inv_[a]; }
    std::uint32_t conjugate(std::uint32_t g, std::uint32_t x) const {  // x g x^{-1}
        return index_of(fmat_mul(*F, fmat_mul(*F, elems[x], elems[g]), elems[inv_[x]]));
    }
    std::uint32_t power(std::uint32_t g, const Int& k) const {
        return index_of(fmat_pow(*F, elems[g], k));
    }
    std::uint64_t element_order(std::uint32_t g) const { return order_[g]; }

    // Jordan decomposition g = s u = u s with s p-regular, u of p-power order.
    std::pair<std::uint32_t, std::uint32_t> jordan(std::uint32_t g) const {
        std::uint64_t o = order_[g];
        std::uint64_t p = spec.p();
        std::uint64_t pa = 1;
        std::uint64_t r = o;
        while (r % p == 0) { r /= p; pa *= p; }
        if (pa == 1) return {g, id_index};
        // exponent congruent to 0 mod r and 1 mod pa picks out the p-part
        std::uint64_t e = r % o * (inv_mod_u64(r % pa, pa)) % o;
        std::uint32_t u = power(g, Int((unsigned long)e));
        std::uint32_t s = mul(g, inv_[u]);
        return {s, u};
    }

    std::uint64_t p_part_of_order() const {
        std::uint64_t p = spec.p(), r = order();
        std::uint64_t pp = 1;
        while (r % p == 0) { r /= p; pp *= p; }
        return pp;
    }

    std::vector<std::uint32_t> p_regular_classes() const {
        std::vector<std::uint32_t> out;
        for (std::uint32_t c = 0; c < classes.size(); ++c)
            if (classes[c].p_regular) out.push_back(c);
        return out;
    }

    // p'-part of the exponent: the natural cyclotomic modulus for p-regular values.
    std::uint64_t p_regular_exponent() const {
        std::uint64_t m = exponent, p = spec.p();
        while (m % p == 0) m /= p;
        return m;
    }

    const std::vector<ff>& entry_elements() const { return entry_elems_; }

  private:
    std::unordered_map<FMatrix, std::uint32_t, FMatrixHash> index_;
    std::vector<std::uint32_t> inv_;
    std::vector<std::uint64_t> order_;
    std::vector<ff> entry_elems_;  // elements of the entry subfield, digit-code order

    friend std::shared_ptr<const GroupTable> build_group(const GroupSpec&, std::uint64_t);

    void finalize() {
        std::uint64_t N = elems.size();
        index_.reserve(2 * N);
        for (std::uint32_t i = 0; i < N; ++i) index_.emplace(elems[i], i);
        id_index = index_of(FMatrix::identity((std::uint8_t)spec.n));
        inv_.resize(N);
        order_.resize(N);
        for (std::uint32_t i = 0; i < N; ++i) inv_[i] = index_of(fmat_inv(*F, elems[i]));
        for (std::uint32_t i = 0; i < N; ++i) {
            std::uint64_t o = 1;
            std::uint32_t g = i;
            while (g != id_index) { g = mul(g, i); ++o; }
            order_[i] = o;
        }
        find_generators();
        compute_classes();
        exponent = 1;
        for (const auto& c : classes) exponent = lcm_u64(exponent, c.rep_order);
    }

    void find_generators() {
        std::unordered_set<std::uint32_t> closure{id_index};
        std::vector<std::uint32_t> closure_list{id_index};
        for (std::uint32_t i = 0; i < elems.size() && closure.size() < elems.size(); ++i) {
            if (closure.count(i)) continue;
            generators.push_back(i);
            // BFS closure under multiplication by the new generator set
            std::vector<std::uint32_t> queue{i};
            closure.insert(i);
            closure_list.push_back(i);
            std::size_t head = 0;
            // products of existing closure with i seed the queue
            std::size_t base = closure_list.size() - 1;
            for (std::size_t j = 0; j < base; ++j) {
                std::uint32_t x = mul(closure_list[j], i);
                if (closure.insert(x).second) closure_list.push_back(x);
            }
            while (head < closure_list.size()) {
                std::uint32_t x = closure_list[head++];
                for (std::uint32_t g : generators) {
                    std::uint32_t y = mul(x, g);
                    if (closure.insert(y).second) closure_list.push_back(y);
                    std::uint32_t z = mul(g, x);
                    if (closure.insert(z).second) closure_list.push_back(z);
                }
            }
        }
    }

    void compute_classes() {
        std::uint64_t N = elems.size();
        class_of.assign(N, UINT32_MAX);
        std::vector<std::vector<std::uint32_t>> orbits;
        std::vector<std::uint32_t> gen_inv;
        for (std::uint32_t g : generators) gen_inv.push_back(inv_[g]);
        for (std::uint32_t i = 0; i < N; ++i) {
            if (class_of[i] != UINT32_MAX) continue;
            std::uint32_t cid = (std::uint32_t)orbits.size();
            std::vector<std::uint32_t> orbit{i};
            class_of[i] = cid;
            std::size_t head = 0;
            while (head < orbit.size()) {
                std::uint32_t x = orbit[head++];
                for (std::size_t k = 0; k < generators.size(); ++k) {
                    std::uint32_t y = index_of(fmat_mul(
                        *F, fmat_mul(*F, elems[generators[k]], elems[x]), elems[gen_inv[k]]));
                    if (class_of[y] == UINT32_MAX) {
                        class_of[y] = cid;
                        orbit.push_back(y);
                    }
                }
            }
            orbits.push_back(std::move(orbit));
        }
        // canonical representative: lexicographically minimal digit encoding
        auto digit_key = [&](std::uint32_t idx) {
            std::vector<std::uint64_t> key;
            const FMatrix& m = elems[idx];
            for (unsigned k = 0; k < (unsigned)(m.n * m.n); ++k) key.push_back(F->digits(m.e[k]));
            return key;
        };
        std::vector<ClassInfo> cls(orbits.size());
        std::vector<std::uint32_t> reps(orbits.size());
        for (std::size_t c = 0; c < orbits.size(); ++c) {
            std::uint32_t best = orbits[c][0];
            auto bestkey = digit_key(best);
            for (std::uint32_t x : orbits[c]) {
                auto k = digit_key(x);
                if (k < bestkey) { best = x; bestkey = std::move(k); }
            }
            cls[c].rep = best;
            cls[c].size = orbits[c].size();
            cls[c].centralizer = N / orbits[c].size();
            cls[c].rep_order = order_[best];
            cls[c].p_regular = (order_[best] % spec.p()) != 0;
        }
        // deterministic class order: (representative order, size, lex matrix)
        std::vector<std::uint32_t> perm(orbits.size());
        for (std::uint32_t c = 0; c < perm.size(); ++c) perm[c] = c;
        std::sort(perm.begin(), perm.end(), [&](std::uint32_t a, std::uint32_t b) {
            if (cls[a].rep_order != cls[b].rep_order) return cls[a].rep_order < cls[b].rep_order;
            if (cls[a].size != cls[b].size) return cls[a].size < cls[b].size;
            return digit_key(cls[a].rep) < digit_key(cls[b].rep);
        });
        std::vector<std::uint32_t> newid(orbits.size());
        for (std::uint32_t pos = 0; pos < perm.size(); ++pos) newid[perm[pos]] = pos;
        classes.resize(orbits.size());
        members.resize(orbits.size());
        for (std::size_t c = 0; c < orbits.size(); ++c) {
            classes[newid[c]] = cls[c];
            members[newid[c]] = std::move(orbits[c]);
        }
        for (std::uint32_t i = 0; i < N; ++i) class_of[i] = newid[class_of[i]];
        for (std::size_t c = 0; c < classes.size(); ++c)
            classes[c].inverse_class = class_of[inv_[classes[c].rep]];
    }
};

// Hermitian check for the antidiagonal form J: (g^(q))^T J g = J.
inline bool is_unitary(const FqField& F, const FMatrix& g, std::uint64_t q) {
    unsigned n = g.n;
    for (unsigned i = 0; i < n; ++i)
        for (unsigned j = 0; j < n; ++j) {
            // (sum_k g(k,i)^q * J(k,l) * g(l,j)) with J(k,l) = [k + l == n-1]
            ff s = 0;
            for (unsigned k = 0; k < n; ++k) {
                ff gki = F.pow(g.at(k, i), Int((unsigned long)q));
                s = F.add(s, F.mul(gki, g.at(n - 1 - k, j)));
            }
            ff expect = (i + j == n - 1) ? F.one() : 0;
            if (s != expect) return false;
        }
    return true;
}

inline std::shared_ptr<const GroupTable> build_group(const GroupSpec& spec,
                                                     std::uint64_t budget = 20000000) {
    static std::unordered_map<std::string, std::shared_ptr<const GroupTable>> cache;
    static std::mutex mtx;
    {
        std::lock_guard<std::mutex> lock(mtx);
        auto it = cache.find(spec.key());
        if (it != cache.end()) return it->second;
    }

    if (spec.family == Family::SL && spec.n != 2)
        throw std::invalid_argument("SL supported only for n = 2");
    if (spec.n < 1 || spec.n > 3) throw std::invalid_argument("rank out of scope (n <= 3)");

    std::uint64_t p = spec.p();
    unsigned e = spec.e();
    auto table = std::make_shared<GroupTable>();
    GroupTable& G = *table;
    G.spec = spec;
    G.F = FqField::get(p, 6ull * e);
    G.entry_field = spec.family == Family::U ? spec.q * spec.q : spec.q;

    const FqField& F = *G.F;
    // entry subfield elements in digit-code order (deterministic)
    std::vector<std::pair<std::uint64_t, ff>> coded;
    coded.emplace_back(0, 0);
    std::uint64_t step = F.gsize / (G.entry_field - 1);
    for (std::uint64_t k = 0; k < G.entry_field - 1; ++k) {
        ff x = F.from_dlog(k * step);
        coded.emplace_back(F.digits(x), x);
    }
    std::sort(coded.begin(), coded.end());
    std::vector<ff> sub;
    for (auto& [d, x] : coded) sub.push_back(x);

    unsigned n = spec.n;
    unsigned cells = n * n;
    double cand = 1;
    for (unsigned i = 0; i < cells; ++i) cand *= (double)sub.size();
    if (cand > (double)budget * 4.0)
        throw std::runtime_error("enumeration budget exceeded for " + spec.key());

    std::vector<unsigned> digits(cells, 0);
    FMatrix m;
    m.n = (std::uint8_t)n;
    bool done = false;
    while (!done) {
        for (unsigned i = 0; i < cells; ++i) m.e[i] = sub[digits[i]];
        bool keep = false;
        if (spec.family == Family::GL) {
            keep = !F.is_zero(fmat_det(F, m));
        } else if (spec.family == Family::SL) {
            keep = fmat_det(F, m) == F.one();
        } else {
            keep = is_unitary(F, m, spec.q);
        }
        if (keep) {
            G.elems.push_back(m);
            if (G.elems.size() > budget)
                throw std::runtime_error("group order exceeds budget for " + spec.key());
        }
        // increment the digit vector (row-major lexicographic, last cell fastest)
        std::size_t k = cells;
        for (;;) {
            if (k == 0) { done = true; break; }
            --k;
            if (++digits[k] < sub.size()) break;
            digits[k] = 0;
        }
    }
    G.entry_elems_ = sub;
    G.finalize();

    std::lock_guard<std::mutex> lock(mtx);
    cache.emplace(spec.key(), table);
    return table;
}

}  // namespace curtis
