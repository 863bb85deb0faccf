// Exact cyclotomic arithmetic: frozen example values, an independent
// polynomial-remainder oracle, and randomized algebraic properties.
#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "curtis/cyclo.hpp"
#include "curtis/intpoly.hpp"

using namespace curtis;

namespace {

// Oracle: reduce x^k modulo Phi_m by plain polynomial long division, with no
// shared code with Cyclo's internal power table.
std::vector<Rat> power_mod_phi_oracle(std::uint64_t k, std::uint64_t m) {
    const IntPoly& phi = cyclotomic_polynomial(m);
    std::size_t d = (std::size_t)phi.degree();
    std::vector<Rat> r(d, Rat(0));
    std::vector<Rat> cur(1, Rat(1));  // polynomial "1"
    auto reduce = [&](std::vector<Rat>& pol) {
        while (pol.size() > d) {
            Rat head = pol.back();
            pol.pop_back();
            if (head == 0) continue;
            std::size_t base = pol.size() - d;
            for (std::size_t j = 0; j < d; ++j) pol[base + j] -= head * Rat(phi[j]);
        }
    };
    for (std::uint64_t i = 0; i < k % m; ++i) {
        cur.insert(cur.begin(), Rat(0));  // multiply by x
        reduce(cur);
    }
    for (std::size_t j = 0; j < cur.size(); ++j) r[j] = cur[j];
    return r;
}

Cyclo random_cyclo(std::mt19937& rng, std::uint64_t m) {
    std::uniform_int_distribution<int> num(-6, 6);
    std::uniform_int_distribution<int> den(1, 4);
    std::size_t phi = (std::size_t)euler_phi(m);
    std::vector<Rat> c(phi);
    for (auto& x : c) x = make_rat(Int(num(rng)), Int(den(rng)));
    return Cyclo(m, std::move(c));
}

}  // namespace

TEST_CASE("cyclotomic polynomials") {
    CHECK(cyclotomic_polynomial(1).str() == "t - 1");
    CHECK(cyclotomic_polynomial(3) == IntPoly({Int(1), Int(1), Int(1)}));
    CHECK(cyclotomic_polynomial(4) == IntPoly({Int(1), Int(0), Int(1)}));
    CHECK(cyclotomic_polynomial(12) == IntPoly({Int(1), Int(0), Int(-1), Int(0), Int(1)}));
    // phi(104) = 48, phi(312) = 96: the moduli the verifier actually meets
    CHECK(cyclotomic_polynomial(104).degree() == 48);
    CHECK(cyclotomic_polynomial(312).degree() == 96);
}

TEST_CASE("root_of_unity examples") {
    CHECK(root_of_unity(0, 1) == Cyclo::one());
    CHECK(root_of_unity(2, 4) == Cyclo(Rat(-1), 4));
    // zeta_3 has minimal polynomial x^2 + x + 1; verify zeta^3 = 1 and the
    // power-basis coordinates against the remainder oracle
    Cyclo z = root_of_unity(1, 3);
    CHECK(z * z * z == Cyclo::one(3));
    CHECK((z * z).coords() == power_mod_phi_oracle(2, 3));
    for (std::uint64_t k = 0; k < 12; ++k) {
        Cyclo r = root_of_unity((std::int64_t)k, 12);
        CHECK(r.coords() == power_mod_phi_oracle(k, 12));
    }
}

TEST_CASE("root of unity orders") {
    for (std::uint64_t m : {2ull, 3ull, 4ull, 6ull, 8ull, 9ull, 12ull}) {
        for (std::uint64_t k = 0; k < m; ++k) {
            Cyclo z = root_of_unity((std::int64_t)k, m);
            std::uint64_t expect = m / gcd_u64(k == 0 ? m : k, m);
            Cyclo pw = Cyclo::one(m);
            std::uint64_t order = 0;
            for (std::uint64_t i = 1; i <= m; ++i) {
                pw = pw * z;
                if (pw == Cyclo::one(m)) { order = i; break; }
            }
            CHECK(order == expect);
        }
    }
}

TEST_CASE("p_integral") {
    CHECK(p_integral(Cyclo(make_rat(5, 9)), Int(3)));
    CHECK_FALSE(p_integral(Cyclo(make_rat(1, 2)), Int(3)));
    // (1 + zeta_3)/3 is 3-integral: 3x has integral coordinates
    Cyclo x = make_rat(1, 3) * (Cyclo::one(3) + root_of_unity(1, 3));
    CHECK(p_integral(x, Int(3)));
    CHECK_FALSE(p_integral(x, Int(2)));
    CHECK_THROWS(p_integral(x, Int(6)));
}

TEST_CASE("flatten examples") {
    CHECK(flatten(root_of_unity(1, 4), 4) == std::vector<Rat>{Rat(0), Rat(1)});
    CHECK(flatten(Cyclo::one(), 3) == std::vector<Rat>{Rat(1), Rat(0)});
    // zeta_3^2 = -1 - zeta_3 after reduction mod x^2 + x + 1
    CHECK(flatten(root_of_unity(2, 3), 3) == std::vector<Rat>{Rat(-1), Rat(-1)});
}

TEST_CASE("flatten is additive and injective on samples") {
    std::mt19937 rng(417);
    for (int i = 0; i < 50; ++i) {
        Cyclo a = random_cyclo(rng, 12), b = random_cyclo(rng, 12);
        auto fa = flatten(a, 12), fb = flatten(b, 12), fs = flatten(a + b, 12);
        for (std::size_t j = 0; j < fa.size(); ++j) CHECK(fs[j] == fa[j] + fb[j]);
        if (!(a == b)) CHECK(flatten(a, 12) != flatten(b, 12));
    }
}

TEST_CASE("field axioms on random triples") {
    std::mt19937 rng(99);
    for (std::uint64_t m : {5ull, 8ull, 12ull}) {
        for (int i = 0; i < 30; ++i) {
            Cyclo a = random_cyclo(rng, m), b = random_cyclo(rng, m), c = random_cyclo(rng, m);
            CHECK((a * b) * c == a * (b * c));
            CHECK(a * (b + c) == a * b + a * c);
            CHECK(a + b == b + a);
            if (!a.is_zero()) {
                CHECK(a * inverse(a) == Cyclo::one(m));
            }
        }
    }
}

TEST_CASE("conjugation is a ring automorphism of order two") {
    std::mt19937 rng(7);
    for (int i = 0; i < 30; ++i) {
        Cyclo a = random_cyclo(rng, 12), b = random_cyclo(rng, 12);
        CHECK(conj(conj(a)) == a);
        CHECK(conj(a * b) == conj(a) * conj(b));
        CHECK(conj(a + b) == conj(a) + conj(b));
    }
    CHECK(conj(root_of_unity(1, 8)) == root_of_unity(7, 8));
}

TEST_CASE("p_integral closed under ring operations on samples") {
    std::mt19937 rng(2024);
    std::uniform_int_distribution<int> num(-5, 5);
    std::uniform_int_distribution<int> pe(0, 2);
    auto random_p_integral = [&](std::uint64_t m, const Int& p) {
        std::size_t phi = (std::size_t)euler_phi(m);
        std::vector<Rat> c(phi);
        for (auto& x : c) x = make_rat(Int(num(rng)), int_pow(p, pe(rng)));
        return Cyclo(m, std::move(c));
    };
    for (int i = 0; i < 40; ++i) {
        Int p(3);
        Cyclo a = random_p_integral(12, p), b = random_p_integral(12, p);
        REQUIRE(p_integral(a, p));
        REQUIRE(p_integral(b, p));
        CHECK(p_integral(a * b, p));
        CHECK(p_integral(a + b, p));
    }
}

TEST_CASE("mixed-modulus interop lifts to lcm") {
    Cyclo z3 = root_of_unity(1, 3), z4 = root_of_unity(1, 4);
    Cyclo prod = z3 * z4;
    CHECK(prod.modulus() == 12);
    CHECK(prod == root_of_unity(7, 12));  // zeta_12^4 * zeta_12^3
    CHECK(root_of_unity(2, 6) == root_of_unity(1, 3));
}

TEST_CASE("to_modulus round trip") {
    Cyclo z = root_of_unity(1, 3);
    Cyclo lifted = z.lifted(12);
    CHECK(to_modulus(lifted, 3) == z);
    CHECK_THROWS(to_modulus(root_of_unity(1, 12), 3));
    Cyclo rat = to_modulus(Cyclo(Rat(5), 12), 1);
    CHECK(rat.rational_part() == 5);
}
