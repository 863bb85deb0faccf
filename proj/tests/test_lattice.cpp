// Integer lattice normal forms and membership decisions: frozen examples,
// brute-force oracles over bounded coefficient boxes, unimodular invariance.
#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "curtis/intmatrix.hpp"

using namespace curtis;

namespace {

IntMatrix mat(std::vector<std::vector<long>> rows) {
    IntMatrix m(rows.size(), rows.empty() ? 0 : rows[0].size());
    for (std::size_t i = 0; i < m.rows; ++i)
        for (std::size_t j = 0; j < m.cols; ++j) m.at(i, j) = Int(rows[i][j]);
    return m;
}

// Oracle: does b lie in the column lattice of A, searching the coefficient box?
bool member_by_box(const IntMatrix& A, const std::vector<Int>& b, long bound) {
    std::vector<long> x(A.cols, -bound);
    for (;;) {
        std::vector<Int> xi(A.cols);
        for (std::size_t i = 0; i < A.cols; ++i) xi[i] = Int(x[i]);
        if (A.apply(xi) == b) return true;
        std::size_t k = 0;
        while (k < A.cols && x[k] == bound) x[k++] = -bound;
        if (k == A.cols) return false;
        ++x[k];
    }
}

IntMatrix random_unimodular(std::mt19937& rng, std::size_t n) {
    IntMatrix u = IntMatrix::identity(n);
    std::uniform_int_distribution<int> coin(0, 2), val(-2, 2), idx(0, (int)n - 1);
    for (int step = 0; step < 12; ++step) {
        int i = idx(rng), j = idx(rng);
        if (i == j) continue;
        int c = coin(rng);
        if (c == 0) {
            for (std::size_t k = 0; k < n; ++k) std::swap(u.at(i, k), u.at(j, k));
        } else {
            Int f(val(rng));
            for (std::size_t k = 0; k < n; ++k) u.at(i, k) += f * u.at(j, k);
        }
    }
    return u;
}

}  // namespace

TEST_CASE("hnf examples") {
    CHECK(hnf(mat({{2, 0}, {0, 3}})) == mat({{2, 0}, {0, 3}}));
    CHECK(hnf(mat({{0}})) == mat({{0}}));
    // [[2,1],[0,1]]: same column lattice as its HNF, checked by mutual membership
    IntMatrix A = mat({{2, 1}, {0, 1}});
    IntMatrix H = hnf(A);
    for (std::size_t j = 0; j < A.cols; ++j) {
        CHECK(member_by_box(H, A.column(j), 4));
        CHECK(member_by_box(A, H.column(j), 4));
    }
    // normal form: pivots positive, left-of-pivot entries reduced
    CHECK(H.at(0, 0) > 0);
    CHECK(H.at(1, 1) > 0);
}

TEST_CASE("hnf preserves the column lattice on random matrices") {
    std::mt19937 rng(5150);
    std::uniform_int_distribution<int> val(-4, 4);
    for (int t = 0; t < 25; ++t) {
        IntMatrix A(3, 3);
        for (auto& v : A.a) v = Int(val(rng));
        IntMatrix H = hnf(A);
        SnfSolver sa(A), sh(H);
        for (std::size_t j = 0; j < 3; ++j) {
            CHECK(sh.solve_integer(A.column(j)).x.has_value());
            CHECK(sa.solve_integer(H.column(j)).x.has_value());
        }
    }
}

TEST_CASE("snf examples") {
    auto s = snf(mat({{2, 0}, {0, 3}}));
    CHECK(s.divisors == std::vector<Int>{Int(1), Int(6)});
    auto s2 = snf(IntMatrix::identity(3));
    CHECK(s2.divisors == std::vector<Int>{Int(1), Int(1), Int(1)});
    auto s3 = snf(mat({{2, 4}, {6, 8}}));
    CHECK(s3.divisors == std::vector<Int>{Int(2), Int(4)});
}

TEST_CASE("snf transform identity and unimodularity") {
    std::mt19937 rng(31337);
    std::uniform_int_distribution<int> val(-5, 5);
    for (int t = 0; t < 20; ++t) {
        IntMatrix A(3, 4);
        for (auto& v : A.a) v = Int(val(rng));
        SmithForm s = snf(A);
        CHECK(s.U * A * s.V == s.D);
        for (std::size_t i = 0; i + 1 < s.divisors.size(); ++i)
            if (s.divisors[i + 1] != 0) CHECK(s.divisors[i + 1] % (s.divisors[i] == 0 ? Int(1) : s.divisors[i]) == 0);
        // determinant of U and V is +-1 via SNF of the transforms themselves
        CHECK(snf(s.U).divisors == std::vector<Int>(3, Int(1)));
        CHECK(snf(s.V).divisors == std::vector<Int>(4, Int(1)));
    }
}

TEST_CASE("snf divisors invariant under unimodular transforms") {
    std::mt19937 rng(271828);
    std::uniform_int_distribution<int> val(-4, 4);
    for (int t = 0; t < 15; ++t) {
        IntMatrix A(3, 3);
        for (auto& v : A.a) v = Int(val(rng));
        IntMatrix U = random_unimodular(rng, 3), V = random_unimodular(rng, 3);
        CHECK(snf(A).divisors == snf(U * A * V).divisors);
    }
}

TEST_CASE("solve_integer examples") {
    auto r1 = solve_integer(mat({{2}}), {Int(3)});
    CHECK_FALSE(r1.x.has_value());
    REQUIRE(r1.certificate.has_value());
    CHECK(r1.certificate->divisor == 2);

    auto r2 = solve_integer(IntMatrix::identity(3), {Int(4), Int(-1), Int(7)});
    REQUIRE(r2.x.has_value());
    CHECK(*r2.x == std::vector<Int>{Int(4), Int(-1), Int(7)});

    auto r3 = solve_integer(mat({{1, 1}, {0, 2}}), {Int(0), Int(2)});
    REQUIRE(r3.x.has_value());
    CHECK(mat({{1, 1}, {0, 2}}).apply(*r3.x) == std::vector<Int>{Int(0), Int(2)});
}

TEST_CASE("solve_integer agrees with exhaustive search on random 3x3") {
    std::mt19937 rng(64);
    std::uniform_int_distribution<int> val(-3, 3);
    for (int t = 0; t < 40; ++t) {
        IntMatrix A(3, 3);
        for (auto& v : A.a) v = Int(val(rng));
        std::vector<Int> b{Int(val(rng)), Int(val(rng)), Int(val(rng))};
        auto res = solve_integer(A, b);
        if (res.x) {
            CHECK(A.apply(*res.x) == b);
        } else {
            CHECK_FALSE(member_by_box(A, b, 9));
            // certificate: u.b not divisible by the divisor, u.A divisible
            REQUIRE(res.certificate.has_value());
            const auto& cert = *res.certificate;
            Int ub = 0;
            for (std::size_t i = 0; i < 3; ++i) ub += cert.u_row[i] * b[i];
            CHECK(ub == cert.value);
            if (cert.divisor != 0) CHECK(ub % cert.divisor != 0);
        }
    }
}

TEST_CASE("lattice_compare examples") {
    IntMatrix I2 = IntMatrix::identity(2);
    auto same = lattice_compare(I2, I2, Int(2));
    CHECK(same.z_equal);
    CHECK(same.p_saturated_equal);
    CHECK(same.divisors == std::vector<Int>{Int(1), Int(1)});

    IntMatrix D = mat({{1, 0}, {0, 2}});
    auto c = lattice_compare(D, I2, Int(2));
    CHECK(c.p_saturated_equal);
    CHECK_FALSE(c.z_equal);
    CHECK(c.left_in_right);
    CHECK_FALSE(c.right_in_left);

    auto c3 = lattice_compare(D, I2, Int(3));
    CHECK_FALSE(c3.p_saturated_equal);

    IntMatrix S = mat({{1, 0}, {0, 0}});
    auto cs = lattice_compare(S, I2, Int(2));
    CHECK_FALSE(cs.span_equal);
    CHECK_FALSE(cs.p_saturated_equal);
}

TEST_CASE("dual constraint lattice") {
    // { x : (1/2) I x integral } = 2 Z^2
    QLattice L = dual_constraint_lattice(IntMatrix::identity(2), Int(2));
    auto cmp = lattice_compare(L, QLattice{mat({{2, 0}, {0, 2}}), Int(1)}, Int(5));
    CHECK(cmp.z_equal);

    // { x : N x integral } = N^{-1} Z^2 for N = [1 1; 0 2]
    QLattice L2 = dual_constraint_lattice(mat({{1, 1}, {0, 2}}), Int(1));
    auto cmp2 = lattice_compare(L2, QLattice{mat({{2, -1}, {0, 1}}), Int(2)}, Int(5));
    CHECK(cmp2.z_equal);

    // sanity: members of the computed lattice really satisfy the constraint
    for (std::size_t j = 0; j < L2.num.cols; ++j) {
        auto col = mat({{1, 1}, {0, 2}}).apply(L2.num.column(j));
        for (const Int& v : col) CHECK(v % L2.den == 0);
    }
}
