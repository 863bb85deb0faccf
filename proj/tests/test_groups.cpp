// Group enumeration, conjugacy data, induction, Steinberg, and the Dixon
// character-table oracle on the small acceptance groups.
#include <catch2/catch_amalgamated.hpp>

#include "curtis/class_function.hpp"
#include "curtis/dixon.hpp"

using namespace curtis;

namespace {

std::vector<Rat> degrees(const std::vector<ClassFunction>& table) {
    std::vector<Rat> d;
    const GroupTable& G = *table[0].G;
    std::uint32_t idc = G.class_of[G.id_index];
    for (auto& f : table) d.push_back(f.v[idc].rational_part());
    std::sort(d.begin(), d.end());
    return d;
}

}  // namespace

TEST_CASE("build_group orders and class counts") {
    auto gl22 = build_group({Family::GL, 2, 2});
    CHECK(gl22->order() == 6);
    CHECK(gl22->num_classes() == 3);

    auto gl32 = build_group({Family::GL, 3, 2});
    CHECK(gl32->order() == 168);
    CHECK(gl32->num_classes() == 6);

    auto u22 = build_group({Family::U, 2, 2});
    CHECK(u22->order() == 18);

    auto u23 = build_group({Family::U, 2, 3});
    CHECK(u23->order() == 96);

    auto sl23 = build_group({Family::SL, 2, 3});
    CHECK(sl23->order() == 24);
    CHECK(sl23->num_classes() == 7);

    auto gl23 = build_group({Family::GL, 2, 3});
    CHECK(gl23->order() == 48);
    CHECK(gl23->num_classes() == 8);
}

TEST_CASE("class equation and centralizer identities") {
    for (GroupSpec spec : {GroupSpec{Family::GL, 2, 3}, GroupSpec{Family::U, 2, 2},
                           GroupSpec{Family::GL, 3, 2}, GroupSpec{Family::SL, 2, 3}}) {
        auto G = build_group(spec);
        std::uint64_t total = 0;
        for (auto& c : G->classes) {
            total += c.size;
            CHECK(c.size * c.centralizer == G->order());
            CHECK(c.p_regular == (c.rep_order % spec.p() != 0));
        }
        CHECK(total == G->order());
        // brute-force centralizer of each representative
        for (auto& c : G->classes) {
            std::uint64_t cent = 0;
            for (std::uint32_t x = 0; x < G->order(); ++x)
                if (G->mul(x, c.rep) == G->mul(c.rep, x)) ++cent;
            CHECK(cent == c.centralizer);
        }
    }
}

TEST_CASE("jordan decomposition") {
    auto G = build_group({Family::GL, 2, 3});
    for (auto& c : G->classes) {
        auto [s, u] = G->jordan(c.rep);
        CHECK(G->mul(s, u) == c.rep);
        CHECK(G->mul(u, s) == c.rep);
        CHECK(G->element_order(s) % G->spec.p() != 0);
        std::uint64_t uo = G->element_order(u);
        while (uo % G->spec.p() == 0) uo /= G->spec.p();
        CHECK(uo == 1);
    }
}

TEST_CASE("inner product examples on GL2(F2)") {
    auto G = build_group({Family::GL, 2, 2});
    ClassFunction one = trivial_character(*G);
    CHECK(inner_product(one, one) == Cyclo::one());
    ClassFunction st = steinberg(*G);
    // class order: identity, transvection (order 2), order-3
    CHECK(st.v[0].rational_part() == 2);
    CHECK(st.v[1].rational_part() == 0);
    CHECK(st.v[2].rational_part() == -1);
    CHECK(inner_product(st, st) == Cyclo::one());
    CHECK(inner_product(one, st) == Cyclo::zero());
}

TEST_CASE("induction examples") {
    auto G = build_group({Family::GL, 2, 2});
    Subgroup B = borel_subgroup(*G);
    CHECK(B.order() == 2);
    ClassFunction ind = induce_trivial(*G, B, "Ind_B(1)");
    CHECK(ind.v[0].rational_part() == 3);
    CHECK(ind.v[1].rational_part() == 1);
    CHECK(ind.v[2].rational_part() == 0);
    // induction from the trivial subgroup gives the regular character
    Subgroup triv = make_subgroup(*G, {G->id_index});
    ClassFunction reg = induce_trivial(*G, triv, "reg");
    CHECK(reg.v[0].rational_part() == (long)G->order());
    for (std::size_t c = 1; c < G->num_classes(); ++c) CHECK(reg.v[c].is_zero());
}

TEST_CASE("steinberg degrees and irreducibility") {
    struct Case { GroupSpec spec; long deg; };
    for (auto cse : {Case{{Family::GL, 2, 2}, 2}, Case{{Family::GL, 3, 2}, 8},
                     Case{{Family::GL, 2, 3}, 3}, Case{{Family::GL, 2, 4}, 4},
                     Case{{Family::U, 2, 2}, 2}, Case{{Family::U, 2, 3}, 3},
                     Case{{Family::U, 3, 2}, 8}, Case{{Family::SL, 2, 3}, 3}}) {
        auto G = build_group(cse.spec);
        ClassFunction st = steinberg(*G);
        CHECK(st.v[G->class_of[G->id_index]].rational_part() == cse.deg);
        CHECK(st.v[G->class_of[G->id_index]].rational_part() ==
              (long)G->p_part_of_order());
        CHECK(inner_product(st, st) == Cyclo::one());
    }
}

TEST_CASE("p-regular restriction") {
    auto G = build_group({Family::GL, 2, 2});
    ClassFunction one = p_regular_restrict(trivial_character(*G));
    REQUIRE(one.v.size() == 2);
    CHECK(one.v[0] == Cyclo::one());
    CHECK(one.v[1] == Cyclo::one());
    ClassFunction st = p_regular_restrict(steinberg(*G));
    CHECK(st.v[0].rational_part() == 2);
    CHECK(st.v[1].rational_part() == -1);
    // linearity on a sample
    ClassFunction sum = p_regular_restrict(cf_add(trivial_character(*G), steinberg(*G)));
    for (std::size_t i = 0; i < sum.v.size(); ++i) CHECK(sum.v[i] == one.v[i] + st.v[i]);
}

TEST_CASE("dixon: GL2(F2) is S3") {
    auto G = build_group({Family::GL, 2, 2});
    auto table = dixon_character_table(*G);
    REQUIRE(table.size() == 3);
    CHECK(degrees(table) == std::vector<Rat>{Rat(1), Rat(1), Rat(2)});
}

TEST_CASE("dixon: SL2(F3) has seven characters, two of degree (q+1)/2 = 2") {
    auto G = build_group({Family::SL, 2, 3});
    auto table = dixon_character_table(*G);
    REQUIRE(table.size() == 7);
    auto d = degrees(table);
    CHECK(std::count(d.begin(), d.end(), Rat(2)) == 3);  // 2, 2 and the third deg-2
    // degree multiset of SL2(3): 1,1,1,2,2,2,3
    CHECK(d == std::vector<Rat>{Rat(1), Rat(1), Rat(1), Rat(2), Rat(2), Rat(2), Rat(3)});
}

TEST_CASE("dixon: GL2(F3) table") {
    auto G = build_group({Family::GL, 2, 3});
    auto table = dixon_character_table(*G);
    REQUIRE(table.size() == 8);
    Rat sumsq(0);
    for (auto& f : table) {
        Rat d = f.v[G->class_of[G->id_index]].rational_part();
        sumsq += d * d;
    }
    CHECK(sumsq == Rat(48));
}

TEST_CASE("dixon tables are orthonormal and complete") {
    for (GroupSpec spec : {GroupSpec{Family::GL, 2, 2}, GroupSpec{Family::GL, 2, 3},
                           GroupSpec{Family::U, 2, 2}, GroupSpec{Family::SL, 2, 3}}) {
        auto G = build_group(spec);
        auto table = dixon_character_table(*G);
        REQUIRE(table.size() == G->num_classes());
        for (std::size_t i = 0; i < table.size(); ++i)
            for (std::size_t j = 0; j < table.size(); ++j)
                CHECK(inner_product(table[i], table[j]) ==
                      (i == j ? Cyclo::one() : Cyclo::zero()));
        // column orthogonality at the identity: sum_chi chi(1) chi(g) = 0 for g != 1
        std::uint32_t idc = G->class_of[G->id_index];
        for (std::size_t c = 0; c < G->num_classes(); ++c) {
            Cyclo acc = Cyclo::zero();
            for (auto& f : table) acc += f.v[idc] * f.v[c];
            if (c == idc) CHECK(acc.rational_part() == (long)G->order());
            else CHECK(acc.is_zero());
        }
    }
}

TEST_CASE("frobenius reciprocity for induction from the Borel") {
    auto G = build_group({Family::GL, 2, 3});
    Subgroup B = borel_subgroup(*G);
    ClassFunction indb = induce_trivial(*G, B, "Ind_B(1)");
    auto table = dixon_character_table(*G);
    for (auto& chi : table) {
        // <Ind 1, chi>_G = <1, Res chi>_B = (1/|B|) sum_{b in B} chi(b)
        Cyclo lhs = inner_product(indb, chi);
        Cyclo rhs = Cyclo::zero();
        for (std::uint32_t b : B.elems) rhs += cf_value_at(chi, G->inv(b));
        rhs = make_rat(1, Int((unsigned long)B.order())) * rhs;
        CHECK(lhs == rhs);
    }
}
