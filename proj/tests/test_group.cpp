#include <doctest.h>

#include <algorithm>

#include "fixtures.hpp"
#include "ibifsa/group.hpp"

using namespace ibifsa;

TEST_CASE("cyclic addition table validates") {
    const auto g = FiniteGroup::from_table({{0, 1, 2}, {1, 2, 0}, {2, 0, 1}});
    CHECK(g.order() == 3);
    CHECK(g.identity() == 0);
    CHECK(g.inverse(0) == 0);
    CHECK(g.inverse(1) == 2);
    CHECK(g.inverse(2) == 1);
}

TEST_CASE("axiom violations carry witnesses") {
    CHECK_THROWS_AS(FiniteGroup::from_table({{0, 3}, {1, 0}}), NotClosed);
    CHECK_THROWS_AS(FiniteGroup::from_table({{0, 1}, {1, 1}}), NoInverse);
    CHECK_THROWS_AS(FiniteGroup::from_table({{1, 0}, {0, 0}}), NoIdentity);
    // Latin square with identity that is not associative (order 5 loop).
    const std::vector<std::vector<long long>> loop = {
        {0, 1, 2, 3, 4},
        {1, 0, 3, 4, 2},
        {2, 4, 0, 1, 3},
        {3, 2, 4, 0, 1},
        {4, 3, 1, 2, 0},
    };
    try {
        FiniteGroup::from_table(loop);
        FAIL("expected NotAssociative");
    } catch (const NotAssociative& e) {
        // the witness triple really violates associativity
        auto mul = [&](int x, int y) { return static_cast<int>(loop[x][y]); };
        CHECK(mul(mul(e.a, e.b), e.c) != mul(e.a, mul(e.b, e.c)));
    }
    try {
        FiniteGroup::from_table({{0, 1}, {1, 1}});
        FAIL("expected NoInverse");
    } catch (const NoInverse& e) {
        CHECK(e.element == 1);
    }
}

TEST_CASE("standard families") {
    const auto c4 = FiniteGroup::cyclic(4);
    for (int x = 0; x < 4; ++x) {
        int p = x;
        for (int i = 1; i < 4; ++i) p = c4.mul(p, x);
        CHECK(p == c4.identity()); // x^4 = e
    }

    const auto k4 = FiniteGroup::klein4();
    CHECK(k4.order() == 4);
    for (int x = 0; x < 4; ++x) CHECK(k4.inverse(x) == x);

    const auto s3 = FiniteGroup::symmetric(3);
    CHECK(s3.order() == 6);
    bool witness = false; // exhaustive commutativity scan
    for (int x = 0; x < 6 && !witness; ++x) {
        for (int y = 0; y < 6 && !witness; ++y) {
            witness = s3.mul(x, y) != s3.mul(y, x);
        }
    }
    CHECK(witness);
    CHECK_FALSE(s3.is_abelian());
    CHECK_THROWS_AS(FiniteGroup::symmetric(6), TooLarge);

    const auto d4 = FiniteGroup::dihedral(4);
    CHECK(d4.order() == 8);
    CHECK_FALSE(d4.is_abelian());

    const auto prod = FiniteGroup::direct_product(FiniteGroup::cyclic(2), FiniteGroup::cyclic(3));
    CHECK(prod.order() == 6);
    CHECK(prod.is_abelian());
}

TEST_CASE("group specs parse") {
    CHECK(FiniteGroup::from_spec("cyclic:4").order() == 4);
    CHECK(FiniteGroup::from_spec("klein4").order() == 4);
    CHECK(FiniteGroup::from_spec("dihedral:3").order() == 6);
    CHECK(FiniteGroup::from_spec("symmetric:3").order() == 6);
    CHECK(FiniteGroup::from_spec("product:cyclic:2,cyclic:2").order() == 4);
    CHECK_THROWS_AS(FiniteGroup::from_spec("foo:3"), ParseError);
    CHECK_THROWS_AS(FiniteGroup::from_spec("cyclic:x"), ParseError);
}

TEST_CASE("rows and columns are permutations") {
    for (const auto& g : {FiniteGroup::cyclic(5), FiniteGroup::dihedral(3),
                          FiniteGroup::symmetric(4), FiniteGroup::klein4()}) {
        const int n = g.order();
        for (int r = 0; r < n; ++r) {
            std::vector<bool> row(n, false), col(n, false);
            for (int c = 0; c < n; ++c) {
                row[g.mul(r, c)] = true;
                col[g.mul(c, r)] = true;
            }
            CHECK(std::count(row.begin(), row.end(), true) == n);
            CHECK(std::count(col.begin(), col.end(), true) == n);
        }
    }
}

TEST_CASE("homomorphisms validate") {
    const auto c4 = FiniteGroup::cyclic(4);
    const auto c2 = FiniteGroup::cyclic(2);
    const GroupHomomorphism mod2(c4, c2, {0, 1, 0, 1});
    CHECK(mod2.apply(3) == 1);
    CHECK(mod2.image() == std::vector<int>{0, 1});

    CHECK_THROWS_AS(GroupHomomorphism(c4, c2, {0, 1, 1, 0}), NotHomomorphism);
    CHECK_THROWS_AS(GroupHomomorphism(c4, c2, {0, 1}), LengthMismatch);
    CHECK_THROWS_AS(GroupHomomorphism(c4, c2, {0, 5, 0, 5}), CarrierMismatch);

    // non-surjective embedding: c2 -> c4
    const GroupHomomorphism embed(c2, c4, {0, 2});
    CHECK(embed.image() == std::vector<int>{0, 2});
}

TEST_CASE("element names resolve") {
    const auto k4 = FiniteGroup::klein4();
    CHECK(k4.element_by_name("e") == 0);
    CHECK(k4.element_by_name("c") == 3);
    CHECK_THROWS_AS(k4.element_by_name("z"), UnknownState);
}
