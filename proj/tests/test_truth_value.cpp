#include <doctest.h>

#include "fixtures.hpp"
#include "ibifsa/truth_value.hpp"

using namespace ibifsa;
using fixtures::tv;

TEST_CASE("rationals are canonical and ordered") {
    CHECK(tv(2, 4) == tv(1, 2));
    CHECK(tv(2, 4).num() == 1);
    CHECK(tv(2, 4).den() == 2);
    CHECK(tv(1, 3) < tv(1, 2));
    CHECK(tv(1, 2) <= tv(1, 2));
    CHECK(tv(9, 10) > tv(4, 5));
    CHECK_THROWS_AS(tv(5, 4), DomainError);
    CHECK_THROWS_AS(tv(-1, 4), DomainError);
    CHECK_THROWS_AS(TruthValue::fraction(1, 0), ParseError);
}

TEST_CASE("parse and render p/q strings") {
    CHECK(TruthValue::parse("3/4") == tv(3, 4));
    CHECK(TruthValue::parse("6/8") == tv(3, 4));
    CHECK(TruthValue::parse("0") == TruthValue::zero());
    CHECK(TruthValue::parse("1") == TruthValue::one());
    CHECK(tv(3, 4).str() == "3/4");
    CHECK(tv(0, 7).str() == "0");
    CHECK(tv(7, 7).str() == "1");
    CHECK_THROWS_AS(TruthValue::parse(""), ParseError);
    CHECK_THROWS_AS(TruthValue::parse("1/"), ParseError);
    CHECK_THROWS_AS(TruthValue::parse("a/b"), ParseError);
    CHECK_THROWS_AS(TruthValue::parse("1/-2"), ParseError);
    CHECK_THROWS_AS(TruthValue::parse("3/2"), DomainError);
    CHECK_THROWS_AS(TruthValue::parse("1/2000000001"), ParseError);
}

TEST_CASE("lukasiewicz implication") {
    CHECK(luk_implies(tv(1, 3), tv(1, 3)) == TruthValue::one()); // reflexive
    CHECK(luk_implies(TruthValue::zero(), tv(2, 5)) == TruthValue::one());
    CHECK(luk_implies(tv(3, 4), tv(1, 2)) == tv(3, 4));
    CHECK(luk_implies(TruthValue::one(), TruthValue::zero()) == TruthValue::zero());
    CHECK(luk_implies(tv(9, 10), tv(1, 2)) == tv(3, 5));
}

TEST_CASE("goedel implication comparison toggle") {
    CHECK(goedel_implies(tv(1, 3), tv(1, 2)) == TruthValue::one());
    CHECK(goedel_implies(tv(1, 2), tv(1, 3)) == tv(1, 3));
}

TEST_CASE("conjunction, disjunction, aggregation") {
    CHECK(conj(TruthValue::one(), tv(2, 7)) == tv(2, 7));
    CHECK(disj(TruthValue::zero(), tv(2, 7)) == tv(2, 7));
    CHECK(conj(tv(2, 5), tv(3, 5)) == tv(2, 5));

    const std::vector<TruthValue> all_one{tv(1), tv(1), tv(1)};
    CHECK(aggregate_forall(all_one) == TruthValue::one());
    const std::vector<TruthValue> some{tv(0), tv(1, 2), tv(1, 4)};
    CHECK(aggregate_exists(some) == tv(1, 2));
    const std::vector<TruthValue> three{tv(3, 5), tv(1), tv(4, 5)};
    CHECK(aggregate_forall(three) == tv(3, 5));
    CHECK_THROWS_AS(aggregate_forall({}), EmptyCarrier);
    CHECK_THROWS_AS(aggregate_exists({}), EmptyCarrier);
}

TEST_CASE("tautology degree over instantiation pairs") {
    using Pair = std::pair<TruthValue, TruthValue>;
    const std::vector<Pair> reflexive{{tv(1, 3), tv(1, 3)}, {tv(4, 5), tv(4, 5)}};
    CHECK(tautology_degree(reflexive) == TruthValue::one());
    const std::vector<Pair> single{{tv(9, 10), tv(1, 2)}};
    CHECK(tautology_degree(single) == tv(3, 5));
    const std::vector<Pair> two{{tv(1, 2), tv(9, 10)}, {tv(9, 10), tv(1, 2)}};
    CHECK(tautology_degree(two) == tv(3, 5));
    CHECK_THROWS_AS(tautology_degree({}), EmptyCarrier);
}

TEST_CASE("residuation: implication is 1 exactly when b >= a") {
    fixtures::RandomInstances gen;
    for (int i = 0; i < 300; ++i) {
        const int den = 1 + static_cast<int>(gen.draw(11));
        const TruthValue a = gen.value(den);
        const TruthValue b = gen.value(den);
        CHECK((luk_implies(a, b) == TruthValue::one()) == (b >= a));
    }
}

TEST_CASE("implication is antitone in a, monotone in b") {
    fixtures::RandomInstances gen;
    for (int i = 0; i < 300; ++i) {
        const int den = 1 + static_cast<int>(gen.draw(11));
        TruthValue a1 = gen.value(den), a2 = gen.value(den);
        if (a2 < a1) std::swap(a1, a2);
        const TruthValue b = gen.value(den);
        CHECK(luk_implies(a2, b) <= luk_implies(a1, b));
        TruthValue b1 = gen.value(den), b2 = gen.value(den);
        if (b2 < b1) std::swap(b1, b2);
        const TruthValue a = gen.value(den);
        CHECK(luk_implies(a, b1) <= luk_implies(a, b2));
    }
}

TEST_CASE("chaining bound") {
    fixtures::RandomInstances gen;
    for (int i = 0; i < 300; ++i) {
        const int den = 1 + static_cast<int>(gen.draw(11));
        const TruthValue a = gen.value(den), b = gen.value(den), c = gen.value(den);
        const auto lhs = luk_implies(a, c).ratio();
        const auto rhs = luk_implies(a, b).ratio() + luk_implies(b, c).ratio() - 1;
        if (rhs >= 0) {
            CHECK(lhs >= rhs);
        }
    }
    CHECK(chaining_floor(tv(3, 4)) == tv(1, 2));
    CHECK(chaining_floor(tv(1, 4)) == TruthValue::zero());
    CHECK(chaining_floor(TruthValue::one()) == TruthValue::one());
}
