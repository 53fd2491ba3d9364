#include <doctest.h>

#include "fixtures.hpp"
#include "tracepds/alphabet.hpp"

using namespace tracepds;

TEST_CASE("alphabet loading normalizes the dependence relation") {
    auto da = fixtures::grid_alphabet();
    REQUIRE(da.size() == 3);
    Letter a = da.require("a"), b = da.require("b"), c = da.require("c");
    CHECK(da.dependent(a, a));  // reflexive pairs implied
    CHECK(da.dependent(b, b));
    CHECK(da.dependent(a, c));
    CHECK(da.dependent(c, a));  // symmetric closure
    CHECK(da.dependent(b, c));
    CHECK(da.dependent(c, b));
    CHECK(!da.dependent(a, b));
    CHECK(da.independent(a, b));
    CHECK(!da.independent(a, a));
}

TEST_CASE("single letter forces reflexive dependence") {
    DependenceAlphabet da({"a"}, {});
    CHECK(da.dependent(0, 0));
    CHECK(da.set_twin_index() == 2);  // ∅ and {a}
}

TEST_CASE("two letters with an explicit pair give full dependence") {
    DependenceAlphabet da({"a", "b"}, {{"a", "b"}});
    for (Letter x = 0; x < 2; ++x)
        for (Letter y = 0; y < 2; ++y) CHECK(da.dependent(x, y));
}

TEST_CASE("alphabet loading rejects bad input") {
    CHECK_THROWS_AS(DependenceAlphabet({"a", "a"}, {}), InputError);
    CHECK_THROWS_AS(DependenceAlphabet({"a"}, {{"a", "b"}}), InputError);
    CHECK_THROWS_AS(DependenceAlphabet({""}, {}), InputError);
}

TEST_CASE("dependent sets") {
    auto da = fixtures::grid_alphabet();
    Letter a = da.require("a"), b = da.require("b"), c = da.require("c");
    CHECK(da.dep_mask(a) == ((1u << a) | (1u << c)));
    CHECK(da.dep_of_set(0) == 0);  // D(∅) = ∅
    CHECK(da.dep_of_set((1u << a) | (1u << b)) == ((1u << a) | (1u << b) | (1u << c)));
}

TEST_CASE("parallel words") {
    auto da = fixtures::grid_alphabet();
    CHECK(da.parallel(da.parse_word(""), da.parse_word("abc")));
    CHECK(da.parallel(da.parse_word("a"), da.parse_word("b")));
    CHECK(!da.parallel(da.parse_word("a"), da.parse_word("a")));  // reflexivity
    CHECK(!da.parallel(da.parse_word("ab"), da.parse_word("c")));
}

TEST_CASE("twin classes and twin index") {
    SUBCASE("full dependence has one class") {
        auto da = fixtures::full_dependence_abc();
        CHECK(da.twin_index() == 1);
        CHECK(da.twin_classes().front().size() == 3);
    }
    SUBCASE("identity-only dependence separates all letters") {
        DependenceAlphabet da({"a", "b", "c"}, {});
        CHECK(da.twin_index() == 3);
    }
    SUBCASE("the five-letter four-phase alphabet has five classes") {
        CHECK(fixtures::fourphase_alphabet().twin_index() == 5);
    }
}

TEST_CASE("set twin index") {
    CHECK(fixtures::full_dependence_abc().set_twin_index() == 2);  // ∅ and A
    CHECK(DependenceAlphabet({"a", "b", "c"}, {}).set_twin_index() == 8);
    CHECK(DependenceAlphabet({"a"}, {}).set_twin_index() == 2);
    CHECK(fixtures::grid_alphabet().set_twin_index() == 4);  // ∅, {a,c}, {b,c}, A
}

TEST_CASE("independence number") {
    CHECK(fixtures::full_dependence_abc().independence_number() == 1);
    CHECK(DependenceAlphabet({"a", "b", "c", "d"}, {}).independence_number() == 4);
    CHECK(fixtures::grid_alphabet().independence_number() == 2);  // {a,b}
}

TEST_CASE("index inequality chain alpha <= TI <= set twin index") {
    for (const auto& da :
         {fixtures::grid_alphabet(), fixtures::fourphase_alphabet(),
          fixtures::full_dependence_abc(), fixtures::subword_alphabet(),
          DependenceAlphabet({"a", "b", "c", "d"}, {{"a", "b"}, {"c", "d"}})}) {
        CHECK(da.independence_number() <= da.twin_index());
        CHECK(da.twin_index() <= da.set_twin_index());
    }
}

TEST_CASE("multi-character letter names") {
    DependenceAlphabet da({"aa", "b"}, {{"aa", "b"}});
    CHECK(da.require("aa") == 0);
    CHECK(!da.all_single_char_names());
    CHECK_THROWS_AS(da.parse_word("aa"), InputError);  // chars are not letters here
}
