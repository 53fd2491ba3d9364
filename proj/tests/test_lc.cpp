#include <doctest.h>

#include <random>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "tracepds/lc.hpp"
#include "tracepds/trace.hpp"

using namespace tracepds;

namespace {

const DependenceAlphabet g_grid = fixtures::grid_alphabet();
Word W(const char* s) { return g_grid.parse_word(s); }

/// Bounded check that [R(t)] equals the identity on traces.
void check_identity_on_traces(const Transducer& t, const DependenceAlphabet& da, int len) {
    for (const Word& u : oracle::all_words(da.size(), len))
        for (const Word& v : oracle::all_words(da.size(), len))
            CHECK(trace_pair_member(t, da, u, v) == equivalent(da, u, v));
}

}  // namespace

TEST_CASE("lift_pop") {
    SUBCASE("lifting the empty-word language gives the identity") {
        auto lifted = lift_pop(ClosedNfa::by_construction(word_nfa(Word{})), g_grid);
        CHECK(lifted.status == LcStatus::construction_guaranteed);
        check_identity_on_traces(lifted.t, g_grid, 3);
    }
    SUBCASE("lifting {c} pops a leading c") {
        auto lifted = lift_pop(ClosedNfa::by_construction(word_nfa(W("c"))), g_grid);
        CHECK(trace_pair_member(lifted.t, g_grid, W("cab"), W("ab")));
        // [abc] has no first letter c ((a,c),(b,c) ∈ D), so the pair is out
        CHECK(!trace_pair_member(lifted.t, g_grid, W("abc"), W("ab")));
        // brute-force certification of the construction
        CHECK(is_left_closed_bruteforce(lifted.t, g_grid, 4, 0).left_closed);
    }
    SUBCASE("the relation is {(xy, y) : x in the class}, by enumeration") {
        auto lifted = lift_pop(ClosedNfa::by_construction(word_nfa(W("c"))), g_grid);
        for (const Word& u : oracle::all_words(3, 3))
            for (const Word& v : oracle::all_words(3, 3)) {
                bool expected = false;
                for (const Word& x : {W("c")})
                    if (equivalent(g_grid, u, x + v)) expected = true;
                CHECK(trace_pair_member(lifted.t, g_grid, u, v) == expected);
            }
    }
    SUBCASE("input closedness is checked when requested") {
        Nfa ab_star;
        ab_star.num_states = 2;
        ab_star.initial = {0};
        ab_star.final_states = {0};
        ab_star.transitions = {{0, g_grid.require("a"), 1}, {1, g_grid.require("b"), 0}};
        ab_star.normalize();
        CHECK_THROWS_AS(ClosedNfa::checked(ab_star, g_grid), PreconditionError);
    }
}

TEST_CASE("lift_push") {
    SUBCASE("pushing the empty-word language gives the identity") {
        auto lifted = lift_push(word_nfa(Word{}), g_grid);
        check_identity_on_traces(lifted.t, g_grid, 3);
    }
    SUBCASE("pushing {ca} prepends the trace [ca]") {
        auto lifted = lift_push(word_nfa(W("ca")), g_grid);
        CHECK(trace_pair_member(lifted.t, g_grid, W("b"), W("cab")));
        CHECK(!trace_pair_member(lifted.t, g_grid, W("b"), W("cb")));
        CHECK(is_left_closed_bruteforce(lifted.t, g_grid, 4).left_closed);
    }
}

TEST_CASE("product_rel") {
    LcTransducer id{identity_transducer(3), LcStatus::construction_guaranteed, 0};
    SUBCASE("unit languages and the identity yield the identity") {
        auto t = product_rel(ClosedNfa::by_construction(word_nfa(Word{})), word_nfa(Word{}), id,
                             g_grid);
        check_identity_on_traces(t.t, g_grid, 3);
    }
    SUBCASE("matches the set-theoretic product relation by enumeration") {
        // K = {[c]}, L = [ab-class], R = Id
        Nfa k = word_nfa(W("c"));
        Nfa l = word_nfa(W("ab"));
        auto t = product_rel(ClosedNfa::by_construction(k), l, id, g_grid);
        for (const Word& u : oracle::all_words(3, 4))
            for (const Word& v : oracle::all_words(3, 4)) {
                bool expected = false;
                // (u,v) = (c·y, ab·y) modulo traces
                for (const Word& y : oracle::all_words(3, 3))
                    if (equivalent(g_grid, u, W("c") + y) && equivalent(g_grid, v, W("ab") + y))
                        expected = true;
                CHECK(trace_pair_member(t.t, g_grid, u, v) == expected);
            }
    }
    SUBCASE("certificate is required") {
        LcTransducer unknown{identity_transducer(3), LcStatus::unknown, 0};
        CHECK_THROWS_AS(product_rel(ClosedNfa::by_construction(word_nfa(Word{})),
                                    word_nfa(Word{}), unknown, g_grid),
                        PreconditionError);
    }
}

TEST_CASE("preserve_left") {
    LcTransducer id{identity_transducer(3), LcStatus::construction_guaranteed, 0};
    SUBCASE("identity preserves the language") {
        ClosedNfa k = ClosedNfa::checked(all_words_nfa(3), g_grid);
        CHECK(language_equal(preserve_left(id, k).nfa(), all_words_nfa(3), 3));
    }
    SUBCASE("preimage under a pop of c") {
        auto pop_c = lift_pop(ClosedNfa::by_construction(word_nfa(W("c"))), g_grid);
        ClosedNfa all = ClosedNfa::checked(all_words_nfa(3), g_grid);
        ClosedNfa pre = preserve_left(pop_c, all);
        // words admitting the pop: [u] = [c]·[x]
        for (const Word& u : oracle::all_words(3, 4)) {
            bool expected = first_letter_strip(g_grid, lnf(g_grid, u), g_grid.require("c"))
                                .has_value();
            CHECK(accepts(pre.nfa(), u) == expected);
        }
        CHECK(is_closed(pre.nfa(), g_grid));
    }
}

TEST_CASE("preserve_right") {
    SUBCASE("push of {ca} applied to {b} has trace set {[cab]}") {
        auto push = lift_push(word_nfa(W("ca")), g_grid);
        Nfa image = preserve_right(push, word_nfa(W("b")));
        std::set<Word> traces;
        for (const Word& w : oracle::language_upto(image, 3, 4)) traces.insert(lnf(g_grid, w));
        CHECK(traces == std::set<Word>{W("cab")});
    }
}

TEST_CASE("nivat_split") {
    const DependenceAlphabet& da = g_grid;  // first dependent distinct pair: (a,c)
    SUBCASE("identity recomposes to the identity on traces") {
        auto [t1, t2] = nivat_split(identity_transducer(3), da);
        CHECK(t1.status == LcStatus::construction_guaranteed);
        Transducer recomposed = compose(invert(t1.t), t2.t);
        check_identity_on_traces(recomposed, da, 3);
    }
    SUBCASE("superword transducer recomposes to the same trace pairs") {
        const DependenceAlphabet& ds = fixtures::subword_alphabet();
        Transducer super = fixtures::superword_transducer(ds);
        auto [t1, t2] = nivat_split(super, ds);
        Transducer recomposed = compose(invert(t1.t), t2.t);
        for (const Word& u : oracle::all_words(3, 3))
            for (const Word& v : oracle::all_words(3, 3))
                CHECK(trace_pair_member(recomposed, ds, u, v) ==
                      trace_pair_member(super, ds, u, v));
    }
    SUBCASE("both factors are left-closed at maxlen 3") {
        Transducer super = fixtures::superword_transducer(fixtures::subword_alphabet());
        auto [t1, t2] = nivat_split(super, fixtures::subword_alphabet());
        CHECK(is_left_closed_bruteforce(t1.t, fixtures::subword_alphabet(), 3, 2).left_closed);
        CHECK(is_left_closed_bruteforce(t2.t, fixtures::subword_alphabet(), 3, 2).left_closed);
    }
    SUBCASE("fully independent alphabets are rejected") {
        DependenceAlphabet free2({"a", "b"}, {});
        CHECK_THROWS_AS(nivat_split(identity_transducer(2), free2), PreconditionError);
    }
}

TEST_CASE("transform_rational") {
    SUBCASE("identity relation keeps the trace set") {
        ClosedNfa l = ClosedNfa::checked(word_nfa(W("ab")), g_grid);
        Nfa out = transform_rational(l, identity_transducer(3), g_grid);
        CHECK(oracle::language_upto(out, 3, 3) == oracle::closure_upto(g_grid, {W("ab")}, 3, 3));
    }
    SUBCASE("empty language maps to the empty language") {
        Nfa empty;
        empty.num_states = 1;
        empty.initial = {0};
        empty.normalize();
        ClosedNfa l = ClosedNfa::checked(empty, g_grid);
        CHECK(is_empty(transform_rational(l, identity_transducer(3), g_grid)));
    }
    SUBCASE("non-preservation control: relabeled (ab)* has counting traces") {
        // (a,b) ∈ D so (ab)* is closed; a ↦ c, b ↦ d with c ∥ d
        DependenceAlphabet d4({"a", "b", "c", "d"}, {{"a", "b"}});
        Nfa abstar;
        abstar.num_states = 2;
        abstar.initial = {0};
        abstar.final_states = {0};
        abstar.transitions = {{0, d4.require("a"), 1}, {1, d4.require("b"), 0}};
        abstar.normalize();
        REQUIRE(is_closed(abstar, d4));
        Transducer relabel = fixtures::relabel_transducer(d4, {{'a', 'c'}, {'b', 'd'}});
        Nfa out = transform_rational(ClosedNfa::checked(abstar, d4), relabel, d4);
        // trace members to length 8 are exactly the balanced {c,d} words
        auto lang = oracle::language_upto(out, 4, 8);
        std::set<Word> lang_traces;
        for (const Word& w : lang) lang_traces.insert(lnf(d4, w));
        std::set<Word> expected;
        for (const Word& w : oracle::all_words(4, 8)) {
            auto all_cd = w.find_first_not_of(Word{static_cast<char>(d4.require("c")),
                                                   static_cast<char>(d4.require("d"))});
            if (all_cd != Word::npos) continue;
            std::size_t cs = static_cast<std::size_t>(
                std::count(w.begin(), w.end(), static_cast<char>(d4.require("c"))));
            if (2 * cs == w.size()) expected.insert(lnf(d4, w));
        }
        CHECK(lang_traces == expected);
    }
}

TEST_CASE("noComposition control: word composition empty, trace composition not") {
    DependenceAlphabet d4({"a", "b", "c", "d"}, {{"a", "b"}});
    auto P = [&](const char* s) { return d4.parse_word(s); };
    auto L = [&](char c) { return static_cast<int>(d4.require(std::string(1, c))); };
    // R1 = {((ab)^n, (cd)^n) : n ≥ 2}
    Transducer r1;
    r1.num_states = 12;
    r1.initial = {0};
    r1.final_states = {8};
    int q = 0;
    for (const char* step : {"ac", "bd", "ac", "bd"}) {
        r1.transitions.push_back({q, L(step[0]), kEpsilon, q + 1});
        r1.transitions.push_back({q + 1, kEpsilon, L(step[1]), q + 2});
        q += 2;
    }
    r1.transitions.push_back({8, L('a'), kEpsilon, 9});
    r1.transitions.push_back({9, kEpsilon, L('c'), 10});
    r1.transitions.push_back({10, L('b'), kEpsilon, 11});
    r1.transitions.push_back({11, kEpsilon, L('d'), 8});
    r1.normalize();
    // R2 = {(c,a)}* {(d,b)}* = {(c^m d^n, a^m b^n)}
    Transducer r2;
    r2.num_states = 4;
    r2.initial = {0};
    r2.final_states = {0, 2};
    r2.transitions = {{0, L('c'), kEpsilon, 1}, {1, kEpsilon, L('a'), 0},
                      {0, kEpsilon, kEpsilon, 2},
                      {2, L('d'), kEpsilon, 3}, {3, kEpsilon, L('b'), 2}};
    r2.normalize();

    // word-level composition is empty
    Transducer comp = compose(r1, r2);
    CHECK(oracle::pairs_upto(comp, 8, 8).empty());
    CHECK(is_empty(domain_nfa(comp, 4)));

    // trace-level composition by enumeration is non-empty up to n = 4
    auto p1 = oracle::pairs_upto(r1, 8, 8);
    auto p2 = oracle::pairs_upto(r2, 8, 8);
    auto trace_comp = oracle::compose_pairs_traces(d4, p1, p2);
    CHECK(!trace_comp.empty());
    CHECK(trace_comp.count({lnf(d4, P("abab")), lnf(d4, P("aabb"))}) == 1);
    CHECK(trace_comp.count({lnf(d4, P("ababab")), lnf(d4, P("aaabbb"))}) == 1);
}

TEST_CASE("construction outputs pass the left-closure suite at maxlen 4") {
    LcTransducer id{identity_transducer(3), LcStatus::construction_guaranteed, 0};
    auto pop_c = lift_pop(ClosedNfa::by_construction(word_nfa(W("c"))), g_grid);
    auto push_ca = lift_push(word_nfa(W("ca")), g_grid);
    auto prod =
        product_rel(ClosedNfa::by_construction(word_nfa(W("c"))), word_nfa(W("a")), id, g_grid);
    CHECK(is_left_closed_bruteforce(pop_c.t, g_grid, 4, 0, 2).left_closed);
    CHECK(is_left_closed_bruteforce(push_ca.t, g_grid, 4, 2, 2).left_closed);
    CHECK(is_left_closed_bruteforce(prod.t, g_grid, 4, 2, 2).left_closed);
}

TEST_CASE("preserve_left output is always closed on random certified instances") {
    std::mt19937 rng(59);
    for (int i = 0; i < 6; ++i) {
        // closed input: the class closure of a random short word
        Word w;
        std::uniform_int_distribution<int> lt(0, 2), len(0, 3);
        int n = len(rng);
        for (int k = 0; k < n; ++k) w.push_back(static_cast<char>(lt(rng)));
        ClosedNfa k_closed = ClosedNfa::by_construction(class_automaton(g_grid, w));
        auto t = lift_pop(ClosedNfa::by_construction(word_nfa(W("c"))), g_grid);
        CHECK(is_closed(preserve_left(t, k_closed).nfa(), g_grid));
    }
}
