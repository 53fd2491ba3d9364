#include <doctest.h>

#include <random>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "tracepds/trace.hpp"
#include "tracepds/transducer.hpp"

using namespace tracepds;

namespace {

const DependenceAlphabet g_sub = fixtures::subword_alphabet();  // a ∥ c, b depends on both
Word W(const char* s) { return g_sub.parse_word(s); }

Transducer random_transducer(std::mt19937& rng, int states, std::size_t letters) {
    Transducer t;
    t.num_states = states;
    std::uniform_int_distribution<int> st(0, states - 1);
    std::uniform_int_distribution<int> lt(0, static_cast<int>(letters) - 1);
    std::uniform_int_distribution<int> kind(0, 2);
    t.initial = {st(rng)};
    t.final_states = {st(rng)};
    for (int i = 0; i < states * 3; ++i) {
        int k = kind(rng);
        int in = k == 0 ? lt(rng) : kEpsilon;
        int out = k == 1 ? lt(rng) : kEpsilon;
        t.transitions.push_back({st(rng), in, out, st(rng)});
    }
    t.normalize();
    return t;
}

}  // namespace

TEST_CASE("accepts_pair") {
    Transducer id = identity_transducer(3);
    CHECK(accepts_pair(id, W("abc"), W("abc")));
    CHECK(!accepts_pair(id, W("abc"), W("ab")));
    Transducer super = fixtures::superword_transducer(g_sub);
    CHECK(accepts_pair(super, W("abc"), W("ac")));
    CHECK(!accepts_pair(super, W("ac"), W("abc")));
    CHECK(accepts_pair(super, W("abc"), W("")));
}

TEST_CASE("invert") {
    Transducer super = fixtures::superword_transducer(g_sub);
    Transducer sub = invert(super);
    CHECK(accepts_pair(sub, W("ac"), W("abc")));  // subword pairs flipped
    SUBCASE("double inversion over random pairs") {
        std::mt19937 rng(3);
        for (int i = 0; i < 10; ++i) {
            Transducer t = random_transducer(rng, 3, 3);
            CHECK(oracle::pairs_upto(invert(invert(t)), 3, 3) == oracle::pairs_upto(t, 3, 3));
        }
    }
    CHECK(oracle::pairs_upto(invert(identity_transducer(3)), 3, 3) ==
          oracle::pairs_upto(identity_transducer(3), 3, 3));
}

TEST_CASE("reduce preserves the accepted pair set") {
    std::mt19937 rng(19);
    for (int i = 0; i < 20; ++i) {
        Transducer t = random_transducer(rng, 5, 3);
        Transducer r = reduce(t);
        CHECK(r.num_states <= t.num_states);
        CHECK(oracle::pairs_upto(r, 3, 3) == oracle::pairs_upto(t, 3, 3));
    }
}

TEST_CASE("compose") {
    SUBCASE("composing with the identity changes nothing") {
        Transducer id = identity_transducer(3);
        std::mt19937 rng(29);
        Transducer t = random_transducer(rng, 3, 3);
        CHECK(oracle::pairs_upto(compose(t, id), 3, 3) == oracle::pairs_upto(t, 3, 3));
        CHECK(oracle::pairs_upto(compose(id, t), 3, 3) == oracle::pairs_upto(t, 3, 3));
        Transducer ids[] = {id};
        CHECK(oracle::pairs_upto(compose(std::span<const Transducer>(ids)), 3, 3) ==
              oracle::pairs_upto(id, 3, 3));
    }
    SUBCASE("chained relabelings") {
        Transducer ac = fixtures::relabel_transducer(g_sub, {{'a', 'c'}});
        Transducer cb = fixtures::relabel_transducer(g_sub, {{'c', 'b'}});
        Transducer both = compose(ac, cb);
        CHECK(accepts_pair(both, W("aaa"), W("bbb")));
        CHECK(!accepts_pair(both, W("aaa"), W("bba")));
    }
    SUBCASE("composition agrees with set-theoretic composition of pair sets") {
        std::mt19937 rng(31);
        for (int i = 0; i < 12; ++i) {
            Transducer s = random_transducer(rng, 3, 3), t = random_transducer(rng, 3, 3);
            auto direct = oracle::pairs_upto(compose(s, t), 3, 6);
            // middle words can be longer than either side; stretch is 2x here
            auto ps = oracle::pairs_upto(s, 3, 6);
            auto pt = oracle::pairs_upto(t, 6, 6);
            auto expected = oracle::compose_pairs(ps, pt);
            for (const auto& pr : expected) CHECK(direct.count(pr) == 1);
            for (const auto& pr : direct)
                if (pr.first.size() <= 3 && pr.second.size() <= 6) {
                    // the witness middle may exceed the oracle bound; accept
                    // any pair the oracle also finds with a wider bound
                    auto wide = oracle::compose_pairs(oracle::pairs_upto(s, 3, 8),
                                                      oracle::pairs_upto(t, 8, 6));
                    CHECK(wide.count(pr) == 1);
                }
        }
    }
}

TEST_CASE("apply_right and apply_left") {
    SUBCASE("identity keeps the language") {
        Nfa words = word_nfa(W("abc"));
        CHECK(language_equal(apply_right(words, identity_transducer(3)), words, 3));
    }
    SUBCASE("empty input NFA yields an empty image") {
        Nfa empty;
        empty.num_states = 1;
        empty.initial = {0};
        empty.normalize();
        CHECK(is_empty(apply_right(empty, fixtures::superword_transducer(g_sub))));
    }
    SUBCASE("images agree with pair enumeration") {
        std::mt19937 rng(37);
        for (int i = 0; i < 10; ++i) {
            Transducer t = random_transducer(rng, 3, 3);
            Nfa a = word_nfa(W("ab"));
            auto pairs = oracle::pairs_upto(t, 2, 5);
            std::set<Word> image;
            for (const auto& [u, v] : pairs)
                if (u == W("ab")) image.insert(v);
            CHECK(oracle::language_upto(apply_right(a, t), 3, 5) == image);
            std::set<Word> preimage;
            for (const auto& [u, v] : oracle::pairs_upto(t, 5, 2))
                if (v == W("ab")) preimage.insert(u);
            CHECK(oracle::language_upto(apply_left(a, t), 3, 5) == preimage);
        }
    }
}

TEST_CASE("product_transducer") {
    SUBCASE("both languages empty word") {
        Nfa e = word_nfa(Word{});
        Transducer t = product_transducer(e, e);
        CHECK(oracle::pairs_upto(t, 2, 2) ==
              std::set<std::pair<Word, Word>>{{Word{}, Word{}}});
    }
    SUBCASE("two-by-one product") {
        Nfa l1 = word_nfa(W("a"));
        Nfa l2 = nfa_union(word_nfa(W("b")), word_nfa(W("c")));
        auto pairs = oracle::pairs_upto(product_transducer(l1, l2), 3, 3);
        CHECK(pairs == std::set<std::pair<Word, Word>>{{W("a"), W("b")}, {W("a"), W("c")}});
    }
    SUBCASE("random product matches the set product") {
        std::mt19937 rng(43);
        for (int i = 0; i < 10; ++i) {
            Nfa a1, a2;
            a1.num_states = a2.num_states = 3;
            std::uniform_int_distribution<int> st(0, 2), lt(0, 2);
            a1.initial = {st(rng)};
            a1.final_states = {st(rng)};
            a2.initial = {st(rng)};
            a2.final_states = {st(rng)};
            for (int k = 0; k < 6; ++k) {
                a1.transitions.push_back({st(rng), lt(rng), st(rng)});
                a2.transitions.push_back({st(rng), lt(rng), st(rng)});
            }
            a1.normalize();
            a2.normalize();
            auto la = oracle::language_upto(a1, 3, 3), lb = oracle::language_upto(a2, 3, 3);
            std::set<std::pair<Word, Word>> expected;
            for (const auto& u : la)
                for (const auto& v : lb) expected.insert({u, v});
            CHECK(oracle::pairs_upto(product_transducer(a1, a2), 3, 3) == expected);
        }
    }
}

TEST_CASE("domain and range") {
    Transducer id = identity_transducer(3);
    CHECK(language_equal(domain_nfa(id, 3), all_words_nfa(3), 3));
    Transducer super = fixtures::superword_transducer(g_sub);
    CHECK(language_equal(range_nfa(super, 3), all_words_nfa(3), 3));
    SUBCASE("domain of a product is its left language when the right is nonempty") {
        Nfa l1 = word_nfa(W("ab")), l2 = word_nfa(W("c"));
        CHECK(language_equal(domain_nfa(product_transducer(l1, l2), 3), l1, 3));
    }
}

TEST_CASE("left-closure brute force") {
    SUBCASE("identity is left-closed") {
        auto res = is_left_closed_bruteforce(identity_transducer(3), g_sub, 3);
        CHECK(res.left_closed);
    }
    SUBCASE("superword relation is left-closed at maxlen 5") {
        auto res = is_left_closed_bruteforce(fixtures::superword_transducer(g_sub), g_sub, 5, 0);
        CHECK(res.left_closed);
    }
    SUBCASE("subword relation is not left-closed") {
        auto res = is_left_closed_bruteforce(fixtures::subword_transducer(g_sub), g_sub, 3);
        REQUIRE(!res.left_closed);
        REQUIRE(res.counterexample.has_value());
        const auto& cex = *res.counterexample;
        // the returned triple is a genuine counterexample
        CHECK(equivalent(g_sub, cex.u, cex.u_equiv));
        Transducer sub = fixtures::subword_transducer(g_sub);
        CHECK(accepts_pair(sub, cex.u_equiv, cex.v));
        for (const Word& v : class_members(g_sub, cex.v))
            CHECK(!accepts_pair(sub, cex.u, v));
    }
    SUBCASE("sharded check is deterministic") {
        Transducer sub = fixtures::subword_transducer(g_sub);
        auto one = is_left_closed_bruteforce(sub, g_sub, 3, -1, 1);
        auto four = is_left_closed_bruteforce(sub, g_sub, 3, -1, 4);
        REQUIRE(!one.left_closed);
        REQUIRE(!four.left_closed);
        CHECK(one.counterexample->u == four.counterexample->u);
        CHECK(one.counterexample->u_equiv == four.counterexample->u_equiv);
        CHECK(one.counterexample->v == four.counterexample->v);
    }
}

TEST_CASE("trace_pair_member") {
    const DependenceAlphabet& da = g_sub;  // a ∥ c here
    Transducer id = identity_transducer(3);
    CHECK(trace_pair_member(id, da, W("ac"), W("ca")));   // same trace
    CHECK(!trace_pair_member(id, da, W("ab"), W("ba")));  // (a,b) ∈ D
    SUBCASE("noComposition R1 reaches commuted outputs") {
        // alphabet a,b,c,d: (a,b) ∈ D, c ∥ d
        DependenceAlphabet d4({"a", "b", "c", "d"}, {{"a", "b"}});
        auto P = [&](const char* s) { return d4.parse_word(s); };
        // R1 = {(abab, cdcd)} · {(ab, cd)}*
        Transducer r1;
        r1.num_states = 12;
        r1.initial = {0};
        r1.final_states = {8};
        auto L = [&](char c) { return static_cast<int>(d4.require(std::string(1, c))); };
        int q = 0;
        for (const char* step : {"ac", "bd", "ac", "bd"}) {
            r1.transitions.push_back({q, L(step[0]), kEpsilon, q + 1});
            r1.transitions.push_back({q + 1, kEpsilon, L(step[1]), q + 2});
            q += 2;
        }
        // loop (ab, cd) on the final state through fresh states
        r1.transitions.push_back({8, L('a'), kEpsilon, 9});
        r1.transitions.push_back({9, kEpsilon, L('c'), 10});
        r1.transitions.push_back({10, L('b'), kEpsilon, 11});
        r1.transitions.push_back({11, kEpsilon, L('d'), 8});
        r1.normalize();
        CHECK(accepts_pair(r1, P("abab"), P("cdcd")));
        CHECK(trace_pair_member(r1, d4, P("abab"), P("ccdd")));  // (cd)^2 ∼ c^2 d^2
        CHECK(!trace_pair_member(r1, d4, P("abab"), P("cdc")));
    }
}

TEST_CASE("composition is trace-compatible for left-closed factors") {
    // [R1 ∘ R2] = [R1] ∘ [R2] when R2 is left-closed: validated by brute
    // force on superword ∘ superword over the subword alphabet.
    Transducer super = fixtures::superword_transducer(g_sub);
    Transducer comp = compose(super, super);
    auto r = oracle::pairs_upto(super, 4, 4);
    auto trace_comp = oracle::compose_pairs_traces(g_sub, r, r);
    for (const Word& u : oracle::all_words(3, 4))
        for (const Word& w : oracle::all_words(3, 4)) {
            bool via_transducer = trace_pair_member(comp, g_sub, u, w);
            bool via_enumeration = trace_comp.count({lnf(g_sub, u), lnf(g_sub, w)}) != 0;
            CHECK(via_transducer == via_enumeration);
        }
}

TEST_CASE("domain of a left-closed construction is closed") {
    Transducer super = fixtures::superword_transducer(g_sub);
    CHECK(is_closed(domain_nfa(super, 3), g_sub));
}
