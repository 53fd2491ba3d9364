#pragma once

// Shared instances used across the test suites: the two worked systems from
// the source material, the shortcut-figure system, and the subword/superword
// transducers.

#include "tracepds/alphabet.hpp"
#include "tracepds/nfa.hpp"
#include "tracepds/tpds.hpp"
#include "tracepds/transducer.hpp"

namespace tracepds::fixtures {

inline DependenceAlphabet grid_alphabet() {
    return DependenceAlphabet({"a", "b", "c"}, {{"a", "c"}, {"b", "c"}});
}

inline Tpds grid_system(const DependenceAlphabet& da) {
    Tpds p;
    p.num_states = 1;
    p.transitions = {{0, da.require("c"), da.parse_word("ca"), 0},
                     {0, da.require("c"), da.parse_word("cab"), 0}};
    p.normalize(da);
    return p;
}

inline DependenceAlphabet fourphase_alphabet() {
    return DependenceAlphabet({"a", "b", "c", "d", "e"},
                              {{"a", "b"}, {"a", "c"}, {"a", "d"}, {"a", "e"},
                               {"b", "d"}, {"b", "e"}});
}

inline Tpds fourphase_system(const DependenceAlphabet& da) {
    Tpds p;
    p.num_states = 4;
    auto L = [&](const char* s) { return da.require(s); };
    auto W = [&](const char* s) { return da.parse_word(s); };
    p.transitions = {{0, L("a"), W("abc"), 0}, {0, L("a"), W("c"), 1},
                     {1, L("b"), W(""), 1},    {1, L("b"), W(""), 2},
                     {2, L("b"), W("bde"), 2}, {2, L("b"), W("e"), 3},
                     {3, L("d"), W(""), 3}};
    p.normalize(da);
    return p;
}

inline DependenceAlphabet full_dependence_abc() {
    return DependenceAlphabet({"a", "b", "c"}, {{"a", "b"}, {"a", "c"}, {"b", "c"}});
}

inline Tpds shortcut_system(const DependenceAlphabet& da) {
    Tpds p;
    p.num_states = 3;
    auto L = [&](const char* s) { return da.require(s); };
    auto W = [&](const char* s) { return da.parse_word(s); };
    p.transitions = {{0, L("a"), W("ab"), 1},
                     {1, L("a"), W("ab"), 1}, {1, L("b"), W(""), 1},
                     {1, L("a"), W(""), 2},   {1, L("c"), W(""), 2},
                     {2, L("b"), W(""), 2},   {2, L("c"), W(""), 2}};
    p.normalize(da);
    return p;
}

/// a ∥ c, (a,b) ∈ D, (b,c) ∈ D.
inline DependenceAlphabet subword_alphabet() {
    return DependenceAlphabet({"a", "b", "c"}, {{"a", "b"}, {"b", "c"}});
}

/// ⪰ = {(a,a),(a,ε) : a ∈ A}*: (u,v) accepted iff v is a subword of u.
inline Transducer superword_transducer(const DependenceAlphabet& da) {
    Transducer t;
    t.num_states = 1 + static_cast<int>(da.size());
    t.initial = {0};
    t.final_states = {0};
    for (Letter a = 0; a < da.size(); ++a) {
        t.transitions.push_back({0, a, kEpsilon, 1 + a});  // copy a ...
        t.transitions.push_back({1 + a, kEpsilon, a, 0});  // ... to the output
        t.transitions.push_back({0, a, kEpsilon, 0});      // or drop it
    }
    t.normalize();
    return t;
}

inline Transducer subword_transducer(const DependenceAlphabet& da) {
    return invert(superword_transducer(da));
}

/// Single-state relabeling {(x1,y1),...}*, letter pairs split through
/// intermediate states.
inline Transducer relabel_transducer(const DependenceAlphabet& da,
                                     const std::vector<std::pair<char, char>>& map) {
    Transducer t;
    t.num_states = 1 + static_cast<int>(map.size());
    t.initial = {0};
    t.final_states = {0};
    for (std::size_t i = 0; i < map.size(); ++i) {
        t.transitions.push_back({0, da.require(std::string(1, map[i].first)), kEpsilon,
                                 1 + static_cast<int>(i)});
        t.transitions.push_back({1 + static_cast<int>(i), kEpsilon,
                                 da.require(std::string(1, map[i].second)), 0});
    }
    t.normalize();
    return t;
}

}  // namespace tracepds::fixtures
