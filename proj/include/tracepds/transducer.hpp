#pragma once

#include <optional>
#include <span>
#include <vector>

#include "tracepds/alphabet.hpp"
#include "tracepds/nfa.hpp"

namespace tracepds {

/// Transducer transition labeled (in, out) with in, out ∈ A ∪ {ε} and
/// |in·out| ≤ 1: at most one side is a letter.
struct TdTransition {
    int from;
    int in;   // kEpsilon or a Letter
    int out;  // kEpsilon or a Letter
    int to;
    auto operator<=>(const TdTransition&) const = default;
};

struct Transducer {
    int num_states = 0;
    std::vector<int> initial;
    std::vector<int> final_states;
    std::vector<TdTransition> transitions;

    void normalize();  // sort + dedupe, validate ids and the label length bound
    bool operator==(const Transducer&) const = default;
};

/// How left-closure of a transducer's relation was established.
enum class LcStatus { construction_guaranteed, brute_force_verified, unknown };

/// A transducer together with its left-closure certificate. The lc_construct
/// and reach constructions always emit construction_guaranteed; brute-force
/// verification is a test-time activity.
struct LcTransducer {
    Transducer t;
    LcStatus status = LcStatus::unknown;
    int verified_maxlen = 0;  // meaningful for brute_force_verified
};

/// (u, v) ∈ R(t)? Reachability in the product of t with positions in u and v.
bool accepts_pair(const Transducer& t, const Word& u, const Word& v);

Transducer invert(const Transducer& t);

/// Identity relation on A*; letter copies are split into (a,ε)(ε,a) pairs to
/// respect the label length bound.
Transducer identity_transducer(std::size_t alphabet_size);

/// Empty relation.
Transducer empty_transducer();

Transducer transducer_union(const Transducer& a, const Transducer& b);

/// Shrink without changing the relation: trim to useful states, collapse
/// (ε,ε)-cycles, quotient by forward bisimulation, renumber densely.
Transducer reduce(const Transducer& t);

/// R(result) = R(a) ∘ R(b), built with the product construction (the four
/// transition kinds specialized to n = 2) and reduced.
Transducer compose(const Transducer& a, const Transducer& b);

/// Balanced fold of binary compositions over ≥ 1 transducers.
Transducer compose(std::span<const Transducer> ts);

/// Composition of certified left-closed transducers keeps the certificate
/// (left-closed relations are closed under composition).
LcTransducer compose_lc(std::span<const LcTransducer> ts);

/// NFA for L(a)^{R(t)} = {v : ∃u ∈ L(a), (u,v) ∈ R(t)}: run a and t in
/// parallel, then remove ε and trim.
Nfa apply_right(const Nfa& a, const Transducer& t);
/// NFA for ^{R(t)}L(a) = {u : ∃v ∈ L(a), (u,v) ∈ R(t)}.
Nfa apply_left(const Nfa& a, const Transducer& t);

/// R = L(a1) × L(a2), built as (L(a1)×{ε}) concatenated into ({ε}×L(a2)).
Transducer product_transducer(const Nfa& a1, const Nfa& a2);

Nfa domain_nfa(const Transducer& t, std::size_t alphabet_size);
Nfa range_nfa(const Transducer& t, std::size_t alphabet_size);

struct LcCounterexample {
    Word u;        // the commuted input
    Word u_equiv;  // u′ ∼ u with (u′, v′) ∈ R
    Word v;        // v′ without any matching (u, v ∼ v′) ∈ R
};

struct LcCheckResult {
    bool left_closed = false;
    std::optional<LcCounterexample> counterexample;
    int maxlen = 0;
};

/// Bounded check of ∼ ∘ R ⊆ R ∘ ∼: for all u, u′ with |u|, |u′| ≤ maxlen and
/// all v′ with |v′| ≤ maxlen + out_slack, u ∼ u′ and (u′,v′) ∈ R must admit
/// v ∼ v′ with (u,v) ∈ R. Returns the lexicographically first counterexample
/// triple (u ordered length-lex, then u′, then v′ length-lex). Sound and
/// complete only within the bounds. out_slack < 0 defaults to maxlen; jobs
/// shards the u-space deterministically.
LcCheckResult is_left_closed_bruteforce(const Transducer& t, const DependenceAlphabet& da,
                                        int maxlen, int out_slack = -1, int jobs = 1);

/// ([u],[v]) ∈ [R(t)]: non-emptiness of
/// intersect(apply_right(class_automaton(u), t), class_automaton(v)).
bool trace_pair_member(const Transducer& t, const DependenceAlphabet& da, const Word& u,
                       const Word& v);

/// All words of length ≤ max_len accepted by an ε-free NFA, in length-lex
/// order. Shared by the brute-force checks and the oracle sweeps.
std::vector<Word> enumerate_words(const Nfa& a, std::size_t alphabet_size, std::size_t max_len);

}  // namespace tracepds
