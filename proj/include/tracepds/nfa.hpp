#pragma once

#include <compare>
#include <vector>

#include "tracepds/alphabet.hpp"

namespace tracepds {

/// Transition label: a letter index, or kEpsilon.
inline constexpr int kEpsilon = -1;

struct NfaTransition {
    int from;
    int label;  // kEpsilon or a Letter
    int to;
    auto operator<=>(const NfaTransition&) const = default;
};

/// Nondeterministic finite automaton with optional ε-transitions over a
/// dependence alphabet. States are dense ids 0..num_states-1; initial/final
/// sets and the transition list are kept sorted and deduplicated so equal
/// automata compare equal and serialize identically.
struct Nfa {
    int num_states = 0;
    std::vector<int> initial;
    std::vector<int> final_states;
    std::vector<NfaTransition> transitions;

    bool epsilon_free() const;
    void normalize();  // sort + dedupe, validate state ids
    bool operator==(const Nfa&) const = default;
};

/// Complete deterministic automaton; next[q * num_letters + a] is total.
struct Dfa {
    int num_states = 0;
    int num_letters = 0;
    int initial = 0;
    std::vector<int> next;
    std::vector<char> accepting;

    int step(int q, Letter a) const { return next[static_cast<std::size_t>(q) * num_letters + a]; }
    int run(const Word& w) const;
};

Nfa word_nfa(const Word& w);
Nfa all_words_nfa(std::size_t alphabet_size);
Nfa dfa_to_nfa(const Dfa& d);

/// Same language, no ε labels. ε-free inputs are returned unchanged.
Nfa remove_epsilon(const Nfa& a);

bool accepts(const Nfa& a, const Word& w);
bool is_empty(const Nfa& a);

/// Keep only states both reachable and co-reachable; renumber densely in
/// BFS discovery order.
Nfa trim(const Nfa& a);

Nfa intersect(const Nfa& a, const Nfa& b);
Nfa nfa_union(const Nfa& a, const Nfa& b);

/// Subset construction; the result is complete (explicit sink).
Dfa determinize(const Nfa& a, std::size_t alphabet_size);
/// Moore minimization of a complete DFA; result is complete and reachable.
Dfa minimize(const Dfa& d);

bool language_equal(const Nfa& a, const Nfa& b, std::size_t alphabet_size);

/// Exact commutation-closure test: build the minimal complete DFA and check
/// δ(q, ab) = δ(q, ba) for every state q and independent pair (a, b). In the
/// minimal DFA state equality is language equality, so this holds iff the
/// word language is closed under ∼.
bool is_closed(const Nfa& a, const DependenceAlphabet& da);

/// Structural diamond property on an ε-free NFA: for all (p,a,q),(q,b,r) with
/// a ∥ b there is q' with (p,b,q'),(q',a,r). Sufficient but not necessary for
/// closure; cheap sanity check for constructed automata.
bool check_diamond_nfa(const Nfa& a, const DependenceAlphabet& da);

/// An Nfa whose language is known to be closed under ∼, either verified by
/// is_closed or guaranteed by the construction that produced it.
class ClosedNfa {
public:
    static ClosedNfa checked(Nfa a, const DependenceAlphabet& da) {
        if (!is_closed(a, da))
            throw PreconditionError("NFA language is not closed under commutation");
        return ClosedNfa(std::move(a));
    }
    static ClosedNfa by_construction(Nfa a) { return ClosedNfa(std::move(a)); }
    const Nfa& nfa() const { return nfa_; }

private:
    explicit ClosedNfa(Nfa a) : nfa_(std::move(a)) {}
    Nfa nfa_;
};

}  // namespace tracepds
