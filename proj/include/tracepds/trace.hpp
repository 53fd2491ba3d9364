#pragma once

#include <optional>
#include <vector>

#include "tracepds/alphabet.hpp"
#include "tracepds/nfa.hpp"

namespace tracepds {

/// Default cap on the word length accepted by the class-enumeration
/// operations (class size can be exponential in the word length).
inline constexpr std::size_t kDefaultClassLimit = 12;

/// Lexicographic normal form: the unique lexicographically minimal word
/// equivalent to u. Repeatedly extracts the smallest letter whose first
/// occurrence has no dependent letter before it.
Word lnf(const DependenceAlphabet& da, const Word& u);

/// u ∼ v, decided by comparing the projections to {a,b} for every dependent
/// pair (a, b) — the reflexive pairs cover the per-letter counts.
bool equivalent(const DependenceAlphabet& da, const Word& u, const Word& v);

/// If [u] = [a]·[x] for some x, returns one such x (deletes the first
/// occurrence of a, which must not be preceded by a dependent letter);
/// cancellativity makes [x] unique.
std::optional<Word> first_letter_strip(const DependenceAlphabet& da, const Word& u, Letter a);

/// All words equivalent to u, sorted. Computed as the closure of {u} under
/// transpositions of adjacent independent letters — deliberately independent
/// of the projection method used by `equivalent`. Throws LimitError when
/// |u| > max_len.
std::vector<Word> class_members(const DependenceAlphabet& da, const Word& u,
                                std::size_t max_len = kDefaultClassLimit);

/// ε-free NFA accepting exactly the equivalence class of u; states are the
/// distinct suffix traces of [u]. Same length cap as class_members.
Nfa class_automaton(const DependenceAlphabet& da, const Word& u,
                    std::size_t max_len = kDefaultClassLimit);

/// A trace, canonically stored as its lexicographic normal form. Equality of
/// traces is word equality of normal forms.
struct Trace {
    Word nf;
    auto operator<=>(const Trace&) const = default;
};

inline Trace make_trace(const DependenceAlphabet& da, const Word& w) { return Trace{lnf(da, w)}; }

}  // namespace tracepds
