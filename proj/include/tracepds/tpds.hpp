#pragma once

#include <optional>
#include <vector>

#include "tracepds/alphabet.hpp"
#include "tracepds/trace.hpp"

namespace tracepds {

/// Replaces a prefix letter `pop` of the stack trace by the trace of `push`.
struct TpdsTransition {
    int from;
    Letter pop;
    Word push;
    int to;
    auto operator<=>(const TpdsTransition&) const = default;
};

/// Pushdown system with trace semantics. Written words are stored in
/// lexicographic normal form and deduplicated, so two ∼-equivalent
/// transitions never coexist.
struct Tpds {
    int num_states = 0;
    std::vector<TpdsTransition> transitions;

    /// lnf-normalize written words, dedupe, sort, validate ids/letters.
    void normalize(const DependenceAlphabet& da);

    /// ‖𝒫‖ = |Q| + |A| + k·|Δ| with k−1 the maximal written-word length.
    std::size_t size_measure(const DependenceAlphabet& da) const;

    bool operator==(const Tpds&) const = default;
};

struct Config {
    int state = 0;
    Word stack;  // stored in lnf
    auto operator<=>(const Config&) const = default;
};

struct P2Violation {
    TpdsTransition first, second;  // (p,a,v,q),(q,b,w,r) with a ∥ b and no diamond
};

struct ValidationReport {
    std::vector<TpdsTransition> p1_violations;      // D(w) ⊄ D(a)
    std::vector<P2Violation> p2_violations;
    bool ok() const { return p1_violations.empty() && p2_violations.empty(); }
};

/// Check (P1) for every transition and (P2) in the orientation of (P2′)/the
/// diamond figure: (p,a,v,q),(q,b,w,r) with a ∥ b needs q′ with
/// (p,b,w,q′),(q′,a,v,r). Written words are matched modulo ∼ (they are
/// normalized anyway).
ValidationReport validate(const Tpds& p, const DependenceAlphabet& da);

/// All one-step successors of c.
std::vector<Config> step(const Tpds& p, const DependenceAlphabet& da, const Config& c);

struct OracleResult {
    std::vector<Config> configs;               // sorted
    std::vector<std::pair<int, int>> edges;    // indices into configs, within bounds
};

/// BFS closure of `step` restricted to stacks of length ≤ max_stack, up to
/// max_steps layers: a sound under-approximation of forwards reachability,
/// exact for every pair whose minimal witnessing run stays within the stack
/// bound. Throws LimitError when the explored set exceeds frontier_cap.
OracleResult reach_oracle(const Tpds& p, const DependenceAlphabet& da, const Config& from,
                          std::size_t max_stack, std::size_t max_steps = SIZE_MAX,
                          std::size_t frontier_cap = 1'000'000);

struct HomogeneousSplit {
    Tpds eps;  // all pop transitions
    /// One entry per twin class of the alphabet (keyed by its smallest
    /// letter, in letter order), holding the non-popping transitions that
    /// replace letters of that class. Possibly empty subsystems included.
    std::vector<std::pair<Letter, Tpds>> per_class;
};

HomogeneousSplit split_homogeneous(const Tpds& p, const DependenceAlphabet& da);

struct SaturationWitness {
    TpdsTransition writer;   // (p,a,ubv,q)
    TpdsTransition popper;   // (q,b,ε,r) with u ∥ b
    TpdsTransition missing;  // (p,a,lnf(uv),r)
};

/// First missing shortcut in deterministic scan order, or nullopt when the
/// system is saturated.
std::optional<SaturationWitness> saturation_witness(const Tpds& p, const DependenceAlphabet& da);

inline bool is_saturated(const Tpds& p, const DependenceAlphabet& da) {
    return !saturation_witness(p, da).has_value();
}

struct SaturationResult {
    Tpds system;
    /// Transitions added per round (Δ⁽ᵏ⁺¹⁾ \ Δ⁽ᵏ⁾); the final round is empty.
    std::vector<std::vector<TpdsTransition>> rounds;
};

/// Fixpoint of the shortcut rule: add (p,a,lnf(uv),r) for
/// (p,a,ubv,q),(q,b,ε,r) with u ∥ b. The result is again a trace-pushdown
/// system with the same reachability relation.
SaturationResult saturate(const Tpds& p, const DependenceAlphabet& da);

/// Minimal number of maximal homogeneous segments over all runs from `from`
/// to `to` that stay within max_stack and use at most max_segments segments;
/// nullopt when no such run exists within the bounds.
std::optional<int> min_segments(const Tpds& p, const DependenceAlphabet& da, const Config& from,
                                const Config& to, int max_segments, std::size_t max_stack,
                                std::size_t frontier_cap = 1'000'000);

}  // namespace tracepds
