#pragma once

#include <map>
#include <vector>

#include "tracepds/alphabet.hpp"
#include "tracepds/lc.hpp"
#include "tracepds/nfa.hpp"
#include "tracepds/tpds.hpp"
#include "tracepds/transducer.hpp"

namespace tracepds {

/// Left-closed transducer for Reach_{src,dst} of a pop-only system: the
/// transition graph read as a closed NFA (closedness comes with (P2)),
/// lifted to ([L] × {[ε]}) · Id.
LcTransducer reach_pop(const Tpds& pop_only, const DependenceAlphabet& da, int src, int dst);

/// NFA H_a with {[w] : (src,[av]) ⊢* (dst,[w])} = [H_a]·{[v]} for every v,
/// for a push-homogeneous system (all transitions replace twins of one
/// letter by non-empty words). Built as the backwards-simulation ε-NFA:
/// states (state, pending letter), initial (dst, ε) fanning out to (dst, c),
/// one u·v-labeled path from (s, d) to (r, c) per transition (r,c,udv,s)
/// with u ∥ d, final (src, a).
Nfa reach_push_Ha(const Tpds& push_hom, const DependenceAlphabet& da, Letter a, int src, int dst);

/// Left-closed transducer for Reach_{src,dst} of a push-homogeneous system:
/// the identity component (present iff src = dst) united with
/// ({[a]} × [H_a]) · Id over the letters a of the twin class.
LcTransducer reach_push(const Tpds& push_hom, const DependenceAlphabet& da, int src, int dst);

/// Left-closed transducers for Reach_{src,dst} of a saturated system, for
/// every dst at once. Per state pair, 𝒞 is the union of the pop-subsystem
/// relation and the push-subsystem relations; the result unions the
/// dynamic-programming levels for compositions of 1..(2·TI+1) factors.
std::vector<LcTransducer> reach_saturated_row(const Tpds& saturated, const DependenceAlphabet& da,
                                              int src);

LcTransducer reach_saturated(const Tpds& saturated, const DependenceAlphabet& da, int src,
                             int dst);

struct ReachRelation {
    int src = 0;
    int dst = 0;
    LcTransducer transducer;  // construction-guaranteed
};

/// Saturate, then build the saturated-system relation.
ReachRelation reach_relation(const Tpds& p, const DependenceAlphabet& da, int src, int dst);

/// Closed NFA for {[u] : (src,[u]) ⊢* {dst} × [L(b)]}; backwards reachability
/// preserves recognizability.
ClosedNfa pre_star(const Tpds& p, const DependenceAlphabet& da, int src, int dst,
                   const ClosedNfa& b);

/// NFA for {[w] : {src} × [L(b)] ⊢* (dst,[w])}; forwards reachability
/// preserves rationality.
Nfa post_star(const Tpds& p, const DependenceAlphabet& da, int src, int dst, const Nfa& b);

/// Does some configuration of D = {(q, [w]) : w ∈ L(d[q])} become reachable
/// from C = {(q, [w]) : w ∈ L(c[q])}? Sound because every NFA in d is
/// closed, so a word-level intersection witness is a trace-level witness.
bool decide_reach(const Tpds& p, const DependenceAlphabet& da, const std::map<int, Nfa>& c,
                  const std::map<int, ClosedNfa>& d);

struct RealizedRational {
    DependenceAlphabet alphabet;  // original letters first, then state letters and '#'
    Tpds system;                  // stateless
    Config start;                 // (⊤, [#])
    int target_state = 0;
    LetterSet original_letters;   // mask of the letters of the input alphabet
};

/// Stateless tPDS realizing [L(a)] as a post* set: the extended alphabet adds
/// one letter per NFA state plus '#', all dependent on everything, and the
/// system simulates accepting runs of a backwards from [#].
RealizedRational realize_rational(const Nfa& a, const DependenceAlphabet& da);

}  // namespace tracepds
