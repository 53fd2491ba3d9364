#pragma once

#include <utility>

#include "tracepds/alphabet.hpp"
#include "tracepds/nfa.hpp"
#include "tracepds/transducer.hpp"

namespace tracepds {

/// Left-closed transducer for ([L(a)] × {[ε]}) · Id = {(xy, y) : x ∈ [L(a)]}.
/// States are triples (NFA state, D(B), pending letter); the echo pair copies
/// a letter of y through the pending component while D(B) accumulates the
/// letters dependent from the y-prefix, and injected x-letters must avoid
/// D(B). Size is polynomial in ‖a‖ · set_twin_index(𝔻).
LcTransducer lift_pop(const ClosedNfa& a, const DependenceAlphabet& da);

/// Left-closed transducer for ({[ε]} × [L(b)]) · Id = {(y, xy) : x ∈ [L(b)]}:
/// an output-only copy of b ε-chained into the identity. b need not be closed.
LcTransducer lift_push(const Nfa& b, const DependenceAlphabet& da);

/// Left-closed transducer for ([L(a)] × [L(b)]) · [R(t)], realized as
/// compose(lift_pop(a), t, lift_push(b)).
LcTransducer product_rel(const ClosedNfa& a, const Nfa& b, const LcTransducer& t,
                         const DependenceAlphabet& da);

/// Closed NFA with [L(result)] = ^[R(t)] [L(k)]. For a left-closed relation
/// and closed k the word-level preimage apply_left(k, t) is itself closed and
/// represents the trace-level preimage.
ClosedNfa preserve_left(const LcTransducer& t, const ClosedNfa& k);

/// NFA with [L(result)] = [L(l)]^[R(t)], via word-level apply_right.
Nfa preserve_right(const LcTransducer& t, const Nfa& l);

/// Nivat-style split [R(t)] = [R(t1)]⁻¹ ∘ [R(t2)]. The transitions of t act
/// as the Nivat alphabet; the i-th transition is encoded as aⁱb over the
/// lexicographically first dependent pair (a, b), making both factors
/// left-closed (words over {a,b} have singleton classes). Throws
/// PreconditionError when the alphabet has no dependent pair of distinct
/// letters.
std::pair<LcTransducer, LcTransducer> nivat_split(const Transducer& t,
                                                  const DependenceAlphabet& da);

/// NFA with [L(result)] = [L(l)]^[R(t)] for an arbitrary rational t:
/// nivat_split, then preserve_left, then preserve_right.
Nfa transform_rational(const ClosedNfa& l, const Transducer& t, const DependenceAlphabet& da);

}  // namespace tracepds
