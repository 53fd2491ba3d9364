#include "tracepds/lc.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>

namespace tracepds {

namespace {

/// Distinct values D(B) for B ⊆ A, interned in a sorted table: position 0 is
/// always D(∅) = ∅.
std::vector<LetterSet> dep_set_table(const DependenceAlphabet& da) {
    std::set<LetterSet> values{0};
    std::vector<LetterSet> work{0};
    while (!work.empty()) {
        LetterSet cur = work.back();
        work.pop_back();
        for (Letter a = 0; a < da.size(); ++a) {
            LetterSet nxt = cur | da.dep_mask(a);
            if (values.insert(nxt).second) work.push_back(nxt);
        }
    }
    return {values.begin(), values.end()};
}

}  // namespace

LcTransducer lift_pop(const ClosedNfa& closed, const DependenceAlphabet& da) {
    const Nfa a = remove_epsilon(closed.nfa());
    const auto table = dep_set_table(da);
    std::map<LetterSet, int> table_index;
    for (std::size_t i = 0; i < table.size(); ++i) table_index[table[i]] = static_cast<int>(i);

    const int eps_slot = static_cast<int>(da.size());  // pending component: letter or ε
    std::vector<std::vector<NfaTransition>> a_from(a.num_states);
    for (const auto& t : a.transitions) a_from[t.from].push_back(t);

    struct Key {
        int q;
        int db;       // index into the D(B) table
        int pending;  // letter or eps_slot
        auto operator<=>(const Key&) const = default;
    };
    std::map<Key, int> id;
    std::deque<Key> work;
    Transducer out;
    auto state = [&](Key k) {
        auto [it, inserted] = id.try_emplace(k, out.num_states);
        if (inserted) {
            ++out.num_states;
            work.push_back(k);
        }
        return it->second;
    };
    for (int q : a.initial) out.initial.push_back(state({q, 0, eps_slot}));
    std::vector<char> is_final(a.num_states, 0);
    for (int q : a.final_states) is_final[q] = 1;

    while (!work.empty()) {
        Key k = work.front();
        work.pop_front();
        int from = id.at(k);
        if (k.pending == eps_slot) {
            if (is_final[k.q]) out.final_states.push_back(from);
            for (Letter c = 0; c < da.size(); ++c) {
                // echo pair: read c from the input, then emit it to the output
                out.transitions.push_back({from, c, kEpsilon, state({k.q, k.db, c})});
                // inject a letter of L(a); it must be independent of the
                // output produced so far
                if (!(table[k.db] >> c & 1u))
                    for (const auto& t : a_from[k.q])
                        if (t.label == c)
                            out.transitions.push_back({from, c, kEpsilon, state({t.to, k.db, eps_slot})});
            }
        } else {
            Letter c = static_cast<Letter>(k.pending);
            int db2 = table_index.at(table[k.db] | da.dep_mask(c));
            out.transitions.push_back({from, kEpsilon, c, state({k.q, db2, eps_slot})});
        }
    }
    out.normalize();
    return {reduce(out), LcStatus::construction_guaranteed, 0};
}

LcTransducer lift_push(const Nfa& b_in, const DependenceAlphabet& da) {
    Nfa b = remove_epsilon(b_in);
    Transducer id_part = identity_transducer(da.size());
    Transducer out;
    out.num_states = b.num_states + id_part.num_states;
    int off = b.num_states;
    out.initial = b.initial;
    for (int q : id_part.final_states) out.final_states.push_back(q + off);
    for (const auto& t : b.transitions)
        out.transitions.push_back({t.from, kEpsilon, t.label, t.to});  // output-only copy of b
    for (const auto& t : id_part.transitions)
        out.transitions.push_back({t.from + off, t.in, t.out, t.to + off});
    for (int f : b.final_states)
        for (int i : id_part.initial) out.transitions.push_back({f, kEpsilon, kEpsilon, i + off});
    out.normalize();
    return {reduce(out), LcStatus::construction_guaranteed, 0};
}

LcTransducer product_rel(const ClosedNfa& a, const Nfa& b, const LcTransducer& t,
                         const DependenceAlphabet& da) {
    if (t.status == LcStatus::unknown)
        throw PreconditionError("product_rel requires a certified left-closed transducer");
    LcTransducer parts[] = {lift_pop(a, da), t, lift_push(b, da)};
    return compose_lc(parts);
}

ClosedNfa preserve_left(const LcTransducer& t, const ClosedNfa& k) {
    if (t.status == LcStatus::unknown)
        throw PreconditionError("preserve_left requires a certified left-closed transducer");
    return ClosedNfa::by_construction(apply_left(k.nfa(), t.t));
}

Nfa preserve_right(const LcTransducer& t, const Nfa& l) {
    if (t.status == LcStatus::unknown)
        throw PreconditionError("preserve_right requires a certified left-closed transducer");
    return apply_right(l, t.t);
}

std::pair<LcTransducer, LcTransducer> nivat_split(const Transducer& t,
                                                  const DependenceAlphabet& da) {
    std::optional<std::pair<Letter, Letter>> pair;
    for (Letter a = 0; a < da.size() && !pair; ++a)
        for (Letter b = a + 1; b < da.size() && !pair; ++b)
            if (da.dependent(a, b)) pair = {a, b};
    if (!pair)
        throw PreconditionError("nivat_split needs two distinct dependent letters");
    auto [la, lb] = *pair;

    // Each transducer transition becomes a Nivat letter c_i encoded as aⁱb;
    // factor 1 re-emits the transition's input label, factor 2 its output.
    auto build = [&](bool use_input) {
        Transducer f;
        f.num_states = t.num_states;
        f.initial = t.initial;
        f.final_states = t.final_states;
        for (std::size_t i = 0; i < t.transitions.size(); ++i) {
            const auto& tr = t.transitions[i];
            int emit = use_input ? tr.in : tr.out;
            int cur = tr.from;
            auto fresh = [&]() { return f.num_states++; };
            for (std::size_t k = 0; k <= i; ++k) {  // read a^(i+1)
                int nxt = fresh();
                f.transitions.push_back({cur, la, kEpsilon, nxt});
                cur = nxt;
            }
            if (emit == kEpsilon) {
                f.transitions.push_back({cur, lb, kEpsilon, tr.to});  // read the closing b
            } else {
                int nxt = fresh();
                f.transitions.push_back({cur, lb, kEpsilon, nxt});
                f.transitions.push_back({nxt, kEpsilon, emit, tr.to});
            }
        }
        f.normalize();
        return LcTransducer{f, LcStatus::construction_guaranteed, 0};
    };
    return {build(true), build(false)};
}

Nfa transform_rational(const ClosedNfa& l, const Transducer& t, const DependenceAlphabet& da) {
    auto [t1, t2] = nivat_split(t, da);
    return preserve_right(t2, preserve_left(t1, l).nfa());
}

}  // namespace tracepds
