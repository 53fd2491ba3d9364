#include "tracepds/reach.hpp"

#include <algorithm>
#include <set>

namespace tracepds {

namespace {

LcTransducer lc_union(const LcTransducer& a, const LcTransducer& b) {
    if (a.status == LcStatus::unknown || b.status == LcStatus::unknown)
        throw PreconditionError("union of uncertified transducers");
    return {reduce(transducer_union(a.t, b.t)), LcStatus::construction_guaranteed, 0};
}

LcTransducer lc_identity(const DependenceAlphabet& da) {
    return {identity_transducer(da.size()), LcStatus::construction_guaranteed, 0};
}

LcTransducer lc_empty() {
    return {empty_transducer(), LcStatus::construction_guaranteed, 0};
}

void require_pop_only(const Tpds& p) {
    for (const auto& t : p.transitions)
        if (!t.push.empty())
            throw PreconditionError("subsystem is not pop-only");
}

/// The twin class replaced by a push-homogeneous system; throws if mixed or
/// if some transition pops nothing.
LetterSet require_push_homogeneous(const Tpds& p, const DependenceAlphabet& da) {
    LetterSet dep = 0;
    bool have = false;
    for (const auto& t : p.transitions) {
        if (t.push.empty()) throw PreconditionError("push-homogeneous subsystem contains a pop");
        if (!have) {
            dep = da.dep_mask(t.pop);
            have = true;
        } else if (da.dep_mask(t.pop) != dep) {
            throw PreconditionError("subsystem replaces letters of different twin classes");
        }
    }
    return dep;
}

}  // namespace

LcTransducer reach_pop(const Tpds& pop_only, const DependenceAlphabet& da, int src, int dst) {
    require_pop_only(pop_only);
    Nfa a;
    a.num_states = pop_only.num_states;
    a.initial = {src};
    a.final_states = {dst};
    for (const auto& t : pop_only.transitions) a.transitions.push_back({t.from, t.pop, t.to});
    a.normalize();
    // Closed by construction: (P2) of the surrounding tPDS gives the NFA the
    // diamond property, which makes its language commutation-closed.
    return lift_pop(ClosedNfa::by_construction(a), da);
}

Nfa reach_push_Ha(const Tpds& push_hom, const DependenceAlphabet& da, Letter a, int src,
                  int dst) {
    require_push_homogeneous(push_hom, da);
    const int eps_slot = static_cast<int>(da.size());
    auto base = [&](int q, int pending) {
        return q * (eps_slot + 1) + pending;
    };
    Nfa h;
    h.num_states = push_hom.num_states * (eps_slot + 1);
    h.initial = {base(dst, eps_slot)};
    h.final_states = {base(src, a)};
    for (Letter c = 0; c < da.size(); ++c)
        h.transitions.push_back({base(dst, eps_slot), c, base(dst, c)});
    for (const auto& t : push_hom.transitions) {
        LetterSet blocked = 0;
        for (std::size_t i = 0; i < t.push.size(); ++i) {
            Letter d = static_cast<Letter>(t.push[i]);
            if (!(blocked >> d & 1u)) {
                // u·v-labeled path from (to, d) to (from, pop) for w = u·d·v
                Word uv = t.push;
                uv.erase(i, 1);
                int cur = base(t.to, d);
                if (uv.empty()) {
                    h.transitions.push_back({cur, kEpsilon, base(t.from, t.pop)});
                } else {
                    for (std::size_t k = 0; k + 1 < uv.size(); ++k) {
                        int fresh = h.num_states++;
                        h.transitions.push_back({cur, static_cast<Letter>(uv[k]), fresh});
                        cur = fresh;
                    }
                    h.transitions.push_back({cur, static_cast<Letter>(uv.back()),
                                             base(t.from, t.pop)});
                }
            }
            blocked |= da.dep_mask(d);
        }
    }
    h.normalize();
    return trim(remove_epsilon(h));
}

LcTransducer reach_push(const Tpds& push_hom, const DependenceAlphabet& da, int src, int dst) {
    LetterSet class_dep = require_push_homogeneous(push_hom, da);
    LcTransducer result = src == dst ? lc_identity(da) : lc_empty();
    if (push_hom.transitions.empty()) return result;
    for (Letter a = 0; a < da.size(); ++a) {
        if (da.dep_mask(a) != class_dep) continue;  // a must be a twin of the class
        Nfa h = reach_push_Ha(push_hom, da, a, src, dst);
        if (is_empty(h)) continue;
        Nfa singleton = word_nfa(Word(1, static_cast<char>(a)));
        LcTransducer part =
            product_rel(ClosedNfa::by_construction(singleton), h, lc_identity(da), da);
        result = lc_union(result, part);
    }
    return result;
}

std::vector<LcTransducer> reach_saturated_row(const Tpds& saturated, const DependenceAlphabet& da,
                                              int src) {
    if (auto witness = saturation_witness(saturated, da))
        throw PreconditionError("system is not saturated");
    const int n = 2 * static_cast<int>(da.twin_index()) + 1;
    const int states = saturated.num_states;
    auto split = split_homogeneous(saturated, da);

    // 𝒞[r1][r2]: one-segment relations between r1 and r2.
    std::vector<std::vector<LcTransducer>> cell(states, std::vector<LcTransducer>(states));
    for (int r1 = 0; r1 < states; ++r1)
        for (int r2 = 0; r2 < states; ++r2) {
            LcTransducer c = reach_pop(split.eps, da, r1, r2);
            for (const auto& [letter, part] : split.per_class) {
                if (part.transitions.empty()) continue;  // contributes Id at most, already present
                c = lc_union(c, reach_push(part, da, r1, r2));
            }
            cell[r1][r2] = std::move(c);
        }

    std::vector<LcTransducer> level = cell[src];
    std::vector<LcTransducer> answer = level;
    for (int k = 1; k < n; ++k) {
        std::vector<LcTransducer> next(states);
        for (int r = 0; r < states; ++r) {
            LcTransducer acc = lc_empty();
            for (int mid = 0; mid < states; ++mid) {
                LcTransducer parts[] = {level[mid], cell[mid][r]};
                acc = lc_union(acc, compose_lc(parts));
            }
            next[r] = std::move(acc);
        }
        level = std::move(next);
        for (int r = 0; r < states; ++r) answer[r] = lc_union(answer[r], level[r]);
    }
    return answer;
}

LcTransducer reach_saturated(const Tpds& saturated, const DependenceAlphabet& da, int src,
                             int dst) {
    return reach_saturated_row(saturated, da, src).at(dst);
}

ReachRelation reach_relation(const Tpds& p, const DependenceAlphabet& da, int src, int dst) {
    Tpds sat = saturate(p, da).system;
    return {src, dst, reach_saturated(sat, da, src, dst)};
}

ClosedNfa pre_star(const Tpds& p, const DependenceAlphabet& da, int src, int dst,
                   const ClosedNfa& b) {
    return preserve_left(reach_relation(p, da, src, dst).transducer, b);
}

Nfa post_star(const Tpds& p, const DependenceAlphabet& da, int src, int dst, const Nfa& b) {
    return preserve_right(reach_relation(p, da, src, dst).transducer, b);
}

bool decide_reach(const Tpds& p, const DependenceAlphabet& da, const std::map<int, Nfa>& c,
                  const std::map<int, ClosedNfa>& d) {
    Tpds sat = saturate(p, da).system;
    for (const auto& [src, from_nfa] : c) {
        auto row = reach_saturated_row(sat, da, src);
        for (const auto& [dst, to_nfa] : d) {
            Nfa post = preserve_right(row[dst], from_nfa);
            if (!is_empty(intersect(post, to_nfa.nfa()))) return true;
        }
    }
    return false;
}

RealizedRational realize_rational(const Nfa& a_in, const DependenceAlphabet& da) {
    Nfa a = trim(remove_epsilon(a_in));
    std::set<std::string> taken(da.names().begin(), da.names().end());
    auto fresh_name = [&taken](std::string base) {
        while (taken.count(base)) base += "_";
        taken.insert(base);
        return base;
    };
    std::vector<std::string> names = da.names();
    std::vector<std::string> state_names;
    for (int q = 0; q < a.num_states; ++q)
        state_names.push_back(fresh_name("q" + std::to_string(q)));
    names.insert(names.end(), state_names.begin(), state_names.end());
    std::string hash_name = fresh_name("#");
    names.push_back(hash_name);

    std::vector<std::pair<std::string, std::string>> pairs;
    for (Letter x = 0; x < da.size(); ++x)
        for (Letter y = x; y < da.size(); ++y)
            if (da.dependent(x, y)) pairs.push_back({da.name(x), da.name(y)});
    for (std::size_t i = da.size(); i < names.size(); ++i)
        for (const auto& other : names) pairs.push_back({names[i], other});

    RealizedRational out{DependenceAlphabet(names, pairs), {}, {}, 0, 0};
    out.original_letters = da.size() == 32 ? ~LetterSet{0} : (LetterSet{1} << da.size()) - 1;
    auto state_letter = [&](int q) { return static_cast<char>(da.size() + q); };
    char hash_letter = static_cast<char>(names.size() - 1);

    out.system.num_states = 1;
    for (int f : a.final_states)
        out.system.transitions.push_back({0, static_cast<Letter>(hash_letter),
                                          Word(1, state_letter(f)), 0});
    for (const auto& t : a.transitions) {
        Word push;
        push.push_back(state_letter(t.from));
        push.push_back(static_cast<char>(t.label));
        out.system.transitions.push_back({0, static_cast<Letter>(state_letter(t.to)), push, 0});
    }
    for (int i : a.initial)
        out.system.transitions.push_back({0, static_cast<Letter>(state_letter(i)), Word{}, 0});
    out.system.normalize(out.alphabet);
    out.start = {0, Word(1, hash_letter)};
    out.target_state = 0;
    return out;
}

}  // namespace tracepds
