#include "tracepds/transducer.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <thread>

#include "tracepds/trace.hpp"

namespace tracepds {

namespace {

void check_state(int q, int num_states) {
    if (q < 0 || q >= num_states)
        throw InputError("state id " + std::to_string(q) + " out of range");
}

}  // namespace

void Transducer::normalize() {
    for (int q : initial) check_state(q, num_states);
    for (int q : final_states) check_state(q, num_states);
    for (const auto& t : transitions) {
        check_state(t.from, num_states);
        check_state(t.to, num_states);
        if (t.in != kEpsilon && t.out != kEpsilon)
            throw InputError("transducer transition label longer than one letter");
    }
    std::sort(initial.begin(), initial.end());
    initial.erase(std::unique(initial.begin(), initial.end()), initial.end());
    std::sort(final_states.begin(), final_states.end());
    final_states.erase(std::unique(final_states.begin(), final_states.end()), final_states.end());
    std::sort(transitions.begin(), transitions.end());
    transitions.erase(std::unique(transitions.begin(), transitions.end()), transitions.end());
}

bool accepts_pair(const Transducer& t, const Word& u, const Word& v) {
    const std::size_t nu = u.size() + 1, nv = v.size() + 1;
    auto node = [&](int q, std::size_t i, std::size_t j) {
        return (static_cast<std::size_t>(q) * nu + i) * nv + j;
    };
    std::vector<char> seen(static_cast<std::size_t>(t.num_states) * nu * nv, 0);
    std::vector<std::vector<TdTransition>> by_from(t.num_states);
    for (const auto& tr : t.transitions) by_from[tr.from].push_back(tr);
    std::deque<std::tuple<int, std::size_t, std::size_t>> work;
    for (int q : t.initial) {
        seen[node(q, 0, 0)] = 1;
        work.push_back({q, 0, 0});
    }
    std::vector<char> is_final(t.num_states, 0);
    for (int q : t.final_states) is_final[q] = 1;
    while (!work.empty()) {
        auto [q, i, j] = work.front();
        work.pop_front();
        if (i == u.size() && j == v.size() && is_final[q]) return true;
        for (const auto& tr : by_from[q]) {
            std::size_t ni = i, nj = j;
            if (tr.in != kEpsilon) {
                if (i == u.size() || u[i] != tr.in) continue;
                ni = i + 1;
            }
            if (tr.out != kEpsilon) {
                if (j == v.size() || v[j] != tr.out) continue;
                nj = j + 1;
            }
            if (!seen[node(tr.to, ni, nj)]) {
                seen[node(tr.to, ni, nj)] = 1;
                work.push_back({tr.to, ni, nj});
            }
        }
    }
    return false;
}

Transducer invert(const Transducer& t) {
    Transducer out = t;
    for (auto& tr : out.transitions) std::swap(tr.in, tr.out);
    out.normalize();
    return out;
}

Transducer identity_transducer(std::size_t alphabet_size) {
    Transducer t;
    t.num_states = 1 + static_cast<int>(alphabet_size);
    t.initial = {0};
    t.final_states = {0};
    for (std::size_t a = 0; a < alphabet_size; ++a) {
        int mid = 1 + static_cast<int>(a);
        t.transitions.push_back({0, static_cast<int>(a), kEpsilon, mid});
        t.transitions.push_back({mid, kEpsilon, static_cast<int>(a), 0});
    }
    t.normalize();
    return t;
}

Transducer empty_transducer() {
    Transducer t;
    t.num_states = 1;
    t.initial = {0};
    return t;
}

Transducer transducer_union(const Transducer& a, const Transducer& b) {
    Transducer out = a;
    int off = a.num_states;
    out.num_states += b.num_states;
    for (int q : b.initial) out.initial.push_back(q + off);
    for (int q : b.final_states) out.final_states.push_back(q + off);
    for (const auto& t : b.transitions)
        out.transitions.push_back({t.from + off, t.in, t.out, t.to + off});
    out.normalize();
    return out;
}

namespace {

Transducer trim_transducer(const Transducer& t) {
    std::vector<std::vector<int>> succ(t.num_states), pred(t.num_states);
    for (const auto& tr : t.transitions) {
        succ[tr.from].push_back(tr.to);
        pred[tr.to].push_back(tr.from);
    }
    auto sweep = [&](const std::vector<int>& seeds, const std::vector<std::vector<int>>& adj) {
        std::vector<char> seen(t.num_states, 0);
        std::deque<int> work;
        for (int q : seeds)
            if (!seen[q]) {
                seen[q] = 1;
                work.push_back(q);
            }
        while (!work.empty()) {
            int q = work.front();
            work.pop_front();
            for (int r : adj[q])
                if (!seen[r]) {
                    seen[r] = 1;
                    work.push_back(r);
                }
        }
        return seen;
    };
    auto fwd = sweep(t.initial, succ);
    auto bwd = sweep(t.final_states, pred);
    std::vector<int> renum(t.num_states, -1);
    Transducer out;
    for (int q = 0; q < t.num_states; ++q)
        if (fwd[q] && bwd[q]) renum[q] = out.num_states++;
    if (out.num_states == 0) return empty_transducer();
    for (int q : t.initial)
        if (renum[q] >= 0) out.initial.push_back(renum[q]);
    for (int q : t.final_states)
        if (renum[q] >= 0) out.final_states.push_back(renum[q]);
    for (const auto& tr : t.transitions)
        if (renum[tr.from] >= 0 && renum[tr.to] >= 0)
            out.transitions.push_back({renum[tr.from], tr.in, tr.out, renum[tr.to]});
    out.normalize();
    return out;
}

/// Merge states joined by cycles of (ε,ε)-transitions and drop the resulting
/// self-loops.
Transducer collapse_epsilon_sccs(const Transducer& t) {
    std::vector<std::vector<int>> succ(t.num_states), pred(t.num_states);
    for (const auto& tr : t.transitions)
        if (tr.in == kEpsilon && tr.out == kEpsilon) {
            succ[tr.from].push_back(tr.to);
            pred[tr.to].push_back(tr.from);
        }
    // Kosaraju: order by finish time, then sweep the transposed graph.
    std::vector<int> order;
    std::vector<char> seen(t.num_states, 0);
    for (int s = 0; s < t.num_states; ++s) {
        if (seen[s]) continue;
        std::vector<std::pair<int, std::size_t>> stack{{s, 0}};
        seen[s] = 1;
        while (!stack.empty()) {
            auto& [q, idx] = stack.back();
            if (idx < succ[q].size()) {
                int r = succ[q][idx++];
                if (!seen[r]) {
                    seen[r] = 1;
                    stack.push_back({r, 0});
                }
            } else {
                order.push_back(q);
                stack.pop_back();
            }
        }
    }
    std::vector<int> comp(t.num_states, -1);
    int num_comp = 0;
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
        if (comp[*it] >= 0) continue;
        std::vector<int> work{*it};
        comp[*it] = num_comp;
        while (!work.empty()) {
            int q = work.back();
            work.pop_back();
            for (int r : pred[q])
                if (comp[r] < 0) {
                    comp[r] = num_comp;
                    work.push_back(r);
                }
        }
        ++num_comp;
    }
    Transducer out;
    out.num_states = num_comp;
    for (int q : t.initial) out.initial.push_back(comp[q]);
    for (int q : t.final_states) out.final_states.push_back(comp[q]);
    for (const auto& tr : t.transitions) {
        int f = comp[tr.from], to = comp[tr.to];
        if (f == to && tr.in == kEpsilon && tr.out == kEpsilon) continue;
        out.transitions.push_back({f, tr.in, tr.out, to});
    }
    out.normalize();
    return out;
}

/// Quotient by forward bisimulation: states with equal finality and equal
/// outgoing (in, out, block) signatures are merged. Preserves the relation.
Transducer bisim_quotient(const Transducer& t) {
    std::vector<char> is_final(t.num_states, 0);
    for (int q : t.final_states) is_final[q] = 1;
    std::vector<std::vector<TdTransition>> by_from(t.num_states);
    for (const auto& tr : t.transitions) by_from[tr.from].push_back(tr);
    std::vector<int> block(t.num_states);
    for (int q = 0; q < t.num_states; ++q) block[q] = is_final[q];
    int num_blocks = 2;
    for (;;) {
        std::map<std::vector<int>, int> sig_to_block;
        std::vector<int> next(t.num_states);
        for (int q = 0; q < t.num_states; ++q) {
            std::set<std::tuple<int, int, int>> edges;
            for (const auto& tr : by_from[q]) edges.insert({tr.in, tr.out, block[tr.to]});
            std::vector<int> sig{block[q]};
            for (auto [i, o, b] : edges) {
                sig.push_back(i);
                sig.push_back(o);
                sig.push_back(b);
            }
            auto [it, _] = sig_to_block.try_emplace(sig, static_cast<int>(sig_to_block.size()));
            next[q] = it->second;
        }
        int nb = static_cast<int>(sig_to_block.size());
        block = std::move(next);
        if (nb == num_blocks) break;
        num_blocks = nb;
    }
    if (num_blocks == t.num_states) return t;
    Transducer out;
    out.num_states = num_blocks;
    for (int q : t.initial) out.initial.push_back(block[q]);
    for (int q : t.final_states) out.final_states.push_back(block[q]);
    for (const auto& tr : t.transitions)
        out.transitions.push_back({block[tr.from], tr.in, tr.out, block[tr.to]});
    out.normalize();
    return out;
}

}  // namespace

Transducer reduce(const Transducer& t) {
    Transducer r = bisim_quotient(collapse_epsilon_sccs(trim_transducer(t)));
    return trim_transducer(r);
}

Transducer compose(const Transducer& a, const Transducer& b) {
    std::vector<std::vector<TdTransition>> a_from(a.num_states), b_from(b.num_states);
    for (const auto& tr : a.transitions) a_from[tr.from].push_back(tr);
    for (const auto& tr : b.transitions) b_from[tr.from].push_back(tr);
    std::map<std::pair<int, int>, int> id;
    std::deque<std::pair<int, int>> work;
    Transducer out;
    auto state = [&](int p, int q) {
        auto [it, inserted] = id.try_emplace({p, q}, out.num_states);
        if (inserted) {
            ++out.num_states;
            work.push_back({p, q});
        }
        return it->second;
    };
    for (int p : a.initial)
        for (int q : b.initial) out.initial.push_back(state(p, q));
    std::vector<char> fa(a.num_states, 0), fb(b.num_states, 0);
    for (int q : a.final_states) fa[q] = 1;
    for (int q : b.final_states) fb[q] = 1;
    while (!work.empty()) {
        auto [p, q] = work.front();
        work.pop_front();
        int from = id.at({p, q});
        if (fa[p] && fb[q]) out.final_states.push_back(from);
        for (const auto& ta : a_from[p]) {
            if (ta.in != kEpsilon || ta.out == kEpsilon) continue;
            for (const auto& tb : b_from[q])  // hand-off: a emits c, b reads c
                if (tb.in == ta.out && tb.out == kEpsilon)
                    out.transitions.push_back({from, kEpsilon, kEpsilon, state(ta.to, tb.to)});
        }
        for (const auto& ta : a_from[p]) {
            if (ta.in == kEpsilon && ta.out == kEpsilon)  // internal ε on the left
                out.transitions.push_back({from, kEpsilon, kEpsilon, state(ta.to, q)});
            if (ta.in != kEpsilon)  // input-only on the first factor
                out.transitions.push_back({from, ta.in, kEpsilon, state(ta.to, q)});
        }
        for (const auto& tb : b_from[q]) {
            if (tb.in == kEpsilon && tb.out == kEpsilon)  // internal ε on the right
                out.transitions.push_back({from, kEpsilon, kEpsilon, state(p, tb.to)});
            if (tb.out != kEpsilon && tb.in == kEpsilon)  // output-only on the last factor
                out.transitions.push_back({from, kEpsilon, tb.out, state(p, tb.to)});
        }
    }
    out.normalize();
    return reduce(out);
}

Transducer compose(std::span<const Transducer> ts) {
    if (ts.empty()) throw PreconditionError("compose needs at least one transducer");
    if (ts.size() == 1) return ts.front();
    std::size_t mid = ts.size() / 2;
    return compose(compose(ts.subspan(0, mid)), compose(ts.subspan(mid)));
}

LcTransducer compose_lc(std::span<const LcTransducer> ts) {
    std::vector<Transducer> raw;
    raw.reserve(ts.size());
    for (const auto& lt : ts) {
        if (lt.status == LcStatus::unknown)
            throw PreconditionError("compose_lc requires certified left-closed transducers");
        raw.push_back(lt.t);
    }
    return {compose(raw), LcStatus::construction_guaranteed, 0};
}

Nfa apply_right(const Nfa& a_in, const Transducer& t) {
    Nfa a = remove_epsilon(a_in);
    std::vector<std::vector<NfaTransition>> a_from(a.num_states);
    for (const auto& tr : a.transitions) a_from[tr.from].push_back(tr);
    std::vector<std::vector<TdTransition>> t_from(t.num_states);
    for (const auto& tr : t.transitions) t_from[tr.from].push_back(tr);
    std::map<std::pair<int, int>, int> id;
    std::deque<std::pair<int, int>> work;
    Nfa out;
    auto state = [&](int p, int q) {
        auto [it, inserted] = id.try_emplace({p, q}, out.num_states);
        if (inserted) {
            ++out.num_states;
            work.push_back({p, q});
        }
        return it->second;
    };
    for (int p : a.initial)
        for (int q : t.initial) out.initial.push_back(state(p, q));
    std::vector<char> fa(a.num_states, 0), ft(t.num_states, 0);
    for (int q : a.final_states) fa[q] = 1;
    for (int q : t.final_states) ft[q] = 1;
    while (!work.empty()) {
        auto [p, q] = work.front();
        work.pop_front();
        int from = id.at({p, q});
        if (fa[p] && ft[q]) out.final_states.push_back(from);
        for (const auto& tt : t_from[q]) {
            if (tt.in == kEpsilon) {  // automaton stays in place
                out.transitions.push_back({from, tt.out, state(p, tt.to)});
            } else {
                for (const auto& ta : a_from[p])
                    if (ta.label == tt.in)
                        out.transitions.push_back({from, tt.out, state(ta.to, tt.to)});
            }
        }
    }
    out.normalize();
    return trim(remove_epsilon(out));
}

Nfa apply_left(const Nfa& a, const Transducer& t) { return apply_right(a, invert(t)); }

Transducer product_transducer(const Nfa& a1_in, const Nfa& a2_in) {
    Nfa a1 = remove_epsilon(a1_in), a2 = remove_epsilon(a2_in);
    Transducer t;
    t.num_states = a1.num_states + a2.num_states;
    int off = a1.num_states;
    for (int q : a1.initial) t.initial.push_back(q);
    for (int q : a2.final_states) t.final_states.push_back(q + off);
    for (const auto& tr : a1.transitions) t.transitions.push_back({tr.from, tr.label, kEpsilon, tr.to});
    for (const auto& tr : a2.transitions)
        t.transitions.push_back({tr.from + off, kEpsilon, tr.label, tr.to + off});
    for (int f : a1.final_states)
        for (int i : a2.initial) t.transitions.push_back({f, kEpsilon, kEpsilon, i + off});
    t.normalize();
    return t;
}

Nfa domain_nfa(const Transducer& t, std::size_t alphabet_size) {
    return apply_left(all_words_nfa(alphabet_size), t);
}

Nfa range_nfa(const Transducer& t, std::size_t alphabet_size) {
    return apply_right(all_words_nfa(alphabet_size), t);
}

std::vector<Word> enumerate_words(const Nfa& a_in, std::size_t alphabet_size, std::size_t max_len) {
    Nfa a = trim(remove_epsilon(a_in));
    std::vector<std::vector<std::vector<int>>> step(a.num_states,
                                                    std::vector<std::vector<int>>(alphabet_size));
    for (const auto& t : a.transitions) step[t.from][t.label].push_back(t.to);
    std::vector<char> is_final(a.num_states, 0);
    for (int q : a.final_states) is_final[q] = 1;
    std::vector<Word> accepted;
    std::vector<std::pair<Word, std::vector<int>>> level;
    if (!a.initial.empty()) level.push_back({Word{}, a.initial});
    for (std::size_t len = 0; len <= max_len && !level.empty(); ++len) {
        for (const auto& [w, states] : level)
            if (std::any_of(states.begin(), states.end(), [&](int q) { return is_final[q]; }))
                accepted.push_back(w);
        if (len == max_len) break;
        std::vector<std::pair<Word, std::vector<int>>> next;
        for (const auto& [w, states] : level)
            for (std::size_t c = 0; c < alphabet_size; ++c) {
                std::set<int> nxt;
                for (int q : states) nxt.insert(step[q][c].begin(), step[q][c].end());
                if (nxt.empty()) continue;
                Word ext = w;
                ext.push_back(static_cast<char>(c));
                next.push_back({std::move(ext), {nxt.begin(), nxt.end()}});
            }
        level = std::move(next);
    }
    return accepted;  // already in length-lex order by construction
}

namespace {

/// Fast repeated-membership tester for an ε-free NFA.
class Matcher {
public:
    Matcher(const Nfa& a, std::size_t alphabet_size) : a_(trim(remove_epsilon(a))) {
        step_.assign(a_.num_states, std::vector<std::vector<int>>(alphabet_size));
        for (const auto& t : a_.transitions) step_[t.from][t.label].push_back(t.to);
        is_final_.assign(a_.num_states, 0);
        for (int q : a_.final_states) is_final_[q] = 1;
    }
    bool accepts(const Word& w) const {
        std::set<int> cur(a_.initial.begin(), a_.initial.end());
        for (char c : w) {
            std::set<int> next;
            for (int q : cur) {
                const auto& s = step_[q][static_cast<Letter>(c)];
                next.insert(s.begin(), s.end());
            }
            cur = std::move(next);
            if (cur.empty()) return false;
        }
        return std::any_of(cur.begin(), cur.end(), [&](int q) { return is_final_[q] != 0; });
    }

private:
    Nfa a_;
    std::vector<std::vector<std::vector<int>>> step_;
    std::vector<char> is_final_;
};

std::vector<Word> words_up_to(std::size_t alphabet_size, std::size_t max_len) {
    std::vector<Word> out{Word{}};
    std::size_t begin = 0;
    for (std::size_t len = 1; len <= max_len; ++len) {
        std::size_t end = out.size();
        for (std::size_t i = begin; i < end; ++i)
            for (std::size_t c = 0; c < alphabet_size; ++c) {
                Word w = out[i];
                w.push_back(static_cast<char>(c));
                out.push_back(std::move(w));
            }
        begin = end;
    }
    return out;  // length-lex order
}

}  // namespace

LcCheckResult is_left_closed_bruteforce(const Transducer& t, const DependenceAlphabet& da,
                                        int maxlen, int out_slack, int jobs) {
    if (maxlen < 0 || maxlen > 8) throw LimitError("left-closure bound out of range (0..8)");
    if (out_slack < 0) out_slack = maxlen;
    const std::size_t out_len = static_cast<std::size_t>(maxlen + out_slack);
    const auto inputs = words_up_to(da.size(), static_cast<std::size_t>(maxlen));
    jobs = std::max(1, jobs);

    // One shard per job; shard k takes inputs k, k+jobs, ... and reports the
    // earliest counterexample in its slice. Shards agree on enumeration
    // order, so the global minimum is the minimum over shard results.
    std::vector<std::optional<std::pair<std::size_t, LcCounterexample>>> found(jobs);
    auto run_shard = [&](int shard) {
        for (std::size_t ui = shard; ui < inputs.size(); ui += jobs) {
            const Word& u = inputs[ui];
            auto members = class_members(da, u);
            std::optional<Matcher> out_u;  // built on demand: outputs admissible for u
            for (const Word& ue : members) {
                if (ue == u) continue;  // v := v′ always works
                auto candidates = enumerate_words(apply_right(word_nfa(ue), t), da.size(), out_len);
                for (const Word& v : candidates) {
                    if (!out_u) out_u.emplace(apply_right(word_nfa(u), t), da.size());
                    bool ok = false;
                    for (const Word& ve : class_members(da, v, out_len))
                        if (out_u->accepts(ve)) {
                            ok = true;
                            break;
                        }
                    if (!ok) {
                        found[shard] = {ui, LcCounterexample{u, ue, v}};
                        return;
                    }
                }
            }
        }
    };
    if (jobs == 1) {
        run_shard(0);
    } else {
        std::vector<std::thread> threads;
        for (int s = 0; s < jobs; ++s) threads.emplace_back(run_shard, s);
        for (auto& th : threads) th.join();
    }
    std::optional<std::pair<std::size_t, LcCounterexample>> best;
    for (auto& f : found)
        if (f && (!best || f->first < best->first)) best = f;
    if (best) return {false, best->second, maxlen};
    return {true, std::nullopt, maxlen};
}

bool trace_pair_member(const Transducer& t, const DependenceAlphabet& da, const Word& u,
                       const Word& v) {
    Nfa image = apply_right(class_automaton(da, u), t);
    return !is_empty(intersect(image, class_automaton(da, v)));
}

}  // namespace tracepds
