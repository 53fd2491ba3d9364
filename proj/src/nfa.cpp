#include "tracepds/nfa.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <set>

namespace tracepds {

namespace {

void check_state(int q, int num_states) {
    if (q < 0 || q >= num_states)
        throw InputError("state id " + std::to_string(q) + " out of range");
}

std::vector<std::vector<int>> epsilon_closures(const Nfa& a) {
    std::vector<std::vector<int>> eps(a.num_states);
    for (const auto& t : a.transitions)
        if (t.label == kEpsilon) eps[t.from].push_back(t.to);
    std::vector<std::vector<int>> closure(a.num_states);
    for (int q = 0; q < a.num_states; ++q) {
        std::vector<char> seen(a.num_states, 0);
        std::vector<int> work{q};
        seen[q] = 1;
        while (!work.empty()) {
            int p = work.back();
            work.pop_back();
            closure[q].push_back(p);
            for (int r : eps[p])
                if (!seen[r]) {
                    seen[r] = 1;
                    work.push_back(r);
                }
        }
        std::sort(closure[q].begin(), closure[q].end());
    }
    return closure;
}

}  // namespace

bool Nfa::epsilon_free() const {
    return std::none_of(transitions.begin(), transitions.end(),
                        [](const NfaTransition& t) { return t.label == kEpsilon; });
}

void Nfa::normalize() {
    for (int q : initial) check_state(q, num_states);
    for (int q : final_states) check_state(q, num_states);
    for (const auto& t : transitions) {
        check_state(t.from, num_states);
        check_state(t.to, num_states);
    }
    std::sort(initial.begin(), initial.end());
    initial.erase(std::unique(initial.begin(), initial.end()), initial.end());
    std::sort(final_states.begin(), final_states.end());
    final_states.erase(std::unique(final_states.begin(), final_states.end()), final_states.end());
    std::sort(transitions.begin(), transitions.end());
    transitions.erase(std::unique(transitions.begin(), transitions.end()), transitions.end());
}

int Dfa::run(const Word& w) const {
    int q = initial;
    for (char c : w) q = step(q, static_cast<Letter>(c));
    return q;
}

Nfa word_nfa(const Word& w) {
    Nfa a;
    a.num_states = static_cast<int>(w.size()) + 1;
    a.initial = {0};
    a.final_states = {a.num_states - 1};
    for (std::size_t i = 0; i < w.size(); ++i)
        a.transitions.push_back({static_cast<int>(i), static_cast<Letter>(w[i]),
                                 static_cast<int>(i) + 1});
    a.normalize();
    return a;
}

Nfa all_words_nfa(std::size_t alphabet_size) {
    Nfa a;
    a.num_states = 1;
    a.initial = {0};
    a.final_states = {0};
    for (std::size_t c = 0; c < alphabet_size; ++c)
        a.transitions.push_back({0, static_cast<int>(c), 0});
    a.normalize();
    return a;
}

Nfa dfa_to_nfa(const Dfa& d) {
    Nfa a;
    a.num_states = d.num_states;
    a.initial = {d.initial};
    for (int q = 0; q < d.num_states; ++q) {
        if (d.accepting[q]) a.final_states.push_back(q);
        for (int c = 0; c < d.num_letters; ++c)
            a.transitions.push_back({q, c, d.step(q, static_cast<Letter>(c))});
    }
    a.normalize();
    return a;
}

Nfa remove_epsilon(const Nfa& a) {
    if (a.epsilon_free()) return a;
    auto closure = epsilon_closures(a);
    Nfa out;
    out.num_states = a.num_states;
    out.initial = a.initial;
    std::vector<char> is_final(a.num_states, 0);
    for (int q : a.final_states) is_final[q] = 1;
    for (int q = 0; q < a.num_states; ++q)
        if (std::any_of(closure[q].begin(), closure[q].end(), [&](int r) { return is_final[r]; }))
            out.final_states.push_back(q);
    std::vector<std::vector<NfaTransition>> by_from(a.num_states);
    for (const auto& t : a.transitions)
        if (t.label != kEpsilon) by_from[t.from].push_back(t);
    for (int q = 0; q < a.num_states; ++q)
        for (int r : closure[q])
            for (const auto& t : by_from[r]) out.transitions.push_back({q, t.label, t.to});
    out.normalize();
    return out;
}

bool accepts(const Nfa& a, const Word& w) {
    auto closure = epsilon_closures(a);
    std::set<int> current;
    for (int q : a.initial) current.insert(closure[q].begin(), closure[q].end());
    std::vector<std::vector<NfaTransition>> by_from(a.num_states);
    for (const auto& t : a.transitions)
        if (t.label != kEpsilon) by_from[t.from].push_back(t);
    for (char c : w) {
        std::set<int> next;
        for (int q : current)
            for (const auto& t : by_from[q])
                if (t.label == c) next.insert(closure[t.to].begin(), closure[t.to].end());
        current = std::move(next);
        if (current.empty()) return false;
    }
    return std::any_of(a.final_states.begin(), a.final_states.end(),
                       [&](int q) { return current.count(q) != 0; });
}

bool is_empty(const Nfa& a) {
    std::vector<std::vector<int>> succ(a.num_states);
    for (const auto& t : a.transitions) succ[t.from].push_back(t.to);
    std::vector<char> seen(a.num_states, 0);
    std::vector<int> work;
    for (int q : a.initial)
        if (!seen[q]) {
            seen[q] = 1;
            work.push_back(q);
        }
    while (!work.empty()) {
        int q = work.back();
        work.pop_back();
        for (int r : succ[q])
            if (!seen[r]) {
                seen[r] = 1;
                work.push_back(r);
            }
    }
    return std::none_of(a.final_states.begin(), a.final_states.end(),
                        [&](int q) { return seen[q]; });
}

Nfa trim(const Nfa& a) {
    std::vector<std::vector<int>> succ(a.num_states), pred(a.num_states);
    for (const auto& t : a.transitions) {
        succ[t.from].push_back(t.to);
        pred[t.to].push_back(t.from);
    }
    auto sweep = [&](const std::vector<int>& seeds, const std::vector<std::vector<int>>& adj) {
        std::vector<char> seen(a.num_states, 0);
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
    auto fwd = sweep(a.initial, succ);
    auto bwd = sweep(a.final_states, pred);
    std::vector<int> renum(a.num_states, -1);
    Nfa out;
    for (int q = 0; q < a.num_states; ++q)
        if (fwd[q] && bwd[q]) renum[q] = out.num_states++;
    for (int q : a.initial)
        if (renum[q] >= 0) out.initial.push_back(renum[q]);
    for (int q : a.final_states)
        if (renum[q] >= 0) out.final_states.push_back(renum[q]);
    for (const auto& t : a.transitions)
        if (renum[t.from] >= 0 && renum[t.to] >= 0)
            out.transitions.push_back({renum[t.from], t.label, renum[t.to]});
    out.normalize();
    return out;
}

Nfa intersect(const Nfa& a_in, const Nfa& b_in) {
    Nfa a = remove_epsilon(a_in), b = remove_epsilon(b_in);
    std::vector<std::vector<NfaTransition>> by_from_a(a.num_states), by_from_b(b.num_states);
    for (const auto& t : a.transitions) by_from_a[t.from].push_back(t);
    for (const auto& t : b.transitions) by_from_b[t.from].push_back(t);
    std::map<std::pair<int, int>, int> id;
    std::deque<std::pair<int, int>> work;
    Nfa out;
    for (int p : a.initial)
        for (int q : b.initial) {
            auto [it, inserted] = id.try_emplace({p, q}, out.num_states);
            if (inserted) {
                ++out.num_states;
                out.initial.push_back(it->second);
                work.push_back({p, q});
            }
        }
    std::vector<char> final_a(a.num_states, 0), final_b(b.num_states, 0);
    for (int q : a.final_states) final_a[q] = 1;
    for (int q : b.final_states) final_b[q] = 1;
    while (!work.empty()) {
        auto [p, q] = work.front();
        work.pop_front();
        int from = id.at({p, q});
        if (final_a[p] && final_b[q]) out.final_states.push_back(from);
        for (const auto& ta : by_from_a[p])
            for (const auto& tb : by_from_b[q]) {
                if (ta.label != tb.label) continue;
                auto [it, inserted] = id.try_emplace({ta.to, tb.to}, out.num_states);
                if (inserted) {
                    ++out.num_states;
                    work.push_back({ta.to, tb.to});
                }
                out.transitions.push_back({from, ta.label, it->second});
            }
    }
    out.normalize();
    return out;
}

Nfa nfa_union(const Nfa& a, const Nfa& b) {
    Nfa out = a;
    int off = a.num_states;
    out.num_states += b.num_states;
    for (int q : b.initial) out.initial.push_back(q + off);
    for (int q : b.final_states) out.final_states.push_back(q + off);
    for (const auto& t : b.transitions) out.transitions.push_back({t.from + off, t.label, t.to + off});
    out.normalize();
    return out;
}

Dfa determinize(const Nfa& a_in, std::size_t alphabet_size) {
    Nfa a = remove_epsilon(a_in);
    std::vector<std::vector<std::vector<int>>> step(a.num_states,
                                                    std::vector<std::vector<int>>(alphabet_size));
    for (const auto& t : a.transitions) step[t.from][t.label].push_back(t.to);
    std::vector<char> final_a(a.num_states, 0);
    for (int q : a.final_states) final_a[q] = 1;

    std::map<std::vector<int>, int> id;
    std::deque<std::vector<int>> work;
    Dfa d;
    d.num_letters = static_cast<int>(alphabet_size);
    std::vector<int> start = a.initial;  // already sorted/unique
    id.emplace(start, 0);
    work.push_back(start);
    d.num_states = 1;
    d.initial = 0;
    d.accepting.push_back(std::any_of(start.begin(), start.end(), [&](int q) { return final_a[q]; }));
    d.next.resize(alphabet_size, -1);
    while (!work.empty()) {
        std::vector<int> cur = std::move(work.front());
        work.pop_front();
        int from = id.at(cur);
        for (std::size_t c = 0; c < alphabet_size; ++c) {
            std::set<int> nxt;
            for (int q : cur) nxt.insert(step[q][c].begin(), step[q][c].end());
            std::vector<int> key(nxt.begin(), nxt.end());
            auto [it, inserted] = id.try_emplace(key, d.num_states);
            if (inserted) {
                ++d.num_states;
                d.accepting.push_back(
                    std::any_of(key.begin(), key.end(), [&](int q) { return final_a[q]; }));
                d.next.resize(static_cast<std::size_t>(d.num_states) * alphabet_size, -1);
                work.push_back(std::move(key));
            }
            d.next[static_cast<std::size_t>(from) * alphabet_size + c] = it->second;
        }
    }
    return d;  // complete: the empty subset acts as the sink
}

Dfa minimize(const Dfa& d) {
    // Moore partition refinement on a complete DFA.
    std::vector<int> block(d.num_states);
    for (int q = 0; q < d.num_states; ++q) block[q] = d.accepting[q] ? 1 : 0;
    int num_blocks = 2;
    for (;;) {
        std::map<std::vector<int>, int> sig_to_block;
        std::vector<int> next_block(d.num_states);
        for (int q = 0; q < d.num_states; ++q) {
            std::vector<int> sig{block[q]};
            for (int c = 0; c < d.num_letters; ++c)
                sig.push_back(block[d.step(q, static_cast<Letter>(c))]);
            auto [it, _] = sig_to_block.try_emplace(sig, static_cast<int>(sig_to_block.size()));
            next_block[q] = it->second;
        }
        int nb = static_cast<int>(sig_to_block.size());
        block = std::move(next_block);
        if (nb == num_blocks) break;
        num_blocks = nb;
    }
    // Renumber blocks in BFS order from the initial state's block.
    std::vector<int> block_repr(num_blocks, -1);
    for (int q = d.num_states - 1; q >= 0; --q) block_repr[block[q]] = q;
    std::vector<int> renum(num_blocks, -1);
    std::deque<int> work;
    renum[block[d.initial]] = 0;
    work.push_back(block[d.initial]);
    int count = 1;
    Dfa out;
    out.num_letters = d.num_letters;
    while (!work.empty()) {
        int b = work.front();
        work.pop_front();
        for (int c = 0; c < d.num_letters; ++c) {
            int tb = block[d.step(block_repr[b], static_cast<Letter>(c))];
            if (renum[tb] < 0) {
                renum[tb] = count++;
                work.push_back(tb);
            }
        }
    }
    out.num_states = count;
    out.initial = 0;
    out.accepting.assign(count, 0);
    out.next.assign(static_cast<std::size_t>(count) * d.num_letters, -1);
    for (int b = 0; b < num_blocks; ++b) {
        if (renum[b] < 0) continue;  // unreachable block
        int q = block_repr[b];
        out.accepting[renum[b]] = d.accepting[q];
        for (int c = 0; c < d.num_letters; ++c)
            out.next[static_cast<std::size_t>(renum[b]) * d.num_letters + c] =
                renum[block[d.step(q, static_cast<Letter>(c))]];
    }
    return out;
}

bool language_equal(const Nfa& a, const Nfa& b, std::size_t alphabet_size) {
    Dfa da = determinize(a, alphabet_size), db = determinize(b, alphabet_size);
    std::set<std::pair<int, int>> seen{{da.initial, db.initial}};
    std::deque<std::pair<int, int>> work{{da.initial, db.initial}};
    while (!work.empty()) {
        auto [p, q] = work.front();
        work.pop_front();
        if (da.accepting[p] != db.accepting[q]) return false;
        for (std::size_t c = 0; c < alphabet_size; ++c) {
            std::pair<int, int> nxt{da.step(p, static_cast<Letter>(c)),
                                    db.step(q, static_cast<Letter>(c))};
            if (seen.insert(nxt).second) work.push_back(nxt);
        }
    }
    return true;
}

bool is_closed(const Nfa& a, const DependenceAlphabet& da) {
    Dfa m = minimize(determinize(a, da.size()));
    for (int q = 0; q < m.num_states; ++q)
        for (Letter x = 0; x < da.size(); ++x)
            for (Letter y = x + 1; y < da.size(); ++y) {
                if (da.dependent(x, y)) continue;
                if (m.step(m.step(q, x), y) != m.step(m.step(q, y), x)) return false;
            }
    return true;
}

bool check_diamond_nfa(const Nfa& a, const DependenceAlphabet& da) {
    if (!a.epsilon_free()) throw PreconditionError("diamond check requires an epsilon-free NFA");
    std::set<NfaTransition> all(a.transitions.begin(), a.transitions.end());
    std::vector<std::vector<NfaTransition>> by_from(a.num_states);
    for (const auto& t : a.transitions) by_from[t.from].push_back(t);
    for (const auto& t1 : a.transitions)
        for (const auto& t2 : by_from[t1.to]) {
            Letter x = static_cast<Letter>(t1.label), y = static_cast<Letter>(t2.label);
            if (da.dependent(x, y)) continue;
            bool found = false;
            for (const auto& mid : by_from[t1.from]) {
                if (mid.label != t2.label) continue;
                if (all.count({mid.to, t1.label, t2.to})) {
                    found = true;
                    break;
                }
            }
            if (!found) return false;
        }
    return true;
}

}  // namespace tracepds
