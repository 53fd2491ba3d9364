#include "tracepds/tpds.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>

namespace tracepds {

void Tpds::normalize(const DependenceAlphabet& da) {
    for (auto& t : transitions) {
        if (t.from < 0 || t.from >= num_states || t.to < 0 || t.to >= num_states)
            throw InputError("tPDS state id out of range");
        if (t.pop >= da.size()) throw InputError("tPDS pop letter out of range");
        for (char c : t.push)
            if (static_cast<Letter>(c) >= da.size())
                throw InputError("tPDS written letter out of range");
        t.push = lnf(da, t.push);
    }
    std::sort(transitions.begin(), transitions.end());
    transitions.erase(std::unique(transitions.begin(), transitions.end()), transitions.end());
}

std::size_t Tpds::size_measure(const DependenceAlphabet& da) const {
    std::size_t k = 1;
    for (const auto& t : transitions) k = std::max(k, t.push.size() + 1);
    return static_cast<std::size_t>(num_states) + da.size() + k * transitions.size();
}

ValidationReport validate(const Tpds& p, const DependenceAlphabet& da) {
    ValidationReport report;
    for (const auto& t : p.transitions) {
        LetterSet dw = da.dep_of_set(da.alph_mask(t.push));
        if ((dw & ~da.dep_mask(t.pop)) != 0) report.p1_violations.push_back(t);
    }
    // (P2): for (p,a,v,q),(q,b,w,r) with a ∥ b there must be q' with
    // (p,b,w,q'),(q',a,v,r). Written words are already in normal form, so
    // set membership equals matching modulo ∼.
    std::set<TpdsTransition> all(p.transitions.begin(), p.transitions.end());
    std::vector<std::vector<TpdsTransition>> by_from(p.num_states);
    for (const auto& t : p.transitions) by_from[t.from].push_back(t);
    for (const auto& t1 : p.transitions)
        for (const auto& t2 : by_from[t1.to]) {
            if (da.dependent(t1.pop, t2.pop)) continue;
            bool found = false;
            for (const auto& mid : by_from[t1.from]) {
                if (mid.pop != t2.pop || mid.push != t2.push) continue;
                if (all.count({mid.to, t1.pop, t1.push, t2.to})) {
                    found = true;
                    break;
                }
            }
            if (!found) report.p2_violations.push_back({t1, t2});
        }
    return report;
}

std::vector<Config> step(const Tpds& p, const DependenceAlphabet& da, const Config& c) {
    std::set<Config> out;
    for (const auto& t : p.transitions) {
        if (t.from != c.state) continue;
        auto rest = first_letter_strip(da, c.stack, t.pop);
        if (!rest) continue;
        out.insert({t.to, lnf(da, t.push + *rest)});
    }
    return {out.begin(), out.end()};
}

OracleResult reach_oracle(const Tpds& p, const DependenceAlphabet& da, const Config& from,
                          std::size_t max_stack, std::size_t max_steps,
                          std::size_t frontier_cap) {
    OracleResult result;
    if (from.stack.size() > max_stack) return result;
    Config start{from.state, lnf(da, from.stack)};
    std::set<Config> seen{start};
    std::deque<Config> layer{start};
    for (std::size_t depth = 0; depth < max_steps && !layer.empty(); ++depth) {
        std::deque<Config> next;
        for (const auto& c : layer)
            for (const auto& d : step(p, da, c)) {
                if (d.stack.size() > max_stack) continue;
                if (seen.insert(d).second) {
                    if (seen.size() > frontier_cap)
                        throw LimitError("reach_oracle frontier cap exceeded");
                    next.push_back(d);
                }
            }
        layer = std::move(next);
    }
    result.configs.assign(seen.begin(), seen.end());
    std::map<Config, int> index;
    for (std::size_t i = 0; i < result.configs.size(); ++i)
        index[result.configs[i]] = static_cast<int>(i);
    for (std::size_t i = 0; i < result.configs.size(); ++i)
        for (const auto& d : step(p, da, result.configs[i])) {
            auto it = index.find(d);
            if (it != index.end()) result.edges.push_back({static_cast<int>(i), it->second});
        }
    return result;
}

HomogeneousSplit split_homogeneous(const Tpds& p, const DependenceAlphabet& da) {
    HomogeneousSplit split;
    split.eps.num_states = p.num_states;
    auto classes = da.twin_classes();
    std::vector<std::size_t> class_of(da.size());
    for (std::size_t i = 0; i < classes.size(); ++i)
        for (Letter a : classes[i]) class_of[a] = i;
    for (const auto& cls : classes) {
        Tpds part;
        part.num_states = p.num_states;
        split.per_class.push_back({cls.front(), std::move(part)});
    }
    for (const auto& t : p.transitions) {
        if (t.push.empty())
            split.eps.transitions.push_back(t);
        else
            split.per_class[class_of[t.pop]].second.transitions.push_back(t);
    }
    return split;
}

namespace {

/// Factorizations w = u·b·v with u ∥ b, reported as (position of b).
std::vector<std::size_t> first_letter_positions(const DependenceAlphabet& da, const Word& w) {
    std::vector<std::size_t> out;
    LetterSet blocked = 0;
    for (std::size_t i = 0; i < w.size(); ++i) {
        Letter b = static_cast<Letter>(w[i]);
        if (!(blocked >> b & 1u)) out.push_back(i);
        blocked |= da.dep_mask(b);
    }
    return out;
}

}  // namespace

std::optional<SaturationWitness> saturation_witness(const Tpds& p, const DependenceAlphabet& da) {
    std::set<TpdsTransition> all(p.transitions.begin(), p.transitions.end());
    std::vector<std::vector<TpdsTransition>> by_from(p.num_states);
    for (const auto& t : p.transitions) by_from[t.from].push_back(t);
    for (const auto& writer : p.transitions) {
        for (std::size_t i : first_letter_positions(da, writer.push)) {
            Letter b = static_cast<Letter>(writer.push[i]);
            Word uv = writer.push;
            uv.erase(i, 1);
            Word shortcut_word = lnf(da, uv);
            for (const auto& popper : by_from[writer.to]) {
                if (popper.pop != b || !popper.push.empty()) continue;
                TpdsTransition wanted{writer.from, writer.pop, shortcut_word, popper.to};
                if (!all.count(wanted)) return SaturationWitness{writer, popper, wanted};
            }
        }
    }
    return std::nullopt;
}

SaturationResult saturate(const Tpds& p, const DependenceAlphabet& da) {
    SaturationResult result;
    result.system = p;
    result.system.normalize(da);
    std::set<TpdsTransition> all(result.system.transitions.begin(),
                                 result.system.transitions.end());
    for (;;) {
        // One round computes Δ⁽ᵏ⁺¹⁾ \ Δ⁽ᵏ⁾ in full before applying it.
        std::set<TpdsTransition> added;
        std::vector<std::vector<TpdsTransition>> by_from(result.system.num_states);
        for (const auto& t : result.system.transitions) by_from[t.from].push_back(t);
        for (const auto& writer : result.system.transitions)
            for (std::size_t i : first_letter_positions(da, writer.push)) {
                Letter b = static_cast<Letter>(writer.push[i]);
                Word uv = writer.push;
                uv.erase(i, 1);
                Word shortcut_word = lnf(da, uv);
                for (const auto& popper : by_from[writer.to]) {
                    if (popper.pop != b || !popper.push.empty()) continue;
                    TpdsTransition shortcut{writer.from, writer.pop, shortcut_word, popper.to};
                    if (!all.count(shortcut)) added.insert(shortcut);
                }
            }
        result.rounds.emplace_back(added.begin(), added.end());
        if (added.empty()) break;
        all.insert(added.begin(), added.end());
        result.system.transitions.assign(all.begin(), all.end());
    }
    return result;
}

std::optional<int> min_segments(const Tpds& p, const DependenceAlphabet& da, const Config& from,
                                const Config& to, int max_segments, std::size_t max_stack,
                                std::size_t frontier_cap) {
    auto classes = da.twin_classes();
    std::vector<int> class_of(da.size());
    for (std::size_t i = 0; i < classes.size(); ++i)
        for (Letter a : classes[i]) class_of[a] = static_cast<int>(i);
    // Segment kind: 0 = pop segment, 1+c = push segment of twin class c,
    // -1 = no step taken yet. 0-1 BFS over (config, kind) with segment count
    // as distance.
    struct Node {
        Config c;
        int kind;
        auto operator<=>(const Node&) const = default;
    };
    Config start{from.state, lnf(da, from.stack)};
    Config goal{to.state, lnf(da, to.stack)};
    std::map<Node, int> dist;
    std::deque<std::pair<Node, int>> work;
    Node init{start, -1};
    dist[init] = 0;
    work.push_back({init, 0});
    std::optional<int> best;
    while (!work.empty()) {
        auto [node, d] = work.front();
        work.pop_front();
        auto it = dist.find(node);
        if (it == dist.end() || it->second < d) continue;
        if (node.c == goal && (!best || d < *best)) best = d;
        if (best && d >= *best) continue;
        for (const auto& t : p.transitions) {
            if (t.from != node.c.state) continue;
            auto rest = first_letter_strip(da, node.c.stack, t.pop);
            if (!rest) continue;
            Config succ{t.to, lnf(da, t.push + *rest)};
            if (succ.stack.size() > max_stack) continue;
            int kind = t.push.empty() ? 0 : 1 + class_of[t.pop];
            int nd = d + (kind == node.kind ? 0 : 1);
            if (nd > max_segments) continue;
            Node next{succ, kind};
            auto [jt, inserted] = dist.try_emplace(next, nd);
            if (!inserted && jt->second <= nd) continue;
            jt->second = nd;
            if (dist.size() > frontier_cap) throw LimitError("min_segments frontier cap exceeded");
            if (kind == node.kind)
                work.push_front({next, nd});
            else
                work.push_back({next, nd});
        }
    }
    return best;
}

}  // namespace tracepds
