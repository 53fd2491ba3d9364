#include "tracepds/trace.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace tracepds {

Word lnf(const DependenceAlphabet& da, const Word& u) {
    Word rest = u, out;
    out.reserve(u.size());
    while (!rest.empty()) {
        // A position i is available iff no earlier letter depends on rest[i];
        // reflexivity blocks repeated occurrences automatically, so scanning
        // all positions still only ever selects first occurrences.
        std::size_t best = rest.size();
        LetterSet blocked = 0;  // D(prefix so far)
        for (std::size_t i = 0; i < rest.size(); ++i) {
            Letter c = static_cast<Letter>(rest[i]);
            if (!(blocked >> c & 1u) && (best == rest.size() || rest[i] < rest[best])) best = i;
            blocked |= da.dep_mask(c);
        }
        out.push_back(rest[best]);
        rest.erase(best, 1);
    }
    return out;
}

bool equivalent(const DependenceAlphabet& da, const Word& u, const Word& v) {
    if (u.size() != v.size()) return false;
    std::size_t n = da.size();
    for (Letter a = 0; a < n; ++a) {
        for (Letter b = a; b < n; ++b) {
            if (!da.dependent(a, b)) continue;
            auto project = [&](const Word& w) {
                Word p;
                for (char c : w)
                    if (static_cast<Letter>(c) == a || static_cast<Letter>(c) == b) p.push_back(c);
                return p;
            };
            if (project(u) != project(v)) return false;
        }
    }
    return true;
}

std::optional<Word> first_letter_strip(const DependenceAlphabet& da, const Word& u, Letter a) {
    for (std::size_t i = 0; i < u.size(); ++i) {
        Letter c = static_cast<Letter>(u[i]);
        if (c == a) {
            Word x = u;
            x.erase(i, 1);
            return x;
        }
        if (da.dependent(c, a)) return std::nullopt;  // blocks every later occurrence too
    }
    return std::nullopt;
}

std::vector<Word> class_members(const DependenceAlphabet& da, const Word& u, std::size_t max_len) {
    if (u.size() > max_len)
        throw LimitError("class enumeration limit exceeded: |u| = " + std::to_string(u.size()) +
                         " > " + std::to_string(max_len));
    std::set<Word> closure{u};
    std::vector<Word> work{u};
    while (!work.empty()) {
        Word w = std::move(work.back());
        work.pop_back();
        for (std::size_t i = 0; i + 1 < w.size(); ++i) {
            if (da.dependent(static_cast<Letter>(w[i]), static_cast<Letter>(w[i + 1]))) continue;
            Word swapped = w;
            std::swap(swapped[i], swapped[i + 1]);
            if (closure.insert(swapped).second) work.push_back(swapped);
        }
    }
    return {closure.begin(), closure.end()};
}

Nfa class_automaton(const DependenceAlphabet& da, const Word& u, std::size_t max_len) {
    if (u.size() > max_len)
        throw LimitError("class enumeration limit exceeded: |u| = " + std::to_string(u.size()) +
                         " > " + std::to_string(max_len));
    // States are the distinct remaining-suffix traces, keyed by normal form.
    Nfa a;
    std::map<Word, int> id;
    std::vector<Word> work;
    Word start = lnf(da, u);
    id.emplace(start, 0);
    work.push_back(start);
    a.num_states = 1;
    a.initial = {0};
    while (!work.empty()) {
        Word w = std::move(work.back());
        work.pop_back();
        int from = id.at(w);
        for (Letter c = 0; c < da.size(); ++c) {
            auto rest = first_letter_strip(da, w, c);
            if (!rest) continue;
            Word key = lnf(da, *rest);
            auto [it, inserted] = id.try_emplace(key, a.num_states);
            if (inserted) {
                ++a.num_states;
                work.push_back(key);
            }
            a.transitions.push_back({from, c, it->second});
        }
    }
    a.final_states = {id.at(Word{})};
    a.normalize();
    return a;
}

}  // namespace tracepds
