#include "tracepds/alphabet.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <set>

namespace tracepds {

DependenceAlphabet::DependenceAlphabet(
    std::vector<std::string> letters,
    const std::vector<std::pair<std::string, std::string>>& pairs)
    : names_(std::move(letters)) {
    if (names_.empty())
        throw InputError("alphabet needs at least one letter");
    if (names_.size() > max_letters)
        throw InputError("alphabet has more than " + std::to_string(max_letters) + " letters");
    std::set<std::string> seen;
    for (const auto& n : names_) {
        if (n.empty())
            throw InputError("empty letter name");
        if (!seen.insert(n).second)
            throw InputError("duplicate letter '" + n + "'");
    }
    dep_.assign(names_.size(), 0);
    for (std::size_t a = 0; a < names_.size(); ++a)
        dep_[a] |= LetterSet{1} << a;  // reflexive
    for (const auto& [x, y] : pairs) {
        Letter a = require(x), b = require(y);
        dep_[a] |= LetterSet{1} << b;  // symmetric closure
        dep_[b] |= LetterSet{1} << a;
    }
}

std::optional<Letter> DependenceAlphabet::find(std::string_view name) const {
    for (std::size_t i = 0; i < names_.size(); ++i)
        if (names_[i] == name) return static_cast<Letter>(i);
    return std::nullopt;
}

Letter DependenceAlphabet::require(std::string_view name) const {
    if (auto a = find(name)) return *a;
    throw InputError("unknown letter '" + std::string(name) + "'");
}

LetterSet DependenceAlphabet::dep_of_set(LetterSet letters) const {
    LetterSet out = 0;
    for (std::size_t a = 0; a < names_.size(); ++a)
        if (letters >> a & 1u) out |= dep_[a];
    return out;
}

LetterSet DependenceAlphabet::alph_mask(const Word& w) const {
    LetterSet out = 0;
    for (char c : w) out |= LetterSet{1} << static_cast<Letter>(c);
    return out;
}

bool DependenceAlphabet::parallel(const Word& u, const Word& v) const {
    return (dep_of_set(alph_mask(u)) & alph_mask(v)) == 0;
}

std::vector<std::vector<Letter>> DependenceAlphabet::twin_classes() const {
    std::vector<std::vector<Letter>> classes;
    std::map<LetterSet, std::size_t> by_dep;
    for (std::size_t a = 0; a < names_.size(); ++a) {
        auto [it, inserted] = by_dep.try_emplace(dep_[a], classes.size());
        if (inserted) classes.emplace_back();
        classes[it->second].push_back(static_cast<Letter>(a));
    }
    return classes;
}

std::size_t DependenceAlphabet::set_twin_index() const {
    std::set<LetterSet> values{0};  // D(∅)
    std::vector<LetterSet> work{0};
    while (!work.empty()) {
        LetterSet cur = work.back();
        work.pop_back();
        for (std::size_t a = 0; a < names_.size(); ++a) {
            LetterSet next = cur | dep_[a];
            if (values.insert(next).second) work.push_back(next);
        }
    }
    return values.size();
}

std::size_t DependenceAlphabet::independence_number() const {
    // Exact branch-and-bound over the independence graph; alphabets are tiny.
    std::size_t n = names_.size();
    std::vector<LetterSet> indep(n);
    LetterSet all = n == 32 ? ~LetterSet{0} : (LetterSet{1} << n) - 1;
    for (std::size_t a = 0; a < n; ++a) indep[a] = all & ~dep_[a];
    std::size_t best = 0;
    auto rec = [&](auto&& self, LetterSet candidates, std::size_t chosen) -> void {
        if (chosen + static_cast<std::size_t>(std::popcount(candidates)) <= best) return;
        if (!candidates) {
            best = std::max(best, chosen);
            return;
        }
        Letter a = static_cast<Letter>(std::countr_zero(candidates));
        self(self, candidates & indep[a] & ~(LetterSet{1} << a), chosen + 1);  // take a
        self(self, candidates & ~(LetterSet{1} << a), chosen);                 // skip a
    };
    rec(rec, all, 0);
    return best;
}

bool DependenceAlphabet::all_single_char_names() const {
    return std::all_of(names_.begin(), names_.end(),
                       [](const std::string& n) { return n.size() == 1; });
}

Word DependenceAlphabet::parse_word(std::string_view text) const {
    Word w;
    w.reserve(text.size());
    for (char c : text) w.push_back(static_cast<char>(require(std::string_view(&c, 1))));
    return w;
}

std::string DependenceAlphabet::format_word(const Word& w) const {
    std::string out;
    for (char c : w) out += name(static_cast<Letter>(c));
    return out;
}

}  // namespace tracepds
