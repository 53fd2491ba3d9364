#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace tracepds {

/// Index of a letter within its dependence alphabet (position in the listing
/// order, which is also the linear order used by lexicographic normal forms).
using Letter = std::uint8_t;

/// A word is a sequence of letter indices. std::string keeps comparisons,
/// hashing and substring handling cheap; ordering of words equals the
/// letter order of the alphabet.
using Word = std::string;

/// Set of letters as a bitmask (alphabets are capped at 32 letters).
using LetterSet = std::uint32_t;

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
/// Malformed or inconsistent input documents (CLI exit code 2).
struct InputError : Error {
    using Error::Error;
};
/// Violated operation precondition, e.g. pre* on a non-closed NFA (exit 3).
struct PreconditionError : Error {
    using Error::Error;
};
/// A configured resource bound was exceeded (class-size cap, BFS frontier cap).
struct LimitError : Error {
    using Error::Error;
};

/// A finite set of letters together with a reflexive and symmetric dependence
/// relation. Immutable after construction; the constructor normalizes the
/// relation (adds reflexive pairs, symmetrizes) and validates the input.
class DependenceAlphabet {
public:
    static constexpr std::size_t max_letters = 32;

    /// `letters` in listing order (defines the linear order); `pairs` as
    /// (name, name). Throws InputError on duplicate letters, empty names or
    /// pairs mentioning unknown letters.
    DependenceAlphabet(std::vector<std::string> letters,
                       const std::vector<std::pair<std::string, std::string>>& pairs);

    std::size_t size() const { return names_.size(); }
    const std::string& name(Letter a) const { return names_.at(a); }
    const std::vector<std::string>& names() const { return names_; }

    std::optional<Letter> find(std::string_view name) const;
    Letter require(std::string_view name) const;  // throws InputError

    bool dependent(Letter a, Letter b) const { return dep_[a] >> b & 1u; }
    /// Distinct and not dependent. independent(a, a) is always false.
    bool independent(Letter a, Letter b) const { return !dependent(a, b); }

    /// D(a) as a bitmask.
    LetterSet dep_mask(Letter a) const { return dep_[a]; }
    /// D(B) = union of D(b) for b in the mask.
    LetterSet dep_of_set(LetterSet letters) const;
    /// alph(w) as a bitmask.
    LetterSet alph_mask(const Word& w) const;

    /// u ∥ v: every letter of u independent from every letter of v.
    bool parallel(const Word& u, const Word& v) const;

    /// Partition of the letters by equality of D(a); classes ordered by their
    /// smallest member, members in letter order.
    std::vector<std::vector<Letter>> twin_classes() const;
    std::size_t twin_index() const { return twin_classes().size(); }

    /// Number of distinct sets D(B) over B ⊆ A, including D(∅) = ∅.
    /// Computed by closing {∅} under union with each D(a), never by
    /// enumerating all subsets. Note: with D(∅) counted, full dependence
    /// yields 2 rather than the 1 obtained when only nonempty B are counted.
    std::size_t set_twin_index() const;

    /// Maximal size of a set of mutually independent letters (exact search).
    std::size_t independence_number() const;

    /// Word <-> text conversion. A plain string is a sequence of
    /// single-character letter names; alphabets with multi-character names
    /// require the array form handled in io.cpp.
    Word parse_word(std::string_view text) const;
    std::string format_word(const Word& w) const;
    bool all_single_char_names() const;

private:
    std::vector<std::string> names_;
    std::vector<LetterSet> dep_;  // dep_[a] = D(a), reflexive+symmetric
};

}  // namespace tracepds
