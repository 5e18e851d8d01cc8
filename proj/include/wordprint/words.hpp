#pragma once

// Ordered alphabets, words over them, and the elementary word operations:
// reversal, scattered-subword counting, square-freeness, run-collapsed prints.

#include <algorithm>
#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "wordprint/errors.hpp"

namespace wordprint {

using Symbol = std::uint8_t;

// An ordered alphabet. The glyph sequence fixes both the letter set and the
// order a_1 < a_2 < ... < a_r; symbols are indices into this sequence.
class Alphabet {
public:
    explicit Alphabet(std::string_view glyphs) : glyphs_(glyphs) {
        if (glyphs_.empty())
            throw parse_error("alphabet must contain at least one letter");
        if (glyphs_.size() > 255)
            throw parse_error("alphabet too large (at most 255 letters)");
        for (std::size_t i = 0; i < glyphs_.size(); ++i)
            for (std::size_t j = i + 1; j < glyphs_.size(); ++j)
                if (glyphs_[i] == glyphs_[j])
                    throw parse_error(std::string("duplicate letter '") + glyphs_[i] +
                                      "' in alphabet \"" + glyphs_ + "\"");
    }

    // The r-letter alphabet a < b < c < ... over the first r latin letters.
    static Alphabet prefix(int r) {
        static constexpr std::string_view latin = "abcdefghijklmnopqrstuvwxyz";
        if (r < 1 || r > static_cast<int>(latin.size()))
            throw domain_error("alphabet size must be between 1 and 26, got " + std::to_string(r));
        return Alphabet(latin.substr(0, static_cast<std::size_t>(r)));
    }

    static const Alphabet& binary() {
        static const Alphabet a{"ab"};
        return a;
    }
    static const Alphabet& ternary() {
        static const Alphabet a{"abc"};
        return a;
    }

    int size() const { return static_cast<int>(glyphs_.size()); }
    char glyph(Symbol s) const { return glyphs_.at(s); }
    std::string_view glyphs() const { return glyphs_; }

    // Index of a glyph in the declared order, or -1 if absent.
    int index(char g) const {
        auto pos = glyphs_.find(g);
        return pos == std::string::npos ? -1 : static_cast<int>(pos);
    }

    friend bool operator==(const Alphabet&, const Alphabet&) = default;

private:
    std::string glyphs_;
};

// A finite word, stored as letter indices. The empty word is default-constructed.
// Comparison is lexicographic in the declared alphabet order.
class Word {
public:
    Word() = default;
    explicit Word(std::vector<Symbol> symbols) : symbols_(std::move(symbols)) {}

    static Word parse(std::string_view text, const Alphabet& sigma) {
        std::vector<Symbol> out;
        out.reserve(text.size());
        for (char g : text) {
            int idx = sigma.index(g);
            if (idx < 0)
                throw parse_error(std::string("letter '") + g + "' is not in alphabet \"" +
                                  std::string(sigma.glyphs()) + "\"");
            out.push_back(static_cast<Symbol>(idx));
        }
        return Word(std::move(out));
    }

    std::string str(const Alphabet& sigma) const {
        std::string out;
        out.reserve(symbols_.size());
        for (Symbol s : symbols_) out.push_back(sigma.glyph(s));
        return out;
    }

    std::size_t size() const { return symbols_.size(); }
    bool empty() const { return symbols_.empty(); }
    Symbol operator[](std::size_t i) const { return symbols_[i]; }
    std::span<const Symbol> symbols() const { return symbols_; }
    const Symbol* data() const { return symbols_.data(); }

    auto begin() const { return symbols_.begin(); }
    auto end() const { return symbols_.end(); }

    void push_back(Symbol s) { symbols_.push_back(s); }

    int max_symbol() const {
        int m = -1;
        for (Symbol s : symbols_) m = std::max(m, static_cast<int>(s));
        return m;
    }

    friend auto operator<=>(const Word&, const Word&) = default;

private:
    std::vector<Symbol> symbols_;
};

struct WordHash {
    std::size_t operator()(const Word& w) const {
        std::uint64_t h = 1469598103934665603ull; // FNV-1a
        for (Symbol s : w) {
            h ^= s;
            h *= 1099511628211ull;
        }
        return static_cast<std::size_t>(h);
    }
};

inline Word mirror(const Word& w) {
    std::vector<Symbol> rev(w.begin(), w.end());
    std::reverse(rev.begin(), rev.end());
    return Word(std::move(rev));
}

// Number of occurrences of u in w as a scattered subword; occurrences are
// distinct index subsequences. The empty word occurs exactly once in anything.
// Single left-to-right pass keeping one counter per prefix of u.
inline std::uint64_t subword_count(const Word& w, const Word& u) {
    std::vector<std::uint64_t> pref(u.size() + 1, 0);
    pref[0] = 1;
    for (Symbol x : w)
        for (std::size_t j = u.size(); j >= 1; --j)
            if (u[j - 1] == x) pref[j] = checked_add(pref[j], pref[j - 1]);
    return pref[u.size()];
}

// True iff w contains no factor vv with v nonempty. For each candidate half
// length e, a square exists iff w[i] == w[i+e] holds e times in a row.
inline bool is_square_free(const Word& w) {
    auto s = w.symbols();
    const std::size_t n = s.size();
    for (std::size_t e = 1; 2 * e <= n; ++e) {
        std::size_t run = 0;
        for (std::size_t i = 0; i + e < n; ++i) {
            run = (s[i] == s[i + e]) ? run + 1 : 0;
            if (run >= e) return false;
        }
    }
    return true;
}

// Collapses each maximal run of equal letters to a single letter.
inline Word serbanuta_print(const Word& w) {
    std::vector<Symbol> out;
    out.reserve(w.size());
    for (Symbol s : w)
        if (out.empty() || out.back() != s) out.push_back(s);
    return Word(std::move(out));
}

} // namespace wordprint
