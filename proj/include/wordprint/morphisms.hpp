#pragma once

// Letter-to-word morphisms, the bundled Leech square-free morphism, and the
// generator that iterates a morphism on a pair of words while re-verifying
// the properties the construction is supposed to preserve.

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "wordprint/errors.hpp"
#include "wordprint/parikh.hpp"
#include "wordprint/words.hpp"

namespace wordprint::morphisms {

class Morphism {
public:
    Morphism(Alphabet source, Alphabet target, std::vector<Word> images)
        : source_(std::move(source)), target_(std::move(target)), images_(std::move(images)) {
        if (static_cast<int>(images_.size()) != source_.size())
            throw domain_error("morphism must map every source letter");
        for (const Word& im : images_) {
            if (im.empty()) throw domain_error("morphism images must be nonempty");
            if (im.max_symbol() >= target_.size())
                throw domain_error("morphism image uses a letter outside the target alphabet");
        }
    }

    const Alphabet& source() const { return source_; }
    const Alphabet& target() const { return target_; }
    const Word& image(Symbol s) const {
        if (static_cast<int>(s) >= source_.size())
            throw domain_error("letter outside the morphism's source alphabet");
        return images_[s];
    }

    Word apply(const Word& w) const {
        std::vector<Symbol> out;
        out.reserve(applied_length(w));
        for (Symbol s : w) {
            const Word& im = image(s);
            out.insert(out.end(), im.begin(), im.end());
        }
        return Word(std::move(out));
    }

    // Length of apply(w) without materializing it.
    std::uint64_t applied_length(const Word& w) const {
        std::uint64_t total = 0;
        for (Symbol s : w) total = checked_add(total, image(s).size());
        return total;
    }

    // The uniform square-free ternary morphism with length-13 images, due to Leech.
    static Morphism leech() {
        const Alphabet& t = Alphabet::ternary();
        return Morphism(t, t,
                        {Word::parse("abcbacbcabcba", t), Word::parse("bcacbacabcacb", t),
                         Word::parse("cabacbabcabac", t)});
    }

private:
    Alphabet source_;
    Alphabet target_;
    std::vector<Word> images_;
};

struct IterateRecord {
    int index = 0;
    Word first;
    Word second;
    bool square_free_both = false;
    bool equal_3_spectrum = false;
    bool m_equivalent_all_orderings = false;

    bool all_checks_pass() const {
        return square_free_both && equal_3_spectrum && m_equivalent_all_orderings;
    }
};

struct IterateResult {
    std::vector<IterateRecord> records;
    bool length_cap_hit = false;
};

// Applies m repeatedly to a verified seed pair, emitting one re-verified
// record per step. Stops early (flagged, not an error) when the next image
// length would exceed the cap.
inline IterateResult iterate_pair(const Morphism& m, const Word& w, const Word& w2, int steps,
                                  std::uint64_t length_cap) {
    if (m.source().size() != 3 || m.target().size() != 3)
        throw domain_error("iterate_pair requires ternary source and target alphabets");
    if (steps < 0) throw domain_error("iterate_pair step count must be nonnegative");
    if (length_cap == 0) throw domain_error("iterate_pair length cap must be positive");
    if (!is_square_free(w) || !is_square_free(w2))
        throw domain_error("iterate_pair seed words must be square-free");
    const Alphabet& sigma = Alphabet::ternary();
    if (k_spectrum(sigma, w, 3) != k_spectrum(sigma, w2, 3))
        throw domain_error("iterate_pair seed words must share a 3-spectrum");

    IterateResult result;
    Word cur = w, cur2 = w2;
    for (int i = 0;; ++i) {
        IterateRecord rec;
        rec.index = i;
        rec.square_free_both = is_square_free(cur) && is_square_free(cur2);
        rec.equal_3_spectrum = k_spectrum(sigma, cur, 3) == k_spectrum(sigma, cur2, 3);
        rec.m_equivalent_all_orderings = m_equivalent_all_orderings(cur, cur2, 3);
        rec.first = cur;
        rec.second = cur2;
        result.records.push_back(std::move(rec));
        if (i == steps) break;
        if (m.applied_length(cur) > length_cap || m.applied_length(cur2) > length_cap) {
            result.length_cap_hit = true;
            break;
        }
        cur = m.apply(cur);
        cur2 = m.apply(cur2);
    }
    return result;
}

} // namespace wordprint::morphisms
