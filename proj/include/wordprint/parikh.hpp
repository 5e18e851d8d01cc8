#pragma once

// The Parikh matrix mapping, matrix equivalence, and k-spectra.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <vector>

#include "wordprint/errors.hpp"
#include "wordprint/words.hpp"

namespace wordprint {

// Upper-unitriangular (k+1)x(k+1) matrix of nonnegative counters, where k is
// the alphabet size. Superdiagonal entries count the scattered occurrences of
// the consecutive-letter-range words a_i a_{i+1} ... a_j.
class ParikhMatrix {
public:
    explicit ParikhMatrix(int dimension)
        : dim_(dimension), m_(static_cast<std::size_t>(dimension) * dimension, 0) {
        for (int i = 0; i < dim_; ++i) at(i, i) = 1;
    }

    int dimension() const { return dim_; }

    std::uint64_t& at(int i, int j) { return m_[static_cast<std::size_t>(i) * dim_ + j]; }
    std::uint64_t at(int i, int j) const { return m_[static_cast<std::size_t>(i) * dim_ + j]; }

    // Right-multiply by the elementary matrix of letter q (identity plus a
    // single 1 at (q, q+1)): column q+1 gains column q.
    void append_letter(int q) {
        for (int i = 0; i <= q; ++i) at(i, q + 1) = checked_add(at(i, q + 1), at(i, q));
    }

    friend bool operator==(const ParikhMatrix&, const ParikhMatrix&) = default;

private:
    int dim_;
    std::vector<std::uint64_t> m_;
};

inline void require_over(const Alphabet& sigma, const Word& w) {
    if (w.max_symbol() >= sigma.size())
        throw domain_error("word uses a letter outside the " + std::to_string(sigma.size()) +
                           "-letter alphabet");
}

// Matrix of w as the product of per-letter elementary matrices.
inline ParikhMatrix parikh_matrix(const Alphabet& sigma, const Word& w) {
    require_over(sigma, w);
    ParikhMatrix m(sigma.size() + 1);
    for (Symbol s : w) m.append_letter(s);
    return m;
}

// Same matrix assembled entry-by-entry from subword counts of the
// consecutive-letter-range words; an independent construction route.
inline ParikhMatrix parikh_matrix_by_counts(const Alphabet& sigma, const Word& w) {
    require_over(sigma, w);
    const int k = sigma.size();
    ParikhMatrix m(k + 1);
    for (int i = 0; i < k; ++i) {
        for (int j = i; j < k; ++j) {
            std::vector<Symbol> range;
            for (int q = i; q <= j; ++q) range.push_back(static_cast<Symbol>(q));
            m.at(i, j + 1) = subword_count(w, Word(std::move(range)));
        }
    }
    return m;
}

inline bool m_equivalent(const Alphabet& sigma, const Word& w, const Word& w2) {
    return parikh_matrix(sigma, w) == parikh_matrix(sigma, w2);
}

// Matrix equality under every ordering of an r-letter underlying alphabet.
// Ordering (p_0 < p_1 < ... ) reranks symbol p_i to i.
inline bool m_equivalent_all_orderings(const Word& w, const Word& w2, int r) {
    std::vector<Symbol> perm(static_cast<std::size_t>(r));
    std::iota(perm.begin(), perm.end(), Symbol{0});
    const Alphabet sigma = Alphabet::prefix(r);
    auto rerank = [&](const Word& x) {
        std::vector<Symbol> rank(static_cast<std::size_t>(r));
        for (int i = 0; i < r; ++i) rank[perm[static_cast<std::size_t>(i)]] = static_cast<Symbol>(i);
        std::vector<Symbol> out;
        out.reserve(x.size());
        for (Symbol s : x) out.push_back(rank[s]);
        return Word(std::move(out));
    };
    do {
        if (parikh_matrix(sigma, rerank(w)) != parikh_matrix(sigma, rerank(w2))) return false;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return true;
}

// The k-spectrum of a word: the counts of every word of length <= k as a
// scattered subword. Stored densely, slots ranked by length then
// lexicographic order; for a ternary alphabet and k = 3 that is 40 slots.
class Spectrum {
public:
    Spectrum(int alphabet_size, int order)
        : r_(alphabet_size), k_(order), counts_(slot_count(alphabet_size, order), 0) {}

    int alphabet_size() const { return r_; }
    int order() const { return k_; }
    const std::vector<std::uint64_t>& counts() const { return counts_; }
    std::vector<std::uint64_t>& counts() { return counts_; }

    static std::size_t slot_count(int r, int k) {
        std::size_t total = 0, len_count = 1;
        for (int len = 0; len <= k; ++len) {
            total += len_count;
            len_count *= static_cast<std::size_t>(r);
        }
        return total;
    }

    // First slot of the given subword length.
    std::size_t offset(int len) const {
        std::size_t total = 0, len_count = 1;
        for (int l = 0; l < len; ++l) {
            total += len_count;
            len_count *= static_cast<std::size_t>(r_);
        }
        return total;
    }

    // The subword occupying a given slot.
    Word slot_word(std::size_t slot) const {
        int len = 0;
        std::size_t len_count = 1;
        while (slot >= len_count) {
            slot -= len_count;
            len_count *= static_cast<std::size_t>(r_);
            ++len;
        }
        std::vector<Symbol> out(static_cast<std::size_t>(len));
        for (int i = len - 1; i >= 0; --i) {
            out[static_cast<std::size_t>(i)] = static_cast<Symbol>(slot % static_cast<std::size_t>(r_));
            slot /= static_cast<std::size_t>(r_);
        }
        return Word(std::move(out));
    }

    std::uint64_t count_of(const Word& u) const {
        std::size_t slot = offset(static_cast<int>(u.size()));
        std::size_t lex = 0;
        for (Symbol s : u) lex = lex * static_cast<std::size_t>(r_) + s;
        return counts_[slot + lex];
    }

    friend bool operator==(const Spectrum&, const Spectrum&) = default;

private:
    int r_;
    int k_;
    std::vector<std::uint64_t> counts_;
};

// One pass over w; appending letter x extends every counted subword u of
// length < k to ux, so longer targets are updated before their sources.
inline Spectrum k_spectrum(const Alphabet& sigma, const Word& w, int k) {
    if (k < 1) throw domain_error("spectrum order must be at least 1");
    require_over(sigma, w);
    const int r = sigma.size();
    Spectrum spec(r, k);
    auto& c = spec.counts();
    c[0] = 1; // empty subword
    for (Symbol x : w) {
        for (int len = k - 1; len >= 0; --len) {
            const std::size_t src = spec.offset(len);
            const std::size_t dst = spec.offset(len + 1);
            std::size_t len_count = 1;
            for (int l = 0; l < len; ++l) len_count *= static_cast<std::size_t>(r);
            for (std::size_t i = 0; i < len_count; ++i) {
                const std::size_t target = dst + i * static_cast<std::size_t>(r) + x;
                c[target] = checked_add(c[target], c[src + i]);
            }
        }
    }
    return spec;
}

} // namespace wordprint
