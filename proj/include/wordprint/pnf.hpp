#pragma once

// Canonical right/left power decompositions of a word, the general prints
// they induce, core prints (the square-free fixpoints of iterated general
// printing), and a brute-force search for the shortest general print over
// arbitrary admissible factorizations.

#include <algorithm>
#include <array>
#include <cstdint>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "wordprint/errors.hpp"
#include "wordprint/words.hpp"

namespace wordprint {

// An ordered product of powers base^exponent whose expansion is the source
// word. Parts are kept in left-to-right word order.
struct PowerFactor {
    Word base;
    int exponent = 1;

    friend bool operator==(const PowerFactor&, const PowerFactor&) = default;
};

class PowerFactorization {
public:
    PowerFactorization() = default;
    explicit PowerFactorization(std::vector<PowerFactor> parts) : parts_(std::move(parts)) {}

    const std::vector<PowerFactor>& parts() const { return parts_; }
    std::size_t part_count() const { return parts_.size(); }

    Word expand() const {
        std::vector<Symbol> out;
        for (const auto& p : parts_)
            for (int t = 0; t < p.exponent; ++t)
                out.insert(out.end(), p.base.begin(), p.base.end());
        return Word(std::move(out));
    }

    friend bool operator==(const PowerFactorization&, const PowerFactorization&) = default;

private:
    std::vector<PowerFactor> parts_;
};

namespace detail {

// Number of consecutive occurrences of the length-d suffix block at the end
// of w[0..m).
inline int suffix_repeats(const Symbol* w, int m, int d) {
    const Symbol* block = w + m - d;
    int k = 1;
    while (m - (k + 1) * d >= 0 && std::equal(block, block + d, w + m - (k + 1) * d)) ++k;
    return k;
}

// square_suffix[j] says whether the prefix w[0..j) ends with a square vv.
inline void compute_square_suffix(const Symbol* w, int n, std::vector<char>& out) {
    out.assign(static_cast<std::size_t>(n) + 1, 0);
    for (int j = 2; j <= n; ++j) {
        for (int e = 1; 2 * e <= j; ++e) {
            if (std::equal(w + j - e, w + j, w + j - 2 * e)) {
                out[static_cast<std::size_t>(j)] = 1;
                break;
            }
        }
    }
}

// One right-decomposition step on the prefix w[0..m), m >= 1. Returns
// {base length, exponent} of the block stripped from the right end.
//
// The exponent is the highest power any suffix block attains. If it is 1,
// the base is the shortest suffix whose removal leaves a prefix that does
// end with a square (the whole prefix when none does); if it is >= 2, the
// base is the longest block attaining that power, the remainder may be
// empty.
inline std::pair<int, int> right_strip_step(const Symbol* w, int m,
                                            const std::vector<char>& square_suffix) {
    int tau = 1, theta = 0;
    for (int d = 1; 2 * d <= m; ++d) {
        int k = suffix_repeats(w, m, d);
        if (k > tau) {
            tau = k;
            theta = d;
        } else if (k == tau && k > 1) {
            theta = d; // d ascends, so this keeps the maximum
        }
    }
    if (tau == 1) {
        for (int d = 1; d <= m - 1; ++d)
            if (square_suffix[static_cast<std::size_t>(m - d)]) return {d, 1};
        return {m, 1};
    }
    return {theta, tau};
}

struct RawPart {
    int offset;   // base block position in the original buffer
    int base_len;
    int exponent;
};

// Reusable scratch space so enumeration loops do not allocate per word.
struct PnfScratch {
    std::vector<char> square_suffix;
    std::vector<RawPart> parts; // strip order: rightmost part first
    std::vector<Symbol> buf_a, buf_b;
};

inline void pnf_right_raw(const Symbol* w, int n, PnfScratch& s) {
    s.parts.clear();
    compute_square_suffix(w, n, s.square_suffix);
    int m = n;
    while (m > 0) {
        auto [d, k] = right_strip_step(w, m, s.square_suffix);
        s.parts.push_back({m - d, d, k});
        m -= d * k;
    }
}

// Concatenation of the base blocks, leftmost first. Writes up to n symbols
// into out; returns the print length.
inline int general_print_right_raw(const Symbol* w, int n, Symbol* out, PnfScratch& s) {
    pnf_right_raw(w, n, s);
    int len = 0;
    for (auto it = s.parts.rbegin(); it != s.parts.rend(); ++it) {
        std::copy(w + it->offset, w + it->offset + it->base_len, out + len);
        len += it->base_len;
    }
    return len;
}

// Iterations of the right general print until the fixpoint. The print equals
// its word exactly when every exponent is 1, i.e. when lengths match.
inline int print_depth_right_raw(const Symbol* w, int n, PnfScratch& s) {
    s.buf_a.assign(w, w + n);
    int depth = 0;
    while (!s.buf_a.empty()) {
        const int m = static_cast<int>(s.buf_a.size());
        s.buf_b.resize(static_cast<std::size_t>(m));
        const int len = general_print_right_raw(s.buf_a.data(), m, s.buf_b.data(), s);
        if (len == m) break;
        s.buf_b.resize(static_cast<std::size_t>(len));
        std::swap(s.buf_a, s.buf_b);
        ++depth;
    }
    return depth;
}

inline void require_nonempty(const Word& w, const char* op) {
    if (w.empty()) throw domain_error(std::string(op) + " requires a nonempty word");
}

} // namespace detail

// Highest n such that w = u v^n for some nonempty block v.
inline int max_suffix_power(const Word& w) {
    detail::require_nonempty(w, "max_suffix_power");
    const int n = static_cast<int>(w.size());
    int tau = 1;
    for (int d = 1; 2 * d <= n; ++d) tau = std::max(tau, detail::suffix_repeats(w.data(), n, d));
    return tau;
}

// Length of the block the right decomposition strips first.
inline int suffix_block_length(const Word& w) {
    detail::require_nonempty(w, "suffix_block_length");
    detail::PnfScratch s;
    detail::compute_square_suffix(w.data(), static_cast<int>(w.size()), s.square_suffix);
    return detail::right_strip_step(w.data(), static_cast<int>(w.size()), s.square_suffix).first;
}

struct SuffixBlockSplit {
    Word rest;
    Word base;
    int exponent;
};

// The unique split w = rest . base^exponent selected by the right
// decomposition (highest power, then the canonical block length).
inline SuffixBlockSplit split_suffix_block(const Word& w) {
    detail::require_nonempty(w, "split_suffix_block");
    const int n = static_cast<int>(w.size());
    detail::PnfScratch s;
    detail::compute_square_suffix(w.data(), n, s.square_suffix);
    auto [d, k] = detail::right_strip_step(w.data(), n, s.square_suffix);
    std::vector<Symbol> rest(w.begin(), w.begin() + (n - d * k));
    std::vector<Symbol> base(w.begin() + (n - d), w.end());
    return {Word(std::move(rest)), Word(std::move(base)), k};
}

inline PowerFactorization pnf_right(const Word& w) {
    detail::require_nonempty(w, "pnf_right");
    detail::PnfScratch s;
    detail::pnf_right_raw(w.data(), static_cast<int>(w.size()), s);
    std::vector<PowerFactor> parts;
    parts.reserve(s.parts.size());
    for (auto it = s.parts.rbegin(); it != s.parts.rend(); ++it) {
        std::vector<Symbol> base(w.begin() + it->offset, w.begin() + it->offset + it->base_len);
        parts.push_back({Word(std::move(base)), it->exponent});
    }
    return PowerFactorization(std::move(parts));
}

// Left decomposition, realized through the mirror identity: strip order of
// the right decomposition of the reversed word gives the left parts in word
// order, with each base reversed back.
inline PowerFactorization pnf_left(const Word& w) {
    detail::require_nonempty(w, "pnf_left");
    const Word rev = mirror(w);
    detail::PnfScratch s;
    detail::pnf_right_raw(rev.data(), static_cast<int>(rev.size()), s);
    std::vector<PowerFactor> parts;
    parts.reserve(s.parts.size());
    for (const auto& p : s.parts) {
        std::vector<Symbol> base(rev.begin() + p.offset, rev.begin() + p.offset + p.base_len);
        std::reverse(base.begin(), base.end());
        parts.push_back({Word(std::move(base)), p.exponent});
    }
    return PowerFactorization(std::move(parts));
}

inline Word general_print_right(const Word& w) {
    detail::require_nonempty(w, "general_print_right");
    detail::PnfScratch s;
    std::vector<Symbol> out(w.size());
    const int len = detail::general_print_right_raw(w.data(), static_cast<int>(w.size()),
                                                    out.data(), s);
    out.resize(static_cast<std::size_t>(len));
    return Word(std::move(out));
}

inline Word general_print_left(const Word& w) {
    detail::require_nonempty(w, "general_print_left");
    return mirror(general_print_right(mirror(w)));
}

enum class Side { right, left };

inline const char* side_name(Side s) { return s == Side::right ? "right" : "left"; }

// The chain w = w_0, w_1, ... obtained by iterating the chosen general print
// until it stabilizes. The last chain entry is the core print; steps() is the
// number of strict reductions taken to reach it.
struct CorePrintTrace {
    Side side = Side::right;
    std::vector<Word> chain;

    int steps() const { return static_cast<int>(chain.size()) - 1; }
    const Word& core() const { return chain.back(); }
};

inline CorePrintTrace core_print(const Word& w, Side side) {
    detail::require_nonempty(w, "core_print");
    CorePrintTrace trace;
    trace.side = side;
    trace.chain.push_back(w);
    while (true) {
        const Word& cur = trace.chain.back();
        Word next = side == Side::right ? general_print_right(cur) : general_print_left(cur);
        if (next == cur) break;
        trace.chain.push_back(std::move(next));
    }
    return trace;
}

// Reduction depths (chain lengths minus one) without materializing the chain.
inline int print_depth_right(const Word& w) {
    detail::require_nonempty(w, "print_depth_right");
    detail::PnfScratch s;
    return detail::print_depth_right_raw(w.data(), static_cast<int>(w.size()), s);
}

inline int print_depth_left(const Word& w) {
    detail::require_nonempty(w, "print_depth_left");
    const Word rev = mirror(w);
    detail::PnfScratch s;
    return detail::print_depth_right_raw(rev.data(), static_cast<int>(rev.size()), s);
}

struct ShortestPrintResult {
    int length = 0;
    std::vector<Word> witnesses; // all distinct minimal prints, ascending
};

// Minimal print length over all factorizations w = y_1^{n_1} ... y_k^{n_k}
// with nonempty bases and adjacent bases distinct, plus every print that
// attains it. Dynamic program on (position, previous base); the previous
// base is always the suffix block ending at the position, so its length
// identifies it.
inline ShortestPrintResult shortest_general_print(const Word& w, int length_cap = 24) {
    detail::require_nonempty(w, "shortest_general_print");
    const int n = static_cast<int>(w.size());
    if (n > length_cap)
        throw budget_error("word length " + std::to_string(n) +
                           " exceeds the shortest-print search cap " + std::to_string(length_cap));
    auto s = w.symbols();
    constexpr int kInf = 1 << 20;

    // cost[i][p]: minimal print length of a factorization of w[i..n) whose
    // previous block base is w[i-p..i) (p = 0 before the first block).
    std::vector<std::vector<int>> cost(static_cast<std::size_t>(n) + 1,
                                       std::vector<int>(static_cast<std::size_t>(n) + 1, kInf));
    for (int p = 0; p <= n; ++p) cost[static_cast<std::size_t>(n)][static_cast<std::size_t>(p)] = 0;

    auto same_as_previous = [&](int i, int p, int d) {
        return d == p && std::equal(s.begin() + i, s.begin() + i + d, s.begin() + (i - p));
    };

    for (int i = n - 1; i >= 0; --i) {
        for (int p = 0; p <= i; ++p) {
            int best = kInf;
            for (int d = 1; i + d <= n; ++d) {
                if (same_as_previous(i, p, d)) continue;
                for (int j = i + d; j <= n; j += d) {
                    // w[i..j) = base^e holds here
                    const int sub = cost[static_cast<std::size_t>(j)][static_cast<std::size_t>(d)];
                    if (sub < kInf) best = std::min(best, d + sub);
                    if (j + d > n || !std::equal(s.begin() + i, s.begin() + i + d, s.begin() + j))
                        break;
                }
            }
            cost[static_cast<std::size_t>(i)][static_cast<std::size_t>(p)] = best;
        }
    }

    const int minimal = cost[0][0];
    std::set<Word> witnesses;
    std::vector<Symbol> acc;
    auto collect = [&](auto&& self, int i, int p) -> void {
        if (i == n) {
            witnesses.insert(Word(acc));
            return;
        }
        const int target = cost[static_cast<std::size_t>(i)][static_cast<std::size_t>(p)];
        for (int d = 1; i + d <= n; ++d) {
            if (same_as_previous(i, p, d)) continue;
            for (int j = i + d; j <= n; j += d) {
                const int sub = cost[static_cast<std::size_t>(j)][static_cast<std::size_t>(d)];
                if (sub < kInf && d + sub == target) {
                    acc.insert(acc.end(), s.begin() + i, s.begin() + i + d);
                    self(self, j, d);
                    acc.resize(acc.size() - static_cast<std::size_t>(d));
                }
                if (j + d > n || !std::equal(s.begin() + i, s.begin() + i + d, s.begin() + j))
                    break;
            }
        }
    };
    collect(collect, 0, 0);

    return {minimal, std::vector<Word>(witnesses.begin(), witnesses.end())};
}

} // namespace wordprint
