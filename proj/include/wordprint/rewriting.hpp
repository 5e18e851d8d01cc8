#pragma once

// The two matrix-preserving rewriting rules over the ternary ordered alphabet
// a < b < c, and the equivalences they generate by closure search.
//
// Rule E1 swaps an adjacent ac / ca pair. Rule E2 exchanges the borders of a
// window "alpha b y b alpha" <-> "b alpha y alpha b" where alpha is a or c
// and the interior y uses only alpha and b.

#include <cstdint>
#include <deque>
#include <optional>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "wordprint/errors.hpp"
#include "wordprint/parikh.hpp"
#include "wordprint/words.hpp"

namespace wordprint::rewriting {

inline constexpr Symbol kA = 0, kB = 1, kC = 2;

inline void require_ternary(const Word& w) {
    if (w.max_symbol() >= 3)
        throw domain_error("rewriting rules are defined for the ternary alphabet a<b<c only");
}

enum class Rule { e1, e2 };

struct RewriteStep {
    Rule rule;
    std::size_t begin = 0, end = 0; // rewritten window [begin, end)
    Word before;
    Word after;
};

namespace detail {

template <typename Emit>
inline void for_each_e1(const Word& w, Emit&& emit) {
    for (std::size_t i = 0; i + 1 < w.size(); ++i) {
        const Symbol x = w[i], y = w[i + 1];
        if ((x == kA && y == kC) || (x == kC && y == kA)) {
            std::vector<Symbol> next(w.begin(), w.end());
            std::swap(next[i], next[i + 1]);
            emit(Word(std::move(next)), i, i + 2);
        }
    }
}

// Scans both orientations of the E2 window for alpha in {a, c}. The interior
// (everything strictly between the two border digrams) must stay within
// {alpha, b}; the border digrams themselves satisfy that automatically.
template <typename Emit>
inline void for_each_e2(const Word& w, Emit&& emit) {
    const std::size_t n = w.size();
    if (n < 4) return;
    std::vector<std::size_t> stretch(n + 1);
    for (const Symbol alpha : {kA, kC}) {
        // stretch[i]: first index >= i whose letter leaves {alpha, b}
        stretch[n] = n;
        for (std::size_t i = n; i-- > 0;)
            stretch[i] = (w[i] == alpha || w[i] == kB) ? stretch[i + 1] : i;
        for (std::size_t i = 0; i + 3 < n; ++i) {
            const bool fwd = w[i] == alpha && w[i + 1] == kB;  // alpha b ... b alpha
            const bool bwd = w[i] == kB && w[i + 1] == alpha;  // b alpha ... alpha b
            if (!fwd && !bwd) continue;
            const std::size_t jmax = std::min(n - 1, stretch[i + 1]);
            for (std::size_t j = i + 3; j <= jmax; ++j) {
                const bool match = fwd ? (w[j - 1] == kB && w[j] == alpha)
                                       : (w[j - 1] == alpha && w[j] == kB);
                if (!match) continue;
                std::vector<Symbol> next(w.begin(), w.end());
                std::swap(next[i], next[i + 1]);
                std::swap(next[j - 1], next[j]);
                emit(Word(std::move(next)), i, j + 1);
            }
        }
    }
}

} // namespace detail

// All words one E1 application away, deduplicated and sorted.
inline std::vector<Word> e1_neighbors(const Word& w) {
    require_ternary(w);
    std::vector<Word> out;
    detail::for_each_e1(w, [&](Word next, std::size_t, std::size_t) { out.push_back(std::move(next)); });
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

// All words one E2 application away (either direction), deduplicated, sorted.
inline std::vector<Word> e2_neighbors(const Word& w) {
    require_ternary(w);
    std::vector<Word> out;
    detail::for_each_e2(w, [&](Word next, std::size_t, std::size_t) { out.push_back(std::move(next)); });
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

inline constexpr std::size_t kDefaultClosureCap = 1'000'000;

// Breadth-first closure of w under E1 (and E2 when requested). Throws when
// the visited set would exceed the node cap.
inline std::unordered_set<Word, WordHash> closure(const Word& w, bool with_e2,
                                                  std::size_t node_cap = kDefaultClosureCap) {
    require_ternary(w);
    std::unordered_set<Word, WordHash> seen;
    std::deque<Word> frontier;
    seen.insert(w);
    frontier.push_back(w);
    auto visit = [&](Word next, std::size_t, std::size_t) {
        if (seen.contains(next)) return;
        if (seen.size() >= node_cap)
            throw budget_error("rewriting closure exceeded the node cap of " +
                               std::to_string(node_cap));
        frontier.push_back(next);
        seen.insert(std::move(next));
    };
    while (!frontier.empty()) {
        Word cur = std::move(frontier.front());
        frontier.pop_front();
        detail::for_each_e1(cur, visit);
        if (with_e2) detail::for_each_e2(cur, visit);
    }
    return seen;
}

namespace detail {

inline bool reachable(const Word& w, const Word& w2, bool with_e2, std::size_t node_cap) {
    require_ternary(w);
    require_ternary(w2);
    if (w == w2) return true;
    // Both rules preserve the Parikh matrix, so different matrices settle it.
    if (!m_equivalent(Alphabet::ternary(), w, w2)) return false;
    std::unordered_set<Word, WordHash> seen;
    std::deque<Word> frontier;
    seen.insert(w);
    frontier.push_back(w);
    bool found = false;
    auto visit = [&](Word next, std::size_t, std::size_t) {
        if (found || seen.contains(next)) return;
        if (next == w2) {
            found = true;
            return;
        }
        if (seen.size() >= node_cap)
            throw budget_error("rewriting closure exceeded the node cap of " +
                               std::to_string(node_cap));
        frontier.push_back(next);
        seen.insert(std::move(next));
    };
    while (!frontier.empty() && !found) {
        Word cur = std::move(frontier.front());
        frontier.pop_front();
        for_each_e1(cur, visit);
        if (with_e2) for_each_e2(cur, visit);
    }
    return found;
}

} // namespace detail

inline bool one_equivalent(const Word& w, const Word& w2,
                           std::size_t node_cap = kDefaultClosureCap) {
    return detail::reachable(w, w2, /*with_e2=*/false, node_cap);
}

inline bool me_equivalent(const Word& w, const Word& w2,
                          std::size_t node_cap = kDefaultClosureCap) {
    return detail::reachable(w, w2, /*with_e2=*/true, node_cap);
}

// A witnessing rewrite chain from w to w2, or nullopt when unreachable.
inline std::optional<std::vector<RewriteStep>> rewrite_chain(
    const Word& w, const Word& w2, bool with_e2, std::size_t node_cap = kDefaultClosureCap) {
    require_ternary(w);
    require_ternary(w2);
    if (w == w2) return std::vector<RewriteStep>{};
    if (!m_equivalent(Alphabet::ternary(), w, w2)) return std::nullopt;

    struct Origin {
        Word parent;
        Rule rule;
        std::size_t begin, end;
    };
    std::unordered_map<Word, Origin, WordHash> origin;
    std::deque<Word> frontier;
    origin.emplace(w, Origin{Word{}, Rule::e1, 0, 0});
    frontier.push_back(w);
    bool found = false;

    while (!frontier.empty() && !found) {
        Word cur = std::move(frontier.front());
        frontier.pop_front();
        auto visit = [&](Rule rule) {
            return [&, rule](Word next, std::size_t b, std::size_t e) {
                if (found || origin.contains(next)) return;
                if (origin.size() >= node_cap)
                    throw budget_error("rewriting closure exceeded the node cap of " +
                                       std::to_string(node_cap));
                origin.emplace(next, Origin{cur, rule, b, e});
                if (next == w2) {
                    found = true;
                    return;
                }
                frontier.push_back(std::move(next));
            };
        };
        detail::for_each_e1(cur, visit(Rule::e1));
        if (with_e2) detail::for_each_e2(cur, visit(Rule::e2));
    }
    if (!found) return std::nullopt;

    std::vector<RewriteStep> chain;
    Word cur = w2;
    while (cur != w) {
        const Origin& o = origin.at(cur);
        chain.push_back({o.rule, o.begin, o.end, o.parent, cur});
        cur = o.parent;
    }
    std::reverse(chain.begin(), chain.end());
    return chain;
}

} // namespace wordprint::rewriting
