#pragma once

// Exhaustive enumerations and searches: depth tables for iterated general
// prints, divergence of the two core prints, matrix-equivalence classes,
// the square-free class census, unambiguity tables, spectrum-pair and
// ME-pair hunts, and the letter-insertion probe.
//
// Enumerations partition their search space into lexicographically ordered
// prefix blocks; workers own disjoint blocks and results merge in block
// order, so output is a pure function of the parameters no matter how many
// threads run.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdint>
#include <map>
#include <mutex>
#include <string>
#include <thread>
#include <unordered_map>
#include <utility>
#include <vector>

#include "wordprint/errors.hpp"
#include "wordprint/parikh.hpp"
#include "wordprint/pnf.hpp"
#include "wordprint/rewriting.hpp"
#include "wordprint/words.hpp"

namespace wordprint::census {

// Node and wall-clock caps; zero means unlimited. Table builders stop at a
// row boundary and flag the cutoff; everything else reports an error.
struct Budget {
    std::uint64_t node_cap = 0;
    std::uint64_t wall_ms = 0;
};

namespace detail {

using wordprint::detail::PnfScratch;
using wordprint::detail::print_depth_right_raw;

class BudgetState {
public:
    explicit BudgetState(const Budget& b)
        : node_cap_(b.node_cap),
          deadline_(b.wall_ms ? std::chrono::steady_clock::now() + std::chrono::milliseconds(b.wall_ms)
                              : std::chrono::steady_clock::time_point::max()) {}

    // Charge n nodes; returns false once any cap is exhausted.
    bool charge(std::uint64_t n) {
        if (exhausted_.load(std::memory_order_relaxed)) return false;
        if (node_cap_ && nodes_.fetch_add(n, std::memory_order_relaxed) + n > node_cap_) {
            reason_ = "node budget exhausted";
            exhausted_.store(true, std::memory_order_relaxed);
            return false;
        }
        if (std::chrono::steady_clock::now() > deadline_) {
            reason_ = "wall-clock budget exhausted";
            exhausted_.store(true, std::memory_order_relaxed);
            return false;
        }
        return true;
    }

    bool exhausted() const { return exhausted_.load(std::memory_order_relaxed); }
    const std::string& reason() const { return reason_; }

private:
    std::uint64_t node_cap_;
    std::chrono::steady_clock::time_point deadline_;
    std::atomic<std::uint64_t> nodes_{0};
    std::atomic<bool> exhausted_{false};
    std::string reason_;
};

template <typename Fn>
inline void run_jobs(std::size_t job_count, int threads, Fn&& fn) {
    const std::size_t workers =
        std::min<std::size_t>(static_cast<std::size_t>(std::max(1, threads)), job_count);
    if (workers <= 1) {
        for (std::size_t i = 0; i < job_count; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::atomic<bool> stop{false};
    std::mutex err_mutex;
    std::exception_ptr first_error;
    auto worker = [&] {
        while (!stop.load(std::memory_order_relaxed)) {
            const std::size_t i = next.fetch_add(1, std::memory_order_relaxed);
            if (i >= job_count) return;
            try {
                fn(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(err_mutex);
                if (!first_error) first_error = std::current_exception();
                stop.store(true, std::memory_order_relaxed);
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t t = 0; t < workers; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
    if (first_error) std::rethrow_exception(first_error);
}

inline std::uint64_t pow_u64(std::uint64_t base, int exp) {
    std::uint64_t out = 1;
    for (int i = 0; i < exp; ++i) out = checked_mul(out, base);
    return out;
}

// Number of injective letter renamings of a word using k distinct letters
// into an r-letter alphabet: r * (r-1) * ... * (r-k+1).
inline std::uint64_t orbit_size(int r, int k) {
    std::uint64_t out = 1;
    for (int i = 0; i < k; ++i) out *= static_cast<std::uint64_t>(r - i);
    return out;
}

// Canonical words: the first occurrences of the distinct letters appear in
// alphabet order, so each letter-renaming orbit has exactly one member.
// visitor(buf, used) with used = number of distinct letters.
template <typename Visitor>
inline void complete_canonical(Symbol* buf, int pos, int n, int used, int r, Visitor&& v) {
    if (pos == n) {
        v(buf, used);
        return;
    }
    const int limit = std::min(used, r - 1);
    for (int s = 0; s <= limit; ++s) {
        buf[pos] = static_cast<Symbol>(s);
        complete_canonical(buf, pos + 1, n, std::max(used, s + 1), r, v);
    }
}

struct CanonicalPrefix {
    std::vector<Symbol> prefix;
    int used;
};

inline std::vector<CanonicalPrefix> canonical_prefixes(int r, int len) {
    std::vector<CanonicalPrefix> out;
    std::vector<Symbol> buf(static_cast<std::size_t>(len));
    complete_canonical(buf.data(), 0, len, 0, r,
                       [&](const Symbol* b, int used) { out.push_back({{b, b + len}, used}); });
    return out;
}

// All injective renamings of a canonical word (k distinct letters, alphabet
// size r), emitted as full words.
inline void expand_orbit(const Word& canonical, int k, int r, std::vector<Word>& out) {
    std::vector<Symbol> image(static_cast<std::size_t>(k));
    std::vector<bool> taken(static_cast<std::size_t>(r), false);
    auto rec = [&](auto&& self, int i) -> void {
        if (i == k) {
            std::vector<Symbol> renamed;
            renamed.reserve(canonical.size());
            for (Symbol s : canonical) renamed.push_back(image[s]);
            out.push_back(Word(std::move(renamed)));
            return;
        }
        for (int g = 0; g < r; ++g) {
            if (taken[static_cast<std::size_t>(g)]) continue;
            taken[static_cast<std::size_t>(g)] = true;
            image[static_cast<std::size_t>(i)] = static_cast<Symbol>(g);
            self(self, i + 1);
            taken[static_cast<std::size_t>(g)] = false;
        }
    };
    rec(rec, 0);
}

// True when buf[0..len) has no square ending at its last position.
inline bool no_new_square(const Symbol* buf, int len) {
    for (int e = 1; 2 * e <= len; ++e)
        if (std::equal(buf + len - e, buf + len, buf + len - 2 * e)) return false;
    return true;
}

template <typename Visitor>
inline void square_free_dfs(Symbol* buf, int pos, int n, int r, Visitor&& v) {
    if (pos == n) {
        v(buf);
        return;
    }
    for (int s = 0; s < r; ++s) {
        buf[pos] = static_cast<Symbol>(s);
        if (no_new_square(buf, pos + 1)) square_free_dfs(buf, pos + 1, n, r, v);
    }
}

inline std::vector<std::vector<Symbol>> square_free_prefixes(int r, int len) {
    std::vector<std::vector<Symbol>> out;
    std::vector<Symbol> buf(static_cast<std::size_t>(len));
    square_free_dfs(buf.data(), 0, len, r, [&](const Symbol* b) { out.emplace_back(b, b + len); });
    return out;
}

// Ternary Parikh matrix of a word of length <= 60, packed exactly into one
// 64-bit key (no lossy hashing: the packing is injective at these lengths).
struct TernaryCounts {
    std::uint64_t a = 0, b = 0, c = 0, ab = 0, bc = 0, abc = 0;

    void push(Symbol x) {
        if (x == 0) ++a;
        else if (x == 1) { ab += a; ++b; }
        else { abc += ab; bc += b; ++c; }
    }

    std::uint64_t packed() const {
        return a | (b << 6) | (c << 12) | (ab << 18) | (bc << 29) | (abc << 40);
    }
};

// Fixpoint of the iterated right general print; the result lands in s.buf_a.
inline const std::vector<Symbol>& core_right_raw(const Symbol* w, int n, PnfScratch& s) {
    wordprint::detail::print_depth_right_raw(w, n, s);
    return s.buf_a;
}

} // namespace detail

// ---------------------------------------------------------------------------
// Square-free word enumeration
// ---------------------------------------------------------------------------

// Visits every square-free word of the given length in lexicographic order.
template <typename Visitor>
inline void square_free_words(const Alphabet& sigma, int n, Visitor&& visit) {
    if (n < 0) throw domain_error("word length must be nonnegative");
    if (n == 0) {
        visit(Word{});
        return;
    }
    std::vector<Symbol> buf(static_cast<std::size_t>(n));
    detail::square_free_dfs(buf.data(), 0, n, sigma.size(),
                            [&](const Symbol* b) { visit(Word(std::vector<Symbol>(b, b + n))); });
}

inline std::vector<Word> square_free_words_list(const Alphabet& sigma, int n) {
    std::vector<Word> out;
    square_free_words(sigma, n, [&](Word w) { out.push_back(std::move(w)); });
    return out;
}

inline std::uint64_t square_free_count(const Alphabet& sigma, int n) {
    std::uint64_t count = 0;
    if (n == 0) return 1;
    std::vector<Symbol> buf(static_cast<std::size_t>(n));
    detail::square_free_dfs(buf.data(), 0, n, sigma.size(), [&](const Symbol*) { ++count; });
    return count;
}

// ---------------------------------------------------------------------------
// Depth tables and witnesses for the iterated right general print
// ---------------------------------------------------------------------------

struct ZetaRow {
    int n = 0;
    int zeta = 0;
    std::uint64_t count = 0; // words of length n attaining the maximum depth
    double percent = 0.0;    // 100 * count / r^n
};

struct ZetaTable {
    int alphabet_size = 0;
    std::vector<ZetaRow> rows;
    bool truncated = false;
    std::string cutoff_reason;
};

namespace detail {

inline constexpr int kMaxDepthSlots = 64;

// Depth histogram over all r^n words of length n, via canonical
// representatives weighted by their renaming-orbit size.
inline bool zeta_row_reduced(int r, int n, int threads, BudgetState& budget,
                             std::array<std::uint64_t, kMaxDepthSlots>& out) {
    out.fill(0);
    const int prefix_len = std::min(n, r == 2 ? 11 : 7);
    auto prefixes = canonical_prefixes(r, prefix_len);
    std::vector<std::array<std::uint64_t, kMaxDepthSlots>> per_job(prefixes.size());
    run_jobs(prefixes.size(), threads, [&](std::size_t job) {
        auto& counts = per_job[job];
        counts.fill(0);
        std::vector<Symbol> buf(static_cast<std::size_t>(n));
        std::copy(prefixes[job].prefix.begin(), prefixes[job].prefix.end(), buf.begin());
        PnfScratch scratch;
        std::uint64_t pending = 0;
        bool stop = false;
        complete_canonical(buf.data(), prefix_len, n, prefixes[job].used, r,
                           [&](const Symbol* w, int used) {
                               if (stop) return;
                               if (++pending >= 1024) {
                                   if (!budget.charge(pending)) { stop = true; return; }
                                   pending = 0;
                               }
                               const int depth = print_depth_right_raw(w, n, scratch);
                               counts[static_cast<std::size_t>(depth)] += orbit_size(r, used);
                           });
        if (!stop && pending) budget.charge(pending);
    });
    if (budget.exhausted()) return false;
    for (const auto& counts : per_job)
        for (int d = 0; d < kMaxDepthSlots; ++d) out[static_cast<std::size_t>(d)] += counts[static_cast<std::size_t>(d)];
    return true;
}

// Unreduced variant enumerating every word; the cross-check for the
// symmetry-reduced path.
inline bool zeta_row_full(int r, int n, int threads, BudgetState& budget,
                          std::array<std::uint64_t, kMaxDepthSlots>& out) {
    out.fill(0);
    const int prefix_len = std::min(n, r == 2 ? 11 : 7);
    const std::uint64_t job_count = pow_u64(static_cast<std::uint64_t>(r), prefix_len);
    std::vector<std::array<std::uint64_t, kMaxDepthSlots>> per_job(job_count);
    run_jobs(job_count, threads, [&](std::size_t job) {
        auto& counts = per_job[job];
        counts.fill(0);
        std::vector<Symbol> buf(static_cast<std::size_t>(n));
        std::uint64_t rem = job;
        for (int i = prefix_len - 1; i >= 0; --i) {
            buf[static_cast<std::size_t>(i)] = static_cast<Symbol>(rem % static_cast<std::uint64_t>(r));
            rem /= static_cast<std::uint64_t>(r);
        }
        PnfScratch scratch;
        std::uint64_t pending = 0;
        bool stop = false;
        auto rec = [&](auto&& self, int pos) -> void {
            if (stop) return;
            if (pos == n) {
                if (++pending >= 1024) {
                    if (!budget.charge(pending)) { stop = true; return; }
                    pending = 0;
                }
                ++counts[static_cast<std::size_t>(print_depth_right_raw(buf.data(), n, scratch))];
                return;
            }
            for (int s = 0; s < r; ++s) {
                buf[static_cast<std::size_t>(pos)] = static_cast<Symbol>(s);
                self(self, pos + 1);
            }
        };
        rec(rec, prefix_len);
        if (!stop && pending) budget.charge(pending);
    });
    if (budget.exhausted()) return false;
    for (const auto& counts : per_job)
        for (int d = 0; d < kMaxDepthSlots; ++d) out[static_cast<std::size_t>(d)] += counts[static_cast<std::size_t>(d)];
    return true;
}

} // namespace detail

// Per-length maxima of the right-print reduction depth, with the count and
// percentage of words attaining them. Symmetry reduction enumerates one word
// per letter-renaming orbit; the unreduced path exists as its cross-check.
inline ZetaTable zeta_table(int r, int n_max, Budget budget = {}, int threads = 1,
                            bool symmetry_reduction = true) {
    if (r < 2) throw domain_error("depth tables need an alphabet of size at least 2");
    if (n_max < 1) throw domain_error("table length must be at least 1");
    ZetaTable table;
    table.alphabet_size = r;
    detail::BudgetState state(budget);
    for (int n = 1; n <= n_max; ++n) {
        std::array<std::uint64_t, detail::kMaxDepthSlots> counts{};
        const bool done = symmetry_reduction
                              ? detail::zeta_row_reduced(r, n, threads, state, counts)
                              : detail::zeta_row_full(r, n, threads, state, counts);
        if (!done) {
            table.truncated = true;
            table.cutoff_reason = state.reason() + " before completing n=" + std::to_string(n);
            break;
        }
        int zeta = 0;
        for (int d = 0; d < detail::kMaxDepthSlots; ++d)
            if (counts[static_cast<std::size_t>(d)]) zeta = d;
        const std::uint64_t total = detail::pow_u64(static_cast<std::uint64_t>(r), n);
        ZetaRow row;
        row.n = n;
        row.zeta = zeta;
        row.count = counts[static_cast<std::size_t>(zeta)];
        row.percent = 100.0 * static_cast<double>(row.count) / static_cast<double>(total);
        table.rows.push_back(row);
    }
    return table;
}

// All words of length n attaining the maximal reduction depth, ascending.
inline std::vector<Word> max_depth_witnesses(int r, int n, Budget budget = {}, int threads = 1) {
    if (r < 2) throw domain_error("depth witnesses need an alphabet of size at least 2");
    if (n < 1) throw domain_error("word length must be at least 1");
    detail::BudgetState state(budget);
    const int prefix_len = std::min(n, r == 2 ? 11 : 7);
    auto prefixes = detail::canonical_prefixes(r, prefix_len);

    struct JobResult {
        int best = -1;
        std::vector<std::pair<Word, int>> witnesses; // canonical word, distinct letters
    };
    std::vector<JobResult> results(prefixes.size());
    detail::run_jobs(prefixes.size(), threads, [&](std::size_t job) {
        auto& res = results[job];
        std::vector<Symbol> buf(static_cast<std::size_t>(n));
        std::copy(prefixes[job].prefix.begin(), prefixes[job].prefix.end(), buf.begin());
        detail::PnfScratch scratch;
        std::uint64_t pending = 0;
        bool stop = false;
        detail::complete_canonical(
            buf.data(), prefix_len, n, prefixes[job].used, r, [&](const Symbol* w, int used) {
                if (stop) return;
                if (++pending >= 1024) {
                    if (!state.charge(pending)) { stop = true; return; }
                    pending = 0;
                }
                const int depth = detail::print_depth_right_raw(w, n, scratch);
                if (depth > res.best) {
                    res.best = depth;
                    res.witnesses.clear();
                }
                if (depth == res.best)
                    res.witnesses.emplace_back(Word(std::vector<Symbol>(w, w + n)), used);
            });
        if (!stop && pending) state.charge(pending);
    });
    if (state.exhausted()) throw budget_error("max_depth_witnesses: " + state.reason());

    int best = -1;
    for (const auto& res : results) best = std::max(best, res.best);
    std::vector<Word> out;
    for (const auto& res : results) {
        if (res.best != best) continue;
        for (const auto& [w, used] : res.witnesses) detail::expand_orbit(w, used, r, out);
    }
    std::sort(out.begin(), out.end());
    return out;
}

// ---------------------------------------------------------------------------
// Core print divergence
// ---------------------------------------------------------------------------

// All length-n words whose right and left core prints differ, ascending.
inline std::vector<Word> core_print_divergence(const Alphabet& sigma, int n, Budget budget = {},
                                               int threads = 1) {
    if (n < 1) throw domain_error("word length must be at least 1");
    const int r = sigma.size();
    detail::BudgetState state(budget);
    const int prefix_len = std::min(n, r == 2 ? 10 : 6);
    const std::uint64_t job_count = detail::pow_u64(static_cast<std::uint64_t>(r), prefix_len);
    std::vector<std::vector<Word>> per_job(job_count);
    detail::run_jobs(job_count, threads, [&](std::size_t job) {
        std::vector<Symbol> buf(static_cast<std::size_t>(n));
        std::uint64_t rem = job;
        for (int i = prefix_len - 1; i >= 0; --i) {
            buf[static_cast<std::size_t>(i)] = static_cast<Symbol>(rem % static_cast<std::uint64_t>(r));
            rem /= static_cast<std::uint64_t>(r);
        }
        detail::PnfScratch right_scratch, left_scratch;
        std::vector<Symbol> rev(static_cast<std::size_t>(n));
        std::uint64_t pending = 0;
        bool stop = false;
        auto rec = [&](auto&& self, int pos) -> void {
            if (stop) return;
            if (pos == n) {
                if (++pending >= 1024) {
                    if (!state.charge(pending)) { stop = true; return; }
                    pending = 0;
                }
                const auto& core_r = detail::core_right_raw(buf.data(), n, right_scratch);
                // left core of w = reversal of the right core of the reversal
                std::reverse_copy(buf.begin(), buf.end(), rev.begin());
                const auto& core_l_rev = detail::core_right_raw(rev.data(), n, left_scratch);
                const bool diverges = core_r.size() != core_l_rev.size() ||
                                      !std::equal(core_r.begin(), core_r.end(), core_l_rev.rbegin());
                if (diverges) per_job[job].push_back(Word(std::vector<Symbol>(buf.begin(), buf.end())));
                return;
            }
            for (int s = 0; s < r; ++s) {
                buf[static_cast<std::size_t>(pos)] = static_cast<Symbol>(s);
                self(self, pos + 1);
            }
        };
        rec(rec, prefix_len);
        if (!stop && pending) state.charge(pending);
    });
    if (state.exhausted()) throw budget_error("core_print_divergence: " + state.reason());
    std::vector<Word> out;
    for (auto& part : per_job)
        out.insert(out.end(), std::make_move_iterator(part.begin()), std::make_move_iterator(part.end()));
    std::sort(out.begin(), out.end());
    return out;
}

// ---------------------------------------------------------------------------
// Matrix-equivalence classes
// ---------------------------------------------------------------------------

struct EquivClass {
    ParikhMatrix matrix;
    std::vector<Word> members; // ascending

    friend bool operator==(const EquivClass&, const EquivClass&) = default;
};

inline std::uint64_t anagram_count(const Word& w, int r) {
    std::vector<std::uint64_t> letter_counts(static_cast<std::size_t>(r), 0);
    for (Symbol s : w) ++letter_counts[s];
    std::uint64_t out = 1, placed = 0;
    for (std::uint64_t c : letter_counts)
        for (std::uint64_t i = 1; i <= c; ++i) out = checked_mul(out, ++placed) / i;
    return out;
}

// The full matrix-equivalence class of w: every rearrangement of its letters
// sharing its Parikh matrix, in ascending order.
inline EquivClass m_class(const Alphabet& sigma, const Word& w, std::size_t length_cap = 16) {
    require_over(sigma, w);
    if (w.size() > length_cap)
        throw budget_error("word length " + std::to_string(w.size()) +
                           " exceeds the class-enumeration cap " + std::to_string(length_cap) +
                           " (anagram bound " + std::to_string(anagram_count(w, sigma.size())) + ")");
    const ParikhMatrix target = parikh_matrix(sigma, w);
    std::vector<Symbol> perm(w.begin(), w.end());
    std::sort(perm.begin(), perm.end());
    EquivClass out{target, {}};
    do {
        Word candidate{std::vector<Symbol>(perm)};
        if (parikh_matrix(sigma, candidate) == target) out.members.push_back(std::move(candidate));
    } while (std::next_permutation(perm.begin(), perm.end()));
    return out;
}

// Every matrix-equivalence class of ternary words up to max_len whose members
// are all square-free, ordered by (length, least member).
inline std::vector<EquivClass> square_free_class_census(int max_len, int threads = 1) {
    if (max_len < 7)
        throw domain_error("the square-free class census needs max_len >= 7");
    const Alphabet& sigma = Alphabet::ternary();
    std::vector<EquivClass> out;
    for (int len = 1; len <= max_len; ++len) {
        // group the square-free words of this length by their matrix
        std::map<std::uint64_t, std::vector<Word>> groups;
        square_free_words(sigma, len, [&](Word w) {
            detail::TernaryCounts counts;
            for (Symbol s : w) counts.push(s);
            groups[counts.packed()].push_back(std::move(w));
        });
        std::vector<const std::vector<Word>*> group_list;
        group_list.reserve(groups.size());
        for (const auto& [key, members] : groups) group_list.push_back(&members);

        std::vector<char> qualified(group_list.size(), 0);
        std::vector<EquivClass> classes(group_list.size(), EquivClass{ParikhMatrix(4), {}});
        detail::run_jobs(group_list.size(), threads, [&](std::size_t i) {
            EquivClass cls = m_class(sigma, group_list[i]->front(), static_cast<std::size_t>(max_len));
            bool all_square_free = true;
            for (const Word& member : cls.members)
                if (!is_square_free(member)) {
                    all_square_free = false;
                    break;
                }
            if (all_square_free) {
                qualified[i] = 1;
                classes[i] = std::move(cls);
            }
        });
        std::vector<EquivClass> this_len;
        for (std::size_t i = 0; i < group_list.size(); ++i)
            if (qualified[i]) this_len.push_back(std::move(classes[i]));
        std::sort(this_len.begin(), this_len.end(),
                  [](const EquivClass& a, const EquivClass& b) { return a.members.front() < b.members.front(); });
        for (auto& cls : this_len) out.push_back(std::move(cls));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Unambiguity table
// ---------------------------------------------------------------------------

struct UnambiguityRow {
    int k = 0;
    std::uint64_t sq = 0; // square-free ternary words of length k
    std::uint64_t un = 0; // those matrix-equivalent to no other square-free word
    double pr = 0.0;      // 100 * un / sq
};

struct UnambiguityTable {
    std::vector<UnambiguityRow> rows;
    bool truncated = false;
    std::string cutoff_reason;
};

inline UnambiguityTable unambiguity_table(int k_max, Budget budget = {}, int threads = 1) {
    if (k_max < 1) throw domain_error("table length must be at least 1");
    if (k_max > 60) throw domain_error("unambiguity table supports lengths up to 60");
    UnambiguityTable table;
    detail::BudgetState state(budget);
    for (int k = 1; k <= k_max; ++k) {
        const int prefix_len = std::min(k, 8);
        auto prefixes = detail::square_free_prefixes(3, prefix_len);
        std::vector<std::unordered_map<std::uint64_t, std::uint64_t>> per_job(prefixes.size());
        detail::run_jobs(prefixes.size(), threads, [&](std::size_t job) {
            auto& local = per_job[job];
            std::vector<Symbol> buf(static_cast<std::size_t>(k));
            std::copy(prefixes[job].begin(), prefixes[job].end(), buf.begin());
            std::vector<detail::TernaryCounts> stack(static_cast<std::size_t>(k) + 1);
            for (int i = 0; i < prefix_len; ++i) {
                stack[static_cast<std::size_t>(i) + 1] = stack[static_cast<std::size_t>(i)];
                stack[static_cast<std::size_t>(i) + 1].push(buf[static_cast<std::size_t>(i)]);
            }
            std::uint64_t pending = 0;
            bool stop = false;
            auto rec = [&](auto&& self, int pos) -> void {
                if (stop) return;
                if (pos == k) {
                    if (++pending >= 1024) {
                        if (!state.charge(pending)) { stop = true; return; }
                        pending = 0;
                    }
                    ++local[stack[static_cast<std::size_t>(k)].packed()];
                    return;
                }
                for (int s = 0; s < 3; ++s) {
                    buf[static_cast<std::size_t>(pos)] = static_cast<Symbol>(s);
                    if (!detail::no_new_square(buf.data(), pos + 1)) continue;
                    stack[static_cast<std::size_t>(pos) + 1] = stack[static_cast<std::size_t>(pos)];
                    stack[static_cast<std::size_t>(pos) + 1].push(static_cast<Symbol>(s));
                    self(self, pos + 1);
                }
            };
            rec(rec, prefix_len);
            if (!stop && pending) state.charge(pending);
        });
        if (state.exhausted()) {
            table.truncated = true;
            table.cutoff_reason = state.reason() + " before completing k=" + std::to_string(k);
            break;
        }
        std::unordered_map<std::uint64_t, std::uint64_t> merged;
        for (const auto& local : per_job)
            for (const auto& [key, c] : local) merged[key] += c;
        UnambiguityRow row;
        row.k = k;
        for (const auto& [key, c] : merged) {
            row.sq += c;
            if (c == 1) ++row.un;
        }
        row.pr = 100.0 * static_cast<double>(row.un) / static_cast<double>(row.sq);
        table.rows.push_back(row);
    }
    return table;
}

// ---------------------------------------------------------------------------
// Spectrum pairs and ME pairs
// ---------------------------------------------------------------------------

namespace detail {

struct SpectrumKeyHash {
    std::size_t operator()(const std::vector<std::uint64_t>& v) const {
        std::uint64_t h = 1469598103934665603ull;
        for (std::uint64_t x : v) {
            h ^= x;
            h *= 1099511628211ull;
        }
        return static_cast<std::size_t>(h);
    }
};

} // namespace detail

// All unordered pairs of distinct square-free ternary length-n words sharing
// a k-spectrum, sorted.
inline std::vector<std::pair<Word, Word>> equal_spectrum_pairs(int n, int k, Budget budget = {},
                                                               int threads = 1) {
    if (n < 1) throw domain_error("word length must be at least 1");
    if (k < 1) throw domain_error("spectrum order must be at least 1");
    const Alphabet& sigma = Alphabet::ternary();
    detail::BudgetState state(budget);
    const int prefix_len = std::min(n, 8);
    auto prefixes = detail::square_free_prefixes(3, prefix_len);
    using Groups = std::unordered_map<std::vector<std::uint64_t>, std::vector<Word>,
                                      detail::SpectrumKeyHash>;
    std::vector<Groups> per_job(prefixes.size());
    detail::run_jobs(prefixes.size(), threads, [&](std::size_t job) {
        std::vector<Symbol> buf(static_cast<std::size_t>(n));
        std::copy(prefixes[job].begin(), prefixes[job].end(), buf.begin());
        std::uint64_t pending = 0;
        bool stop = false;
        auto rec = [&](auto&& self, int pos) -> void {
            if (stop) return;
            if (pos == n) {
                if (++pending >= 256) {
                    if (!state.charge(pending)) { stop = true; return; }
                    pending = 0;
                }
                Word w{std::vector<Symbol>(buf.begin(), buf.end())};
                per_job[job][k_spectrum(sigma, w, k).counts()].push_back(std::move(w));
                return;
            }
            for (int s = 0; s < 3; ++s) {
                buf[static_cast<std::size_t>(pos)] = static_cast<Symbol>(s);
                if (detail::no_new_square(buf.data(), pos + 1)) self(self, pos + 1);
            }
        };
        rec(rec, prefix_len);
        if (!stop && pending) state.charge(pending);
    });
    if (state.exhausted()) throw budget_error("equal_spectrum_pairs: " + state.reason());

    Groups merged;
    for (auto& local : per_job)
        for (auto& [key, words] : local) {
            auto& dst = merged[key];
            dst.insert(dst.end(), std::make_move_iterator(words.begin()),
                       std::make_move_iterator(words.end()));
        }
    std::vector<std::pair<Word, Word>> out;
    for (auto& [key, words] : merged) {
        if (words.size() < 2) continue;
        std::sort(words.begin(), words.end());
        for (std::size_t i = 0; i < words.size(); ++i)
            for (std::size_t j = i + 1; j < words.size(); ++j)
                out.emplace_back(words[i], words[j]);
    }
    std::sort(out.begin(), out.end());
    return out;
}

namespace detail {

// Partition indices of `members` into reachability classes under the chosen
// rule set; class ids follow first appearance.
inline std::vector<int> reachability_classes(const std::vector<Word>& members, bool with_e2,
                                             std::size_t closure_cap) {
    std::vector<int> cls(members.size(), -1);
    int next_id = 0;
    for (std::size_t i = 0; i < members.size(); ++i) {
        if (cls[i] >= 0) continue;
        auto reach = rewriting::closure(members[i], with_e2, closure_cap);
        cls[i] = next_id;
        for (std::size_t j = i + 1; j < members.size(); ++j)
            if (cls[j] < 0 && reach.contains(members[j])) cls[j] = next_id;
        ++next_id;
    }
    return cls;
}

} // namespace detail

// All unordered pairs of distinct square-free ternary length-n words that are
// ME-equivalent but not joined by E1 alone, sorted. (Pairs reachable by E1
// by itself exist at nearly every length — {ac, ca} already — so the ones of
// interest are those that genuinely need E2.) Words are grouped by matrix
// first; each group is partitioned into reachability classes by closure
// search under both rule sets.
inline std::vector<std::pair<Word, Word>> me_square_free_pairs(
    int n, std::size_t closure_cap = rewriting::kDefaultClosureCap, int threads = 1) {
    if (n < 1) throw domain_error("word length must be at least 1");
    const Alphabet& sigma = Alphabet::ternary();
    std::map<std::uint64_t, std::vector<Word>> groups;
    square_free_words(sigma, n, [&](Word w) {
        detail::TernaryCounts counts;
        for (Symbol s : w) counts.push(s);
        groups[counts.packed()].push_back(std::move(w));
    });
    std::vector<const std::vector<Word>*> multi;
    for (const auto& [key, members] : groups)
        if (members.size() >= 2) multi.push_back(&members);

    std::vector<std::vector<std::pair<Word, Word>>> per_group(multi.size());
    detail::run_jobs(multi.size(), threads, [&](std::size_t gi) {
        const auto& members = *multi[gi];
        const auto me_cls = detail::reachability_classes(members, /*with_e2=*/true, closure_cap);
        const auto one_cls = detail::reachability_classes(members, /*with_e2=*/false, closure_cap);
        for (std::size_t a = 0; a < members.size(); ++a)
            for (std::size_t b = a + 1; b < members.size(); ++b)
                if (me_cls[a] == me_cls[b] && one_cls[a] != one_cls[b])
                    per_group[gi].emplace_back(members[a], members[b]);
    });
    std::vector<std::pair<Word, Word>> out;
    for (auto& part : per_group)
        out.insert(out.end(), std::make_move_iterator(part.begin()), std::make_move_iterator(part.end()));
    std::sort(out.begin(), out.end());
    return out;
}

// ---------------------------------------------------------------------------
// Insertion probe
// ---------------------------------------------------------------------------

struct InsertionProbeReport {
    int alphabet_size = 0;
    int n_max = 0;
    std::uint64_t words_checked = 0;          // counts all words, not orbit reps
    std::vector<Word> counterexamples;        // words no insertion can keep as deep
    bool complete = false;
    int last_completed_n = 0;
};

// For every word up to n_max, checks that inserting some single letter
// somewhere does not lower the reduction depth. A counterexample is a word
// where every insertion strictly lowers it.
inline InsertionProbeReport insertion_probe(int r, int n_max, Budget budget = {}, int threads = 1) {
    if (r < 2) throw domain_error("insertion probe needs an alphabet of size at least 2");
    if (n_max < 1) throw domain_error("probe length must be at least 1");
    InsertionProbeReport report;
    report.alphabet_size = r;
    report.n_max = n_max;
    detail::BudgetState state(budget);
    std::atomic<std::uint64_t> checked{0};

    for (int n = 1; n <= n_max; ++n) {
        const int prefix_len = std::min(n, r == 2 ? 11 : 7);
        auto prefixes = detail::canonical_prefixes(r, prefix_len);
        std::vector<std::vector<std::pair<Word, int>>> per_job(prefixes.size());
        detail::run_jobs(prefixes.size(), threads, [&](std::size_t job) {
            std::vector<Symbol> buf(static_cast<std::size_t>(n));
            std::copy(prefixes[job].prefix.begin(), prefixes[job].prefix.end(), buf.begin());
            detail::PnfScratch scratch;
            std::vector<Symbol> extended(static_cast<std::size_t>(n) + 1);
            std::uint64_t pending = 0;
            bool stop = false;
            detail::complete_canonical(
                buf.data(), prefix_len, n, prefixes[job].used, r, [&](const Symbol* w, int used) {
                    if (stop) return;
                    if (++pending >= 256) {
                        if (!state.charge(pending)) { stop = true; return; }
                        pending = 0;
                    }
                    checked.fetch_add(detail::orbit_size(r, used), std::memory_order_relaxed);
                    const int base = detail::print_depth_right_raw(w, n, scratch);
                    bool ok = false;
                    for (int pos = 0; pos <= n && !ok; ++pos) {
                        std::copy(w, w + pos, extended.begin());
                        std::copy(w + pos, w + n, extended.begin() + pos + 1);
                        for (int letter = 0; letter < r && !ok; ++letter) {
                            extended[static_cast<std::size_t>(pos)] = static_cast<Symbol>(letter);
                            if (detail::print_depth_right_raw(extended.data(), n + 1, scratch) >= base)
                                ok = true;
                        }
                    }
                    if (!ok)
                        per_job[job].emplace_back(Word(std::vector<Symbol>(w, w + n)), used);
                });
            if (!stop && pending) state.charge(pending);
        });
        if (state.exhausted()) {
            report.complete = false;
            report.last_completed_n = n - 1;
            report.words_checked = checked.load();
            return report;
        }
        for (const auto& part : per_job)
            for (const auto& [w, used] : part)
                detail::expand_orbit(w, used, r, report.counterexamples);
        report.last_completed_n = n;
    }
    std::sort(report.counterexamples.begin(), report.counterexamples.end());
    report.complete = true;
    report.words_checked = checked.load();
    return report;
}

} // namespace wordprint::census
