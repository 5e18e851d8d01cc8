#pragma once

// Text, CSV, and JSON renderings of the library's value types. All output is
// byte-deterministic given the same inputs: fixed column orders, fixed float
// formatting, sorted collections.

#include <cstdio>
#include <string>
#include <vector>

#include <json.hpp>

#include "wordprint/census.hpp"
#include "wordprint/morphisms.hpp"
#include "wordprint/parikh.hpp"
#include "wordprint/pnf.hpp"
#include "wordprint/rewriting.hpp"
#include "wordprint/words.hpp"

namespace wordprint::render {

using json = nlohmann::ordered_json;

inline std::string fixed(double value, int decimals) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", decimals, value);
    return buf;
}

// --- Parikh matrices --------------------------------------------------------

inline std::string matrix_text(const ParikhMatrix& m) {
    int width = 1;
    for (int i = 0; i < m.dimension(); ++i)
        for (int j = 0; j < m.dimension(); ++j)
            width = std::max(width, static_cast<int>(std::to_string(m.at(i, j)).size()));
    std::string out;
    for (int i = 0; i < m.dimension(); ++i) {
        for (int j = 0; j < m.dimension(); ++j) {
            std::string cell = std::to_string(m.at(i, j));
            if (j) out.push_back(' ');
            out.append(static_cast<std::size_t>(width) - cell.size(), ' ');
            out += cell;
        }
        out.push_back('\n');
    }
    return out;
}

inline json matrix_json(const ParikhMatrix& m) {
    json rows = json::array();
    for (int i = 0; i < m.dimension(); ++i) {
        json row = json::array();
        for (int j = 0; j < m.dimension(); ++j) row.push_back(m.at(i, j));
        rows.push_back(std::move(row));
    }
    return rows;
}

// --- Spectra -----------------------------------------------------------------

inline json spectrum_json(const Spectrum& spec, const Alphabet& sigma) {
    json out = json::object();
    for (std::size_t slot = 0; slot < spec.counts().size(); ++slot)
        out[spec.slot_word(slot).str(sigma)] = spec.counts()[slot];
    return out;
}

inline std::string spectrum_text(const Spectrum& spec, const Alphabet& sigma) {
    std::string out;
    for (std::size_t slot = 0; slot < spec.counts().size(); ++slot) {
        out += spec.slot_word(slot).str(sigma);
        out.push_back('\t');
        out += std::to_string(spec.counts()[slot]);
        out.push_back('\n');
    }
    return out;
}

// --- Power factorizations ----------------------------------------------------

// Parentheses and the caret exponent are omitted when the exponent is 1, and
// the parentheses alone when the base is a single letter: ab c^3 bc (abb)^2
// renders as "abc^3bc(abb)^2".
inline std::string factorization_text(const PowerFactorization& pf, const Alphabet& sigma) {
    std::string out;
    for (const auto& part : pf.parts()) {
        const std::string base = part.base.str(sigma);
        if (part.exponent == 1) {
            out += base;
        } else if (base.size() == 1) {
            out += base;
            out.push_back('^');
            out += std::to_string(part.exponent);
        } else {
            out.push_back('(');
            out += base;
            out += ")^";
            out += std::to_string(part.exponent);
        }
    }
    return out;
}

inline json factorization_json(const PowerFactorization& pf, const Alphabet& sigma) {
    json parts = json::array();
    for (const auto& part : pf.parts())
        parts.push_back({{"base", part.base.str(sigma)}, {"exp", part.exponent}});
    return parts;
}

// --- Core print traces ---------------------------------------------------------

inline std::string trace_text(const CorePrintTrace& trace, const Alphabet& sigma) {
    std::string out;
    for (std::size_t i = 0; i < trace.chain.size(); ++i) {
        out += "step " + std::to_string(i) + ": " + trace.chain[i].str(sigma) + "\n";
    }
    out += "steps: " + std::to_string(trace.steps()) + "\n";
    out += "core: " + trace.core().str(sigma) + "\n";
    return out;
}

inline json trace_json(const CorePrintTrace& trace, const Alphabet& sigma) {
    json chain = json::array();
    for (const auto& w : trace.chain) chain.push_back(w.str(sigma));
    return {{"side", side_name(trace.side)},
            {"chain", std::move(chain)},
            {"steps", trace.steps()},
            {"core", trace.core().str(sigma)}};
}

// --- Word collections ----------------------------------------------------------

inline std::string words_text(const std::vector<Word>& words, const Alphabet& sigma) {
    std::string out;
    for (const auto& w : words) {
        out += w.str(sigma);
        out.push_back('\n');
    }
    return out;
}

inline json words_json(const std::vector<Word>& words, const Alphabet& sigma) {
    json out = json::array();
    for (const auto& w : words) out.push_back(w.str(sigma));
    return out;
}

inline std::string pairs_text(const std::vector<std::pair<Word, Word>>& pairs,
                              const Alphabet& sigma) {
    std::string out;
    for (const auto& [a, b] : pairs) {
        out += a.str(sigma);
        out.push_back(' ');
        out += b.str(sigma);
        out.push_back('\n');
    }
    return out;
}

inline json pairs_json(const std::vector<std::pair<Word, Word>>& pairs, const Alphabet& sigma) {
    json out = json::array();
    for (const auto& [a, b] : pairs) out.push_back(json::array({a.str(sigma), b.str(sigma)}));
    return out;
}

// --- Tables ---------------------------------------------------------------------

inline std::string zeta_csv(const census::ZetaTable& table) {
    std::string out = "n,zeta,count,percent\n";
    for (const auto& row : table.rows) {
        out += std::to_string(row.n) + "," + std::to_string(row.zeta) + "," +
               std::to_string(row.count) + "," + fixed(row.percent, 2) + "\n";
    }
    if (table.truncated) out += "# truncated: " + table.cutoff_reason + "\n";
    return out;
}

inline json zeta_json(const census::ZetaTable& table) {
    json rows = json::array();
    for (const auto& row : table.rows)
        rows.push_back({{"n", row.n},
                        {"zeta", row.zeta},
                        {"count", row.count},
                        {"percent", fixed(row.percent, 2)}});
    return {{"alphabet_size", table.alphabet_size},
            {"rows", std::move(rows)},
            {"truncated", table.truncated},
            {"cutoff_reason", table.cutoff_reason}};
}

inline std::string unambiguity_csv(const census::UnambiguityTable& table) {
    std::string out = "k,sq,un,pr\n";
    for (const auto& row : table.rows) {
        out += std::to_string(row.k) + "," + std::to_string(row.sq) + "," +
               std::to_string(row.un) + "," + fixed(row.pr, 1) + "\n";
    }
    if (table.truncated) out += "# truncated: " + table.cutoff_reason + "\n";
    return out;
}

inline json unambiguity_json(const census::UnambiguityTable& table) {
    json rows = json::array();
    for (const auto& row : table.rows)
        rows.push_back(
            {{"k", row.k}, {"sq", row.sq}, {"un", row.un}, {"pr", fixed(row.pr, 1)}});
    return {{"rows", std::move(rows)},
            {"truncated", table.truncated},
            {"cutoff_reason", table.cutoff_reason}};
}

// --- Equivalence classes ----------------------------------------------------------

inline std::string classes_text(const std::vector<census::EquivClass>& classes,
                                const Alphabet& sigma) {
    std::string out;
    for (const auto& cls : classes) {
        out.push_back('{');
        for (std::size_t i = 0; i < cls.members.size(); ++i) {
            if (i) out += ", ";
            out += cls.members[i].str(sigma);
        }
        out += "}\n";
    }
    return out;
}

inline json classes_json(const std::vector<census::EquivClass>& classes, const Alphabet& sigma) {
    json out = json::array();
    for (const auto& cls : classes) {
        out.push_back({{"length", cls.members.front().size()},
                       {"members", words_json(cls.members, sigma)},
                       {"matrix", matrix_json(cls.matrix)}});
    }
    return out;
}

// --- Rewrite chains -----------------------------------------------------------------

inline json chain_json(const std::vector<rewriting::RewriteStep>& chain, const Alphabet& sigma) {
    json out = json::array();
    for (const auto& step : chain) {
        out.push_back({{"rule", step.rule == rewriting::Rule::e1 ? "E1" : "E2"},
                       {"window", json::array({step.begin, step.end})},
                       {"before", step.before.str(sigma)},
                       {"after", step.after.str(sigma)}});
    }
    return out;
}

inline std::string chain_text(const std::vector<rewriting::RewriteStep>& chain,
                              const Alphabet& sigma) {
    std::string out;
    for (const auto& step : chain) {
        out += step.rule == rewriting::Rule::e1 ? "E1" : "E2";
        out += " [" + std::to_string(step.begin) + "," + std::to_string(step.end) + "): ";
        out += step.before.str(sigma) + " -> " + step.after.str(sigma) + "\n";
    }
    return out;
}

// --- Insertion probe ------------------------------------------------------------------

inline std::string insertion_report_text(const census::InsertionProbeReport& report,
                                         const Alphabet& sigma) {
    std::string out;
    if (report.counterexamples.empty() && report.complete) {
        out = "no counterexample up to n=" + std::to_string(report.n_max) + "\n";
    } else {
        for (const auto& w : report.counterexamples) out += w.str(sigma) + "\n";
    }
    if (!report.complete)
        out += "# partial: completed n=" + std::to_string(report.last_completed_n) + " of " +
               std::to_string(report.n_max) + "\n";
    return out;
}

inline json insertion_report_json(const census::InsertionProbeReport& report,
                                  const Alphabet& sigma) {
    return {{"alphabet_size", report.alphabet_size},
            {"n_max", report.n_max},
            {"words_checked", report.words_checked},
            {"counterexamples", words_json(report.counterexamples, sigma)},
            {"complete", report.complete},
            {"last_completed_n", report.last_completed_n}};
}

// --- Morphism iteration -------------------------------------------------------------------

inline std::string iterate_text(const morphisms::IterateResult& result) {
    std::string out;
    for (const auto& rec : result.records) {
        out += "step " + std::to_string(rec.index) + ": length " +
               std::to_string(rec.first.size()) + ", square-free both: " +
               (rec.square_free_both ? "true" : "false") + ", equal 3-spectrum: " +
               (rec.equal_3_spectrum ? "true" : "false") + ", equal matrices all orderings: " +
               (rec.m_equivalent_all_orderings ? "true" : "false") + "\n";
    }
    if (result.length_cap_hit) out += "# stopped: next image length exceeds the cap\n";
    return out;
}

inline json iterate_json(const morphisms::IterateResult& result, const Alphabet& sigma) {
    json records = json::array();
    for (const auto& rec : result.records) {
        records.push_back({{"index", rec.index},
                           {"first", rec.first.str(sigma)},
                           {"second", rec.second.str(sigma)},
                           {"length", rec.first.size()},
                           {"square_free_both", rec.square_free_both},
                           {"equal_3_spectrum", rec.equal_3_spectrum},
                           {"m_equivalent_all_orderings", rec.m_equivalent_all_orderings}});
    }
    return {{"records", std::move(records)}, {"length_cap_hit", result.length_cap_hit}};
}

} // namespace wordprint::render
