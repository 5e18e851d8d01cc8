// Command-line front end: one subcommand per library operation, with
// text/csv/json output, optional result caching for the heavy table
// commands, and explicit budget/cap flags.
//
// Exit codes: 0 success, 2 usage error, 3 domain error (bad words, bad
// preconditions, counter overflow), 4 budget or cap exhausted.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "wordprint/wordprint.hpp"

namespace wp = wordprint;
using wp::render::json;

namespace {

enum class Format { text, csv, jsonfmt };

struct GlobalOptions {
    std::string alphabet = "abc";
    std::string format = "text";
    int threads = 1;
    std::string cache_dir;
    std::uint64_t node_budget = 0;
    std::uint64_t time_budget_ms = 0;

    Format fmt() const {
        if (format == "text") return Format::text;
        if (format == "csv") return Format::csv;
        if (format == "json") return Format::jsonfmt;
        throw CLI::ValidationError("--format must be text, csv, or json");
    }
    wp::Alphabet sigma() const { return wp::Alphabet(alphabet); }
    wp::census::Budget budget() const { return {node_budget, time_budget_ms}; }
    wp::TableCache cache() const {
        if (!cache_dir.empty()) return wp::TableCache(cache_dir);
        if (const char* env = std::getenv("WORDPRINT_CACHE_DIR"); env && *env)
            return wp::TableCache(env);
        return {};
    }
};

[[noreturn]] void usage_error(const std::string& msg) {
    throw CLI::ValidationError(msg);
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

// Emits through the cache when enabled: a warm cache replays bytes as-is.
void emit_cached(const GlobalOptions& g, const std::string& key_params,
                 const std::function<std::pair<std::string, bool>()>& produce) {
    auto cache = g.cache();
    const std::string key = wp::TableCache::make_key(key_params + " format=" + g.format);
    if (auto hit = cache.get(key)) {
        std::cout << *hit;
        return;
    }
    auto [payload, complete] = produce();
    std::cout << payload;
    if (complete) cache.put(key, payload);
    if (!complete) {
        std::cerr << "wordprint: budget exhausted, output is partial\n";
        std::exit(4);
    }
}

int run(int argc, char** argv) {
    CLI::App app{"word decompositions, prints, and Parikh matrix censuses"};
    app.require_subcommand(1);
    app.fallthrough(); // global options may follow the subcommand
    GlobalOptions g;
    app.add_option("--alphabet", g.alphabet, "ordered alphabet glyphs (default abc)");
    app.add_option("--format", g.format, "output format: text, csv, or json");
    app.add_option("--threads", g.threads, "worker threads for census commands");
    app.add_option("--cache-dir", g.cache_dir,
                   "cache directory for table commands (env WORDPRINT_CACHE_DIR)");
    app.add_option("--node-budget", g.node_budget, "enumeration node cap (0 = unlimited)");
    app.add_option("--time-budget-ms", g.time_budget_ms, "wall-clock cap in ms (0 = unlimited)");

    // --- plain word operations -------------------------------------------
    std::string arg_word, arg_subword, arg_word2, arg_side = "right";
    int arg_k = 3;

    auto* cmd_mirror = app.add_subcommand("mirror", "reverse a word");
    cmd_mirror->add_option("word", arg_word)->required();

    auto* cmd_count = app.add_subcommand("count", "scattered-subword occurrence count");
    cmd_count->add_option("word", arg_word)->required();
    cmd_count->add_option("subword", arg_subword)->required();

    auto* cmd_sqfree = app.add_subcommand("sqfree", "test square-freeness");
    cmd_sqfree->add_option("word", arg_word)->required();

    auto* cmd_print = app.add_subcommand("print", "collapse letter runs");
    cmd_print->add_option("word", arg_word)->required();

    std::string arg_route = "product";
    auto* cmd_parikh = app.add_subcommand("parikh", "Parikh matrix of a word");
    cmd_parikh->add_option("word", arg_word)->required();
    cmd_parikh->add_option("--route", arg_route,
                           "construction route: product or counts (default product)");

    auto* cmd_spectrum = app.add_subcommand("spectrum", "k-spectrum of a word");
    cmd_spectrum->add_option("word", arg_word)->required();
    cmd_spectrum->add_option("-k", arg_k, "spectrum order (default 3)");

    auto* cmd_pnf = app.add_subcommand("pnf", "canonical power decomposition");
    cmd_pnf->add_option("word", arg_word)->required();
    cmd_pnf->add_option("--side", arg_side, "right or left (default right)");

    auto* cmd_gpr = app.add_subcommand("gpr", "general print");
    cmd_gpr->add_option("word", arg_word)->required();
    cmd_gpr->add_option("--side", arg_side, "right or left (default right)");

    auto* cmd_cpr = app.add_subcommand("cpr", "core print with its reduction chain");
    cmd_cpr->add_option("word", arg_word)->required();
    cmd_cpr->add_option("--side", arg_side, "right or left (default right)");

    int arg_sgp_cap = 24;
    auto* cmd_sgp = app.add_subcommand("shortest-gpr", "shortest general print search");
    cmd_sgp->add_option("word", arg_word)->required();
    cmd_sgp->add_option("--cap", arg_sgp_cap, "maximum word length searched (default 24)");

    auto* cmd_e1 = app.add_subcommand("e1-step", "words one E1 application away");
    cmd_e1->add_option("word", arg_word)->required();
    auto* cmd_e2 = app.add_subcommand("e2-step", "words one E2 application away");
    cmd_e2->add_option("word", arg_word)->required();

    std::string arg_relation = "m";
    bool arg_chain = false;
    std::uint64_t arg_closure_cap = wp::rewriting::kDefaultClosureCap;
    auto* cmd_equiv = app.add_subcommand("equiv", "decide word equivalence");
    cmd_equiv->add_option("--relation", arg_relation, "m, 1, or me (default m)");
    cmd_equiv->add_flag("--chain", arg_chain, "emit a witnessing rewrite chain");
    cmd_equiv->add_option("--closure-cap", arg_closure_cap, "closure node cap");
    cmd_equiv->add_option("word", arg_word)->required();
    cmd_equiv->add_option("word2", arg_word2)->required();

    // --- census commands ---------------------------------------------------
    int arg_r = 0, arg_n = 0, arg_max_len = 9;
    bool arg_no_symmetry = false;

    auto* cmd_zeta = app.add_subcommand("zeta-table", "max reduction depth per length");
    cmd_zeta->add_option("-r", arg_r, "alphabet size")->required();
    cmd_zeta->add_option("-n", arg_n, "largest length")->required();
    cmd_zeta->add_flag("--no-symmetry", arg_no_symmetry, "disable orbit reduction");

    auto* cmd_wit = app.add_subcommand("lr-witnesses", "words attaining the max depth");
    cmd_wit->add_option("-r", arg_r, "alphabet size")->required();
    cmd_wit->add_option("-n", arg_n, "word length")->required();

    auto* cmd_div = app.add_subcommand("divergence", "words whose core prints differ");
    cmd_div->add_option("-n", arg_n, "word length")->required();

    std::size_t arg_class_cap = 16;
    auto* cmd_mclass = app.add_subcommand("m-class", "matrix-equivalence class of a word");
    cmd_mclass->add_option("word", arg_word)->required();
    cmd_mclass->add_option("--cap", arg_class_cap, "word length cap (default 16)");

    auto* cmd_sfc = app.add_subcommand("sf-classes", "all-square-free matrix classes");
    cmd_sfc->add_option("--max-len", arg_max_len, "largest word length (default 9)");

    auto* cmd_unamb = app.add_subcommand("unambiguity-table",
                                         "square-free words unambiguous among square-free words");
    cmd_unamb->add_option("-n", arg_n, "largest length")->required();

    auto* cmd_spairs = app.add_subcommand("spectrum-pairs",
                                          "square-free pairs sharing a k-spectrum");
    cmd_spairs->add_option("-n", arg_n, "word length")->required();
    cmd_spairs->add_option("-k", arg_k, "spectrum order (default 3)");

    auto* cmd_mepairs = app.add_subcommand("me-pairs",
                                           "square-free ME-equivalent pairs needing E2");
    cmd_mepairs->add_option("-n", arg_n, "word length")->required();
    cmd_mepairs->add_option("--closure-cap", arg_closure_cap, "closure node cap");

    auto* cmd_probe = app.add_subcommand("insertion-probe",
                                         "single-letter insertions never lowering depth");
    cmd_probe->add_option("-r", arg_r, "alphabet size")->required();
    cmd_probe->add_option("-n", arg_n, "largest length")->required();

    auto* cmd_sq = app.add_subcommand("sqfree-words", "square-free words of a length");
    cmd_sq->add_option("-n", arg_n, "word length")->required();

    // --- morphisms -----------------------------------------------------------
    std::string arg_morphism_name = "leech", arg_morphism_file;
    int arg_steps = 1;
    std::uint64_t arg_length_cap = 10000;
    auto* cmd_morphism = app.add_subcommand("morphism", "apply or iterate a morphism");
    cmd_morphism->require_subcommand(1);
    auto* cmd_apply = cmd_morphism->add_subcommand("apply", "image of a word");
    cmd_apply->add_option("--name", arg_morphism_name, "built-in morphism (leech)");
    cmd_apply->add_option("--file", arg_morphism_file, "JSON mapping {letter: image}");
    cmd_apply->add_option("word", arg_word)->required();
    auto* cmd_iter = cmd_morphism->add_subcommand("iterate", "iterate on a verified pair");
    cmd_iter->add_option("--name", arg_morphism_name, "built-in morphism (leech)");
    cmd_iter->add_option("--file", arg_morphism_file, "JSON mapping {letter: image}");
    cmd_iter->add_option("--steps", arg_steps, "iterations (default 1)");
    cmd_iter->add_option("--length-cap", arg_length_cap, "stop before exceeding (default 10000)");
    cmd_iter->add_option("word", arg_word)->required();
    cmd_iter->add_option("word2", arg_word2)->required();

    app.parse(argc, argv);

    const wp::Alphabet sigma = g.sigma();
    const Format fmt = g.fmt();
    auto parse_word = [&](const std::string& text) { return wp::Word::parse(text, sigma); };
    auto parse_side = [&]() {
        if (arg_side == "right") return wp::Side::right;
        if (arg_side == "left") return wp::Side::left;
        usage_error("--side must be right or left");
    };
    auto word_out = [&](const wp::Word& w) {
        if (fmt == Format::jsonfmt) std::cout << dump(json(w.str(sigma)));
        else std::cout << w.str(sigma) << "\n";
    };
    auto words_out = [&](const std::vector<wp::Word>& words) {
        if (fmt == Format::jsonfmt) std::cout << dump(wp::render::words_json(words, sigma));
        else std::cout << wp::render::words_text(words, sigma);
    };
    auto bool_out = [&](bool value) {
        if (fmt == Format::jsonfmt) std::cout << dump(json(value));
        else std::cout << (value ? "true" : "false") << "\n";
    };
    auto load_morphism = [&]() {
        if (!arg_morphism_file.empty()) {
            std::ifstream in(arg_morphism_file);
            if (!in) throw wp::parse_error("cannot open morphism file " + arg_morphism_file);
            json spec = json::parse(in);
            std::string source_glyphs, target_glyphs;
            for (auto& [key, value] : spec.items()) {
                if (key.size() != 1) throw wp::parse_error("morphism keys must be single letters");
                source_glyphs += key;
                for (char c : value.get<std::string>())
                    if (target_glyphs.find(c) == std::string::npos) target_glyphs += c;
            }
            std::sort(source_glyphs.begin(), source_glyphs.end());
            std::sort(target_glyphs.begin(), target_glyphs.end());
            wp::Alphabet source(source_glyphs), target(target_glyphs);
            std::vector<wp::Word> images;
            for (char c : source_glyphs)
                images.push_back(wp::Word::parse(spec[std::string(1, c)].get<std::string>(), target));
            return wp::morphisms::Morphism(source, target, std::move(images));
        }
        if (arg_morphism_name == "leech") return wp::morphisms::Morphism::leech();
        usage_error("unknown morphism name " + arg_morphism_name + " (built in: leech)");
    };

    if (*cmd_mirror) {
        word_out(wp::mirror(parse_word(arg_word)));
    } else if (*cmd_count) {
        const auto n = wp::subword_count(parse_word(arg_word), parse_word(arg_subword));
        if (fmt == Format::jsonfmt) std::cout << dump(json(n));
        else std::cout << n << "\n";
    } else if (*cmd_sqfree) {
        bool_out(wp::is_square_free(parse_word(arg_word)));
    } else if (*cmd_print) {
        word_out(wp::serbanuta_print(parse_word(arg_word)));
    } else if (*cmd_parikh) {
        if (arg_route != "product" && arg_route != "counts")
            usage_error("--route must be product or counts");
        const auto m = arg_route == "counts"
                           ? wp::parikh_matrix_by_counts(sigma, parse_word(arg_word))
                           : wp::parikh_matrix(sigma, parse_word(arg_word));
        if (fmt == Format::jsonfmt) std::cout << dump(wp::render::matrix_json(m));
        else if (fmt == Format::csv) {
            for (int i = 0; i < m.dimension(); ++i) {
                for (int j = 0; j < m.dimension(); ++j)
                    std::cout << (j ? "," : "") << m.at(i, j);
                std::cout << "\n";
            }
        } else std::cout << wp::render::matrix_text(m);
    } else if (*cmd_spectrum) {
        const auto spec = wp::k_spectrum(sigma, parse_word(arg_word), arg_k);
        if (fmt == Format::jsonfmt) std::cout << dump(wp::render::spectrum_json(spec, sigma));
        else std::cout << wp::render::spectrum_text(spec, sigma);
    } else if (*cmd_pnf) {
        const auto pf = parse_side() == wp::Side::right ? wp::pnf_right(parse_word(arg_word))
                                                        : wp::pnf_left(parse_word(arg_word));
        if (fmt == Format::jsonfmt) std::cout << dump(wp::render::factorization_json(pf, sigma));
        else std::cout << wp::render::factorization_text(pf, sigma) << "\n";
    } else if (*cmd_gpr) {
        const auto w = parse_word(arg_word);
        word_out(parse_side() == wp::Side::right ? wp::general_print_right(w)
                                                 : wp::general_print_left(w));
    } else if (*cmd_cpr) {
        const auto trace = wp::core_print(parse_word(arg_word), parse_side());
        if (fmt == Format::jsonfmt) std::cout << dump(wp::render::trace_json(trace, sigma));
        else std::cout << wp::render::trace_text(trace, sigma);
    } else if (*cmd_sgp) {
        const auto result = wp::shortest_general_print(parse_word(arg_word), arg_sgp_cap);
        if (fmt == Format::jsonfmt) {
            std::cout << dump(json{{"length", result.length},
                                   {"witnesses", wp::render::words_json(result.witnesses, sigma)}});
        } else {
            std::cout << result.length << "\n" << wp::render::words_text(result.witnesses, sigma);
        }
    } else if (*cmd_e1) {
        words_out(wp::rewriting::e1_neighbors(parse_word(arg_word)));
    } else if (*cmd_e2) {
        words_out(wp::rewriting::e2_neighbors(parse_word(arg_word)));
    } else if (*cmd_equiv) {
        const auto w = parse_word(arg_word), w2 = parse_word(arg_word2);
        bool equivalent = false;
        if (arg_relation == "m") {
            equivalent = wp::m_equivalent(sigma, w, w2);
        } else if (arg_relation == "1") {
            equivalent = wp::rewriting::one_equivalent(w, w2, arg_closure_cap);
        } else if (arg_relation == "me") {
            equivalent = wp::rewriting::me_equivalent(w, w2, arg_closure_cap);
        } else {
            usage_error("--relation must be m, 1, or me");
        }
        if (arg_chain && arg_relation != "m") {
            const auto chain =
                wp::rewriting::rewrite_chain(w, w2, arg_relation == "me", arg_closure_cap);
            if (fmt == Format::jsonfmt) {
                json out{{"equivalent", equivalent}};
                out["chain"] = chain ? wp::render::chain_json(*chain, sigma) : json(nullptr);
                std::cout << dump(out);
            } else {
                std::cout << (equivalent ? "true" : "false") << "\n";
                if (chain) std::cout << wp::render::chain_text(*chain, sigma);
            }
        } else {
            bool_out(equivalent);
        }
    } else if (*cmd_zeta) {
        emit_cached(g,
                    "zeta-table r=" + std::to_string(arg_r) + " n=" + std::to_string(arg_n) +
                        " sym=" + (arg_no_symmetry ? "0" : "1"),
                    [&]() -> std::pair<std::string, bool> {
                        auto table = wp::census::zeta_table(arg_r, arg_n, g.budget(), g.threads,
                                                            !arg_no_symmetry);
                        std::string payload = fmt == Format::jsonfmt
                                                  ? dump(wp::render::zeta_json(table))
                                                  : wp::render::zeta_csv(table);
                        return {payload, !table.truncated};
                    });
    } else if (*cmd_wit) {
        emit_cached(g, "lr-witnesses r=" + std::to_string(arg_r) + " n=" + std::to_string(arg_n),
                    [&]() -> std::pair<std::string, bool> {
                        auto words = wp::census::max_depth_witnesses(arg_r, arg_n, g.budget(),
                                                                     g.threads);
                        const wp::Alphabet out_alpha = wp::Alphabet::prefix(arg_r);
                        std::string payload = fmt == Format::jsonfmt
                                                  ? dump(wp::render::words_json(words, out_alpha))
                                                  : wp::render::words_text(words, out_alpha);
                        return {payload, true};
                    });
    } else if (*cmd_div) {
        emit_cached(g,
                    "divergence alphabet=" + g.alphabet + " n=" + std::to_string(arg_n),
                    [&]() -> std::pair<std::string, bool> {
                        auto words =
                            wp::census::core_print_divergence(sigma, arg_n, g.budget(), g.threads);
                        std::string payload = fmt == Format::jsonfmt
                                                  ? dump(wp::render::words_json(words, sigma))
                                                  : wp::render::words_text(words, sigma);
                        return {payload, true};
                    });
    } else if (*cmd_mclass) {
        const auto cls = wp::census::m_class(sigma, parse_word(arg_word), arg_class_cap);
        if (fmt == Format::jsonfmt) {
            std::cout << dump(json{{"matrix", wp::render::matrix_json(cls.matrix)},
                                   {"members", wp::render::words_json(cls.members, sigma)}});
        } else {
            std::cout << wp::render::words_text(cls.members, sigma);
        }
    } else if (*cmd_sfc) {
        emit_cached(g, "sf-classes max-len=" + std::to_string(arg_max_len),
                    [&]() -> std::pair<std::string, bool> {
                        auto classes = wp::census::square_free_class_census(arg_max_len, g.threads);
                        const auto& ternary = wp::Alphabet::ternary();
                        std::string payload = fmt == Format::jsonfmt
                                                  ? dump(wp::render::classes_json(classes, ternary))
                                                  : wp::render::classes_text(classes, ternary);
                        return {payload, true};
                    });
    } else if (*cmd_unamb) {
        emit_cached(g, "unambiguity-table n=" + std::to_string(arg_n),
                    [&]() -> std::pair<std::string, bool> {
                        auto table = wp::census::unambiguity_table(arg_n, g.budget(), g.threads);
                        std::string payload = fmt == Format::jsonfmt
                                                  ? dump(wp::render::unambiguity_json(table))
                                                  : wp::render::unambiguity_csv(table);
                        return {payload, !table.truncated};
                    });
    } else if (*cmd_spairs) {
        emit_cached(g, "spectrum-pairs n=" + std::to_string(arg_n) + " k=" + std::to_string(arg_k),
                    [&]() -> std::pair<std::string, bool> {
                        auto pairs =
                            wp::census::equal_spectrum_pairs(arg_n, arg_k, g.budget(), g.threads);
                        const auto& ternary = wp::Alphabet::ternary();
                        std::string payload = fmt == Format::jsonfmt
                                                  ? dump(wp::render::pairs_json(pairs, ternary))
                                                  : wp::render::pairs_text(pairs, ternary);
                        return {payload, true};
                    });
    } else if (*cmd_mepairs) {
        emit_cached(g,
                    "me-pairs n=" + std::to_string(arg_n) +
                        " closure-cap=" + std::to_string(arg_closure_cap),
                    [&]() -> std::pair<std::string, bool> {
                        auto pairs =
                            wp::census::me_square_free_pairs(arg_n, arg_closure_cap, g.threads);
                        const auto& ternary = wp::Alphabet::ternary();
                        std::string payload = fmt == Format::jsonfmt
                                                  ? dump(wp::render::pairs_json(pairs, ternary))
                                                  : wp::render::pairs_text(pairs, ternary);
                        return {payload, true};
                    });
    } else if (*cmd_probe) {
        emit_cached(g, "insertion-probe r=" + std::to_string(arg_r) + " n=" + std::to_string(arg_n),
                    [&]() -> std::pair<std::string, bool> {
                        auto report =
                            wp::census::insertion_probe(arg_r, arg_n, g.budget(), g.threads);
                        const wp::Alphabet out_alpha = wp::Alphabet::prefix(arg_r);
                        std::string payload =
                            fmt == Format::jsonfmt
                                ? dump(wp::render::insertion_report_json(report, out_alpha))
                                : wp::render::insertion_report_text(report, out_alpha);
                        return {payload, report.complete};
                    });
    } else if (*cmd_sq) {
        auto words = wp::census::square_free_words_list(sigma, arg_n);
        words_out(words);
    } else if (*cmd_apply) {
        const auto m = load_morphism();
        const wp::Word w = wp::Word::parse(arg_word, m.source());
        std::cout << m.apply(w).str(m.target()) << "\n";
    } else if (*cmd_iter) {
        const auto m = load_morphism();
        const wp::Word w = wp::Word::parse(arg_word, m.source());
        const wp::Word w2 = wp::Word::parse(arg_word2, m.source());
        const auto result = wp::morphisms::iterate_pair(m, w, w2, arg_steps, arg_length_cap);
        if (fmt == Format::jsonfmt)
            std::cout << dump(wp::render::iterate_json(result, m.target()));
        else
            std::cout << wp::render::iterate_text(result);
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return 0; // --help
        std::cerr << "wordprint: " << e.what() << "\n";
        return 2;
    } catch (const wp::budget_error& e) {
        std::cerr << "wordprint: " << e.what() << "\n";
        return 4;
    } catch (const wp::parse_error& e) {
        std::cerr << "wordprint: " << e.what() << "\n";
        return 3;
    } catch (const wp::domain_error& e) {
        std::cerr << "wordprint: " << e.what() << "\n";
        return 3;
    } catch (const wp::count_overflow_error& e) {
        std::cerr << "wordprint: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "wordprint: " << e.what() << "\n";
        return 1;
    }
}
