#include <catch2/catch_amalgamated.hpp>

#include <map>
#include <set>

#include "golden.hpp"
#include "oracles.hpp"
#include "wordprint/wordprint.hpp"

using namespace wordprint;
namespace cs = wordprint::census;

namespace {
const Alphabet& T = Alphabet::ternary();
const Alphabet& B = Alphabet::binary();
Word W(const char* text) { return Word::parse(text, T); }

std::string class_string(const cs::EquivClass& cls) {
    std::string out;
    for (std::size_t i = 0; i < cls.members.size(); ++i) {
        if (i) out += ",";
        out += cls.members[i].str(T);
    }
    return out;
}
} // namespace

TEST_CASE("square-free word streams", "[census]") {
    const auto three = cs::square_free_words_list(T, 3);
    CHECK(three.size() == 12);
    CHECK(std::is_sorted(three.begin(), three.end()));
    for (const auto& w : three) CHECK(is_square_free(w));

    CHECK(cs::square_free_words_list(B, 4).empty());
    CHECK(cs::square_free_words_list(B, 3) ==
          std::vector<Word>{Word::parse("aba", B), Word::parse("bab", B)});
    CHECK(cs::square_free_count(T, 10) == 144);
}

TEST_CASE("square-free counts equal the filtered enumeration", "[census]") {
    for (int n = 1; n <= 11; ++n) {
        std::uint64_t direct = 0;
        oracle::for_each_word(3, n, [&](const Word& w) {
            if (oracle::square_free_naive(w)) ++direct;
        });
        REQUIRE(cs::square_free_count(T, n) == direct);
    }
}

TEST_CASE("square-free counts match the published column", "[census]") {
    for (std::size_t i = 0; i < golden::kSquareFreeCounts.size(); ++i)
        REQUIRE(cs::square_free_count(T, static_cast<int>(i) + 1) == golden::kSquareFreeCounts[i]);
}

TEST_CASE("binary depth table matches the reference rows", "[census]") {
    const auto table = cs::zeta_table(2, 13, {}, 2);
    REQUIRE(table.rows.size() == 13);
    REQUIRE_FALSE(table.truncated);
    for (const auto& row : table.rows) {
        const auto& ref = golden::kZetaBinary[static_cast<std::size_t>(row.n - 1)];
        CHECK(row.zeta == ref.zeta);
        CHECK(row.count == ref.count);
        CHECK(row.percent == Catch::Approx(ref.percent).margin(0.005));
        if (row.n == 1) CHECK(row.zeta == 0);
        else CHECK(row.zeta < row.n);
    }
}

TEST_CASE("symmetry reduction agrees with plain enumeration", "[census]") {
    const auto reduced2 = cs::zeta_table(2, 10, {}, 2, true);
    const auto full2 = cs::zeta_table(2, 10, {}, 2, false);
    REQUIRE(reduced2.rows.size() == full2.rows.size());
    for (std::size_t i = 0; i < full2.rows.size(); ++i) {
        CHECK(reduced2.rows[i].zeta == full2.rows[i].zeta);
        CHECK(reduced2.rows[i].count == full2.rows[i].count);
    }
    const auto reduced3 = cs::zeta_table(3, 7, {}, 2, true);
    const auto full3 = cs::zeta_table(3, 7, {}, 2, false);
    for (std::size_t i = 0; i < full3.rows.size(); ++i) {
        CHECK(reduced3.rows[i].zeta == full3.rows[i].zeta);
        CHECK(reduced3.rows[i].count == full3.rows[i].count);
    }
}

TEST_CASE("depth never drops when the alphabet grows", "[census]") {
    const auto two = cs::zeta_table(2, 12, {}, 2);
    const auto three = cs::zeta_table(3, 12, {}, 2);
    for (std::size_t i = 0; i < two.rows.size(); ++i)
        CHECK(three.rows[i].zeta >= two.rows[i].zeta);
}

TEST_CASE("depth tables respect budgets with explicit cutoffs", "[census]") {
    const auto table = cs::zeta_table(2, 30, {.node_cap = 2000, .wall_ms = 0}, 2);
    CHECK(table.truncated);
    CHECK_FALSE(table.cutoff_reason.empty());
    CHECK(table.rows.size() < 30);
    for (std::size_t i = 0; i < table.rows.size(); ++i) {
        const auto& ref = golden::kZetaBinary[i];
        CHECK(table.rows[i].zeta == ref.zeta);
        CHECK(table.rows[i].count == ref.count);
    }
}

TEST_CASE("maximum-depth witnesses", "[census]") {
    CHECK(cs::max_depth_witnesses(2, 1) ==
          std::vector<Word>{Word::parse("a", B), Word::parse("b", B)});
    // both one-letter powers reduce in a single step; the square-free pairs stay put
    CHECK(cs::max_depth_witnesses(2, 2) ==
          std::vector<Word>{Word::parse("aa", B), Word::parse("bb", B)});
    const auto seven = cs::max_depth_witnesses(2, 7);
    REQUIRE(seven.size() == 2);
    for (const auto& w : seven) CHECK(print_depth_right(w) == 3);
    CHECK(std::is_sorted(seven.begin(), seven.end()));
}

TEST_CASE("witness sets agree across thread counts", "[census]") {
    CHECK(cs::max_depth_witnesses(2, 10, {}, 1) == cs::max_depth_witnesses(2, 10, {}, 3));
    CHECK(cs::core_print_divergence(T, 7, {}, 1) == cs::core_print_divergence(T, 7, {}, 3));
}

TEST_CASE("core print divergence", "[census]") {
    const auto nine = cs::core_print_divergence(T, 9, {}, 2);
    REQUIRE(nine.size() == golden::kDivergent9.size());
    for (std::size_t i = 0; i < nine.size(); ++i)
        CHECK(nine[i].str(T) == golden::kDivergent9[i]);
    CHECK(cs::core_print_divergence(T, 8, {}, 2).empty());
    for (int n = 1; n <= 14; ++n) CHECK(cs::core_print_divergence(B, n, {}, 2).empty());
}

TEST_CASE("matrix-equivalence classes of single words", "[census]") {
    const auto cls = cs::m_class(T, W("acbac"));
    CHECK(cls.members == std::vector<Word>{W("acbac"), W("acbca"), W("cabac"), W("cabca")});
    CHECK(cs::m_class(T, W("b")).members == std::vector<Word>{W("b")});
    CHECK(cs::m_class(T, W("abc")).members == std::vector<Word>{W("abc")});
    for (const auto& member : cls.members) REQUIRE(parikh_matrix(T, member) == cls.matrix);
    CHECK_THROWS_WITH(cs::m_class(T, W("abcabcabcabcabcab")),
                      Catch::Matchers::ContainsSubstring("anagram bound"));
}

TEST_CASE("the all-square-free class census", "[census]") {
    const auto classes = cs::square_free_class_census(9, 2);

    std::set<std::string> found;
    for (const auto& cls : classes) found.insert(class_string(cls));
    REQUIRE(found.size() == classes.size());

    // every classical entry appears, plus the six configurations the
    // classical case analysis skipped
    for (auto ref : golden::kClassicClasses) CHECK(found.contains(std::string(ref)));
    for (auto extra : golden::kExtraClasses) CHECK(found.contains(std::string(extra)));
    CHECK(classes.size() == golden::kClassicClasses.size() + golden::kExtraClasses.size());

    for (const auto& cls : classes) {
        REQUIRE_FALSE(cls.members.empty());
        REQUIRE(std::is_sorted(cls.members.begin(), cls.members.end()));
        const std::size_t len = cls.members.front().size();
        for (const auto& member : cls.members) {
            REQUIRE(member.size() == len);
            REQUIRE(is_square_free(member));
            REQUIRE(parikh_matrix(T, member) == cls.matrix);
            std::uint64_t b_count = 0;
            for (Symbol s : member) b_count += s == 1;
            REQUIRE(b_count <= 4);
        }
        // each class is closed under E1 reachability
        const auto closure = rewriting::closure(cls.members.front(), false);
        REQUIRE(closure.size() == cls.members.size());
        for (const auto& member : cls.members) REQUIRE(closure.contains(member));
    }

    // ordering: by length, then by least member
    for (std::size_t i = 1; i < classes.size(); ++i) {
        const auto& prev = classes[i - 1].members.front();
        const auto& cur = classes[i].members.front();
        REQUIRE((prev.size() < cur.size() || (prev.size() == cur.size() && prev < cur)));
    }

    CHECK_THROWS_AS(cs::square_free_class_census(6), domain_error);
}

TEST_CASE("no square-free word outside the census has an all-square-free class", "[census]") {
    const auto classes = cs::square_free_class_census(9, 2);
    std::set<Word> covered;
    for (const auto& cls : classes)
        for (const auto& member : cls.members) covered.insert(member);
    for (int n = 1; n <= 9; ++n) {
        cs::square_free_words(T, n, [&](Word w) {
            if (covered.contains(w)) return;
            bool all_square_free = true;
            for (const auto& member : cs::m_class(T, w).members)
                if (!is_square_free(member)) {
                    all_square_free = false;
                    break;
                }
            REQUIRE_FALSE(all_square_free);
        });
    }
}

TEST_CASE("classes with three or more middle letters are alternately separated", "[census]") {
    // structure of all-square-free classes: between-the-b segments are single
    // letters over {a, c}, the ends possibly empty, neighbors distinct
    const auto classes = cs::square_free_class_census(9, 2);
    for (const auto& cls : classes) {
        for (const auto& member : cls.members) {
            std::uint64_t b_count = 0;
            for (Symbol s : member) b_count += s == 1;
            if (b_count < 3) continue;
            std::vector<std::string> segments{""};
            for (Symbol s : member) {
                if (s == 1) segments.emplace_back();
                else segments.back().push_back(s == 0 ? 'a' : 'c');
            }
            for (std::size_t i = 0; i < segments.size(); ++i) {
                if (i == 0 || i + 1 == segments.size()) {
                    REQUIRE(segments[i].size() <= 1);
                } else {
                    REQUIRE(segments[i].size() == 1);
                }
                if (i) REQUIRE(segments[i] != segments[i - 1]);
            }
        }
    }
}

TEST_CASE("unambiguity rows match the reference counts", "[census]") {
    const auto table = cs::unambiguity_table(24, {}, 2);
    REQUIRE(table.rows.size() == 24);
    for (const auto& row : table.rows) {
        const auto& ref = golden::kUnambiguity[static_cast<std::size_t>(row.k - 1)];
        CHECK(row.sq == ref.sq);
        CHECK(row.un == ref.un);
        CHECK(row.un <= row.sq);
        CHECK(row.pr == Catch::Approx(ref.pr).margin(0.1));
    }
}

TEST_CASE("unambiguity rows agree with direct grouping", "[census]") {
    const auto table = cs::unambiguity_table(9, {}, 2);
    for (const auto& row : table.rows) {
        std::map<std::vector<std::uint64_t>, std::uint64_t> groups;
        cs::square_free_words(T, row.k, [&](Word w) {
            const auto m = parikh_matrix_by_counts(T, w);
            std::vector<std::uint64_t> key;
            for (int i = 0; i < 4; ++i)
                for (int j = 0; j < 4; ++j) key.push_back(m.at(i, j));
            ++groups[key];
        });
        std::uint64_t sq = 0, un = 0;
        for (const auto& [key, c] : groups) {
            sq += c;
            un += c == 1;
        }
        REQUIRE(row.sq == sq);
        REQUIRE(row.un == un);
    }
}

TEST_CASE("unambiguity tables truncate on tiny budgets", "[census]") {
    const auto table = cs::unambiguity_table(30, {.node_cap = 500, .wall_ms = 0}, 2);
    CHECK(table.truncated);
    CHECK(table.rows.size() < 30);
}

TEST_CASE("spectrum twins at tiny lengths", "[census]") {
    const auto pairs = cs::equal_spectrum_pairs(2, 1, {}, 2);
    REQUIRE(pairs.size() == 3);
    CHECK(pairs[0] == std::make_pair(W("ab"), W("ba")));
    CHECK(pairs[1] == std::make_pair(W("ac"), W("ca")));
    CHECK(pairs[2] == std::make_pair(W("bc"), W("cb")));
}

TEST_CASE("spectrum twins agree with brute-force grouping", "[census]") {
    for (int n : {4, 6, 8}) {
        std::map<std::vector<std::uint64_t>, std::vector<Word>> groups;
        cs::square_free_words(T, n, [&](Word w) {
            groups[oracle::spectrum_brute(w, 3, 3)].push_back(std::move(w));
        });
        std::vector<std::pair<Word, Word>> expected;
        for (auto& [key, members] : groups)
            for (std::size_t i = 0; i < members.size(); ++i)
                for (std::size_t j = i + 1; j < members.size(); ++j)
                    expected.emplace_back(members[i], members[j]);
        std::sort(expected.begin(), expected.end());
        REQUIRE(cs::equal_spectrum_pairs(n, 3, {}, 2) == expected);
    }
}

TEST_CASE("pairs needing the second rule are absent at length ten", "[census]") {
    CHECK(cs::me_square_free_pairs(10, rewriting::kDefaultClosureCap, 2).empty());
    CHECK_FALSE(rewriting::me_equivalent(W("abcbabcacb"), W("bacabcbabc")));
}

TEST_CASE("insertion probe finds nothing at small lengths", "[census]") {
    const auto tiny = cs::insertion_probe(2, 3, {}, 2);
    CHECK(tiny.complete);
    CHECK(tiny.counterexamples.empty());
    CHECK(tiny.words_checked == 2 + 4 + 8);

    const auto one = cs::insertion_probe(2, 1, {}, 1);
    CHECK(one.complete);
    CHECK(one.counterexamples.empty());

    const auto probe = cs::insertion_probe(2, 8, {}, 2);
    CHECK(probe.complete);
    CHECK(probe.counterexamples.empty());

    // every boundary extension of abaabbabbbabb lowers the depth, yet some
    // interior insertion keeps it, so the sweep up to 13 still finds nothing
    const auto thirteen = cs::insertion_probe(2, 13, {}, 2);
    CHECK(thirteen.complete);
    CHECK(thirteen.counterexamples.empty());
    CHECK(thirteen.words_checked == (1u << 14) - 2);
}

TEST_CASE("insertion probe reports partial progress on budget", "[census]") {
    const auto probe = cs::insertion_probe(2, 14, {.node_cap = 50, .wall_ms = 0}, 2);
    CHECK_FALSE(probe.complete);
    CHECK(probe.last_completed_n < 14);
}

// hidden: run explicitly with the [deep] tag (a few seconds each)
TEST_CASE("ternary depth maxima track the binary ones until length 15", "[.][deep]") {
    const auto table = cs::zeta_table(3, 15, {}, 2);
    CHECK(table.rows[12].zeta == 4); // same as the binary table
    CHECK(table.rows[13].zeta == 4);
    CHECK(table.rows[14].zeta == 5); // the alphabets part ways here
}

TEST_CASE("binary depth rows 23 and 24", "[.][deep]") {
    const auto table = cs::zeta_table(2, 24, {}, 2);
    CHECK(table.rows[22].zeta == 5);
    CHECK(table.rows[22].count == 47214);
    CHECK(table.rows[23].zeta == 5);
    CHECK(table.rows[23].count == 128846);
}

// several minutes; the length-30 row is the full 2^30 sweep
TEST_CASE("binary depth rows 25 to 30", "[.][deep]") {
    const auto table = cs::zeta_table(2, 30, {}, 2);
    const std::pair<int, std::uint64_t> expected[] = {
        {5, 333068}, {5, 830620}, {5, 2015582}, {5, 4794990}, {5, 11225526}, {6, 18}};
    for (int n = 25; n <= 30; ++n) {
        CHECK(table.rows[static_cast<std::size_t>(n - 1)].zeta == expected[n - 25].first);
        CHECK(table.rows[static_cast<std::size_t>(n - 1)].count == expected[n - 25].second);
    }
}

TEST_CASE("census words round-trip through parse and render", "[census]") {
    for (const auto& w : cs::core_print_divergence(T, 9, {}, 2))
        CHECK(Word::parse(w.str(T), T) == w);
    for (const auto& w : cs::max_depth_witnesses(2, 8)) CHECK(Word::parse(w.str(B), B) == w);
    for (const auto& cls : cs::square_free_class_census(7, 2))
        for (const auto& member : cls.members) CHECK(Word::parse(member.str(T), T) == member);
    for (const auto& [a, b] : cs::equal_spectrum_pairs(18, 3, {}, 2)) {
        CHECK(Word::parse(a.str(T), T) == a);
        CHECK(Word::parse(b.str(T), T) == b);
    }
}
