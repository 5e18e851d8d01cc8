#include <catch2/catch_amalgamated.hpp>

#include <map>

#include "oracles.hpp"
#include "wordprint/wordprint.hpp"

using namespace wordprint;

namespace {
const Alphabet& T = Alphabet::ternary();
Word W(const char* text) { return Word::parse(text, T); }

std::uint64_t binom(std::uint64_t n, std::uint64_t k) {
    if (k > n) return 0;
    std::uint64_t out = 1;
    for (std::uint64_t i = 1; i <= k; ++i) out = out * (n - k + i) / i;
    return out;
}
} // namespace

TEST_CASE("matrix of abac", "[parikh]") {
    const ParikhMatrix m = parikh_matrix(T, W("abac"));
    const std::uint64_t expected[4][4] = {
        {1, 2, 1, 1}, {0, 1, 1, 1}, {0, 0, 1, 1}, {0, 0, 0, 1}};
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) CHECK(m.at(i, j) == expected[i][j]);
}

TEST_CASE("matrix basics", "[parikh]") {
    CHECK(parikh_matrix(T, Word{}) == ParikhMatrix(4));
    const Alphabet binary("ab");
    const ParikhMatrix m = parikh_matrix(binary, Word::parse("ab", binary));
    CHECK(m.at(0, 1) == 1);
    CHECK(m.at(1, 2) == 1);
    CHECK(m.at(0, 2) == 1);
    CHECK_THROWS_AS(parikh_matrix(binary, W("abc")), domain_error);
}

TEST_CASE("count-based construction matches the product route", "[parikh]") {
    CHECK(parikh_matrix_by_counts(T, W("abac")) == parikh_matrix(T, W("abac")));
    CHECK(parikh_matrix_by_counts(T, Word{}) == ParikhMatrix(4));
    const ParikhMatrix ccc = parikh_matrix_by_counts(T, W("ccc"));
    CHECK(ccc.at(2, 3) == 3);
    CHECK(ccc.at(0, 1) == 0);
    CHECK(ccc.at(0, 2) == 0);
    CHECK(ccc.at(0, 3) == 0);
    CHECK(ccc.at(1, 2) == 0);
    CHECK(ccc.at(1, 3) == 0);
    oracle::for_each_word_up_to(3, 8, [&](const Word& w) {
        REQUIRE(parikh_matrix_by_counts(T, w) == parikh_matrix(T, w));
    });
}

TEST_CASE("matrices are upper unitriangular with bounded entries", "[parikh]") {
    oracle::for_each_word(3, 7, [&](const Word& w) {
        const ParikhMatrix m = parikh_matrix(T, w);
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < i; ++j) REQUIRE(m.at(i, j) == 0);
        for (int i = 0; i < 4; ++i) REQUIRE(m.at(i, i) == 1);
        for (int i = 0; i < 3; ++i)
            for (int j = i; j < 3; ++j)
                REQUIRE(m.at(i, j + 1) <= binom(w.size(), static_cast<std::uint64_t>(j - i + 1)));
    });
}

TEST_CASE("the mapping is a morphism on concatenation", "[parikh]") {
    auto product = [](const ParikhMatrix& a, const ParikhMatrix& b) {
        ParikhMatrix out(a.dimension());
        for (int i = 0; i < a.dimension(); ++i)
            for (int j = 0; j < a.dimension(); ++j) {
                std::uint64_t sum = 0;
                for (int t = 0; t < a.dimension(); ++t) sum += a.at(i, t) * b.at(t, j);
                out.at(i, j) = sum;
            }
        return out;
    };
    oracle::for_each_word_up_to(3, 9, [&](const Word& w) {
        const ParikhMatrix whole = parikh_matrix(T, w);
        for (std::size_t split = 0; split <= w.size(); ++split) {
            const Word u = oracle::take(w, 0, split);
            const Word v = oracle::take(w, split, w.size() - split);
            REQUIRE(whole == product(parikh_matrix(T, u), parikh_matrix(T, v)));
        }
    });
}

TEST_CASE("matrix equivalence", "[parikh]") {
    CHECK(m_equivalent(T, W("ac"), W("ca")));
    CHECK_FALSE(m_equivalent(T, W("ab"), W("ba")));
    CHECK(m_equivalent(T, W("abcbabcacb"), W("abcbabcacb")));
    CHECK(m_equivalent(T, W("abcbabcacb"), W("bacabcbabc")));
}

TEST_CASE("spectrum of abc at order 2", "[parikh]") {
    const Spectrum spec = k_spectrum(T, W("abc"), 2);
    auto count = [&](const char* u) { return spec.count_of(W(u)); };
    CHECK(count("") == 1);
    CHECK(count("a") == 1);
    CHECK(count("b") == 1);
    CHECK(count("c") == 1);
    CHECK(count("ab") == 1);
    CHECK(count("bc") == 1);
    CHECK(count("ac") == 1);
    CHECK(count("ba") == 0);
    CHECK(count("ca") == 0);
    CHECK(count("cb") == 0);
    CHECK(count("aa") == 0);
    CHECK(count("bb") == 0);
    CHECK(count("cc") == 0);
}

TEST_CASE("spectrum of the empty word", "[parikh]") {
    const Spectrum spec = k_spectrum(T, Word{}, 3);
    CHECK(spec.counts().size() == 40);
    CHECK(spec.count_of(Word{}) == 1);
    std::uint64_t total = 0;
    for (auto c : spec.counts()) total += c;
    CHECK(total == 1);
}

TEST_CASE("the first two length-18 spectrum twins agree", "[parikh]") {
    const Word a = W("cabacbabcbacbcacba");
    const Word b = W("abcacbcabcbabcabac");
    CHECK(a != b);
    CHECK(k_spectrum(T, a, 3) == k_spectrum(T, b, 3));
}

TEST_CASE("spectra restrict consistently and sum to the length", "[parikh]") {
    oracle::for_each_word_up_to(3, 7, [&](const Word& w) {
        const Spectrum s3 = k_spectrum(T, w, 3);
        const Spectrum s2 = k_spectrum(T, w, 2);
        for (std::size_t slot = 0; slot < s2.counts().size(); ++slot)
            REQUIRE(s2.counts()[slot] == s3.counts()[slot]);
        std::uint64_t letters = 0;
        for (int s = 0; s < 3; ++s)
            letters += s3.count_of(Word{std::vector<Symbol>{static_cast<Symbol>(s)}});
        REQUIRE(letters == w.size());
    });
}

TEST_CASE("equal 3-spectra force equal matrices under every ordering", "[parikh]") {
    std::map<std::vector<std::uint64_t>, std::vector<Word>> groups;
    oracle::for_each_word_up_to(3, 10, [&](const Word& w) {
        groups[k_spectrum(T, w, 3).counts()].push_back(w);
    });
    std::size_t pairs = 0;
    for (const auto& [key, words] : groups) {
        for (std::size_t i = 0; i < words.size(); ++i)
            for (std::size_t j = i + 1; j < words.size(); ++j) {
                REQUIRE(m_equivalent_all_orderings(words[i], words[j], 3));
                ++pairs;
            }
    }
    CHECK(pairs > 0);
}
