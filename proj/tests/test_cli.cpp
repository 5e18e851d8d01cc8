#include <catch2/catch_amalgamated.hpp>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include "golden.hpp"

namespace {

struct RunResult {
    int exit_code = -1;
    std::string out;
};

// Runs the CLI with stderr routed away from the capture.
RunResult run_cli(const std::string& args, const std::string& cache_env = {}) {
    std::string command;
    if (!cache_env.empty()) command += "WORDPRINT_CACHE_DIR=" + cache_env + " ";
    command += std::string(WORDPRINT_CLI_PATH) + " " + args + " 2>/dev/null";
    RunResult result;
    FILE* pipe = popen(command.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::array<char, 4096> buf{};
    std::size_t got;
    while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) result.out.append(buf.data(), got);
    const int status = pclose(pipe);
    result.exit_code = WEXITSTATUS(status);
    return result;
}

std::string out_of(const std::string& args, int expected_exit = 0,
                   const std::string& cache_env = {}) {
    const RunResult r = run_cli(args, cache_env);
    INFO("command: " << args << "\noutput: " << r.out);
    REQUIRE(r.exit_code == expected_exit);
    return r.out;
}

std::size_t line_count(const std::string& text) {
    std::size_t lines = 0;
    for (char c : text) lines += c == '\n';
    return lines;
}

} // namespace

TEST_CASE("word commands", "[cli]") {
    CHECK(out_of("mirror abaab") == "baaba\n");
    CHECK(out_of("mirror \"\"") == "\n");
    CHECK(out_of("count abab ab") == "3\n");
    CHECK(out_of("count abcabc abc") == "4\n");
    CHECK(out_of("count abcabc \"\"") == "1\n");
    CHECK(out_of("sqfree --alphabet abn banana") == "false\n");
    CHECK(out_of("sqfree abcba") == "true\n");
    CHECK(out_of("print cabccabc") == "cabcabc\n");
}

TEST_CASE("matrix and spectrum commands", "[cli]") {
    CHECK(out_of("parikh abac") == "1 2 1 1\n0 1 1 1\n0 0 1 1\n0 0 0 1\n");
    CHECK(out_of("parikh abac --route counts") == out_of("parikh abac"));
    CHECK(out_of("parikh abac --format csv") == "1,2,1,1\n0,1,1,1\n0,0,1,1\n0,0,0,1\n");
    CHECK(out_of("equiv --relation m ac ca") == "true\n");
    CHECK(out_of("equiv --relation m ab ba") == "false\n");
    // the first length-18 twin pair has identical spectra
    const auto a = out_of("spectrum -k 3 cabacbabcbacbcacba --format json");
    const auto b = out_of("spectrum -k 3 abcacbcabcbabcabac --format json");
    CHECK(a == b);
}

TEST_CASE("decomposition commands", "[cli]") {
    CHECK(out_of("pnf --side right abcccbcabbabb") == "abc^3bc(abb)^2\n");
    CHECK(out_of("pnf --side left abababacbcbc") == "(ab)^3a(cb)^2c\n");
    CHECK(out_of("pnf --side right cabccabc") == "(cabc)^2\n");
    CHECK(out_of("pnf --side right babaabaa") == "ba(baa)^2\n");
    CHECK(out_of("pnf --side left babaabaa") == "(ba)^2aba^2\n");
    CHECK(out_of("gpr --side right babaabaa") == "babaa\n");
    CHECK(out_of("gpr --side left babaabaa") == "baaba\n");
    CHECK(out_of("gpr --side right cabccabc") == "cabc\n");
    CHECK(out_of("gpr --side right abc") == "abc\n");
    CHECK(out_of("cpr --side right ababcbabc") ==
          "step 0: ababcbabc\nstep 1: ababc\nstep 2: abc\nsteps: 2\ncore: abc\n");
    CHECK(out_of("cpr --side left ababcbabc") ==
          "step 0: ababcbabc\nstep 1: abcbabc\nsteps: 1\ncore: abcbabc\n");
    const auto deep = out_of("cpr --side right --alphabet ab abaababaaabaaabaabbaabbbaabbab");
    CHECK(deep.find("steps: 6\n") != std::string::npos);
    CHECK(deep.find("core: ab\n") != std::string::npos);
    const auto shallow = out_of("cpr --side right --alphabet ab abaabbabbbabb");
    CHECK(shallow.find("steps: 4\n") != std::string::npos);
}

TEST_CASE("shortest print command", "[cli]") {
    const auto one = out_of("shortest-gpr abcbcbcabcbcbca");
    CHECK(one.substr(0, 2) == "7\n");
    CHECK(one.find("abcabca\n") != std::string::npos);
    const auto two = out_of("shortest-gpr abababcbcbc");
    CHECK(two.substr(0, 2) == "5\n");
    CHECK(two.find("ababc\n") != std::string::npos);
    CHECK(two.find("abcbc\n") != std::string::npos);
}

TEST_CASE("rewriting commands", "[cli]") {
    CHECK(out_of("e1-step acb") == "cab\n");
    CHECK(out_of("e1-step abc") == "");
    CHECK(out_of("e1-step aca") == "aac\ncaa\n");
    CHECK(out_of("e2-step abba") == "baab\n");
    CHECK(out_of("e2-step cbbc") == "bccb\n");
    CHECK(out_of("e2-step abca") == "");
    CHECK(out_of("equiv --relation 1 ac ca") == "true\n");
    CHECK(out_of("equiv --relation 1 abcbabcacb bacabcbabc") == "false\n");
    CHECK(out_of("equiv --relation me abcabcbbc ababccbcb") == "true\n");
    CHECK(out_of("equiv --relation me cbacabacbabcacb abcacbcabcbacab") == "true\n");
    CHECK(out_of("equiv --relation me ab ba") == "false\n");
    const auto chain = out_of("equiv --relation me --chain abcabcbbc ababccbcb");
    CHECK(chain.substr(0, 5) == "true\n");
    CHECK(chain.find("E1") != std::string::npos);
    CHECK(chain.find("E2") != std::string::npos);
    CHECK(chain.find("-> ababccbcb") != std::string::npos);
}

TEST_CASE("table commands", "[cli]") {
    const auto zeta = out_of("zeta-table -r 2 -n 13 --format csv --threads 2");
    CHECK(zeta.find("n,zeta,count,percent\n") == 0);
    CHECK(zeta.find("1,0,2,100.00\n") != std::string::npos);
    CHECK(zeta.find("13,4,180,2.20\n") != std::string::npos);

    const auto unamb = out_of("unambiguity-table -n 5 --format csv --threads 2");
    CHECK(unamb.find("k,sq,un,pr\n") == 0);
    CHECK(unamb.find("1,3,3,100.0\n") != std::string::npos);
    CHECK(unamb.find("5,30,18,60.0\n") != std::string::npos);
}

TEST_CASE("witness and divergence commands", "[cli]") {
    CHECK(line_count(out_of("lr-witnesses -r 2 -n 7")) == 2);
    const auto div = out_of("divergence -n 9 --threads 2");
    CHECK(line_count(div) == 12);
    CHECK(div.find("ababcbabc\n") != std::string::npos);
    CHECK(div.find("cbcbabcba\n") != std::string::npos);
    CHECK(out_of("divergence -n 8 --threads 2") == "");
    CHECK(out_of("divergence -n 12 --alphabet ab --threads 2") == "");
}

TEST_CASE("class commands", "[cli]") {
    CHECK(out_of("m-class acbac") == "acbac\nacbca\ncabac\ncabca\n");
    CHECK(out_of("m-class b") == "b\n");
    CHECK(out_of("m-class abc") == "abc\n");
    const auto classes = out_of("sf-classes --max-len 9 --format json --threads 2");
    std::size_t count = 0;
    for (std::size_t pos = 0; (pos = classes.find("\"members\"", pos)) != std::string::npos; ++pos)
        ++count;
    CHECK(count == 44);
    CHECK(classes.find("\"babcbab\"") != std::string::npos);
    CHECK(classes.find("\"bcbabcb\"") != std::string::npos);
}

TEST_CASE("pair commands", "[cli]") {
    const auto pairs = out_of("spectrum-pairs -n 18 -k 3 --threads 2");
    CHECK(line_count(pairs) == 6);
    CHECK(pairs.find("abcacbcabcbabcabac cabacbabcbacbcacba\n") != std::string::npos);
    CHECK(out_of("spectrum-pairs -n 8 -k 3 --threads 2") == "");
    const auto me = out_of("me-pairs -n 15 --threads 2");
    CHECK(me == "abcacbcabcbacab cbacabacbabcacb\nbacabcbacbcacba bcacbabcabacabc\n");
    CHECK(out_of("me-pairs -n 10 --threads 2") == "");
}

TEST_CASE("insertion probe command", "[cli]") {
    CHECK(out_of("insertion-probe -r 2 -n 3") == "no counterexample up to n=3\n");
}

TEST_CASE("square-free word listing command", "[cli]") {
    const auto words = out_of("sqfree-words -n 3");
    CHECK(line_count(words) == 12);
    CHECK(words.find("aba\n") == 0);
    CHECK(line_count(out_of("sqfree-words -n 10")) == 144);
    CHECK(out_of("sqfree-words -n 4 --alphabet ab") == "");
}

TEST_CASE("morphism commands", "[cli]") {
    CHECK(out_of("morphism apply --name leech a") == "abcbacbcabcba\n");
    CHECK(out_of("morphism apply --name leech b") == "bcacbacabcacb\n");
    CHECK(out_of("morphism apply --name leech c") == "cabacbabcabac\n");
    const auto iter = out_of(
        "morphism iterate --name leech --steps 1 cabacbabcbacbcacba abcacbcabcbabcabac");
    CHECK(iter.find("step 1: length 234, square-free both: true, equal 3-spectrum: true, "
                    "equal matrices all orderings: true\n") != std::string::npos);

    const auto dir = std::filesystem::temp_directory_path() / "wordprint-cli-test";
    std::filesystem::create_directories(dir);
    const auto file = dir / "doubling.json";
    std::ofstream(file) << R"({"a": "ab", "b": "ba"})";
    CHECK(out_of("morphism apply --file " + file.string() + " ab") == "abba\n");
    std::filesystem::remove_all(dir);
}

TEST_CASE("exit codes distinguish failure kinds", "[cli]") {
    CHECK(run_cli("no-such-command").exit_code == 2);
    CHECK(run_cli("pnf --side sideways abc").exit_code == 2);
    CHECK(run_cli("mirror abd").exit_code == 3);
    CHECK(run_cli("pnf \"\"").exit_code == 3);
    CHECK(run_cli("shortest-gpr aaaaaaaaaaaaaaaaaaaaaaaaaaaaaa").exit_code == 4);
    CHECK(run_cli("equiv --relation me --closure-cap 4 acacacacacac ccccccaaaaaa").exit_code == 4);
    CHECK(run_cli("zeta-table -r 2 -n 26 --node-budget 1000").exit_code == 4);
}

TEST_CASE("warm caches replay byte-identically", "[cli]") {
    const auto dir = std::filesystem::temp_directory_path() / "wordprint-cli-cache";
    std::filesystem::remove_all(dir);
    const std::string args = "zeta-table -r 2 -n 10 --format csv --cache-dir " + dir.string();
    const auto cold = out_of(args);
    const auto warm = out_of(args);
    CHECK(cold == warm);
    CHECK_FALSE(std::filesystem::is_empty(dir));
    // and a different format is a different cache entry
    const auto json_out = out_of("zeta-table -r 2 -n 10 --format json --cache-dir " + dir.string());
    CHECK(json_out != cold);
    // the directory can also come from the environment
    const auto env_run = out_of("zeta-table -r 2 -n 10 --format csv", 0, dir.string());
    CHECK(env_run == cold);
    std::filesystem::remove_all(dir);
}
