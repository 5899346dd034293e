#include <doctest.h>

#include <cstdio>
#include <string>

#include <json.hpp>

#include "testutil.hpp"

using namespace slk;
using test::gram;

namespace {

struct RunResult {
    int exit_code;
    std::string out;
};

RunResult run_cli(const std::string& args) {
    std::string cmd = std::string(SLK_CLI_PATH) + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::string out;
    char buf[4096];
    while (size_t n = fread(buf, 1, sizeof buf, pipe)) out.append(buf, n);
    int status = pclose(pipe);
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

const char* kQuadric = "\"1 2 2 4; 0 1 0 2; 0 0 1 2; 0 0 0 1\"";

}  // namespace

TEST_CASE("cli check") {
    RunResult r = run_cli(std::string("check ") + kQuadric);
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("unipotent: yes") != std::string::npos);
    CHECK(r.out.find("delta: 8") != std::string::npos);
    CHECK(r.out.find("s_parity: true") != std::string::npos);

    RunResult bad = run_cli("check \"1 1 0 0; 0 1 0 0; 0 0 1 0; 0 0 0 1\"");
    CHECK(bad.exit_code == 2);

    RunResult malformed = run_cli("check \"1 2; 0\"");
    CHECK(malformed.exit_code == 1);
}

TEST_CASE("cli check json round-trips through the parser") {
    RunResult r = run_cli(std::string("--json classify ") + kQuadric);
    REQUIRE(r.exit_code == 0);
    auto j = nlohmann::json::parse(r.out);
    CHECK(j["class"] == "Quadric");
    CHECK(j["delta"] == "8");
    CHECK(j["s_parity"] == true);
    // the canonical matrix re-parses to the same values
    MatrixDocument doc = parse_matrix_document(nlohmann::json{{"gram", j["canonical"]}}.dump());
    CHECK(doc.gram == quadric_gram());
}

TEST_CASE("cli mutate reproduces a paper display") {
    RunResult r =
        run_cli("mutate \"1 2 1 5; 0 1 0 4; 0 0 1 2; 0 0 0 1\" \"e4 s1 S2 s1 s2\" --display-order");
    CHECK(r.exit_code == 0);
    CHECK(parse_matrix_document(r.out).gram == build_Kn(2));

    RunResult bad = run_cli("mutate \"1 0; 0 1\" \"x9\"");
    CHECK(bad.exit_code == 1);
}

TEST_CASE("cli classify exit codes") {
    RunResult not_solution = run_cli("classify \"1 1 0 0; 0 1 0 0; 0 0 1 0; 0 0 0 1\"");
    CHECK(not_solution.exit_code == 2);
}

TEST_CASE("cli enumerate") {
    RunResult r = run_cli("--json enumerate 2 --classify");
    REQUIRE(r.exit_code == 0);
    auto j = nlohmann::json::parse(r.out);
    CHECK(j["count"] == 9);
    CHECK(j["histogram"]["Quadric"] == 8);
    CHECK(j["histogram"]["Trivial"] == 1);
}

TEST_CASE("cli orbit exit code on exhaustion") {
    RunResult r = run_cli(std::string("orbit ") + kQuadric +
                          " \"1 1 2 1; 0 1 3 3; 0 0 1 3; 0 0 0 1\" --max-entry 20");
    CHECK(r.exit_code == 3);
}

TEST_CASE("cli blowup and blowdown") {
    RunResult up = run_cli("blowup \"1 3 3; 0 1 3; 0 0 1\" \"2 -2 2\"");
    REQUIRE(up.exit_code == 0);
    CHECK(up.out.find("delta: 5") != std::string::npos);

    RunResult down = run_cli("blowdown \"1 2 4 2; 0 1 3 3; 0 0 1 3; 0 0 0 1\" \"1 0 0 0\"");
    REQUIRE(down.exit_code == 0);
    CHECK(down.out.find("z: 2 -2 2") != std::string::npos);

    RunResult reject = run_cli("blowup \"1 3 3; 0 1 3; 0 0 1\" \"1 0 0\"");
    CHECK(reject.exit_code == 2);
}

TEST_CASE("cli markov") {
    RunResult r = run_cli("--json markov 3 3 6");
    REQUIRE(r.exit_code == 0);
    auto j = nlohmann::json::parse(r.out);
    CHECK(j["value"] == "0");
    CHECK(j["canonical"][0] == "3");
}

TEST_CASE("cli reads stdin for '-'") {
    RunResult r = run_cli(std::string("check - <<< ") + kQuadric);
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("delta: 8") != std::string::npos);
}

TEST_CASE("SLK_MAX_NODES overrides the search budget") {
    std::string args = std::string("orbit ") + kQuadric +
                       " \"1 1 2 1; 0 1 3 3; 0 0 1 3; 0 0 0 1\" --json";
    RunResult r = run_cli("env SLK_MAX_NODES=10 " + std::string(SLK_CLI_PATH) + " " + args);
    CHECK(r.exit_code == 3);
    auto j = nlohmann::json::parse(r.out);
    CHECK(j["reason"] == "budget_exhausted");
}

TEST_CASE("big integers survive the JSON round trip") {
    // entries grow like Markov numbers: 32 alternating mutations push them
    // far beyond 64 bits
    std::string word = "\"";
    for (int i = 0; i < 16; i++) word += "s1 s2 ";
    word.back() = '"';
    RunResult r = run_cli(std::string("--json mutate ") + kQuadric + " " + word);
    REQUIRE(r.exit_code == 0);
    auto j = nlohmann::json::parse(r.out);
    IntMatrix big = parse_matrix_document(j.dump()).gram;
    Integer largest = 0;
    for (const auto& x : big.data)
        if (abs(x) > largest) largest = abs(x);
    CHECK(largest > Integer("18446744073709551615"));  // 2^64 - 1
    // undo through the library: the witness inverts exactly
    BraidWord w;
    for (int i = 0; i < 16; i++) { w.push_back(sigma(1)); w.push_back(sigma(2)); }
    CHECK(apply_word(big, inverse_word(w)) == quadric_gram());
}

TEST_CASE("matrix document parsing") {
    CHECK(parse_matrix_document("1 2; 0 1").gram == gram("1 2; 0 1"));
    CHECK(parse_matrix_document("{\"gram\": [[1, \"2\"], [0, 1]]}").gram == gram("1 2; 0 1"));
    MatrixDocument named = parse_matrix_document("{\"gram\": [[1]], \"name\": \"x\"}");
    CHECK(named.name == "x");
    CHECK_THROWS_AS(parse_matrix_document("1 2; 0"), ParseFailure);
    CHECK_THROWS_AS(parse_matrix_document("{\"gram\": 3}"), ParseFailure);
    CHECK_THROWS_AS(parse_matrix_document("  "), ParseFailure);
    CHECK_THROWS_AS(parse_element("a b"), ParseFailure);
    CHECK(parse_element("1,0, -2") == Element{1, 0, -2});
}
