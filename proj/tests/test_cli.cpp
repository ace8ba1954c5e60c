// End-to-end tests of the command-line tool: spawns the built binary and
// inspects stdout plus exit codes.

#include <doctest.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>

#include <nlohmann/json.hpp>

using nlohmann::json;

namespace {

#ifndef IBIFSA_CLI_PATH
#error "IBIFSA_CLI_PATH must point at the built binary"
#endif

struct RunResult {
    int exit_code = -1;
    std::string out;
};

RunResult run_cli(const std::string& args) {
    const std::string command = std::string(IBIFSA_CLI_PATH) + " " + args + " 2>&1";
    FILE* pipe = popen(command.c_str(), "r");
    REQUIRE(pipe != nullptr);
    RunResult result;
    std::array<char, 4096> buffer;
    size_t got;
    while ((got = fread(buffer.data(), 1, buffer.size(), pipe)) > 0) {
        result.out.append(buffer.data(), got);
    }
    const int status = pclose(pipe);
    result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return result;
}

std::string temp_path(const std::string& name) {
    return std::string("/tmp/ibifsa_cli_test_") + name;
}

void write_temp(const std::string& path, const std::string& content) {
    std::ofstream out(path);
    REQUIRE(out.good());
    out << content;
}

const char* e3_machine_doc = R"({
  "group": "cyclic:2",
  "alphabet": ["u"],
  "lambda": "1/2",
  "mu": {"u": [["1/2","1/4"],["1/4","1/2"]]},
  "nu": {"u": [["1/4","1/2"],["1/2","1/4"]]},
  "structure": "none"
})";

const char* e1_subset_doc = R"({
  "carrier": "group",
  "mu": ["1/2", "9/10"],
  "nu": ["2/5", "0"]
})";

} // namespace

TEST_CASE("group make / validate round-trip") {
    const std::string path = temp_path("g.json");
    auto make = run_cli("group make cyclic:4 -o " + path);
    CHECK(make.exit_code == 0);
    auto validate = run_cli("group validate " + path);
    CHECK(validate.exit_code == 0);
    CHECK(validate.out.find("valid group: order 4") != std::string::npos);

    auto bad = run_cli("group make nosuch:4");
    CHECK(bad.exit_code == 2);
}

TEST_CASE("check subgroup prints the degree and verdict") {
    const std::string s = temp_path("s.json");
    write_temp(s, e1_subset_doc);

    auto pass = run_cli("check subgroup cyclic:2 " + s + " --lambda 1/2");
    CHECK(pass.exit_code == 0);
    CHECK(pass.out.find("overall = 3/5") != std::string::npos);
    CHECK(pass.out.find("verdict: PASS (3/5 >= 1/2)") != std::string::npos);

    auto fail = run_cli("check subgroup cyclic:2 " + s + " --lambda 7/10");
    CHECK(fail.exit_code == 1);
    CHECK(fail.out.find("verdict: FAIL") != std::string::npos);

    // without lambda: degrees only, exit 0
    auto plain = run_cli("check subgroup cyclic:2 " + s);
    CHECK(plain.exit_code == 0);
    CHECK(plain.out.find("verdict") == std::string::npos);

    // JSON output carries the verdict and conditions
    auto as_json = run_cli("check subgroup cyclic:2 " + s + " --lambda 1/2 --format json");
    CHECK(as_json.exit_code == 0);
    const json j = json::parse(as_json.out);
    CHECK(j["conditions"]["closure_mu"] == "3/5");
    CHECK(j["verdict"] == "PASS");
}

TEST_CASE("machine run and extend") {
    const std::string m = temp_path("m.json");
    write_temp(m, e3_machine_doc);

    auto run = run_cli("machine run " + m + " --from 0 --word \"u u\" --to 1");
    CHECK(run.exit_code == 0);
    CHECK(run.out == "mu=1/4 nu=1/2\n");

    auto empty = run_cli("machine run " + m + " --from 0 --word \"\" --to 0");
    CHECK(empty.out == "mu=1 nu=0\n");

    auto extend = run_cli("machine extend " + m + " --word \"u u\" --format json");
    CHECK(extend.exit_code == 0);
    const json j = json::parse(extend.out);
    CHECK(j["a_star"][0][0] == "1/2");
    CHECK(j["a_star"][0][1] == "1/4");
    CHECK(j["b_star"][0][0] == "1/4");

    auto bad_state = run_cli("machine run " + m + " --from 9 --word \"u\" --to 0");
    CHECK(bad_state.exit_code == 2);
    auto bad_word = run_cli("machine run " + m + " --from 0 --word \"z\" --to 0");
    CHECK(bad_word.exit_code == 2);
}

TEST_CASE("machine validate reports structural degrees") {
    const std::string m = temp_path("m2.json");
    write_temp(m, e3_machine_doc);
    auto result = run_cli("machine validate " + m + " --structure product-subgroup");
    CHECK(result.exit_code == 0);
    CHECK(result.out.find("u.closure_mu = 1") != std::string::npos);

    // inconsistent document
    const std::string bad = temp_path("bad.json");
    write_temp(bad, R"({
      "group": "cyclic:2", "alphabet": ["u"], "lambda": "1",
      "mu": {"u": [["3/4","0"],["0","0"]]},
      "nu": {"u": [["1/2","1"],["1","1"]]}
    })");
    auto invalid = run_cli("machine validate " + bad);
    CHECK(invalid.exit_code == 2);
    CHECK(invalid.out.find("(0,u,0)") != std::string::npos);
}

TEST_CASE("check subsemi uses the machine lambda by default") {
    const std::string m = temp_path("m3.json");
    const std::string s = temp_path("s3.json");
    write_temp(m, e3_machine_doc);
    write_temp(s, R"({"carrier": "group", "mu": ["1", "0"], "nu": ["0", "1"]})");

    // overall 1/2 >= machine lambda 1/2
    auto check = run_cli("check subsemi " + m + " " + s);
    CHECK(check.exit_code == 0);
    CHECK(check.out.find("transition_mu = 3/4") != std::string::npos);
    CHECK(check.out.find("overall = 1/2") != std::string::npos);
    CHECK(check.out.find("verdict: PASS (1/2 >= 1/2)") != std::string::npos);

    auto strict = run_cli("check subsemi " + m + " " + s + " --lambda 3/4");
    CHECK(strict.exit_code == 1);

    auto with_star = run_cli("check subsemi " + m + " " + s + " --max-len 3");
    CHECK(with_star.exit_code == 0);
    CHECK(with_star.out.find("star.transition_mu") != std::string::npos);
    CHECK(with_star.out.find("epsilon_mu") != std::string::npos);

    auto kernel = run_cli("check kernel " + m + " " + s);
    CHECK(kernel.exit_code == 0);
    CHECK(kernel.out.find("difference_mu = 3/4") != std::string::npos);

    // carrier mismatch: subset of the wrong size
    write_temp(s, R"({"carrier": "group", "mu": ["1"], "nu": ["0"]})");
    auto mismatch = run_cli("check subsemi " + m + " " + s);
    CHECK(mismatch.exit_code == 2);
}

TEST_CASE("verify exit codes and formats") {
    auto pass = run_cli("verify thm-ext --group cyclic:2 --denominator 2 --max-len 3");
    CHECK(pass.exit_code == 0);
    CHECK(pass.out.find("counterexamples: 0") != std::string::npos);

    auto mutate = run_cli("verify thm-ext --group cyclic:2 --denominator 1 --max-len 3 --mutate");
    CHECK(mutate.exit_code == 1);

    auto huge = run_cli("verify thm-subsemi-star --group cyclic:3 --denominator 2");
    CHECK(huge.exit_code == 2);
    CHECK(huge.out.find("2176782336") != std::string::npos);

    auto junit = run_cli("verify thm-ext --group cyclic:2 --denominator 1 --junit");
    CHECK(junit.exit_code == 0);
    CHECK(junit.out.find("<testsuite") != std::string::npos);

    auto unknown = run_cli("verify thm-nothing --group cyclic:2");
    CHECK(unknown.exit_code == 2);
}

TEST_CASE("verify reports are deterministic across worker counts") {
    const std::string one = temp_path("one.json");
    const std::string four = temp_path("four.json");
    auto r1 = run_cli("verify thm-subsemi-star --group cyclic:2 --denominator 1 --workers 1 "
                      "--format json -o " + one);
    auto r4 = run_cli("verify thm-subsemi-star --group cyclic:2 --denominator 1 --workers 4 "
                      "--format json -o " + four);
    CHECK(r1.exit_code == 0);
    CHECK(r4.exit_code == 0);
    std::ifstream f1(one), f4(four);
    json j1 = json::parse(f1), j4 = json::parse(f4);
    j1.erase("header");
    j4.erase("header");
    CHECK(j1.dump() == j4.dump());
}

TEST_CASE("hom image and preimage") {
    const std::string f = temp_path("f.json");
    const std::string s = temp_path("s4.json");
    write_temp(f, R"({"source": "cyclic:4", "target": "cyclic:2", "map": [0, 1, 0, 1]})");
    write_temp(s, R"({"carrier": "group",
                      "mu": ["1", "1/2", "3/4", "1/2"],
                      "nu": ["0", "1/4", "1/4", "1/2"]})");
    auto image = run_cli("hom image " + f + " " + s);
    CHECK(image.exit_code == 0);
    const json j = json::parse(image.out);
    CHECK(j["mu"] == json::array({"1", "1/2"}));
    CHECK(j["nu"] == json::array({"0", "1/4"}));

    const std::string t = temp_path("t.json");
    write_temp(t, R"({"carrier": "group", "mu": ["1", "1/3"], "nu": ["0", "1/3"]})");
    auto pre = run_cli("hom preimage " + f + " " + t);
    CHECK(pre.exit_code == 0);
    const json p = json::parse(pre.out);
    CHECK(p["mu"] == json::array({"1", "1/3", "1", "1/3"}));

    auto broken = run_cli("hom image " + f + " " + t);
    CHECK(broken.exit_code == 2);
}

TEST_CASE("usage errors exit with code 2") {
    CHECK(run_cli("").exit_code == 2);
    CHECK(run_cli("group").exit_code == 2);
    CHECK(run_cli("check subgroup cyclic:2").exit_code == 2);
    CHECK(run_cli("verify thm-ext --denominator x").exit_code == 2);
    CHECK(run_cli("check subgroup cyclic:2 /nonexistent.json").exit_code == 2);
}
