#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <json.hpp>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>
#include <sys/wait.h>

namespace {

struct RunResult {
    int exit_code = -1;
    std::string out;
    std::string err;
};

std::filesystem::path work_dir() {
    const auto dir = std::filesystem::temp_directory_path() / "tvmc_cli_tests";
    std::filesystem::create_directories(dir);
    return dir;
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

RunResult run_cli(const std::string& args) {
    const auto err_path = work_dir() / "stderr.txt";
    const std::string cmd = std::string{TVMC_BIN} + " " + args + " 2>" + err_path.string();
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    RunResult r;
    char buf[4096];
    for (std::size_t n; (n = fread(buf, 1, sizeof buf, pipe)) > 0;) r.out.append(buf, n);
    const int status = pclose(pipe);
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    r.err = slurp(err_path);
    return r;
}

std::string data(const char* file) { return std::string{TVMC_DATA_DIR} + "/" + file; }

std::filesystem::path write_model(const char* name, const std::string& text) {
    const auto path = work_dir() / name;
    std::ofstream(path) << text;
    return path;
}

const std::string check_pinned = "check --model " + data("stereo.pks") +
                                 " --property 'G (edb -> F (cert | fl))' --automaton " +
                                 data("a_ref.ba");

} // namespace

TEST_CASE("pinned check in json") {
    const auto r = run_cli(check_pinned + " --format json");
    REQUIRE(r.exit_code == 0);
    const auto doc = nlohmann::json::parse(r.out);
    CHECK(doc["verdict"] == "maybe");
    CHECK(doc["counterexample"]["projection"]["text"] == "s0, s2, s5, (s7)^ω");
    CHECK(doc["counterexample"]["from"] == "pessimistic");
    CHECK(doc["proof"]["steps"].size() == 16);
    CHECK(doc["proof"]["from"] == "optimistic");
    CHECK(doc["provenance"].contains("pessimistic_model"));

    // byte-identical across identical invocations
    CHECK(run_cli(check_pinned + " --format json").out == r.out);
}

TEST_CASE("pinned check in markdown and plain") {
    const auto md = run_cli(check_pinned + " --format markdown");
    REQUIRE(md.exit_code == 0);
    CHECK(md.out.find("# Verification result") != std::string::npos);
    CHECK(md.out.find("s0, s2, s5, (s7)^ω") != std::string::npos);
    CHECK(md.out.find("| Step | Component | Rule |") != std::string::npos);

    const auto plain = run_cli(check_pinned + " --format plain");
    REQUIRE(plain.exit_code == 0);
    CHECK(plain.out.find("verdict: maybe") != std::string::npos);
    CHECK(plain.out.find("16 steps") != std::string::npos);
}

TEST_CASE("evidence emission can be switched off") {
    const auto r = run_cli(check_pinned + " --format json --no-emit-proof");
    REQUIRE(r.exit_code == 0);
    const auto doc = nlohmann::json::parse(r.out);
    CHECK(!doc.contains("proof"));
    CHECK(doc.contains("counterexample"));

    const auto r2 = run_cli(check_pinned + " --format json --no-emit-counterexample --emit-product");
    REQUIRE(r2.exit_code == 0);
    const auto doc2 = nlohmann::json::parse(r2.out);
    CHECK(!doc2.contains("counterexample"));
    CHECK(doc2.contains("products"));
}

TEST_CASE("verification without a substitute automaton") {
    const auto r = run_cli("check --model " + data("stereo.pks") +
                           " --property 'G (edb -> F (cert | fl))' --format json");
    REQUIRE(r.exit_code == 0);
    CHECK(nlohmann::json::parse(r.out)["verdict"] == "maybe");
}

TEST_CASE("input failures exit with the input-error code") {
    SUBCASE("missing model file") {
        const auto r = run_cli("check --model /nonexistent.pks --property 'G p'");
        CHECK(r.exit_code == 2);
        CHECK(!r.err.empty());
    }
    SUBCASE("property syntax error") {
        const auto r = run_cli("check --model " + data("stereo.pks") + " --property 'G (edb ->'");
        CHECK(r.exit_code == 2);
        CHECK(r.err.find("property:") != std::string::npos);
        CHECK(r.err.find("expected") != std::string::npos);
    }
    SUBCASE("property over undeclared atoms") {
        const auto r = run_cli("check --model " + data("stereo.pks") + " --property 'G zzz'");
        CHECK(r.exit_code == 2);
    }
    SUBCASE("model with a dangling state is diagnosed") {
        const auto path = write_model("dangling.pks", R"({
            "atoms": ["p"],
            "states": [{"id": "s0", "labels": {"p": "T"}},
                       {"id": "s1", "labels": {"p": "F"}}],
            "initial": ["s0"],
            "transitions": [["s0", "s1"]]
        })");
        const auto r = run_cli("check --model " + path.string() + " --property 'G p'");
        CHECK(r.exit_code == 2);
        CHECK(r.err.find("non-total state") != std::string::npos);
        CHECK(r.err.find("s1") != std::string::npos);
    }
}

TEST_CASE("warnings gate on strict validation only") {
    const auto path = write_model("unreachable.pks", R"({
        "atoms": ["p"],
        "states": [{"id": "s0", "labels": {"p": "T"}},
                   {"id": "s9", "labels": {"p": "T"}}],
        "initial": ["s0"],
        "transitions": [["s0", "s0"], ["s9", "s9"]]
    })");
    const auto relaxed = run_cli("check --model " + path.string() + " --property 'G p' --format json");
    CHECK(relaxed.exit_code == 0);
    CHECK(nlohmann::json::parse(relaxed.out)["verdict"] == "true");

    const auto strict = run_cli("check --model " + path.string() +
                                " --property 'G p' --strict-validate");
    CHECK(strict.exit_code == 2);
    CHECK(strict.err.find("unreachable") != std::string::npos);
}

TEST_CASE("completion oracle") {
    SUBCASE("mixed verdict across sixteen completions") {
        const auto r = run_cli("oracle --model " + data("stereo.pks") +
                               " --property 'G (edb -> F (cert | fl))' --format json");
        REQUIRE(r.exit_code == 0);
        const auto doc = nlohmann::json::parse(r.out);
        CHECK(doc["total"] == 16);
        CHECK(doc["summary"] == "mixed");
        CHECK(doc["completions"].size() == 16);
    }
    SUBCASE("a model without unknowns has a single completion") {
        const auto r = run_cli("oracle --model " + data("maybe_all_agree.pks") +
                               " --property 'p | !p' --format plain");
        REQUIRE(r.exit_code == 0);
        CHECK(r.out.find("summary: all (2/2)") != std::string::npos);

        const auto path = write_model("closed.pks", R"({
            "atoms": ["p"],
            "states": [{"id": "s0", "labels": {"p": "T"}}],
            "initial": ["s0"],
            "transitions": [["s0", "s0"]]
        })");
        const auto one = run_cli("oracle --model " + path.string() + " --property 'G p' --format plain");
        REQUIRE(one.exit_code == 0);
        CHECK(one.out.find("(none): satisfies") != std::string::npos);
        CHECK(one.out.find("summary: all (1/1)") != std::string::npos);
    }
    SUBCASE("too many unknowns to enumerate") {
        std::string states, transitions;
        for (int i = 0; i < 5; ++i) {
            if (i) {
                states += ", ";
                transitions += ", ";
            }
            states += R"({"id": "s)" + std::to_string(i) +
                      R"(", "labels": {"a": "U", "b": "U", "c": "U", "d": "U", "e": "U"}})";
            transitions += R"([ "s)" + std::to_string(i) + R"(", "s)" +
                           std::to_string((i + 1) % 5) + R"(" ])";
        }
        const auto path = write_model("wide_open.pks",
                                      R"({"atoms": ["a", "b", "c", "d", "e"], "states": [)" + states +
                                          R"(], "initial": ["s0"], "transitions": [)" + transitions +
                                          "]}");
        const auto r = run_cli("oracle --model " + path.string() + " --property 'G a'");
        CHECK(r.exit_code == 2);
        CHECK(!r.err.empty());
    }
}

TEST_CASE("usage surface") {
    CHECK(run_cli("--help").exit_code == 0);
    CHECK(run_cli("--help").out.find("check") != std::string::npos);
    CHECK(run_cli("check --help").out.find("--strict-validate") != std::string::npos);
    CHECK(run_cli("").exit_code == 2);                        // a subcommand is required
    CHECK(run_cli("frobnicate").exit_code == 2);
    CHECK(run_cli("check --property 'G p'").exit_code == 2);  // --model is required
    CHECK(run_cli("check --model x --property 'G p' --format yaml").exit_code == 2);
}
