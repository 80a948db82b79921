// End-to-end checks of the installed CLI: one per exit code, plus the
// byte-determinism of --deterministic reports.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>

namespace {

int run(const std::string& args) {
    std::string cmd = std::string(WEYLGEO_CLI_PATH) + " " + args;
    int rc = std::system(cmd.c_str());
    REQUIRE(rc != -1);
    return WEXITSTATUS(rc);
}

std::string slurp(const char* path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(bool(in));
    return std::string((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
}

} // namespace

TEST_CASE("exit code 0: all checks pass") {
    CHECK(run("verify jets --quiet > cli_out.txt") == 0);
    std::remove("cli_out.txt");
}

TEST_CASE("exit code 1: a check fails") {
    // an 8x16 mesh is far too coarse for the degree integral's 1e-3 budget
    CHECK(run("verify degree --resolution 8 --quiet > /dev/null") == 1);
}

TEST_CASE("exit code 2: usage errors") {
    CHECK(run("verify nonsense > /dev/null 2>&1") == 2);
    CHECK(run("bogus-subcommand > /dev/null 2>&1") == 2);
    CHECK(run("geodesics --out g.csv --ic not-numbers > /dev/null 2>&1") == 2);
}

TEST_CASE("exit code 3: io failure") {
    CHECK(run("verify jets --quiet --out /nonexistent-dir/report.json > /dev/null 2>&1") == 3);
    CHECK(run("report --in no_such_report.json > /dev/null 2>&1") == 3);
}

TEST_CASE("deterministic reports are byte-identical across runs") {
    CHECK(run("verify jets --quiet --deterministic --seed 11 --out cli_a.json > /dev/null") == 0);
    CHECK(run("verify jets --quiet --deterministic --seed 11 --out cli_b.json > /dev/null") == 0);
    CHECK(slurp("cli_a.json") == slurp("cli_b.json"));

    // report round trip through the CLI reproduces the file
    CHECK(run("report --in cli_a.json --deterministic --out cli_c.json") == 0);
    CHECK(slurp("cli_a.json") == slurp("cli_c.json"));
    std::remove("cli_a.json");
    std::remove("cli_b.json");
    std::remove("cli_c.json");
}
