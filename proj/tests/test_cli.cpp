#include <doctest.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>

#include <json.hpp>

using nlohmann::json;

namespace {

struct CliResult {
    int exit_code = -1;
    std::string stdout_text;
};

// Runs the built CLI (path from the LIPT_CLI environment variable set by
// ctest) and captures stdout and the exit code.
CliResult run_cli(const std::string& args) {
    const char* bin = std::getenv("LIPT_CLI");
    REQUIRE(bin != nullptr);
    std::string cmd = std::string(bin) + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    CliResult res;
    std::array<char, 4096> buf;
    size_t got;
    while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0)
        res.stdout_text.append(buf.data(), got);
    int status = pclose(pipe);
    res.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return res;
}

} // namespace

TEST_CASE("free subcommand matches the documented example") {
    CliResult r = run_cli(
        "free --fn const1 --n 4 --system '{\"rows\":[\"111\"],\"sigma\":\"111\"}'");
    CHECK(r.exit_code == 0);
    json j = json::parse(r.stdout_text);
    CHECK(j["command"] == "free");
    CHECK(j["result"]["free"] == false);
    CHECK(j["result"]["witness"]["x"] == json::array({"0000", "0000", "0000"}));
}

TEST_CASE("complexity subcommand") {
    CliResult r =
        run_cli("complexity --system '{\"rows\":[\"1111\"],\"sigma\":\"1111\"}'");
    CHECK(r.exit_code == 0);
    json j = json::parse(r.stdout_text);
    CHECK(j["result"]["complexity"] == 1);
}

TEST_CASE("identical command line and seed give byte-identical reports") {
    std::string cmd =
        "test --fn random:7:0.5 --n 10 --family rm:1 --dim 4 --trials 20 --seed 7";
    CliResult a = run_cli(cmd);
    CliResult b = run_cli(cmd);
    CHECK(a.exit_code == 0);
    CHECK(a.stdout_text == b.stdout_text);
    CHECK_FALSE(a.stdout_text.empty());
}

TEST_CASE("analyze reads truth-table files") {
    std::string path = "cli_test_table.txt";
    {
        std::ofstream out(path);
        out << "n=3\n" << "f0\n"; // ones exactly on points 4..7: <x,e3> = 1 side
    }
    CliResult r = run_cli("analyze --fn table:" + path + " --n 3 --eps 1/4");
    CHECK(r.exit_code == 0);
    json j = json::parse(r.stdout_text);
    CHECK(j["result"]["density"]["str"] == "1/2");
    CHECK(j["result"]["max_coeff"]["str"] == "1/2");
    std::remove(path.c_str());
}

TEST_CASE("exit codes distinguish usage, input, and budget errors") {
    CHECK(run_cli("no-such-command").exit_code == 1);
    CHECK(run_cli("analyze --n 3").exit_code == 1); // missing required --fn
    CHECK(run_cli("free --fn const1 --n 3 --system '{\"rows\":[\"111\"],\"sigma\":\"11\"}'")
              .exit_code == 2);
    CHECK(run_cli("count --fn const1 --n 16 --system '{\"rows\":[\"111\"],\"sigma\":\"111\"}'")
              .exit_code == 3);
    CHECK(run_cli("ramsey min-N --d 3").exit_code == 3);
}

TEST_CASE("turan and ramsey subcommands") {
    CliResult t = run_cli("turan --n 4 --d 2");
    CHECK(t.exit_code == 0);
    CHECK(json::parse(t.stdout_text)["result"]["size"] == 8);

    CliResult r = run_cli("ramsey min-N --d 2");
    CHECK(r.exit_code == 0);
    CHECK(json::parse(r.stdout_text)["result"]["min_n"] == 3);

    CliResult b = run_cli("ramsey affine-bound --d 3");
    CHECK(b.exit_code == 0);
    CHECK(json::parse(b.stdout_text)["result"]["bound"] == "69");
}

TEST_CASE("estimate and regularize run end to end") {
    CliResult e = run_cli(
        "estimate --fn const1 --n 8 --family "
        "'{\"rows\":[\"111\"],\"sigma\":\"111\"}' --dim 3 --trials 25 --seed 3");
    CHECK(e.exit_code == 0);
    CHECK(json::parse(e.stdout_text)["result"]["estimate"]["str"] == "1");

    CliResult g = run_cli("regularize --fn hyperplane:0101 --n 4 --eps 1/8");
    CHECK(g.exit_code == 0);
    CHECK(json::parse(g.stdout_text)["result"]["order"] == 1);
}

TEST_CASE("rm, obstructions and distance subcommands") {
    CliResult rm = run_cli("rm --d 2");
    CHECK(rm.exit_code == 0);
    CHECK(json::parse(rm.stdout_text)["result"]["k"] == 8);

    CliResult obs = run_cli("obstructions --prop constant --max-d 2");
    CHECK(obs.exit_code == 0);

    CliResult d = run_cli(
        "distance --fn const1 --n 3 --family '{\"rows\":[\"111\"],\"sigma\":\"111\"}'");
    CHECK(d.exit_code == 0);
    CHECK(json::parse(d.stdout_text)["result"]["distance"]["str"] == "1/2");
}
