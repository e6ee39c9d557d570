#include <doctest.h>

#include <json.hpp>

#include <cstdio>
#include <cstdlib>
#include <regex>
#include <string>
#include <sys/wait.h>

using nlohmann::json;

namespace {

const std::string kCli = GRKEX_CLI_PATH;
const std::string kDataDir = GRKEX_DATA_DIR;

struct RunResult {
    int status;
    std::string out;
};

// Runs a full shell command, capturing stdout.
RunResult run_cmd(const std::string& cmd) {
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::string out;
    char buf[4096];
    std::size_t got;
    while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, got);
    const int rc = pclose(pipe);
    REQUIRE(WIFEXITED(rc));
    return {WEXITSTATUS(rc), out};
}

// Runs the tool with the given arguments.
RunResult run(const std::string& args) { return run_cmd(kCli + " " + args); }

std::string strip_wall(std::string text) {
    static const std::regex wall("\n\\s*\"wall_ms\": [^\n]*");
    return std::regex_replace(text, wall, "");
}

}  // namespace

TEST_CASE("the demo command reports a matching exchange") {
    RunResult r = run("kex demo --seed 42 --exp-digits 8 2>/dev/null");
    CHECK(r.status == 0);
    json rec = json::parse(r.out);
    CHECK(rec["command"] == "kex.demo");
    CHECK(rec["match"] == true);
    CHECK(rec["alice_shared"] == rec["bob_shared"]);
    CHECK(rec["seed"] == 42);
}

TEST_CASE("records are deterministic apart from the timing field") {
    const std::string args = "ddh exp3 --fast --trials 30 --seed 5 2>/dev/null";
    RunResult a = run(args);
    RunResult b = run(args);
    CHECK(a.status == 0);
    CHECK(strip_wall(a.out) == strip_wall(b.out));
    CHECK_FALSE(strip_wall(a.out).empty());
}

TEST_CASE("the environment seed applies when no flag is given") {
    RunResult r = run("kex demo --exp-digits 6 2>/dev/null");
    CHECK(json::parse(r.out)["seed"] == 1);
    RunResult env =
        run_cmd("GRKEX_SEED=99 " + kCli + " kex demo --exp-digits 6 2>/dev/null");
    CHECK(json::parse(env.out)["seed"] == 99);
    RunResult both = run_cmd("GRKEX_SEED=99 " + kCli +
                             " kex demo --seed 3 --exp-digits 6 2>/dev/null");
    CHECK(json::parse(both.out)["seed"] == 3);
}

TEST_CASE("usage errors exit with status two") {
    CHECK(run("kex demo --no-such-flag 2>/dev/null").status == 2);
    CHECK(run("2>/dev/null").status == 2);
    CHECK(run("ddh exp1 --exp-digits 4 --exp-lo 10 --exp-hi 20 --trials 1 2>/dev/null").status ==
          2);
    CHECK(run("--help >/dev/null 2>&1").status == 0);
}

TEST_CASE("the challenge files check out from the command line") {
    RunResult r = run("challenge check --m " + kDataDir + "/challenge/M.txt --ma " + kDataDir +
                      "/challenge/Ma.txt --mb " + kDataDir + "/challenge/Mb.txt 2>/dev/null");
    CHECK(r.status == 0);
    json rec = json::parse(r.out);
    CHECK(rec["warnings"].size() == 1);
    CHECK(rec["total_support"] == json::array({551, 545, 545}));

    RunResult rt = run("challenge roundtrip --in " + kDataDir + "/challenge/M.txt 2>/dev/null");
    CHECK(rt.status == 0);
    CHECK(json::parse(rt.out)["canonical"] == true);
}

TEST_CASE("key material flows between commands through files") {
    const std::string dir = "cli_kex_tmp";
    const std::string sh = "rm -rf " + dir + " && mkdir " + dir;
    REQUIRE(std::system(sh.c_str()) == 0);
    RunResult kg =
        run("kex keygen --seed 7 --k 2 --out " + dir + "/a.json 2>/dev/null");
    CHECK(kg.status == 0);
    RunResult pk = run("kex pubkey --key " + dir + "/a.json --out " + dir + "/a.pub 2>/dev/null");
    CHECK(pk.status == 0);
    RunResult sh2 = run("kex shared --key " + dir + "/a.json --peer " + dir +
                        "/a.pub 2>/dev/null");
    CHECK(sh2.status == 0);
    // Shared secret of a party with itself: (M^a)^a both ways, same digest
    // as a direct power check through the bundle's own public key.
    json rec = json::parse(sh2.out);
    CHECK(rec["digest"].get<std::string>().size() == 16);
    CHECK(std::system(("rm -rf " + dir).c_str()) == 0);
}
