// End-to-end checks of the command-line binary: golden transcripts over
// fixed inputs, exit-code semantics, and run-to-run byte stability.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <array>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>

namespace {

std::string cli_path() {
    const char* env = std::getenv("SUMSETKIT_CLI");
    REQUIRE_MESSAGE(env != nullptr, "SUMSETKIT_CLI must point at the binary");
    return env;
}

struct RunResult {
    int exit_code = -1;
    std::string out;
};

RunResult run(const std::string& args) {
    const std::string cmd = cli_path() + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    RunResult r;
    std::array<char, 4096> buf;
    std::size_t got;
    while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), got);
    const int status = pclose(pipe);
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

std::string write_temp(const std::string& name, const std::string& content) {
    const std::string path = "/tmp/sumsetkit_test_" + name;
    std::ofstream f(path);
    f << content;
    return path;
}

} // namespace

TEST_CASE("solve prints yes/no with exit 0") {
    const std::string f = write_temp("solve.txt", "1 2 3\n");
    CHECK(run("solve " + f + " --target 5").out == "yes\n");
    CHECK(run("solve " + f + " --target 5").exit_code == 0);

    const std::string g = write_temp("solve2.txt", "2 4\n");
    const RunResult r = run("solve " + g + " --target 3");
    CHECK(r.out == "no\n");
    CHECK(r.exit_code == 0);
}

TEST_CASE("malformed input exits 2") {
    const std::string f = write_temp("bad.txt", "x\n");
    CHECK(run("solve " + f + " --target 1").exit_code == 2);
    const std::string z = write_temp("zero.txt", "0 4\n");
    CHECK(run("all " + z + " --bound 4").exit_code == 2);
    CHECK(run("solve /tmp/definitely_missing_file_42 --target 1").exit_code == 2);
}

TEST_CASE("all prints sums ascending, one per line") {
    const std::string f = write_temp("all.txt", "1 2\n");
    const RunResult r = run("all " + f + " --bound 3");
    CHECK(r.out == "0\n1\n2\n3\n");
    CHECK(r.exit_code == 0);
}

TEST_CASE("every algorithm choice prints identical payloads") {
    const std::string f = write_temp("algos.txt", "3 5 5 9 14\n");
    const RunResult ref = run("all " + f + " --bound 25 --algo auto");
    for (const std::string algo : {"dp", "sigma", "main", "r0-sqrt", "r0-twothirds"}) {
        const RunResult r = run("all " + f + " --bound 25 --algo " + algo);
        CHECK(r.exit_code == 0);
        CHECK(r.out == ref.out);
    }
    CHECK(run("all " + f + " --bound 25 --algo nosuch").exit_code == 2);
}

TEST_CASE("mod prints residue sums") {
    const std::string f = write_temp("mod.txt", "2 3\n");
    const RunResult r = run("mod " + f + " --modulus 6");
    CHECK(r.out == "0\n2\n3\n5\n");
    CHECK(r.exit_code == 0);
}

TEST_CASE("count prints x count pairs") {
    const std::string f = write_temp("count.txt", "1 2 3\n");
    const RunResult r = run("count " + f + " --bound 3 --exact");
    CHECK(r.out == "0 1\n1 1\n2 1\n3 2\n");
}

TEST_CASE("card prints sum card pairs lexicographically") {
    const std::string f = write_temp("card.txt", "1 2\n");
    const RunResult r = run("card " + f + " --bound 3");
    CHECK(r.out == "0 0\n1 1\n2 1\n3 2\n");
}

TEST_CASE("witness prints the lexicographically smallest subset") {
    const std::string f = write_temp("wit.txt", "1 2 3\n");
    const RunResult r = run("witness " + f + " --bound 6 --target 4");
    CHECK(r.out == "1 3\n");
    CHECK(r.exit_code == 0);

    const RunResult zero = run("witness " + f + " --bound 6 --target 0");
    CHECK(zero.out == "\n");
    CHECK(zero.exit_code == 0);

    // 20 is not realizable under the bound
    CHECK(run("witness " + f + " --bound 6 --target 20").exit_code == 3);
    CHECK(run("witness " + f + " --bound 6 --target 5").out == "2 3\n");
}

TEST_CASE("bottleneck prints the threshold then side one") {
    const std::string f = write_temp("graph.txt", "4 3\n1 2 5\n2 3 1\n3 4 5\n");
    const RunResult r = run("bottleneck " + f);
    CHECK(r.out == "1\n1 2\n");
    CHECK(r.exit_code == 0);

    const std::string odd = write_temp("graph_odd.txt", "3 1\n1 2 5\n");
    CHECK(run("bottleneck " + odd).exit_code == 2);
}

TEST_CASE("cover prints generator length pairs that cover Z_m") {
    const RunResult r = run("cover --modulus 6 --length 6");
    CHECK(r.exit_code == 0);
    CHECK(r.out == "3 6\n2 6\n1 6\n");
}

TEST_CASE("bench emits one row per trial and algorithm with equal checksums") {
    const RunResult r = run("bench --n 40 --max-value 200 --bound 400 --seed 7 "
                            "--algo dp,main --trials 2");
    CHECK(r.exit_code == 0);
    std::vector<std::string> lines;
    std::size_t pos = 0;
    while (pos < r.out.size()) {
        const std::size_t nl = r.out.find('\n', pos);
        lines.push_back(r.out.substr(pos, nl - pos));
        pos = nl + 1;
    }
    REQUIRE(lines.size() == 5); // header + 2 trials x 2 algos
    CHECK(lines[0] == "trial algo time_ms checksum");
    const auto field = [](const std::string& line, int idx) {
        std::istringstream ss(line);
        std::string tok;
        for (int i = 0; i <= idx; ++i) ss >> tok;
        return tok;
    };
    CHECK(field(lines[1], 3) == field(lines[2], 3)); // same-trial checksums agree
    CHECK(field(lines[3], 3) == field(lines[4], 3));

    CHECK(run("bench --bound 100 --trials 0").out == "trial algo time_ms checksum\n");
    CHECK(run("bench --bound 100 --algo warp").exit_code == 2);
}

TEST_CASE("fixed-seed outputs are byte-identical across runs") {
    const std::string f = write_temp("golden.txt", "7 11 13 29 3 3\n");
    const RunResult a = run("all " + f + " --bound 60");
    const RunResult b = run("all " + f + " --bound 60");
    CHECK(a.out == b.out);
    const RunResult c = run("mod " + f + " --modulus 37");
    const RunResult d = run("mod " + f + " --modulus 37");
    CHECK(c.out == d.out);
}
