#include <doctest.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <sys/wait.h>
#include <unistd.h>

namespace fs = std::filesystem;

namespace {

struct Run {
    int code;
    std::string out;
};

Run run(const std::string& args, const std::string& stdin_text = "") {
    std::string cmd;
    if (!stdin_text.empty())
        cmd = "printf '%s' '" + stdin_text + "' | ";
    cmd += std::string(QKERNEL_BIN) + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::string out;
    std::array<char, 4096> buf{};
    while (std::size_t got = std::fread(buf.data(), 1, buf.size(), pipe))
        out.append(buf.data(), got);
    const int status = pclose(pipe);
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

fs::path scratch() {
    static const fs::path dir = [] {
        auto d = fs::temp_directory_path() / ("qkernel_cli_" + std::to_string(::getpid()));
        fs::create_directories(d);
        return d;
    }();
    return dir;
}

std::string write_file(const std::string& name, const std::string& text) {
    auto path = scratch() / name;
    std::ofstream(path) << text;
    return path.string();
}

const std::string kSquare = "4 4\n0 1\n1 2\n2 3\n3 0\n";
const std::string kTriangle = "3 3\n0 1\n1 2\n2 0\n";

} // namespace

TEST_CASE("solve") {
    auto square = write_file("square.txt", kSquare);
    auto r = run("solve " + square);
    CHECK(r.code == 0);
    CHECK(r.out.find("size 2\n") != std::string::npos);
    CHECK(r.out.find("within_bound true\n") != std::string::npos);

    auto empty = run("solve -", "0 0\n");
    CHECK(empty.code == 0);
    CHECK(empty.out.find("kernel\n") != std::string::npos);
    CHECK(empty.out.find("bound_numerator 0\n") != std::string::npos);

    CHECK(run("solve -", "3 1\na b c\n").code == 2);
    CHECK(run("solve " + (scratch() / "missing.txt").string()).code == 2);

    auto json = run("solve --output json --trace " + square);
    CHECK(json.code == 0);
    CHECK(json.out.find("\"trace\"") != std::string::npos);
    CHECK(json.out.find("\"R0\"") != std::string::npos);
}

TEST_CASE("solve exits 4 when the fallback misses the bound") {
    // K5 with both arc directions plus six leaves in 2-cycles with vertex 6;
    // with the oracle capped out, the pivot order picks all six leaves.
    std::string text = "11 32\n";
    for (int i = 0; i < 6; ++i)
        text += std::to_string(i) + " 6\n6 " + std::to_string(i) + "\n";
    for (int u = 6; u < 11; ++u)
        for (int v = 6; v < 11; ++v)
            if (u != v)
                text += std::to_string(u) + " " + std::to_string(v) + "\n";
    auto path = write_file("k5.txt", text);
    auto capped = run("solve --oracle-cap 1 " + path);
    CHECK(capped.code == 4);
    CHECK(capped.out.find("valid true\n") != std::string::npos);
    CHECK(capped.out.find("within_bound false\n") != std::string::npos);
    CHECK(run("solve " + path).code == 0);
}

TEST_CASE("validate") {
    auto square = write_file("square.txt", kSquare);
    auto ok = run("validate " + square + " 0 2");
    CHECK(ok.code == 0);
    CHECK(ok.out.rfind("valid\n", 0) == 0);
    auto bad = run("validate " + square + " 0 1");
    CHECK(bad.code == 1);
    CHECK(bad.out.find("not independent") != std::string::npos);
    CHECK(run("validate " + square + " 0 9").code == 2);
    CHECK(run("validate " + square + " x").code == 2);
}

TEST_CASE("kernel") {
    CHECK(run("kernel -", kTriangle).out == "no kernel exists\n");
    CHECK(run("kernel -", kTriangle).code == 1);
    auto r = run("kernel -", kSquare);
    CHECK(r.code == 0);
    CHECK(r.out.rfind("kernel 0 2\n", 0) == 0);
}

TEST_CASE("sweep") {
    auto r = run("sweep --n-max 3 --mode conjecture3");
    CHECK(r.code == 0);
    CHECK(r.out.find("instances 69\n") != std::string::npos);
    CHECK(r.out.find("violations 0\n") != std::string::npos);

    auto one = run("sweep --n-max 4 --output csv");
    auto four = run("sweep --n-max 4 --output csv --jobs 4");
    CHECK(one.code == 0);
    CHECK(one.out == four.out);
    CHECK(run("sweep --n-max 4 --output json --engine solver").out ==
          run("sweep --n-max 4 --output json --engine solver --jobs 3").out);
    CHECK(run("sweep --n-max 6").code == 2);
}

TEST_CASE("generate and round trip") {
    auto g = run("generate cycle-union 2,4");
    CHECK(g.code == 0);
    CHECK(g.out == "6 6\n0 1\n1 0\n2 3\n3 4\n4 5\n5 2\n");
    CHECK(run("generate cycle-union 3").code == 2);
    CHECK(run("generate star-triangle 0").code == 2);
    CHECK(run("generate nonsense 1").code == 2);

    const char* families[] = {"cycle-union 2,4,4", "star-triangle 3", "bipartite 2 3 0-0,0-1,1-1,1-2",
                              "random 12 0.2 --seed 5", "kpartite 30 0.3 --seed 2", "random-arcs 40 90 --seed 1",
                              "code 4 1234"};
    for (const char* family : families) {
        for (const char* format : {"edgelist", "dot"}) {
            INFO(family << " as " << format);
            auto gen = run(std::string("generate ") + family + " --format " + format);
            REQUIRE(gen.code == 0);
            auto path = write_file("roundtrip.txt", gen.out);
            auto solved = run(std::string("solve --format ") + format + " " + path);
            CHECK(solved.code == 0);
            CHECK(solved.out.find("valid true\n") != std::string::npos);
        }
    }
}

TEST_CASE("usage errors") {
    CHECK(run("").code == 2);
    CHECK(run("solve --nope x").code == 2);
    CHECK(run("solve --oracle-cap 0 -", kSquare).code == 2);
    CHECK(run("solve --format gml -", kSquare).code == 2);
    CHECK(run("--help").code == 0);
}

TEST_CASE("solve output is deterministic") {
    auto a = run("generate kpartite 150 0.1 --seed 9");
    auto path = write_file("kp.txt", a.out);
    auto first = run("solve --output json --trace --seed 3 " + path);
    auto second = run("solve --output json --trace --seed 3 " + path);
    CHECK(first.code == 0);
    CHECK(first.out == second.out);
}
