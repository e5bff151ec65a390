#define DOCTEST_CONFIG_IMPLEMENT
#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

namespace {

std::string g_bin;

struct RunResult {
    int code = -1;
    std::string out;
};

// runs through /bin/sh; stderr is folded into the capture
RunResult run(const std::string& args, const std::string& env = "") {
    std::string cmd;
    if (!env.empty())
        cmd += env + " ";
    cmd += g_bin + " " + args + " 2>&1";
    FILE* p = popen(cmd.c_str(), "r");
    REQUIRE(p != nullptr);
    RunResult r;
    char buf[4096];
    size_t n;
    while ((n = fread(buf, 1, sizeof buf, p)) > 0)
        r.out.append(buf, n);
    int st = pclose(p);
    r.code = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
    return r;
}

bool contains(const std::string& hay, const std::string& needle) {
    return hay.find(needle) != std::string::npos;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace

TEST_CASE("element operations print exact values") {
    RunResult r = run("eval --term 'PLP2(Z;R)' --a '(0,T)' --op neg");
    CHECK(r.code == 0);
    CHECK(r.out == "(-1,T)\n");
    r = run("eval --term 'PLP2(Z;R)' --op unit");
    CHECK(r.out == "(0,0)\n");
    r = run("eval --term 'PLP2(Z;R)' --a '(1,2)' --b '(0,0)' --op res");
    CHECK(r.out == "(-1,-2)\n");
    r = run("eval --term 'PLP2(Z;R)' --a '(0,T)' --b '(0,0)' --op compare");
    CHECK(r.out == "1\n");
    r = run("eval --term 'PLP2(Z;R)' --a '(0,T)' --op invertible");
    CHECK(r.out == "no\n");
    r = run("eval --term 'PLP2(Z;R)' --a '(0,T)' --op idempotent");
    CHECK(r.out == "yes\n");
    r = run("eval --term 'PLP2(Z;R)' --a '(0,T)' --op neg --json");
    CHECK(r.code == 0);
    CHECK(contains(r.out, "\"result\": \"(-1,T)\""));
}

TEST_CASE("numeric evaluation on the unit square") {
    RunResult r = run("eval --term R --x 0.75 --y 0.75");
    CHECK(r.code == 0);
    CHECK(r.out == "0.85241638234956674\n");
    r = run("eval --term R --x 0.75");
    CHECK(r.code == 2);
    r = run("eval --term R --x 1.5 --y 0.5");
    CHECK(r.code == 3);
}

TEST_CASE("parse reports shape and rejects bad input") {
    RunResult r = run("parse --term 'PLP2(Z;PLP2(Z;R))'");
    CHECK(r.code == 0);
    CHECK(contains(r.out, "term: PLP2(Z; PLP2(Z; R))"));
    CHECK(contains(r.out, "group: Z x Z x Q"));
    CHECK(contains(r.out, "realizable: yes"));

    r = run("parse --term 'PLP2(Z;R)' --element '(1,2/3)'");
    CHECK(r.code == 0);
    CHECK(contains(r.out, "element: (1,2/3)"));

    r = run("parse --term 'PLP2(Z;R)' --element '(1/2,5)'");
    CHECK(r.code == 2);

    r = run("parse --term 'PLP2(Z;'");
    CHECK(r.code == 2);

    r = run("parse --term 'PLP2(R; R)'");
    CHECK(r.code == 3);
    CHECK(contains(r.out, "discretely"));

    r = run("parse");
    CHECK(r.code == 2);

    r = run("");
    CHECK(r.code == 2);
}

TEST_CASE("term files carry DSL or JSON") {
    {
        std::ofstream f("cli_term.txt");
        f << "PLP2(Z; PLP2(Z; R))\n";
    }
    RunResult r = run("normalize --term-file cli_term.txt");
    CHECK(r.code == 0);
    CHECK(contains(r.out, "segments: [(k=2)]"));

    RunResult js = run("parse --term 'PLP2(Z;R)' --json");
    CHECK(js.code == 0);
    // reuse the printed tree as a JSON term file
    size_t pos = js.out.find("\"tree\": ");
    REQUIRE(pos != std::string::npos);
    std::string tree = js.out.substr(pos + 8);
    size_t close = tree.rfind('}');
    tree = tree.substr(0, close); // drop the outer object's brace
    {
        std::ofstream f("cli_term.json");
        f << tree;
    }
    r = run("parse --term-file cli_term.json");
    CHECK(r.code == 0);
    CHECK(contains(r.out, "term: PLP2(Z; R)"));

    {
        std::ofstream f("cli_corrupt.txt");
        f << "PLP2(R; R)\n"; // parses, but the term is ill defined
    }
    r = run("check --term-file cli_corrupt.txt");
    CHECK(r.code == 3);

    r = run("parse --term-file cli_missing.txt");
    CHECK(r.code == 2);
}

TEST_CASE("law suite passes and the planted bug fails") {
    RunResult r = run("check --term 'PLP2(Z;R)' --samples 300 --seed 7");
    CHECK(r.code == 0);
    CHECK(contains(r.out, "seed: 7"));
    CHECK(contains(r.out, "result: PASS"));
    CHECK(!contains(r.out, "FAIL"));

    RunResult again = run("check --term 'PLP2(Z;R)' --samples 300 --seed 7");
    CHECK(again.out == r.out); // byte identical reruns

    r = run("check --term 'PLP2(Z;R)' --samples 300 --seed 7 --break-negation");
    CHECK(r.code == 1);
    CHECK(contains(r.out, "involution"));
    CHECK(contains(r.out, "FAIL"));
    CHECK(contains(r.out, "counterexample"));

    r = run("check --term 'PLP2(Z;R)' --samples 100 --seed 3 --json");
    CHECK(r.code == 0);
    CHECK(contains(r.out, "\"ok\": true"));
}

TEST_CASE("seed falls back to the environment") {
    RunResult r = run("check --term R --samples 50", "UNINORM_SEED=42");
    CHECK(contains(r.out, "seed: 42"));
    r = run("check --term R --samples 50 --seed 7", "UNINORM_SEED=42");
    CHECK(contains(r.out, "seed: 7"));
    r = run("check --term R --samples 50");
    CHECK(contains(r.out, "seed: 0"));
}

TEST_CASE("idempotent census output is frozen") {
    RunResult r = run("idempotents --term 'PLP1(R;1*Zint;R)'");
    CHECK(r.code == 0);
    CHECK(r.out == "term: PLP1(R; 1*Zint; R)\n(0,B)\n(0,0)\n(0,T)\n"
                   "positive: 2\nnegative: 2\n");
}

TEST_CASE("normalize and certify drive the rewrite system") {
    RunResult r = run("normalize --term 'PLP2(PLP1(R; 1*Zint; Z); R)'");
    CHECK(r.code == 0);
    CHECK(contains(r.out, "canonical: PLP1(R; 1*Zint; PLP2(Z; R))"));
    CHECK(contains(r.out, "segments: [(k=0, H=1*Zint), (k=1)]"));
    CHECK(contains(r.out, "hoist ltr at root"));

    r = run("normalize --term 'PLP3(R; full; 1*Zint; R)'");
    CHECK(r.code == 3);
    CHECK(contains(r.out, "not realizable"));

    r = run("certify --term 'PLP2(PLP2(Z; Z); R)' --samples 400 --seed 9");
    CHECK(r.code == 0);
    CHECK(contains(r.out, "violations: 0"));
    CHECK(contains(r.out, "result: PASS"));

    r = run("certify --term 'PLP2(PLP2(Z; Z); R)' --samples 400 --seed 9 --json");
    CHECK(r.code == 0);
    CHECK(contains(r.out, "\"violations\": 0"));
}

TEST_CASE("covers from the command line") {
    RunResult r = run("succ --term Z --a '3'");
    CHECK(r.out == "4\n");
    r = run("pred --term Z --a '3'");
    CHECK(r.out == "2\n");
    r = run("succ --term 'PLP2(Z;R)' --a '(0,T)'");
    CHECK(r.out == "none\n");
    r = run("succ --term 'PLP3(R; full; 1*Zint; R)' --a '(1/2,B)'");
    CHECK(r.out == "(1/2,T)\n");
    r = run("pred --term 'PLP3(R; full; 1*Zint; R)' --a '(1/2,T)'");
    CHECK(r.out == "(1/2,B)\n");
    r = run("succ --term Z");
    CHECK(r.code == 2);
}

TEST_CASE("grid export is bit exact") {
    RunResult r = run("grid --term R --resolution 3");
    CHECK(r.code == 0);
    CHECK(r.out == "# term=R resolution=3\n0,0,0\n0,0.5,1\n0,1,1\n");

    r = run("grid --term R --resolution 3 --format pgm");
    CHECK(r.out == "P2\n3 3\n255\n0 0 0\n0 128 255\n0 255 255\n");

    r = run("grid --term R --resolution 3 --out cli_grid.csv");
    CHECK(r.code == 0);
    CHECK(slurp("cli_grid.csv") == "# term=R resolution=3\n0,0,0\n0,0.5,1\n0,1,1\n");

    r = run("grid --term R --resolution 3 --format json");
    CHECK(r.code == 0);
    CHECK(contains(r.out, "\"resolution\": 3"));

    r = run("grid --term R --resolution 1");
    CHECK(r.code == 3);
    r = run("grid --term R --resolution 3 --format tiff");
    CHECK(r.code == 2);
    r = run("grid --term 'PLP4(Z; 2*Zint; R)' --resolution 3");
    CHECK(r.code == 3);

    RunResult a = run("grid --term 'PLP2(Z;R)' --resolution 16");
    RunResult b = run("grid --term 'PLP2(Z;R)' --resolution 16");
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
}

int main(int argc, char** argv) {
    std::vector<char*> pass;
    for (int i = 0; i < argc; ++i) {
        if (std::string(argv[i]) == "--bin" && i + 1 < argc) {
            g_bin = argv[++i];
            continue;
        }
        pass.push_back(argv[i]);
    }
    doctest::Context ctx((int)pass.size(), pass.data());
    if (g_bin.empty()) {
        std::fprintf(stderr, "cli_test needs --bin <path to uninorm>\n");
        return 1;
    }
    return ctx.run();
}
