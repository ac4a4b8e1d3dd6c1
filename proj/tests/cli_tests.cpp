#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <regex>
#include <sstream>
#include <string>

namespace fs = std::filesystem;

namespace {

const std::string kCli = RSPAN_CLI_PATH;

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() / ("rspan_cli_test_" + std::to_string(::getpid()));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    std::string file(const std::string& name) const { return (path / name).string(); }
};

int run(const std::string& args) {
    std::string cmd = kCli + " " + args + " >/dev/null 2>&1";
    int rc = std::system(cmd.c_str());
    return WEXITSTATUS(rc);
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    out << text;
}

// timing fields are the one non-deterministic part of the reports
std::string strip_runtime(std::string text) {
    return std::regex_replace(text, std::regex("\"runtime_ms\": \\d+"), "\"runtime_ms\": 0");
}

std::string strip_build_ms(const std::string& csv) {
    std::istringstream in(csv);
    std::ostringstream out;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && (std::isdigit(line[0]) != 0)) {
            // zero the build_ms column (4th)
            std::istringstream ls(line);
            std::string tok;
            std::vector<std::string> cols;
            while (std::getline(ls, tok, ',')) cols.push_back(tok);
            if (cols.size() >= 4) cols[3] = "0";
            for (size_t i = 0; i < cols.size(); ++i) out << cols[i] << (i + 1 < cols.size() ? "," : "");
            out << '\n';
        } else {
            out << line << '\n';
        }
    }
    return out.str();
}

std::string points_file(const TempDir& dir, int n, int dim, unsigned seed) {
    // tiny deterministic point set, decimal text
    std::string path = dir.file("points.txt");
    std::ostringstream out;
    out << "# test points\n";
    unsigned state = seed;
    auto next = [&state]() {
        state = state * 1664525u + 1013904223u;
        return (state >> 8) % 100000;
    };
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < dim; ++j) out << next() << (j + 1 == dim ? "" : " ");
        out << "\n";
    }
    write_file(path, out.str());
    return path;
}

}  // namespace

TEST_CASE("build writes deterministic artifacts") {
    TempDir dir;
    std::string pts = points_file(dir, 64, 2, 7);
    std::string base = "build --points " + pts + " --eps 0.25 --t 4 --seed 7 --out ";
    REQUIRE(run(base + dir.file("g")) == 0);
    CHECK(fs::exists(dir.file("g.edges")));
    CHECK(fs::exists(dir.file("g.trace")));
    CHECK(fs::exists(dir.file("g.stats.json")));

    REQUIRE(run(base + dir.file("g2")) == 0);
    CHECK(slurp(dir.file("g.edges")) == slurp(dir.file("g2.edges")));
    CHECK(slurp(dir.file("g.trace")) == slurp(dir.file("g2.trace")));
    CHECK(slurp(dir.file("g.stats.json")) == slurp(dir.file("g2.stats.json")));
}

TEST_CASE("usage and domain errors exit with 2") {
    TempDir dir;
    std::string pts = points_file(dir, 16, 2, 3);
    CHECK(run("") == 2);
    CHECK(run("build --points " + dir.file("missing.txt") +
              " --eps 0.25 --t 4 --out " + dir.file("x")) == 2);
    // eps = 0.5 >= 1/3 rejected
    CHECK(run("build --points " + pts + " --eps 0.5 --t 4 --out " + dir.file("x")) == 2);
    CHECK(run("build --points " + pts + " --eps 0.25 --t 1 --out " + dir.file("x")) == 2);
}

TEST_CASE("faults pipeline") {
    TempDir dir;
    std::string pts = points_file(dir, 48, 2, 11);
    REQUIRE(run("build --points " + pts + " --eps 0.25 --t 4 --seed 5 --out " + dir.file("g")) == 0);

    std::string fa = dir.file("fa.json");
    REQUIRE(run("faults --trace " + dir.file("g.trace") + " --frac 0.1 --seed 3 --out " + fa) == 0);
    std::string rep = slurp(fa);
    CHECK(rep.find("\"fplus_over_f\"") != std::string::npos);

    // deterministic rerun
    std::string fb = dir.file("fb.json");
    REQUIRE(run("faults --trace " + dir.file("g.trace") + " --frac 0.1 --seed 3 --out " + fb) == 0);
    CHECK(slurp(fa) == slurp(fb));

    // empty fault file: F+ is empty
    write_file(dir.file("empty.txt"), "# none\n");
    std::string fe = dir.file("fe.json");
    REQUIRE(run("faults --trace " + dir.file("g.trace") + " --fault-file " +
                dir.file("empty.txt") + " --out " + fe) == 0);
    CHECK(slurp(fe).find("\"fplus_count\": 0") != std::string::npos);

    // out-of-range index
    write_file(dir.file("bad.txt"), "999\n");
    CHECK(run("faults --trace " + dir.file("g.trace") + " --fault-file " + dir.file("bad.txt")) == 2);

    // missing source
    CHECK(run("faults --trace " + dir.file("g.trace")) == 2);
}

TEST_CASE("verify pipeline") {
    TempDir dir;
    std::string pts = points_file(dir, 48, 2, 13);
    REQUIRE(run("build --points " + pts + " --eps 0.25 --t 4 --seed 5 --out " + dir.file("g")) == 0);
    std::string fa = dir.file("fa.json");
    REQUIRE(run("faults --trace " + dir.file("g.trace") + " --frac 0.1 --seed 3 --out " + fa) == 0);

    std::string va = dir.file("va.json");
    std::string verify_cmd = "verify --graph " + dir.file("g.edges") + " --trace " +
                             dir.file("g.trace") + " --points " + pts + " --faults " + fa +
                             " --explode --out ";
    REQUIRE(run(verify_cmd + va) == 0);
    std::string rep = slurp(va);
    CHECK(rep.find("\"ok\": true") != std::string::npos);
    CHECK(rep.find("\"explode\"") != std::string::npos);

    // deterministic modulo the runtime field
    std::string vb = dir.file("vb.json");
    REQUIRE(run(verify_cmd + vb) == 0);
    CHECK(strip_runtime(slurp(va)) == strip_runtime(slurp(vb)));

    // verification failure: a hand-broken graph exits 1
    TempDir dir2;
    std::string p3 = dir2.file("p3.txt");
    write_file(p3, "0 0\n1 0\n0.5 3\n");
    REQUIRE(run("build --points " + p3 + " --eps 0.25 --t 4 --seed 1 --out " + dir2.file("g")) == 0);
    std::string f0 = dir2.file("f0.json");
    REQUIRE(run("faults --trace " + dir2.file("g.trace") + " --frac 0 --out " + f0) == 0);
    // detour through the apex has stretch 2 sqrt(9.25) > 4
    write_file(dir2.file("broken.edges"), "3 2\n0 2\n1 2\n");
    CHECK(run("verify --graph " + dir2.file("broken.edges") + " --trace " + dir2.file("g.trace") +
              " --points " + p3 + " --faults " + f0 + " --out " + dir2.file("v.json")) == 1);

    // mismatched point file is rejected
    std::string other = points_file(dir2, 48, 2, 99);
    CHECK(run("verify --graph " + dir.file("g.edges") + " --trace " + dir.file("g.trace") +
              " --points " + other + " --faults " + fa + " --out " + dir.file("vx.json")) == 2);
}

TEST_CASE("scale sweep CSV") {
    TempDir dir;
    std::string csv = dir.file("sweep.csv");
    std::string cmd = "scale --n 64,128 --eps 0.25 --t 4 --seed 1 --out ";
    REQUIRE(run(cmd + csv) == 0);
    std::string text = slurp(csv);
    CHECK(text.find("n,edges,normalized_edges,build_ms,m_wspd,min_size_sum") != std::string::npos);
    CHECK(text.find("\n64,") != std::string::npos);
    CHECK(text.find("\n128,") != std::string::npos);

    std::string csv2 = dir.file("sweep2.csv");
    REQUIRE(run(cmd + csv2) == 0);
    CHECK(strip_build_ms(text) == strip_build_ms(slurp(csv2)));

    CHECK(run("scale --n 0 --eps 0.25 --t 4 --out " + dir.file("bad.csv")) == 2);
}
