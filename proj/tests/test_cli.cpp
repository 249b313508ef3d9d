#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <unistd.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#ifndef POSTULAB_BIN
#error "POSTULAB_BIN must point at the built binary"
#endif

namespace {

struct run_result {
    int exit_code = -1;
    std::string out;
};

std::string temp_path(const char* suffix) {
    static int counter = 0;
    return "/tmp/postulab-cli-test-" + std::to_string(getpid()) + "-" +
           std::to_string(counter++) + suffix;
}

run_result run(const std::string& args) {
    std::string out_file = temp_path(".out");
    std::string cmd = std::string(POSTULAB_BIN) + " " + args + " > " + out_file + " 2>/dev/null";
    int rc = std::system(cmd.c_str());
    run_result r;
    r.exit_code = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
    std::ifstream in(out_file);
    std::stringstream ss;
    ss << in.rdbuf();
    r.out = ss.str();
    std::remove(out_file.c_str());
    return r;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

TEST_CASE("params") {
    run_result r = run("params --d 4");
    CHECK(r.exit_code == 0);
    CHECK(r.out == "r=7 q=0 m=2 s=1 t=3\n");
    CHECK(run("params --d 0").exit_code == 64);
    CHECK(run("params").exit_code == 64);
}

TEST_CASE("h0 on a scheme file") {
    std::string file = temp_path(".json");
    {
        // three generic disjoint lines in P^3
        std::ofstream out(file);
        out << R"({"ambient":3,"prime":32003,"components":[
            {"kind":"line","points":[[1,0,0,0],[0,1,0,0]]},
            {"kind":"line","points":[[0,0,1,0],[0,0,0,1]]},
            {"kind":"line","points":[[1,1,1,1],[1,2,3,4]]}]})";
    }
    run_result r = run("h0 --scheme " + file + " --degree 2");
    CHECK(r.exit_code == 0);
    CHECK(r.out == "1\n");
    run_result g = run("h0 --scheme " + file + " --degree 2 --backend groebner");
    CHECK(g.out == "1\n");
    std::remove(file.c_str());
}

TEST_CASE("h0 rejects malformed scheme files") {
    std::string file = temp_path(".json");
    SUBCASE("not JSON") {
        std::ofstream(file) << "not json at all";
        CHECK(run("h0 --scheme " + file + " --degree 2").exit_code == 64);
    }
    SUBCASE("composite modulus") {
        std::ofstream(file) << R"({"ambient":3,"prime":32001,"components":[]})";
        CHECK(run("h0 --scheme " + file + " --degree 2").exit_code == 64);
    }
    SUBCASE("missing file") {
        CHECK(run("h0 --scheme /nonexistent/x.json --degree 2").exit_code == 64);
    }
    std::remove(file.c_str());
}

TEST_CASE("check statements and exit codes") {
    CHECK(run("check hd --d 3").exit_code == 0);
    CHECK(run("check lines --d 2 --e 3").exit_code == 0);
    CHECK(run("check ah --d 4 --s 5").exit_code == 0);  // exceptional but verified
    CHECK(run("check bogus --d 3").exit_code == 64);
    CHECK(run("--prime 32001 check hd --d 3").exit_code == 64);
}

TEST_CASE("prove emits a certificate") {
    std::string file = temp_path(".json");
    run_result r = run("--out " + file + " prove --d 3");
    CHECK(r.exit_code == 0);
    std::string cert = slurp(file);
    CHECK(cert.find("\"verdict\": \"verified\"") != std::string::npos);
    CHECK(cert.find("\"tree\"") != std::string::npos);
    std::remove(file.c_str());
}

TEST_CASE("limit cone") {
    run_result r = run("limit cone --s 3");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("\"limit_equals_cone\":true") != std::string::npos);
    CHECK(run("limit cone --s 2").exit_code == 64);
}

TEST_CASE("suite determinism and cache") {
    std::string cache = temp_path(".cache");
    std::string rep1 = temp_path(".jsonl");
    std::string rep2 = temp_path(".jsonl");
    std::string rep3 = temp_path(".jsonl");
    CHECK(run("--cache " + cache + " --out " + rep1 + " suite --max-d 4").exit_code == 0);
    // warm cache: byte-identical report
    CHECK(run("--cache " + cache + " --out " + rep2 + " suite --max-d 4").exit_code == 0);
    CHECK(slurp(rep1) == slurp(rep2));
    CHECK_FALSE(slurp(rep1).empty());
    // --force recomputes but must agree (determinism of seeds)
    CHECK(run("--cache " + cache + " --force --out " + rep3 + " suite --max-d 4").exit_code == 0);
    CHECK(slurp(rep1) == slurp(rep3));
    std::remove(cache.c_str());
    std::remove(rep1.c_str());
    std::remove(rep2.c_str());
    std::remove(rep3.c_str());
}
