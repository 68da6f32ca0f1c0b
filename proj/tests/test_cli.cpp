#include "blab/cli.hpp"

#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

using namespace blab;

namespace {
struct Run {
    int code;
    std::string out;
    std::string err;
};

Run invoke(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}
} // namespace

TEST_CASE("ap3 command") {
    const Run r = invoke({"ap3", "--group", "Z7", "--set", "0,1,2"});
    CHECK(r.code == 0);
    CHECK(r.out == "total=5 nontrivial=2\n");
}

TEST_CASE("sumset command") {
    const Run plain = invoke({"sumset", "--group", "Z10", "--set", "1,2", "--other", "2,3"});
    CHECK(plain.code == 0);
    CHECK(plain.out == "3,4,5\n");
    const Run restricted = invoke(
        {"sumset", "--group", "Z10", "--set", "1,2", "--other", "2,3", "--restricted"});
    CHECK(restricted.code == 0);
    CHECK(restricted.out == "3,4,5\n");
    const Run self = invoke({"sumset", "--group", "Z10", "--set", "7", "--restricted"});
    CHECK(self.code == 0);
    CHECK(self.out == "\n");
}

TEST_CASE("trace command on the full set") {
    const Run r = invoke({"trace", "--group", "Z101", "--set-full", "--mode", "practical"});
    CHECK(r.code == 2); // unknown flag is a usage error
    std::string all;
    for (int i = 0; i < 101; ++i) all += (i ? "," : "") + std::to_string(i);
    const Run t = invoke({"trace", "--group", "Z101", "--set", all, "--mode", "practical"});
    CHECK(t.code == 0);
    CHECK(t.out.find("0 1 1 1 ap_case\nEND ap_case\n") != std::string::npos);
}

TEST_CASE("bohr command") {
    const Run r = invoke({"bohr", "--system", "bohr(g=Z8; freqs=1; delta=0.25)"});
    CHECK(r.code == 0);
    CHECK(r.out.find("0,1,2,6,7") != std::string::npos);
    CHECK(r.out.find("dimension=2") != std::string::npos);
}

TEST_CASE("usage errors exit with 2") {
    CHECK(invoke({"verify", "nonsense"}).code == 2);
    CHECK(invoke({"frobnicate"}).code == 2);
    CHECK(invoke({}).code == 2);
    CHECK(invoke({"scan", "4", "16"}).code == 2); // nmin below the floor
    CHECK(invoke({"ap3", "--group", "Z7", "--set", "9"}).code == 2);
}

TEST_CASE("scan output shape and determinism") {
    const Run a = invoke({"scan", "8", "32", "--gen", "greedy", "--seed", "5"});
    CHECK(a.code == 0);
    const Run b = invoke({"scan", "8", "32", "--gen", "greedy", "--seed", "5"});
    CHECK(a.out == b.out);
    CHECK(a.out.rfind("N,set_size,sumset_size,K,bound_value,is_ap3_free\n", 0) == 0);
    // three rows: 8, 16, 32
    int lines = 0;
    for (char c : a.out)
        if (c == '\n') ++lines;
    CHECK(lines == 4);
    CHECK(a.out.find("\r") == std::string::npos);
}

TEST_CASE("set files hold one set per line") {
    const std::string path = "/tmp/blab_sets_test.txt";
    {
        std::ofstream f(path);
        f << "1,2\n2,3\n";
    }
    const Run r = invoke({"sumset", "--group", "Z10", "--file", path});
    CHECK(r.code == 0);
    CHECK(r.out == "3,4,5\n");
    const Run a = invoke({"ap3", "--group", "Z10", "--file", path});
    CHECK(a.code == 0); // first line only
    std::remove(path.c_str());
}

TEST_CASE("chang command reports bounds") {
    const Run r = invoke({"chang", "--group", "Z32", "--set", "0,1,2,3,4,5"});
    CHECK(r.code == 0);
    CHECK(r.out.find("sup_density=") != std::string::npos);
    CHECK(r.out.find("FAIL") == std::string::npos);
}

TEST_CASE("verify rejects unknown suites but runs real ones") {
    CHECK(invoke({"verify", "bogus"}).code == 2);
    const Run once = invoke({"verify", "bohr", "--seed", "9"});
    const Run again = invoke({"verify", "bohr", "--seed", "9"});
    CHECK(once.code == 0);
    CHECK(once.out == again.out); // identical seed, identical bytes
    CHECK(once.out.rfind("bohr bohr_density_floor", 0) == 0);
    CHECK(once.out.find(" lhs=") != std::string::npos);
    CHECK(once.out.find(" PASS") != std::string::npos);
    const Run other = invoke({"verify", "bohr", "--seed", "10"});
    CHECK(once.out != other.out); // the seed really drives the corpus
}
