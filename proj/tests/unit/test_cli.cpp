#include "doctest.h"
#include "support.hpp"

#include "cli.hpp"

#include <algorithm>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

using hhks::test::data_dir;
using hhks::test::registry_dir;

namespace {

struct Outcome {
    int code;
    std::string out;
    std::string err;
};

Outcome run_cli(std::vector<std::string> args, bool with_registry = true) {
    if (with_registry && args.size() > 1) {
        args.push_back("--registry");
        args.push_back(registry_dir().string());
    }
    std::vector<const char *> argv{"hhks"};
    for (const auto &a : args)
        argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = hhks::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

std::size_t count_lines(const std::string &s) {
    return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n'));
}

} // namespace

TEST_CASE("hh snapshot at a non-default point") {
    const Outcome o = run_cli({"hh", "--family", "B", "--at", "h=1/3"});
    CHECK(o.code == 0);
    CHECK(o.out == "family: B\n"
                   "point: h=1/3\n"
                   "r: 0\n"
                   "HH: 1 2 1 0 0\n"
                   "euler: pass (sum 0, expected 0)\n"
                   "frobenius: pass\n");
}

TEST_CASE("hh on the Sklyanin family") {
    const Outcome o = run_cli({"hh", "--family", "sklyanin"});
    CHECK(o.code == 0);
    CHECK(o.out.find("HH: 1 1 2 9 7\n") != std::string::npos);
    CHECK(o.out.find("euler: pass") != std::string::npos);
    CHECK(o.out.find("frobenius: pass") != std::string::npos);
}

TEST_CASE("hh at another internal degree") {
    const Outcome o = run_cli({"hh", "--family", "polynomial", "--r", "-4"});
    CHECK(o.code == 0);
    CHECK(o.out.find("HH: 0 0 0 0 1\n") != std::string::npos);
    CHECK(o.out.find("euler: pass (sum 1, expected 1)") != std::string::npos);
}

TEST_CASE("input errors exit with code 2") {
    Outcome o = run_cli({"hh", "--family", "nosuch"});
    CHECK(o.code == 2);
    CHECK(o.err.find("unknown family") != std::string::npos);

    o = run_cli({"hh", "--family", "B", "--at", "k=1"});
    CHECK(o.code == 2);

    o = run_cli({"hh", "--family", "sklyanin", "--r", "2", "--dmax", "3"});
    CHECK(o.code == 2);
    CHECK(o.err.find("needs A through degree") != std::string::npos);

    o = run_cli({"frobnicate"}, false);
    CHECK(o.code == 2);
}

TEST_CASE("ks reports") {
    Outcome o = run_cli({"ks", "--family", "kq"});
    CHECK(o.code == 0);
    CHECK(o.out.find("rank: 6\nInj: Yes\nSurj: Yes\n") != std::string::npos);

    o = run_cli({"ks", "--family", "clifford"});
    CHECK(o.code == 0);
    CHECK(o.out.find("Para: 24\ndim HH2: 9\nrank: 9\nInj: No\nSurj: Yes\n") != std::string::npos);

    o = run_cli({"ks", "--family", "kirkman_r"});
    CHECK(o.code == 0);
    CHECK(o.out.find("rank: 0\nInj: Yes\nSurj: No\n") != std::string::npos);

    o = run_cli({"ks", "--family", "kq", "--matrix"});
    CHECK(o.out.find("matrix:\n  -1/2 0 0 0 0 0\n") != std::string::npos);
}

TEST_CASE("ks on a non-flat family exits with code 3") {
    std::vector<std::string> args{"ks", "--family", "kq_off_family", "--registry",
                                  (data_dir() / "corrupted").string()};
    const Outcome o = run_cli(args, false);
    CHECK(o.code == 3);
    CHECK(o.err.find("'q12'") != std::string::npos);
}

TEST_CASE("tables selection and records") {
    Outcome o = run_cli({"tables", "--only", "table1", "--format", "records"});
    CHECK(o.code == 0);
    CHECK(count_lines(o.out) == 22);

    std::istringstream lines(o.out);
    std::string first;
    std::getline(lines, first);
    const auto j = nlohmann::ordered_json::parse(first);
    std::vector<std::string> keys;
    for (auto it = j.begin(); it != j.end(); ++it)
        keys.push_back(it.key());
    CHECK(keys == std::vector<std::string>{"name", "point", "dims", "para", "rank", "inj", "surj",
                                           "euler_ok", "frobenius_ok", "match"});
    CHECK(j["point"]["h"] == "13/27");

    o = run_cli({"tables", "--only", ""});
    CHECK(o.code == 0);
    CHECK(o.out.empty());

    o = run_cli({"tables", "--only", "sklyanin,kq"});
    CHECK(o.code == 0);
    CHECK(o.out.find("Sklyanin ") != std::string::npos);
    CHECK(o.out.find("families: 2, mismatches: 0") != std::string::npos);
}

TEST_CASE("record stream is identical across runs and job counts") {
    const Outcome a = run_cli({"tables", "--only", "table3", "--format", "records", "--jobs", "1"});
    const Outcome b = run_cli({"tables", "--only", "table3", "--format", "records", "--jobs", "4"});
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
    CHECK(count_lines(a.out) == 21);
}

TEST_CASE("check passes with a small trial count") {
    const Outcome o = run_cli({"check", "--trials", "2", "--jobs", "4"});
    CHECK(o.code == 0);
    CHECK(o.out.find("FAIL") == std::string::npos);
}
