#include <cstdio>
#include <fstream>
#include <sstream>

#include <doctest.h>

#include "inoz/cli.hpp"

using namespace inoz;

namespace {

struct Run {
    int code;
    std::string out, err;
};

Run run(std::vector<std::string> args)
{
    args.insert(args.begin(), "inoz");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

std::size_t lines(const std::string& s) { return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n')); }

std::string slurp(const std::string& path)
{
    std::ifstream f(path);
    std::stringstream s;
    s << f.rdbuf();
    return s.str();
}

} // namespace

TEST_SUITE("cli") {

TEST_CASE("complex literals")
{
    CHECK(parse_complex("1.5") == cplx(1.5, 0));
    CHECK(parse_complex("-2") == cplx(-2, 0));
    CHECK(parse_complex("0.3+0.9i") == cplx(0.3, 0.9));
    CHECK(parse_complex("0.3-0.9i") == cplx(0.3, -0.9));
    CHECK(parse_complex("2i") == cplx(0, 2));
    CHECK(parse_complex("-i") == cplx(0, -1));
    CHECK(parse_complex("1e-2+3e1i") == cplx(0.01, 30));
    CHECK(parse_complex(" 1 + 2i ") == cplx(1, 2));
    for (const char* bad : {"", "abc", "1+", "1+2", "i2", "1..2", "1+2j"}) {
        INFO(bad);
        CHECK_THROWS_AS(parse_complex(bad), ConfigError);
    }
    CHECK(parse_complex_list("1,-1,0.4").size() == 3);
    CHECK_THROWS_AS(parse_complex_list("1,,2"), ConfigError);
    CHECK(parse_int_list("1,1,0,0") == std::vector<int>{1, 1, 0, 0});
    CHECK_THROWS_AS(parse_int_list("1,x"), ConfigError);
    CHECK_THROWS_AS(parse_int_list("1.5"), ConfigError);
}

TEST_CASE("documented invocations")
{
    const Run a = run({"verify", "appendix", "--q", "0.3", "--points", "100", "--seed", "7"});
    CHECK(a.code == 0);
    CHECK(lines(a.out) == 12);
    const Run b = run({"verify", "source", "--n", "3", "--masses", "1,-1,0.4", "--lambda", "0.7", "--d",
                       "0.1,0.2,-0.3,0.05"});
    CHECK(b.code == 0);
    CHECK(b.out.find("\"pass\":true") != std::string::npos);
    const Run c = run({"verify", "corollary", "--which", "4", "--counts", "1,1,1,1", "--g", "0.1,0.2,0.3,0.4",
                       "--lambda", "0"});
    CHECK(c.code == 2);
    CHECK(c.err.find("lambda must be nonzero") != std::string::npos);
}

TEST_CASE("every command runs")
{
    CHECK(run({"verify", "corollary", "--which", "2", "--counts", "1,0,1,0", "--points", "5"}).code == 0);
    CHECK(run({"verify", "symmetries", "--counts", "1,1,1,1", "--lambda", "0.6+0.2i"}).code == 0);
    CHECK(run({"verify", "routes", "--masses", "1,0.5+0.5i", "--points", "5"}).code == 0);
    CHECK(run({"eigen", "example1", "--counts", "1,0", "--gt", "1,1,0,0", "--lambda", "1", "--points", "2"}).code ==
          0);
    CHECK(run({"eigen", "example2", "--counts", "1,0", "--points", "2"}).code == 0);
    CHECK(run({"eigen", "example2", "--counts", "1,1", "--t", "0.3+0.4i", "--points", "2"}).code == 0);
    const Run t = run({"table", "constants", "--which", "2", "--counts", "1,0,1,0", "--g", "0.25,0.5,0.125,0.375",
                       "--lambda", "0.625"});
    CHECK(t.code == 0);
    CHECK(t.out.find("A 0+0i") != std::string::npos);
    CHECK(run({"--help"}).code == 0);
}

TEST_CASE("failing checks exit 1")
{
    CHECK(run({"eigen", "example1", "--counts", "2,0", "--gt", "1,0,0,0", "--lambda", "0.5", "--n", "1",
               "--points", "2", "--reading", "literal"})
              .code == 1);
    CHECK(run({"eigen", "example2", "--counts", "1,0", "--lambda", "0.5", "--points", "2"}).code == 1);
    CHECK(run({"verify", "appendix", "--identity", "heat", "--points", "5", "--tol", "1e-30"}).code == 1);
}

TEST_CASE("malformed configurations exit 2")
{
    const std::vector<std::vector<std::string>> bad{
        {},
        {"verify"},
        {"verify", "nothing"},
        {"verify", "appendix", "--q", "0.3", "--tau", "0.1+1i"},
        {"verify", "appendix", "--q", "1.5"},
        {"verify", "appendix", "--q", "abc"},
        {"verify", "appendix", "--tau", "0.3"},
        {"verify", "appendix", "--omega1", "-1"},
        {"verify", "appendix", "--points", "0"},
        {"verify", "appendix", "--tol", "-1"},
        {"verify", "appendix", "--identity", "nope"},
        {"verify", "appendix", "--q", "0.8"},
        {"verify", "source"},
        {"verify", "source", "--n", "2", "--masses", "1,2,3"},
        {"verify", "source", "--masses", "1,0"},
        {"verify", "source", "--masses", "1", "--d", "1,2"},
        {"verify", "source", "--masses", "1", "--lambda", "x"},
        {"verify", "corollary", "--which", "5"},
        {"verify", "corollary", "--which", "1", "--counts", "1,1,0,0"},
        {"verify", "corollary", "--which", "3", "--counts", "1,0,1,0", "--lambda", "0"},
        {"verify", "corollary", "--counts", "1,0,0,0,1"},
        {"eigen", "example1", "--gt", "2,0,0,0"},
        {"eigen", "example1", "--gt", "1,0,0"},
        {"eigen", "example1", "--reading", "other"},
        {"eigen", "example1", "--counts", "1"},
        {"eigen", "example2", "--counts", "0,1"},
        {"eigen", "example2", "--lambda", "0"},
        {"table", "constants", "--which", "0"},
        {"verify", "appendix", "--report", "/nonexistent/dir/r.jsonl"},
        {"verify", "appendix", "--unknown-flag"}};
    for (const auto& args : bad) {
        std::string joined;
        for (const auto& a : args) joined += a + ' ';
        INFO(joined);
        const Run r = run(args);
        CHECK(r.code == 2);
        CHECK_FALSE(r.err.empty());
    }
}

TEST_CASE("report files are byte-identical across runs")
{
    const std::string p1 = "cli_report_a.jsonl", p2 = "cli_report_b.jsonl";
    const std::vector<std::string> base{"verify", "corollary", "--which", "3", "--counts", "2,0,1,0", "--g",
                                        "0.3+0.1i,0.2,0.1,0.4", "--lambda", "0.7-0.2i", "--points", "10",
                                        "--seed", "4", "--report"};
    auto a = base, b = base;
    a.push_back(p1);
    b.push_back(p2);
    CHECK(run(a).code == 0);
    const Run rb = run(b);
    CHECK(rb.code == 0);
    CHECK(lines(rb.out) == 2); // text lines on stdout
    const std::string sa = slurp(p1), sb = slurp(p2);
    CHECK(!sa.empty());
    CHECK(sa == sb);
    CHECK(sa.find("\"wall_ms\":0}") != std::string::npos);
    std::remove(p1.c_str());
    std::remove(p2.c_str());
}

} // TEST_SUITE
