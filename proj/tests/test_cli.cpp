#include "doctest.h"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <sstream>
#include <vector>

#include "hoftrace/cli.hpp"

using namespace hoftrace;
using namespace hoftrace::cli;
using nlohmann::json;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result invoke(std::vector<const char*> args) {
    args.insert(args.begin(), "hoftrace");
    RunConfig config;
    std::ostringstream out, err;
    if (auto code = parse_command_line(static_cast<int>(args.size()), args.data(), config, out, err))
        return {*code, out.str(), err.str()};
    const int code = run(config, out, err);
    return {code, out.str(), err.str()};
}

// Cell equality that treats NaN as equal to itself.
bool same_table(const Table& a, const Table& b) {
    if (a.columns != b.columns || a.rows.size() != b.rows.size()) return false;
    for (std::size_t r = 0; r < a.rows.size(); ++r) {
        if (a.rows[r].size() != b.rows[r].size()) return false;
        for (std::size_t c = 0; c < a.rows[r].size(); ++c) {
            const json& x = a.rows[r][c];
            const json& y = b.rows[r][c];
            if (x.is_number_float() && y.is_number_float() && std::isnan(x.get<double>()) &&
                std::isnan(y.get<double>()))
                continue;
            if (x != y || x.type() != y.type()) return false;
        }
    }
    return true;
}

RunConfig config_for(Command command) {
    RunConfig c;
    c.command = command;
    c.p = 2;
    c.q = 5;
    c.lambda = 1.3;
    return c;
}

}  // namespace

TEST_CASE("coeffs example") {
    const auto r = invoke({"coeffs", "--p", "1", "--q", "4"});
    REQUIRE(r.code == 0);
    const auto j = json::parse(r.out);
    const std::vector<double> want{-1, 8, -4};
    REQUIRE(j["a"].size() == 3);
    for (int i = 0; i < 3; ++i) CHECK(std::abs(j["a"][i].get<double>() - want[i]) < 1e-9);
}

TEST_CASE("trace example and record schema") {
    const auto r = invoke({"trace", "--p", "1", "--q", "3", "--n", "4"});
    REQUIRE(r.code == 0);
    const auto j = json::parse(r.out);
    CHECK(std::abs(j["trace"].get<double>() - 24.0) < 1e-9);
    CHECK(j["method"] == "partition-sum");
    for (const char* key : {"p", "q", "lambda", "kind", "n", "s", "value", "method"}) CHECK(j.contains(key));

    const auto many = json::parse(invoke({"trace", "--p", "1", "--q", "3", "--n-max", "6"}).out);
    REQUIRE(many["records"].size() == 4);
    for (const auto& rec : many["records"]) {
        CHECK(rec.size() == 8);
        CHECK(rec["s"].is_null());
    }
}

TEST_CASE("every trace method reproduces the same value") {
    const double want = json::parse(invoke({"trace", "--p", "2", "--q", "5", "--n", "8", "--kind", "midband"}).out)["value"];
    for (const char* method : {"series", "newton-power-sum", "oracle"}) {
        const auto r = invoke({"trace", "--p", "2", "--q", "5", "--n", "8", "--kind", "midband", "--method", method});
        REQUIRE(r.code == 0);
        CHECK(std::abs(json::parse(r.out)["value"].get<double>() - want) < 1e-9 * want);
    }
    const double full = json::parse(invoke({"trace", "--p", "1", "--q", "3", "--n", "6", "--method", "oracle"}).out)["value"];
    CHECK(std::abs(full - json::parse(invoke({"trace", "--p", "1", "--q", "3", "--n", "6"}).out)["value"].get<double>()) <
          1e-9 * full);
}

TEST_CASE("point-trace values and warnings") {
    auto r = invoke({"point-trace", "--p", "1", "--q", "2", "--n", "4", "--s", "1"});
    REQUIRE(r.code == 0);
    CHECK(std::abs(json::parse(r.out)["value"].get<double>() - 17.0) < 1e-12);
    CHECK(r.err.empty());

    r = invoke({"point-trace", "--p", "1", "--q", "2", "--n", "4", "--s", "1,5"});
    REQUIRE(r.code == 0);
    CHECK(r.err.find("warning") != std::string::npos);
    CHECK(json::parse(r.out)["records"].size() == 2);

    r = invoke({"trace", "--p", "1", "--q", "3", "--n", "6", "--method", "oracle", "--grid", "4"});
    REQUIRE(r.code == 0);
    CHECK(r.err.find("InsufficientGrid") != std::string::npos);
}

TEST_CASE("verify example") {
    const auto r = invoke({"verify", "--p", "1", "--q", "2", "--lambda", "1", "--n-max", "8"});
    CHECK(r.code == 0);
    const auto j = json::parse(r.out);
    CHECK(j["passed"] == true);
    CHECK(j["checks"].size() >= 10);
    for (const auto& c : j["checks"]) CHECK(c["passed"] == true);
}

TEST_CASE("dos and series output") {
    auto j = json::parse(invoke({"dos", "--q", "1", "--lambda", "2", "--grid", "5"}).out);
    CHECK(j["lambda_tilde"] == 1.0);
    REQUIRE(j["density"].size() == 5);
    CHECK(j["density"][2]["rho"].is_null());  // s = 0 divergence
    CHECK(std::abs(j["density"][4]["rho"].get<double>() - 1.0 / (16.0 * std::atan(1.0))) < 1e-15);
    REQUIRE(j["moments"].size() == 6);
    CHECK(j["moments"][3]["exact"] == 400.0);

    j = json::parse(invoke({"series", "--p", "0", "--q", "1", "--n-max", "4"}).out);
    const std::vector<double> want{1, 0, 4, 0, 36};
    for (int i = 0; i <= 4; ++i) CHECK(std::abs(j["coefficients"][i].get<double>() - want[i]) < 1e-12);
}

TEST_CASE("validation and usage errors exit 1") {
    CHECK(invoke({"trace", "--p", "1", "--q", "0", "--n", "4"}).code == 1);
    CHECK(invoke({"trace", "--p", "1", "--q", "3", "--n", "4", "--lambda", "-1"}).code == 1);
    CHECK(invoke({"trace", "--p", "1", "--q", "3"}).code == 1);
    CHECK(invoke({"trace", "--p", "1", "--q", "3", "--n", "4", "--n-max", "6"}).code == 1);
    CHECK(invoke({"trace", "--p", "1", "--q", "3", "--n-max", "65"}).code == 1);
    CHECK(invoke({"point-trace", "--p", "1", "--q", "3", "--n", "4"}).code == 1);
    CHECK(invoke({"trace", "--p", "1", "--q", "3", "--n", "4", "--method", "newton-power-sum"}).code == 1);
    CHECK(invoke({"trace", "--p", "1", "--q", "3", "--n", "4", "--format", "xml"}).code == 1);
    CHECK(invoke({"point-trace", "--p", "1", "--q", "3", "--n", "4", "--s", "9", "--method", "oracle"}).code == 1);
    CHECK(invoke({}).code == 1);
    CHECK(invoke({"frobnicate"}).code == 1);
    const auto help = invoke({"--help"});
    CHECK(help.code == 0);
    CHECK(help.out.find("verify") != std::string::npos);
}

TEST_CASE("output file") {
    const std::string path = "hoftrace_cli_test_output.csv";
    const auto r = invoke({"coeffs", "--p", "1", "--q", "3", "--format", "csv", "--output", path.c_str()});
    REQUIRE(r.code == 0);
    CHECK(r.out.empty());
    std::ifstream in(path);
    std::stringstream buf;
    buf << in.rdbuf();
    const Table t = parse_csv(buf.str());
    CHECK(t.columns == std::vector<std::string>{"j", "a"});
    CHECK(t.rows.size() == 2);
    std::remove(path.c_str());
}

TEST_CASE("CSV round-trips every emitted table") {
    std::vector<RunConfig> configs;
    configs.push_back(config_for(Command::Coeffs));
    auto trace = config_for(Command::Trace);
    trace.n_max = 12;
    configs.push_back(trace);
    auto point = config_for(Command::PointTrace);
    point.n_max = 10;
    point.s = {0.0, 0.1, 1.0 / 3.0, 2.5, 7.0};
    configs.push_back(point);
    auto dos = config_for(Command::Dos);
    dos.q = 1;
    dos.lambda = 2.0;
    dos.grid = 33;
    configs.push_back(dos);
    auto dos2 = config_for(Command::Dos);
    dos2.grid = 40;
    configs.push_back(dos2);
    auto ser = config_for(Command::Series);
    ser.kind = TraceKind::PlusMinusS;
    ser.s = {1.7};
    ser.n_max = 20;
    configs.push_back(ser);
    auto ver = config_for(Command::Verify);
    ver.n_max = 6;
    configs.push_back(ver);

    for (const auto& c : configs) {
        std::vector<std::string> warnings;
        const Document doc = build_document(c, warnings);
        CAPTURE(to_string(c.command));
        CHECK(same_table(parse_csv(emit_csv(doc.table)), doc.table));
    }
}

TEST_CASE("CSV edge cases") {
    Table t;
    t.columns = {"text", "x", "flag"};
    t.rows.push_back({json("with, comma"), json(0.1), json(true)});
    t.rows.push_back({json("quote \" and\nnewline"), json(-std::numeric_limits<double>::infinity()), json(false)});
    t.rows.push_back({json(""), json(nullptr), json(42)});
    t.rows.push_back({json("12"), json(std::numeric_limits<double>::quiet_NaN()), json(1e-300)});
    t.rows.push_back({json("x"), json(5e-324), json(1.7976931348623157e308)});
    CHECK(same_table(parse_csv(emit_csv(t)), t));
    // shortest representation, yet bit-exact
    CHECK(emit_csv(Table{{"v"}, {{json(0.1)}}}) == "\"v\"\n0.1\n");

    CHECK_THROWS_AS(parse_csv(""), std::invalid_argument);
    CHECK_THROWS_AS(parse_csv("\"a\",\"b\"\n1\n"), std::invalid_argument);
    CHECK_THROWS_AS(parse_csv("\"a\"\n\"open\n"), std::invalid_argument);
    CHECK_THROWS_AS(parse_csv("\"a\"\nfoo\n"), std::invalid_argument);
    CHECK_THROWS_AS(parse_csv("a\n1\n"), std::invalid_argument);
}

TEST_CASE("worker_count honours HOFTRACE_THREADS") {
    setenv("HOFTRACE_THREADS", "1", 1);
    CHECK(worker_count() == 1);
    setenv("HOFTRACE_THREADS", "junk", 1);
    CHECK(worker_count() >= 1);
    setenv("HOFTRACE_THREADS", "100000", 1);
    CHECK(worker_count() <= 100000);
    unsetenv("HOFTRACE_THREADS");
    CHECK(worker_count() >= 1);
}

TEST_CASE("command names round-trip") {
    for (auto c : {Command::Coeffs, Command::Trace, Command::PointTrace, Command::Dos, Command::Series, Command::Verify})
        CHECK(parse_command(to_string(c)) == c);
    CHECK_FALSE(parse_command("plot").has_value());
}
