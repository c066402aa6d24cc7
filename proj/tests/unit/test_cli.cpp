#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include "doctest.h"
#include "json.hpp"
#include "vecdep/cli.hpp"
#include "vecdep/error.hpp"
#include "vecdep/kendall.hpp"

using namespace vecdep;
namespace fs = std::filesystem;

namespace {

struct Result {
    int code = 0;
    std::string out;
    std::string err;
};

Result invoke(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    Result r;
    r.code = cli::run(args, out, err);
    r.out = out.str();
    r.err = err.str();
    return r;
}

fs::path scratch() {
    static const fs::path dir = [] {
        auto d = fs::temp_directory_path() / ("vecdep_cli_test_" + std::to_string(::getpid()));
        fs::create_directories(d);
        return d;
    }();
    return dir;
}

std::string write(const std::string& name, const std::string& content) {
    const auto p = scratch() / name;
    std::ofstream(p, std::ios::binary) << content;
    return p.string();
}

std::size_t count_lines(const std::string& s) { return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n')); }

// Simulated sample plus its groups file; returns {csv, groups}.
std::pair<std::string, std::string> simulated(const std::string& tag, const std::vector<std::string>& extra) {
    const std::string csv = (scratch() / (tag + ".csv")).string();
    const std::string groups = (scratch() / (tag + ".json")).string();
    std::vector<std::string> args{"simulate", "-o", csv, "--groups-out", groups};
    args.insert(args.end(), extra.begin(), extra.end());
    const auto r = invoke(args);
    REQUIRE(r.code == 0);
    return {csv, groups};
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("CSV ingestion") {
    const auto t = cli::parse_csv("a,b\n1,2\n3,4\n5,6");
    CHECK(t.values.rows() == 3);
    CHECK(t.values.cols() == 2);
    CHECK(t.values(2, 1) == 6.0);
    const auto q = cli::parse_csv("\xEF\xBB\xBF\"a\", b \r\n1.5e0 , -2\r\n\r\n");
    CHECK(q.header == std::vector<std::string>{"a", "b"});
    CHECK(q.values(0, 1) == -2.0);

    try {
        cli::parse_csv("a,b\n1,2\n3,\n");
        FAIL("missing cell accepted");
    } catch (const DataError& e) {
        const std::string msg = e.what();
        CHECK(msg.find("row 3") != std::string::npos);
        CHECK(msg.find("'b'") != std::string::npos);
    }
    CHECK_THROWS_AS(cli::parse_csv("a,b\n1,x\n"), DataError);
    CHECK_THROWS_AS(cli::parse_csv("a,b\n1,nan\n"), DataError);
    CHECK_THROWS_AS(cli::parse_csv("a,a\n1,2\n"), DataError);
    CHECK_THROWS_AS(cli::parse_csv("a,b\n1,2,3\n"), DataError);
    CHECK_THROWS_AS(cli::parse_csv(""), DataError);
}

TEST_CASE("groups configuration") {
    const auto cfg = cli::parse_groups(R"({"groups":[{"name":"A","columns":["a"]},{"name":"B","columns":["b","c"]}]})");
    REQUIRE(cfg.groups.size() == 2);
    CHECK(cfg.groups[1].columns.size() == 2);
    CHECK(cli::parse_groups(cli::to_json(cfg)).groups[1].columns == cfg.groups[1].columns);
    const auto data = cli::make_grouped(cli::parse_csv("a,b,c\n1,2,3\n4,5,6\n"), cfg);
    CHECK(data.group("B").dim() == 2);
    CHECK_THROWS_AS(cli::make_grouped(cli::parse_csv("a,b\n1,2\n"), cfg), DataError);
    CHECK_THROWS_AS(cli::parse_groups("{\"groups\": 3}"), InvalidArgument);
    CHECK_THROWS_AS(cli::parse_groups("not json"), InvalidArgument);
}

TEST_CASE("collapse parameters") {
    const auto s = cli::parse_collapse("extreme-average", R"({"m":2,"direction":"smallest"})");
    CHECK(s.kind == CollapseKind::extreme_average);
    CHECK(s.m == 2);
    CHECK(s.direction == ExtremeDirection::smallest);
    CHECK(cli::parse_collapse("kernel", R"({"kernel":"gaussian","sigma":0.5})").kernel.family == KernelFamily::gaussian);
    CHECK_THROWS_AS(cli::parse_collapse("distance", R"({"bogus":1})"), InvalidArgument);
    CHECK_THROWS_AS(cli::parse_collapse("distance", R"({"metric":"chebyshev"})"), InvalidArgument);
    CHECK_THROWS_AS(cli::parse_collapse("nope", ""), InvalidArgument);
}

TEST_CASE("simulate is deterministic") {
    const std::vector<std::string> args{"simulate", "--family", "clayton", "--tau", "0.5", "--dims", "2,2",
                                        "--n",      "1000",     "--seed",  "7"};
    const auto a = invoke(args), b = invoke(args);
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
    CHECK(count_lines(a.out) == 1001);
    CHECK(a.out.rfind("x1,x2,y1,y2\n", 0) == 0);
    auto other = args;
    other.back() = "8";
    CHECK(invoke(other).out != a.out);
}

TEST_CASE("simulate scenarios and parameters") {
    const auto co = invoke({"simulate", "--family", "comonotone", "--dims", "1,1", "--n", "5", "--seed", "1"});
    REQUIRE(co.code == 0);
    const auto t = cli::parse_csv(co.out);
    for (std::size_t i = 0; i < 5; ++i) CHECK(t.values(i, 0) == t.values(i, 1));

    const auto by_tau = invoke({"simulate", "--family", "gumbel", "--tau", "0.5", "--dim", "3", "--n", "50", "--seed", "2"});
    const auto by_theta = invoke({"simulate", "--family", "gumbel", "--theta", "2", "--dim", "3", "--n", "50", "--seed", "2"});
    CHECK(by_tau.out == by_theta.out);

    CHECK(invoke({"simulate", "--family", "comonotone", "--theta", "2", "--dims", "1,1", "--n", "5", "--seed", "1"})
              .code == 2);
    CHECK(invoke({"simulate", "--family", "clayton", "--dims", "1,1", "--n", "5"}).code == 2);
    CHECK(invoke({"simulate", "--family", "frank", "--theta", "2", "--dim", "2", "--n", "5", "--seed", "1"}).code ==
          2);
}

TEST_CASE("simulated CSV round-trips") {
    const auto r = invoke({"simulate", "--family", "gumbel", "--theta", "3", "--dim", "2", "--n", "20", "--seed", "4",
                           "--margin", "normal"});
    const auto t = cli::parse_csv(r.out);
    std::ostringstream again;
    for (std::size_t i = 0; i < t.values.rows(); ++i)
        again << cli::format_number(t.values(i, 0)) << ',' << cli::format_number(t.values(i, 1)) << '\n';
    CHECK("x1,x2\n" + again.str() == r.out);
}

TEST_CASE("measure") {
    const auto [csv, groups] = simulated("co", {"--family", "comonotone", "--dims", "2,2", "--n", "200", "--seed", "3"});
    const auto r = invoke({"measure", "-i", csv, "-g", groups, "--measure", "spearman"});
    REQUIRE(r.code == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["schema"] == "vecdep/1");
    CHECK(j["command"] == "measure");
    CHECK(j["estimate"].get<double>() == doctest::Approx(1.0));
    CHECK(j["n"] == 200);
    CHECK(j["k"] == 200);
    CHECK(j["ci"].is_null());
    CHECK(j["groups"] == nlohmann::json::array({"X", "Y"}));

    const auto [icsv, igroups] =
        simulated("ind", {"--family", "independent-groups", "--dims", "2,2", "--n", "150", "--seed", "4"});
    const auto pit = invoke({"measure", "-i", icsv, "-g", igroups, "-c", "pit", "--ci", "asymptotic"});
    CHECK(pit.code == 2);
    CHECK(pit.err.find("bootstrap required for PIT") != std::string::npos);

    const std::vector<std::string> boot{"measure", "-i", icsv, "-g", igroups, "-c", "pit", "--ci", "bootstrap",
                                        "-B",      "200", "--seed", "9"};
    const auto b1 = invoke(boot), b2 = invoke(boot);
    REQUIRE(b1.code == 0);
    CHECK(b1.out == b2.out);
    const auto bj = nlohmann::json::parse(b1.out);
    CHECK(bj["method"] == "bootstrap");
    CHECK(bj["ci"].size() == 2);

    const auto dist = invoke({"measure", "-i", icsv, "-g", igroups, "-c", "distance", "--ci", "asymptotic"});
    REQUIRE(dist.code == 0);
    CHECK(nlohmann::json::parse(dist.out)["k"] == 150 * 149 / 2);

    const auto inline_groups =
        invoke({"measure", "-i", icsv, "-g", R"({"groups":[{"name":"A","columns":["x1"]},{"name":"B","columns":["y2"]}]})"});
    CHECK(inline_groups.code == 0);
}

TEST_CASE("exit codes") {
    const auto [csv, groups] = simulated("codes", {"--family", "clayton", "--theta", "1", "--dims", "1,1", "--n", "30",
                                                   "--seed", "5"});
    CHECK(invoke({"measure", "-i", csv, "-g", groups, "--bogus"}).code == 2);
    CHECK(invoke({}).code == 2);
    CHECK(invoke({"--help"}).code == 0);
    CHECK(invoke({"measure", "-i", (scratch() / "missing.csv").string(), "-g", groups}).code == 3);
    const std::string bad = write("bad.csv", "x1,y1\n1,2\n3,oops\n");
    const auto r = invoke({"measure", "-i", bad, "-g", groups});
    CHECK(r.code == 3);
    CHECK(r.err.find("row 3") != std::string::npos);
    const std::string flat = write("flat.csv", "x1,y1\n1,2\n1,3\n1,4\n1,5\n");
    CHECK(invoke({"measure", "-i", flat, "-g", groups}).code == 4);
    CHECK(invoke({"measure", "-i", csv, "-g", groups, "--measure", "mic"}).code == 2);
}

TEST_CASE("collapse command") {
    const auto [csv, groups] = simulated("col", {"--family", "gumbel", "--theta", "2", "--dims", "2,1", "--n", "10",
                                                 "--seed", "6"});
    const auto one = invoke({"collapse", "-i", csv, "-g", groups});
    CHECK(one.code == 0);
    CHECK(count_lines(one.out) == 11);
    const auto two = invoke({"collapse", "-i", csv, "-g", groups, "-c", "distance"});
    CHECK(two.out.rfind("index,i,j,value\n", 0) == 0);
    CHECK(count_lines(two.out) == 46);
}

TEST_CASE("assess command") {
    const auto [csv, groups] = simulated("as", {"--family", "clayton", "--theta", "2", "--dims", "2,2", "--n", "10",
                                                "--seed", "7"});
    const auto r = invoke({"assess", "-i", csv, "-g", groups});
    REQUIRE(r.code == 0);
    CHECK(r.out.rfind("group_a,group_b,index,u_a,u_b\n", 0) == 0);
    CHECK(count_lines(r.out) == 11);
    CHECK(count_lines(invoke({"assess", "-i", csv, "-g", groups, "-c", "distance"}).out) == 46);

    const std::string four =
        R"({"groups":[{"name":"A","columns":["x1"]},{"name":"B","columns":["x2"]},{"name":"C","columns":["y1"]},{"name":"D","columns":["y2"]}]})";
    const auto j = invoke({"assess", "-i", csv, "-g", four, "--format", "json"});
    REQUIRE(j.code == 0);
    const auto doc = nlohmann::json::parse(j.out);
    CHECK(doc["panels"].size() == 6);
    CHECK(doc["arity"] == "one-sample");
    const auto svg = invoke({"assess", "-i", csv, "-g", four, "--format", "svg"});
    CHECK(svg.out.find("<svg") != std::string::npos);
    CHECK(svg.out == invoke({"assess", "-i", csv, "-g", four, "--format", "svg"}).out);
}

TEST_CASE("kendall command") {
    const auto u = invoke({"kendall", "-f", "independence", "--dims", "2", "--mode", "univariate", "--at", "0.5"});
    REQUIRE(u.code == 0);
    const auto t = cli::parse_csv(u.out);
    CHECK(t.values(0, 1) == doctest::Approx(0.5 + 0.5 * std::log(2.0)));

    const auto j = invoke({"kendall", "-f", "clayton", "--theta", "2", "--dims", "1,1", "--mode", "joint", "--at",
                           "0.5", "--format", "json"});
    REQUIRE(j.code == 0);
    const auto doc = nlohmann::json::parse(j.out);
    CHECK(doc["points"][0]["value"].get<double>() == doctest::Approx(1.0 / std::sqrt(7.0)));

    const auto grid = invoke({"kendall", "-f", "gumbel", "--tau", "0.5", "--dims", "2,3", "--mode", "copula", "--grid", "5"});
    CHECK(count_lines(grid.out) == 26);

    const std::vector<std::string> sample{"kendall", "-f", "gumbel", "--tau", "0.5", "--dims", "2,2",
                                          "--mode",  "sample", "--n", "1000", "--seed", "1"};
    const auto s1 = invoke(sample), s2 = invoke(sample);
    REQUIRE(s1.code == 0);
    CHECK(s1.out == s2.out);
    CHECK(count_lines(s1.out) == 1001);
    CHECK(invoke({"kendall", "-f", "gumbel", "--tau", "0.5", "--dims", "2,2", "--mode", "sample", "--n", "10"}).code ==
          2);
    CHECK(invoke({"kendall", "-f", "clayton", "--theta", "2", "--dims", "40,40", "--mode", "joint", "--at", "0.5"})
              .code == 2);
}

TEST_CASE("rolling command") {
    const auto [csv, groups] = simulated("roll", {"--family", "clayton", "--tau", "0.3", "--dims", "2,2", "--n", "756",
                                                  "--seed", "8"});
    const auto r = invoke({"rolling", "-i", csv, "-g", groups, "--window", "250", "--step", "1"});
    REQUIRE(r.code == 0);
    CHECK(count_lines(r.out) == 508);
    CHECK(r.out.rfind("window_end,estimate,std_error,ci_lo,ci_hi\n", 0) == 0);
    const auto s = invoke({"rolling", "-i", csv, "-g", groups, "--window", "250", "--step", "250"});
    CHECK(count_lines(s.out) == 1 + 756 / 250);
    const auto ci = invoke({"rolling", "-i", csv, "-g", groups, "--window", "150", "--step", "100", "--ci",
                            "asymptotic"});
    REQUIRE(ci.code == 0);
    const auto t = cli::parse_csv(ci.out);
    CHECK(t.values.rows() == 7);
    CHECK(t.values(0, 0) == 149.0);
    CHECK(invoke({"rolling", "-i", csv, "-g", groups, "--window", "5"}).code == 2);
    CHECK(invoke({"rolling", "-i", csv, "-g", groups, "--window", "1000"}).code == 2);
}

TEST_CASE("rolling windows") {
    Matrix m(40, 2);
    for (std::size_t i = 0; i < 40; ++i) {
        m(i, 0) = static_cast<double>(i);
        m(i, 1) = static_cast<double>((i * 7) % 40);
    }
    const GroupedData d(std::move(m), {{"A", {0}}, {"B", {1}}});
    const auto rows = cli::rolling(d, "A", "B", CollapseSpec::weighted_average(), {MeasureKind::tau, {}}, {}, 10, 7);
    REQUIRE(rows.size() == 5);
    CHECK(rows[0].window_end == 9);
    CHECK(rows[4].window_end == 37);
    CHECK(rows[1].estimate.value == doctest::Approx(tau(d.slice_rows(7, 10).values().column(0),
                                                        d.slice_rows(7, 10).values().column(1))));
}

}
