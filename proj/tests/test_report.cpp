#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>
#include <sstream>

#include <nlohmann/json.hpp>

#include "cubicvpe/report.hpp"

using namespace cubicvpe;
using namespace cubicvpe::report;

TEST_CASE("numbers carry nine significant digits and a '.' decimal point")
{
    CHECK(format_number(0.1) == "0.1");
    CHECK(format_number(1.0 / 3.0) == "0.333333333");
    CHECK(format_number(-1234567890.0) == "-1.23456789e+09");
    CHECK(format_number(7.55443489836e-23) == "7.5544349e-23");
    CHECK(format_number(std::numeric_limits<double>::quiet_NaN()) == "nan");
    CHECK(format_number(-std::numeric_limits<double>::infinity()) == "-inf");
    CHECK(format_cell(Cell{}) == "");
    CHECK(format_cell(Cell{42LL}) == "42");
    CHECK(format_cell(Cell{std::string("-465/32")}) == "-465/32");
}

TEST_CASE("CSV round trip preserves every cell to nine digits")
{
    std::mt19937 rng(17);
    std::uniform_real_distribution<double> mant(-10.0, 10.0);
    std::uniform_int_distribution<int> expo(-30, 30);
    Table t;
    t.columns = {"lambda", "n", "re_E", "im_E", "status"};
    for (int i = 0; i < 50; ++i) {
        const double re = mant(rng) * std::pow(10.0, expo(rng));
        t.add({Cell{0.01 * i}, Cell{static_cast<long long>(i % 5)}, Cell{re},
               i % 7 == 0 ? Cell{} : Cell{mant(rng)}, Cell{std::string(i % 3 ? "ok" : "no-convergence")}});
    }
    std::stringstream out;
    write_csv(out, t);
    const std::string text = out.str();
    CHECK(text.rfind("lambda,n,re_E,im_E,status\n", 0) == 0);

    std::stringstream in(text);
    const Table back = read_csv(in);
    REQUIRE(back.columns == t.columns);
    REQUIRE(back.rows.size() == t.rows.size());
    for (std::size_t r = 0; r < t.rows.size(); ++r) {
        for (std::size_t c = 0; c < t.columns.size(); ++c) {
            CHECK(format_cell(back.rows[r][c]) == format_cell(t.rows[r][c]));
        }
    }
    std::stringstream again;
    write_csv(again, back);
    CHECK(again.str() == text);
}

TEST_CASE("JSON output is an array of objects with nulls for empty cells")
{
    Table t;
    t.columns = {"n", "exact", "value", "note"};
    t.add({Cell{2LL}, Cell{std::string("-11/8")}, Cell{1.0 / 3.0}, Cell{}});
    std::stringstream out;
    write_json(out, t);
    const auto j = nlohmann::json::parse(out.str());
    REQUIRE(j.is_array());
    REQUIRE(j.size() == 1);
    CHECK(j[0]["n"] == 2);
    CHECK(j[0]["exact"] == "-11/8");
    CHECK(j[0]["value"].get<double>() == 0.333333333);
    CHECK(j[0]["note"].is_null());
}

TEST_CASE("coupling grid forms")
{
    CHECK(parse_lambda_grid("0.5") == std::vector<double>{0.5});
    CHECK(parse_lambda_grid("0.1,1,10") == std::vector<double>{0.1, 1.0, 10.0});
    const auto g = parse_lambda_grid("0.1:0.5:5");
    REQUIRE(g.size() == 5);
    CHECK(g.front() == 0.1);
    CHECK(g.back() == 0.5);
    CHECK(g[2] == doctest::Approx(0.3));
    CHECK_THROWS_AS(parse_lambda_grid("0.1:0.5:1"), ContractViolation);
    CHECK_THROWS_AS(parse_lambda_grid("abc"), ContractViolation);
    CHECK_THROWS_AS(parse_lambda_grid("1,,2"), ContractViolation);
    CHECK_THROWS_AS(parse_lambda_grid(""), ContractViolation);
    CHECK(parse_levels("0:4") == std::vector<int>{0, 1, 2, 3, 4});
    CHECK(parse_levels("0,4") == std::vector<int>{0, 4});
    CHECK_THROWS_AS(parse_levels("-1"), ContractViolation);
    CHECK_THROWS_AS(parse_levels("3:1"), ContractViolation);
}

TEST_CASE("RS listing carries exact strings next to their values")
{
    const auto r = rs_listing({0, 1}, 4);
    const auto& t = r.table;
    REQUIRE(t.rows.size() == 10);
    const auto exact = t.column("exact");
    const auto value = t.column("value");
    CHECK(std::get<std::string>(t.rows[4][exact]) == "-465/32");
    CHECK(std::get<double>(t.rows[4][value]) == -14.53125);
    CHECK(std::get<std::string>(t.rows[7][exact]) == "-71/8");
    CHECK_THROWS_AS(t.column("nope"), ContractViolation);
}

TEST_CASE("row builders count failures instead of aborting")
{
    VpeRequest q;
    q.lambdas = {0.5, 1.0};
    q.order = 3;
    const auto v = vpe_rows(q);
    CHECK(v.table.rows.size() == 2);
    CHECK(v.convergence_failures == 0);

    const auto t2 = table2({0}, 11, default_kappa_ladder());
    CHECK(t2.table.rows.size() == 1);
    CHECK(t2.tolerance_misses == 0);
    const auto strict = table2({0}, 11, default_kappa_ladder(), 1e-9);
    CHECK(strict.tolerance_misses == 1);

    WkbRequest w;
    w.lambdas = {0.1};
    w.variational_order = 3;
    const auto wr = wkb_rows(w);
    CHECK(wr.table.rows.size() == 2);
}

TEST_CASE("default grids")
{
    CHECK(default_fig1_grid().size() == 41);
    CHECK(default_fig2_grid().size() == 19);
    const auto ladder = default_kappa_ladder();
    CHECK(ladder.front() == doctest::Approx(10.0));
    CHECK(ladder.back() == doctest::Approx(1e4));
}
