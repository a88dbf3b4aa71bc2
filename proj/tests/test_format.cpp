#include <gtest/gtest.h>

#include <random>

#include "qineq/format.hpp"

using namespace qineq;

namespace {
const Params kTable3{4, 2, 3, 5, 2, 1, {}, {}};
}

TEST(Format, ParseNames) {
    EXPECT_EQ(parse_format("csv"), OutputFormat::csv);
    EXPECT_EQ(parse_format("latex"), OutputFormat::latex);
    EXPECT_FALSE(parse_format("xml"));
}

TEST(Format, SubscriptNotation) {
    const Partition pi{{{Family::NZ, 1}, 4}, {{Family::YZ, 2}, 1}};
    EXPECT_EQ(subscript_string(pi, kTable3), "5_1^4,2_2^1");
    EXPECT_EQ(subscript_string(Partition{}, kTable3), "()");
}

TEST(Format, TriplesRoundTrip) {
    std::mt19937 rng(99);
    std::uniform_int_distribution<int> fam(0, 3), idx(1, 4), mult(0, 12);
    for (int trial = 0; trial < 100; ++trial) {
        Partition pi;
        for (int k = 0; k < 5; ++k) pi.add(Part{static_cast<Family>(fam(rng)), idx(rng)}, mult(rng));
        EXPECT_EQ(parse_triples(triples_string(pi)), pi);
    }
    EXPECT_EQ(triples_string(Partition{{{Family::YZ, 1}, 4}, {{Family::NZ, 2}, 1}}), "NZ:2:1;YZ:1:4");
    EXPECT_THROW(parse_triples("Q:1:2"), std::invalid_argument);
    EXPECT_THROW(parse_triples("Z:1"), std::invalid_argument);
}

TEST(Format, TableCsvIsStableAndComplete) {
    const auto t = injection_table(kTable3, 20, Mode::main);
    const auto csv = render_table(t, OutputFormat::csv);
    EXPECT_EQ(csv, render_table(injection_table(kTable3, 20, Mode::main), OutputFormat::csv));
    EXPECT_EQ(csv.rfind("pre,image,mu,a,b\n", 0), 0u);
    EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 24);
    EXPECT_NE(csv.find(",NYZ:1:2,0,0,0\n"), std::string::npos);
    EXPECT_NE(csv.find("\n,Z:4:2,-2,-2,4\n"), std::string::npos);
    EXPECT_EQ(csv.find('\r'), std::string::npos);
}

TEST(Format, TableJsonSchema) {
    const auto t = injection_table(kTable3, 20, Mode::main);
    const auto j = nlohmann::json::parse(render_table(t, OutputFormat::json));
    EXPECT_EQ(j["params"]["K"], 4);
    ASSERT_EQ(j["records"].size(), 23u);
    std::size_t nulls = 0;
    for (const auto& r : j["records"]) {
        EXPECT_TRUE(r.contains("mu") && r.contains("a") && r.contains("b") && r.contains("image"));
        EXPECT_EQ(r["image"]["norm"], 20);
        if (r["pre"].is_null()) ++nulls;
    }
    EXPECT_EQ(nulls, 6u);
}

TEST(Format, TableLatexAndMarkdown) {
    const auto t = injection_table(kTable3, 20, Mode::main);
    const auto tex = render_table(t, OutputFormat::latex);
    EXPECT_NE(tex.find("\\begin{tabular}"), std::string::npos);
    EXPECT_NE(tex.find("\\langle 2_{1}^{10} \\rangle"), std::string::npos);
    const auto md = render_table(t, OutputFormat::markdown);
    EXPECT_EQ(std::count(md.begin(), md.end(), '\n'), 25);
}

TEST(Format, SeriesRenderings) {
    const Series s{1, 0, 2};
    EXPECT_EQ(render_series(s, OutputFormat::csv), "exponent,coefficient\n0,1\n1,0\n2,2\n");
    EXPECT_EQ(render_series(s, OutputFormat::plain), "0 1\n1 0\n2 2\n");
    const auto j = nlohmann::json::parse(render_series(s, OutputFormat::json, "left"));
    EXPECT_EQ(j["coefficients"], nlohmann::json({1, 0, 2}));
    EXPECT_EQ(j["side"], "left");
}

TEST(Format, SearchCsv) {
    const SearchRanges r{{1, 1}, {2, 2}, {1, 1}, {1, 1}, {2, 2}, {1, 1}, true};
    const auto report = search_exceptions(r, 50, {false, true});
    EXPECT_EQ(render_search(report, OutputFormat::csv),
              "K,L,m,n,y,z,status,first_violation,lhs,rhs,violations\n"
              "1,2,1,1,2,1,VIOLATED,2," +
                  std::to_string(report.entries[0].verdict.first_violation->lhs) + "," +
                  std::to_string(report.entries[0].verdict.first_violation->rhs) + "," +
                  std::to_string(report.entries[0].verdict.violation_count) + "\n");
    const auto j = nlohmann::json::parse(render_search(report, OutputFormat::json));
    EXPECT_EQ(j["entries"][0]["verdict"]["status"], "VIOLATED");
    EXPECT_EQ(j["relaxations"]["allow_k_below_l"], true);
}
