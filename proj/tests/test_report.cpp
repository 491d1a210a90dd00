#include "test_util.hpp"

#include <gtest/gtest.h>

using namespace hd;
using hdtest::corpus;
using hdtest::dom;
using hdtest::gen;

namespace {

std::vector<std::string> keys(const Json& j) {
    std::vector<std::string> out;
    for (auto it = j.begin(); it != j.end(); ++it) out.push_back(it.key());
    return out;
}

}  // namespace

TEST(Report, RationalText) {
    EXPECT_EQ(to_string(Rational(1, 2)), "1/2");
    EXPECT_EQ(to_string(Rational(-6, 4)), "-3/2");
    EXPECT_EQ(to_string(Rational(4, 2)), "2");
    EXPECT_EQ(to_string(Rational(0)), "0");
}

TEST(Report, TorusBigonIndex) {
    Diagram d = corpus("torus3");
    Generator x = gen(d, "x"), y = gen(d, "y");
    Domain a = dom(d, "r0:1");
    Json j = index_json(d, x, y, a, index_report(d, a, x, y));
    EXPECT_EQ(j.dump(),
              R"({"from":"x","to":"y","domain":"r0:1","connecting":true,"g":1,"e":"1/2","n_x":"1/4","n_y":"1/4",)"
              R"("mu":"1","chi_emb":"1"})");
    std::ostringstream out;
    write_index_text(out, index_report(d, a, x, y));
    EXPECT_EQ(out.str(), "connecting: yes\ng: 1\ne: 1/2\nn_x: 1/4\nn_y: 1/4\nmu: 1\nchi_emb: 1\n");
}

TEST(Report, Validation) {
    Diagram ok = corpus("torus1");
    EXPECT_EQ(validation_json(validate_diagram(ok)).dump(), R"({"valid":true,"violations":[]})");
    std::ostringstream out;
    write_validation_text(out, validate_diagram(ok));
    EXPECT_EQ(out.str(), "valid\n");
    auto bad = validate_diagram(hdtest::testdata("sphere"));
    ASSERT_FALSE(bad.ok());
    Json j = validation_json(bad);
    EXPECT_FALSE(j["valid"].get<bool>());
    EXPECT_EQ(j["violations"].size(), bad.violations.size());
}

TEST(Report, InfoFields) {
    Diagram d = corpus("torus3");
    Json j = info_json(d);
    EXPECT_EQ(keys(j), (std::vector<std::string>{"genus", "vertices", "regions", "curves", "region_list", "e_sigma",
                                                  "periodic_rank"}));
    EXPECT_EQ(j["genus"], 1);
    EXPECT_EQ(j["vertices"], 3);
    EXPECT_EQ(j["regions"], 3);
    EXPECT_EQ(j["e_sigma"], "0");
    EXPECT_EQ(j["curves"]["alpha"][0]["vertices"].dump(), R"(["x","y","z"])");
    int corners = 0;
    for (const auto& r : j["region_list"]) {
        corners += r["corners"].get<int>();
        EXPECT_EQ(r["boundary"].size(), r["corners"].get<std::size_t>());
    }
    EXPECT_EQ(corners, 4 * 3);
}

TEST(Report, DomainsList) {
    Diagram d = corpus("torus3");
    Generator x = gen(d, "x"), y = gen(d, "y");
    Json j = domains_json(d, x, y, {dom(d, "r0:1"), dom(d, "r1:-1,r2:-1")});
    EXPECT_EQ(j.dump(), R"({"from":"x","to":"y","domains":[{"domain":"r0:1","positive":true,"mu":"1"},)"
                        R"({"domain":"r1:-1,r2:-1","positive":false,"mu":"-1"}]})");
}

TEST(Report, SurfaceFields) {
    Diagram d = corpus("torus3");
    auto s = build_surface(d, dom(d, "r0:1"), gen(d, "x"), gen(d, "y"));
    Json j = surface_json(s);
    EXPECT_EQ(keys(j), (std::vector<std::string>{"stage", "from", "to", "domain", "chi", "chi_emb", "delta",
                                                  "branch_budget", "components", "boundary_components",
                                                  "degenerate_disks", "corners", "boundary_arcs", "branch_points",
                                                  "pushforward"}));
    EXPECT_EQ(j["stage"], "S3");
    EXPECT_EQ(j["chi"], 1);
    EXPECT_EQ(j["chi_emb"], "1");
    EXPECT_EQ(j["delta"], "0");
    EXPECT_EQ(j["branch_budget"], "0");
    EXPECT_EQ(j["components"], 1);
    EXPECT_EQ(j["boundary_components"], 1);
    EXPECT_EQ(j["corners"].size(), 2u);
    EXPECT_EQ(j["pushforward"].dump(), "[1,0,0]");
    EXPECT_EQ(j["boundary_arcs"]["alpha"][0]["arcs"], 1);
    EXPECT_EQ(j["boundary_arcs"]["beta"][0]["arcs"], 1);
}

TEST(Report, StabilizedOmitsEmbeddedChi) {
    Diagram d = corpus("example1");
    auto s = stabilized_surface(d, dom(d, "r0:1,r2:1,r4:1,r5:1,r6:2"), gen(d, "x1,x2"), gen(d, "y1,y2"));
    Json j = surface_json(s);
    EXPECT_EQ(j["stage"], "S4");
    EXPECT_FALSE(j.contains("chi_emb"));
    EXPECT_FALSE(j.contains("delta"));
    Json c = cover_check_json(branched_cover_check(s));
    EXPECT_EQ(keys(c), (std::vector<std::string>{"ok", "g", "chi", "corner_halves", "branch_budget", "branch_sigma",
                                                  "euler_measure", "violations"}));
    EXPECT_TRUE(c["ok"].get<bool>());
}

TEST(Report, SuitesJsonIsStable) {
    DiagramSource src{"torus3.hd", corpus("torus3")};
    auto run = [&] { return suites_json({sigma_suite(src), builder_consistency_suite(src, 2)}).dump(); };
    std::string a = run();
    EXPECT_EQ(a, run());
    Json j = Json::parse(a);
    EXPECT_TRUE(j["ok"].get<bool>());
    EXPECT_EQ(keys(j["suites"][0]), (std::vector<std::string>{"suite", "target", "cases", "ok", "failures"}));
    EXPECT_EQ(a.find("ms"), std::string::npos);
}

TEST(Report, SuitesJsonCarriesFailures) {
    SuiteResult r;
    r.name = "demo";
    r.target = "t";
    r.cases = 2;
    r.failures.push_back({"case", "message", "hdtool index t.hd"});
    Json j = suites_json({r});
    EXPECT_FALSE(j["ok"].get<bool>());
    EXPECT_EQ(j["suites"][0]["failures"].dump(), R"([{"case":"case","message":"message","replay":"hdtool index t.hd"}])");
    std::ostringstream out;
    write_suites_text(out, {r});
    EXPECT_NE(out.str().find("replay: hdtool index t.hd"), std::string::npos);
}
