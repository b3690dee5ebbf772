// test_bounds.cpp - Closed-form bounds on the reference systems, and JSON forms.
#include <cstdio>
#include <fstream>
#include <string>

#include "doctest.h"
#include "fixtures.hpp"
#include "mcfifo/bounds.hpp"
#include "mcfifo/json_io.hpp"

using mcfifo::BoundReport;
using mcfifo::config_from_json;
using mcfifo::Curve;
using mcfifo::GrGuarantee;
using mcfifo::Method;
using mcfifo::Rat;
using mcfifo::SystemConfig;

namespace {

// One class at full capacity headroom.
SystemConfig one_class() {
    SystemConfig c;
    c.name = "one";
    c.classes = {{1, Rat(100000000), Rat(10000000), Rat(1000000), Rat(12000)}};
    return c;
}

bool contains(const std::string& hay, const std::string& needle) {
    return hay.find(needle) != std::string::npos;
}

}  // namespace

TEST_CASE("aggregate guarantees depend only on C_min and the longest packet") {
    SystemConfig s1 = fixtures::s1();
    GrGuarantee g = aggregate_gr(s1);
    CHECK(g.rate == Rat(1000000));
    CHECK(g.error == Rat(0));
    CHECK_FALSE(g.class_id.has_value());
    CHECK(aggregate_service_curve(s1) == Curve::rate_latency(Rat(1000000), Rat(3, 250)));

    SystemConfig one = one_class();
    CHECK(aggregate_gr(one).rate == Rat(100000000));
    CHECK(aggregate_service_curve(one) == Curve::rate_latency(Rat(100000000), Rat(3, 25000)));
}

TEST_CASE("gr_to_service_curve adds one packet of latency") {
    CHECK(gr_to_service_curve(GrGuarantee{Rat(1000000), Rat(0), std::nullopt}, Rat(12000)) ==
          Curve::rate_latency(Rat(1000000), Rat(3, 250)));
    CHECK(gr_to_service_curve(GrGuarantee{Rat(5), Rat(0), std::nullopt}, Rat(0)) ==
          Curve::rate_latency(Rat(5), Rat(0)));
    CHECK_THROWS_AS(gr_to_service_curve(GrGuarantee{Rat(0), Rat(0), std::nullopt}, Rat(1)),
                    std::invalid_argument);
    CHECK_THROWS_AS(gr_to_service_curve(GrGuarantee{Rat(1), Rat(0), std::nullopt}, Rat(-1)),
                    std::invalid_argument);
}

TEST_CASE("s1 delay and backlog: direct not applicable, improved exact") {
    SystemConfig c = fixtures::s1();

    auto dd = delay_bound(c, Method::direct);
    CHECK_FALSE(dd.applicable());
    CHECK(contains(dd.reason, "requires sum_n r_n <= C_min"));
    CHECK(contains(dd.reason, "40400000"));
    CHECK(contains(dd.reason, "1000000"));

    auto di = delay_bound(c, Method::improved);
    REQUIRE(di.applicable());
    CHECK(*di == Rat(11, 100));

    CHECK_FALSE(backlog_bound(c, Method::direct).applicable());
    auto bi = backlog_bound(c, Method::improved);
    REQUIRE(bi.applicable());
    CHECK(*bi == Rat(5544000));

    auto parts = backlog_parts(c);
    REQUIRE(parts.applicable());
    CHECK((*parts).burst_term == Rat(5544000));
    CHECK((*parts).capacity_term == Rat(11960000));
    CHECK((*parts).selected == 1);
}

TEST_CASE("s1 per-class guarantees") {
    SystemConfig c = fixtures::s1();

    // Class 1 shares the link with a class 40x its rate: the direct view fails.
    auto g1d = class_gr(c, 1, Method::direct);
    CHECK_FALSE(g1d.applicable());
    CHECK(contains(g1d.reason, "requires sum of other classes' rates < C_min"));
    CHECK(contains(g1d.reason, "40000000"));
    CHECK_FALSE(class_service_curve(c, 1, Method::direct).applicable());

    auto g1i = class_gr(c, 1, Method::improved);
    REQUIRE(g1i.applicable());
    CHECK((*g1i).rate == Rat(600000));
    CHECK((*g1i).error == Rat(1, 60));
    CHECK((*g1i).class_id == 1);
    auto s1i = class_service_curve(c, 1, Method::improved);
    REQUIRE(s1i.applicable());
    CHECK(*s1i == Curve::rate_latency(Rat(600000), Rat(11, 300)));

    // Class 2 gets both methods.
    auto g2d = class_gr(c, 2, Method::direct);
    REQUIRE(g2d.applicable());
    CHECK((*g2d).rate == Rat(600000));
    CHECK((*g2d).error == Rat(14, 75));
    auto s2d = class_service_curve(c, 2, Method::direct);
    REQUIRE(s2d.applicable());
    CHECK(*s2d == Curve::rate_latency(Rat(600000), Rat(14, 75)));

    auto g2i = class_gr(c, 2, Method::improved);
    REQUIRE(g2i.applicable());
    CHECK((*g2i).rate == Rat(60000000));
    CHECK((*g2i).error == Rat(1, 6));
    auto s2i = class_service_curve(c, 2, Method::improved);
    REQUIRE(s2i.applicable());
    CHECK(*s2i == Curve::rate_latency(Rat(60000000), Rat(2503, 15000)));

    CHECK_THROWS_AS(class_gr(c, 3, Method::direct), std::out_of_range);
}

TEST_CASE("improved class curve is the GR guarantee pushed through one packet") {
    for (const SystemConfig& c : {fixtures::s1(), fixtures::s2(), one_class()}) {
        CHECK(gr_to_service_curve(aggregate_gr(c), c.max_packet()) == aggregate_service_curve(c));
        for (int n = 1; n <= c.size(); ++n) {
            auto g = class_gr(c, n, Method::improved);
            auto s = class_service_curve(c, n, Method::improved);
            REQUIRE(g.applicable());
            REQUIRE(s.applicable());
            CHECK(gr_to_service_curve(*g, c.cls(n).max_packet) == *s);
        }
    }
    // The direct pair is NOT related that way: its curve already charges the
    // longest packet, so converting the GR form would charge it twice.
    SystemConfig c = fixtures::s1();
    auto g = class_gr(c, 2, Method::direct);
    auto s = class_service_curve(c, 2, Method::direct);
    CHECK_FALSE(gr_to_service_curve(*g, c.max_packet()) == *s);
}

TEST_CASE("s2 figures: both methods apply and the backlog terms cross") {
    SystemConfig c = fixtures::s2();
    CHECK(*delay_bound(c, Method::direct) == Rat(1, 5));
    CHECK(*delay_bound(c, Method::improved) == Rat(1, 5));
    CHECK(*backlog_bound(c, Method::direct) == Rat(207200));
    CHECK(*backlog_bound(c, Method::improved) == Rat(207200));
    auto parts = backlog_parts(c);
    CHECK((*parts).burst_term == Rat(320000));
    CHECK((*parts).capacity_term == Rat(207200));
    CHECK((*parts).selected == 2);

    for (int n = 1; n <= 2; ++n) {
        auto gd = class_gr(c, n, Method::direct);
        CHECK((*gd).rate == Rat(700000));
        CHECK((*gd).error == Rat(4, 25));
        auto gi = class_gr(c, n, Method::improved);
        CHECK((*gi).rate == Rat(700000));
        CHECK((*gi).error == Rat(1, 7));
        CHECK(*class_service_curve(c, n, Method::direct) ==
              Curve::rate_latency(Rat(700000), Rat(4, 25)));
        CHECK(*class_service_curve(c, n, Method::improved) ==
              Curve::rate_latency(Rat(700000), Rat(4, 25)));
    }
}

TEST_CASE("single-class system: improved guarantee is loss-free") {
    SystemConfig c = one_class();
    CHECK(*delay_bound(c, Method::direct) == Rat(1, 100));
    CHECK(*delay_bound(c, Method::improved) == Rat(1, 100));
    auto gd = class_gr(c, 1, Method::direct);
    CHECK((*gd).rate == Rat(100000000));
    CHECK((*gd).error == Rat(3, 25000));
    auto gi = class_gr(c, 1, Method::improved);
    CHECK((*gi).rate == Rat(100000000));
    CHECK((*gi).error == Rat(0));
    CHECK(*class_service_curve(c, 1, Method::improved) ==
          Curve::rate_latency(Rat(100000000), Rat(3, 25000)));
}

TEST_CASE("compare assembles both methods and the per-class comparison") {
    BoundReport rep = compare(fixtures::s1());
    CHECK(rep.system == "s1");
    CHECK(rep.util.rho == Rat(4, 5));
    CHECK(rep.total_rate == Rat(40400000));
    CHECK(rep.aggregate.rate == Rat(1000000));
    CHECK_FALSE(rep.direct.delay.applicable());
    CHECK(*rep.improved.delay == Rat(11, 100));
    REQUIRE(rep.comparison.size() == 2);

    // Class 1: the direct method never applied, so nothing to compare.
    CHECK_FALSE(rep.comparison[0].improved_rate_ge.has_value());
    CHECK_FALSE(rep.comparison[0].improved_error_le.has_value());
    CHECK_FALSE(rep.comparison[0].improved_sc_dominates.has_value());

    // Class 2: improved wins on every axis.
    CHECK(rep.comparison[1].improved_rate_ge == true);
    CHECK(rep.comparison[1].improved_error_le == true);
    CHECK(rep.comparison[1].improved_sc_dominates == true);

    BoundReport rep2 = compare(fixtures::s2());
    for (const auto& cc : rep2.comparison) {
        CHECK(cc.improved_rate_ge == true);
        CHECK(cc.improved_error_le == true);
        CHECK(cc.improved_sc_dominates == true);
    }
}

TEST_CASE("report text names the bounds and honors the method filter") {
    CHECK(mcfifo::method_name(Method::direct) == "direct");
    CHECK(mcfifo::method_name(Method::improved) == "improved");

    BoundReport rep = compare(fixtures::s1());
    std::string all = report_to_text(rep);
    CHECK(contains(all, "system: s1"));
    CHECK(contains(all, "delay bound (s):"));
    CHECK(contains(all, "backlog bound (bits):"));
    CHECK(contains(all, "11/100"));
    CHECK(contains(all, "n/a: requires sum_n r_n <= C_min"));
    CHECK(contains(all, "min of burst term 5544000, capacity term 11960000"));
    CHECK(contains(all, "improved curve dominates direct: yes"));

    std::string direct_only = report_to_text(rep, Method::direct);
    CHECK(contains(direct_only, "direct"));
    CHECK_FALSE(contains(direct_only, "improved  "));
    CHECK_FALSE(contains(direct_only, "dominates"));
    std::string improved_only = report_to_text(rep, Method::improved);
    CHECK(contains(improved_only, "11/100"));
    CHECK_FALSE(contains(improved_only, "n/a: requires sum_n r_n"));
}

TEST_CASE("config json round trips and rejects sloppy numbers") {
    SystemConfig c = fixtures::s1();
    SystemConfig back = config_from_json(config_json(c));
    CHECK(back.name == "s1");
    REQUIRE(back.size() == 2);
    for (int n = 1; n <= 2; ++n) {
        CHECK(back.cls(n).capacity == c.cls(n).capacity);
        CHECK(back.cls(n).rate == c.cls(n).rate);
        CHECK(back.cls(n).burst == c.cls(n).burst);
        CHECK(back.cls(n).max_packet == c.cls(n).max_packet);
    }

    // Rationals come in as integers or exact strings, never floats.
    nlohmann::json j = {{"name", "t"},
                        {"classes",
                         {{{"capacity", "1M"},
                           {"rate", "3/2"},
                           {"burst", 2000},
                           {"max_packet", "0.5k"}}}}};
    SystemConfig t = config_from_json(j);
    CHECK(t.cls(1).capacity == Rat(1000000));
    CHECK(t.cls(1).rate == Rat(3, 2));
    CHECK(t.cls(1).burst == Rat(2000));
    CHECK(t.cls(1).max_packet == Rat(500));

    j["classes"][0]["rate"] = 1.5;
    CHECK_THROWS_WITH_AS(config_from_json(j),
                         doctest::Contains("must be an integer or a string like"),
                         std::runtime_error);
    j["classes"][0]["rate"] = "nope";
    CHECK_THROWS_WITH_AS(config_from_json(j), doctest::Contains("cannot parse rate"),
                         std::runtime_error);
    j["classes"][0].erase("rate");
    CHECK_THROWS_WITH_AS(config_from_json(j), doctest::Contains("missing field 'rate'"),
                         std::runtime_error);
    j["classes"][0]["rate"] = "3/2";
    j["classes"][0]["id"] = 7;
    CHECK_THROWS_WITH_AS(config_from_json(j), doctest::Contains("ids are positional"),
                         std::runtime_error);
    CHECK_THROWS_WITH_AS(config_from_json(nlohmann::json::array()),
                         doctest::Contains("top level must be an object"), std::runtime_error);
    CHECK_THROWS_WITH_AS(config_from_json(nlohmann::json{{"classes", nlohmann::json::array()}}),
                         doctest::Contains("non-empty 'classes'"), std::runtime_error);
}

TEST_CASE("load_config names the system after the file") {
    std::string path = "cfg_roundtrip_test.json";
    {
        std::ofstream out(path);
        out << config_json(fixtures::s2()).dump();
    }
    SystemConfig c = mcfifo::load_config(path);
    CHECK(c.name == "s2");  // name embedded in the json wins
    {
        nlohmann::json j = config_json(fixtures::s2());
        j.erase("name");
        std::ofstream out(path);
        out << j.dump();
    }
    c = mcfifo::load_config(path);
    CHECK(c.name == "cfg_roundtrip_test");  // falls back to the file stem
    std::remove(path.c_str());
    CHECK_THROWS_WITH_AS(mcfifo::load_config("no_such_file.json"),
                         doctest::Contains("cannot open config file"), std::runtime_error);
}

TEST_CASE("report and suite json carry exact strings plus approximations") {
    BoundReport rep = compare(fixtures::s1());
    nlohmann::json j = report_json(rep);
    CHECK(j["system"] == "s1");
    CHECK(j["rho"]["exact"] == "4/5");
    CHECK(j["aggregate"]["gr"]["rate"]["exact"] == "1000000");
    CHECK(j["aggregate"]["gr"]["class"].is_null());
    CHECK(j["direct"]["delay"].contains("na"));
    CHECK(j["improved"]["delay"]["value"]["exact"] == "11/100");
    CHECK(j["improved"]["delay"]["value"]["approx"].get<double>() == doctest::Approx(0.11));
    CHECK(j["improved"]["backlog_parts"]["value"]["selected"] == 1);
    CHECK(j["comparison"][0]["improved_rate_ge"].is_null());
    CHECK(j["comparison"][1]["improved_rate_ge"] == true);
    CHECK(j["improved"]["classes"][1]["gr"]["value"]["error"]["exact"] == "1/6");
    CHECK(j["improved"]["classes"][0]["service_curve"]["value"]["inf_from"].is_null());

    mcfifo::SuiteResult res;
    res.checks_run = {"delay(improved)"};
    res.max_delay = Rat(1, 2);
    nlohmann::json sj = suite_json(res);
    CHECK(sj["pass"] == true);
    CHECK(sj["max_delay"]["exact"] == "1/2");
    CHECK(sj["min_delay_margin"].is_null());
    res.violations.push_back({"delay(improved)", 3, std::nullopt, Rat(2), Rat(1), Rat(-1)});
    sj = suite_json(res);
    CHECK(sj["pass"] == false);
    CHECK(sj["violations"][0]["packet"] == 3);
    CHECK(sj["violations"][0]["time"].is_null());
    CHECK(sj["violations"][0]["margin"]["exact"] == "-1");
}
