#include <sstream>
#include <stdexcept>

#include "doctest.h"
#include "json.hpp"
#include "rrgg/builder.hpp"
#include "rrgg/harness.hpp"
#include "rrgg/io.hpp"
#include "rrgg/oracle.hpp"

using namespace rrgg;
using nlohmann::json;

TEST_CASE("points round-trip exactly") {
    for (NormParam p : {NormParam(2.0), NormParam::infinity(), NormParam(1.5)}) {
        const auto pts = sample_points(40, 3, 8, p);
        std::stringstream s;
        write_points(s, pts);
        const auto back = read_points(s);
        CHECK(back.coords() == pts.coords());
        CHECK(back.norm() == pts.norm());
        CHECK(back.dim() == 3);
        CHECK(back.seed() == pts.seed());
    }
    std::istringstream bad("3 2 2 0\n0.1 0.2\n");
    CHECK_THROWS(read_points(bad));
}

TEST_CASE("instances round-trip") {
    ColouredGraphInstance g{4, {{0, 1, 3, 0.25}, {1, 2, 1, std::nullopt}, {2, 3, 7, 0.5}}};
    std::stringstream s;
    write_instance(s, g);
    const auto back = read_instance(s);
    REQUIRE(back.edges.size() == 3);
    CHECK(back.n == 4);
    CHECK(back.edges[0].colour == 3);
    CHECK(back.edges[0].length == 0.25);
    CHECK_FALSE(back.edges[1].length.has_value());
    std::istringstream loop("2 1\n0 0 1\n");
    CHECK_THROWS_AS(read_instance(loop), std::invalid_argument);
}

TEST_CASE("events CSV reads back as the prefix instance") {
    const auto pts = sample_points(30, 2, 4);
    const auto proc = build_process(pts, 0.4, 3.0, 5);
    std::stringstream s;
    write_events_csv(s, proc);
    const auto g = read_events_csv(s, 30);
    const auto expect = instance_from_prefix(proc, proc.events().size());
    REQUIRE(g.edges.size() == expect.edges.size());
    for (std::size_t k = 0; k < g.edges.size(); ++k) {
        CHECK(g.edges[k].i == expect.edges[k].i);
        CHECK(g.edges[k].j == expect.edges[k].j);
        CHECK(g.edges[k].colour == expect.edges[k].colour);
        CHECK(g.edges[k].length == expect.edges[k].length);
    }
}

TEST_CASE("config JSON") {
    const auto c = config_from_json(R"({"d": 2, "p": "inf", "n_list": [100, 200], "omega": "default",
                                        "mode": "both", "trials": 3, "seed": 7})");
    CHECK(c.p.is_infinite());
    CHECK(c.n_list == std::vector<std::size_t>{100, 200});
    CHECK_FALSE(c.omega.has_value());
    CHECK(c.mode == ExperimentMode::Both);
    const auto again = config_from_json(config_to_json(c));
    CHECK(config_to_json(again) == config_to_json(c));

    CHECK(config_from_json(R"({"n_list": [10], "omega": 0.5, "p": 1.5})").omega == 0.5);
    CHECK_THROWS_AS(config_from_json("{"), std::invalid_argument);
    CHECK_THROWS_AS(config_from_json(R"({"n_list": [10], "omega": "slow"})"), std::invalid_argument);
    CHECK_THROWS_AS(config_from_json(R"({"n_list": "ten"})"), std::invalid_argument);
    CHECK_THROWS_AS(config_from_json(R"({"n_list": [10], "mode": "HCPM"})"), std::invalid_argument);
}

TEST_CASE("certificate and report JSON") {
    RainbowCertificate cert{Structure::PerfectMatching, {{0, 1, 4, 0.125}, {2, 3, 9, 0.25}}, 0.25};
    const auto j = json::parse(to_json(cert));
    CHECK(j.at("kind") == "PM");
    CHECK(j.at("radius") == 0.25);
    CHECK(j.at("edges").size() == 2);
    CHECK(j.at("edges")[1].at("colour") == 9);

    const auto f = json::parse(to_json(BuildFailure{"stitch", "tree edge 1-2", "none"}));
    CHECK(f.at("stage") == "stitch");
    CHECK(f.at("piece") == "tree edge 1-2");

    const auto pts = sample_points(8, 2, 2);
    const auto rep = build_rainbow(pts, 20.0, 1, Structure::PerfectMatching);
    const auto r = json::parse(to_json(rep));
    CHECK(r.at("success") == rep.success());

    const auto proc = build_process(pts, 2.0, 20.0, 1);
    const auto h = json::parse(to_json(compute_hitting_radii(proc)));
    CHECK(h.is_object());
}
