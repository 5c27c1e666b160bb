/*
 * manetsim: geometry, config validation, and config file round trips.
 *
 * SPDX-License-Identifier: GPL-2.0-only
 */
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "manet/config.hpp"
#include "manet/config_io.hpp"
#include "manet/types.hpp"

#include <algorithm>
#include <random>

using namespace manet;

TEST_CASE("distance basics")
{
    CHECK(distance({0, 0}, {0, 0}) == 0.0);
    CHECK(distance({0, 0}, {3, 4}) == doctest::Approx(5.0).epsilon(1e-15));
    CHECK(distance({100, 200}, {700, 200}) == doctest::Approx(600.0).epsilon(1e-15));
}

TEST_CASE("distance is a metric on sampled points")
{
    std::mt19937_64 rng(42);
    auto pt = [&] {
        std::uniform_real_distribution<double> d(0.0, 2000.0);
        return Position{d(rng), d(rng)};
    };
    for (int i = 0; i < 2000; ++i) {
        Position a = pt(), b = pt(), c = pt();
        CHECK(distance(a, b) == distance(b, a));
        CHECK(distance(a, b) >= 0.0);
        CHECK(distance(a, c) <= distance(a, b) + distance(b, c) + 1e-9);
    }
}

TEST_CASE("in_range boundary is inclusive")
{
    CHECK(in_range({0, 0}, {0, 0}, 1.0));
    CHECK(in_range({0, 0}, {0, 700}, 700.0));
    CHECK_FALSE(in_range({0, 0}, {0, 700.001}, 700.0));
    // symmetry on random pairs
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> d(0.0, 1000.0);
    for (int i = 0; i < 500; ++i) {
        Position a{d(rng), d(rng)}, b{d(rng), d(rng)};
        CHECK(in_range(a, b, 400.0) == in_range(b, a, 400.0));
    }
}

namespace {

ScenarioConfig baseline_config()
{
    ScenarioConfig cfg; // defaults are the common experiment parameters
    for (std::uint32_t i = 0; i < 3; ++i) {
        FlowSpec f;
        f.flow_id = i;
        f.src = i;
        f.dst = 10 + i;
        cfg.flows.push_back(f);
    }
    return cfg;
}

bool mentions(const std::vector<std::string>& errors, const std::string& needle)
{
    return std::any_of(errors.begin(), errors.end(), [&](const std::string& e) {
        return e.find(needle) != std::string::npos;
    });
}

} // namespace

TEST_CASE("validate_config accepts the default experiment scenario")
{
    ScenarioConfig cfg = baseline_config();
    CHECK(cfg.node_count == 30);
    CHECK(cfg.area_width == 2000.0);
    CHECK(cfg.initial_energy == 7.0);
    CHECK(cfg.bandwidth == 1.0e6);
    CHECK(validate_config(cfg).empty());
}

TEST_CASE("validate_config reports the computed alpha sum")
{
    ScenarioConfig cfg = baseline_config();
    cfg.weight_params.alpha1 = 0.5;
    cfg.weight_params.alpha2 = 0.5;
    cfg.weight_params.alpha3 = 0.5;
    auto errors = validate_config(cfg);
    REQUIRE_FALSE(errors.empty());
    CHECK(mentions(errors, "alpha sum = 1.5"));
}

TEST_CASE("validate_config rejects tiny networks and names each violation")
{
    ScenarioConfig cfg = baseline_config();
    cfg.node_count = 1;
    auto errors = validate_config(cfg);
    CHECK(mentions(errors, "node_count"));

    cfg = baseline_config();
    cfg.bandwidth = 0.0;
    cfg.radio_range = -1.0;
    errors = validate_config(cfg);
    CHECK(mentions(errors, "bandwidth"));
    CHECK(mentions(errors, "radio_range"));

    cfg = baseline_config();
    cfg.mac_queue_capacity = 50; // l_max stays 100
    errors = validate_config(cfg);
    CHECK(mentions(errors, "mac_queue_capacity"));

    cfg = baseline_config();
    cfg.flows[0].dst = cfg.flows[0].src;
    errors = validate_config(cfg);
    CHECK(mentions(errors, "src must differ from dst"));
}

TEST_CASE("config file round trip is stable")
{
    ScenarioConfig cfg = baseline_config();
    cfg.mobility = MobilityModel::RandomWaypoint;
    cfg.v_max = 20.0;
    cfg.protocol = Protocol::MultiMetric;
    cfg.seed = 987654321;
    cfg.flows[1].src = kNoNode; // auto endpoint
    cfg.flows[1].dst = kNoNode;

    const std::string text = write_config(cfg);
    ConfigParseResult parsed = parse_config(text);
    REQUIRE(parsed.ok());
    CHECK(validate_config(parsed.config).empty());
    // serialized form of the parsed config is identical
    CHECK(write_config(parsed.config) == text);
}

TEST_CASE("config parser reports unknown keys and bad values with line numbers")
{
    ConfigParseResult r = parse_config("node_count = 30\nbogus_key = 1\n");
    REQUIRE_FALSE(r.ok());
    CHECK(mentions(r.errors, "line 2"));
    CHECK(mentions(r.errors, "unknown key"));

    r = parse_config("node_count = many\n");
    REQUIRE_FALSE(r.ok());
    CHECK(mentions(r.errors, "node_count"));
}

TEST_CASE("config parser derives weight normalizers from the scenario")
{
    ConfigParseResult r = parse_config("node_count = 12\n"
                                       "initial_energy = 3.5\n"
                                       "mac_queue_capacity = 64\n");
    REQUIRE(r.ok());
    CHECK(r.config.weight_params.e_max == 3.5);
    CHECK(r.config.weight_params.d_max == 11);
    CHECK(r.config.weight_params.l_max == 64);
    CHECK(r.config.mac_queue_capacity == 64);
}

TEST_CASE("flow endpoints parse as ids or auto")
{
    ConfigParseResult r = parse_config("flow.0.src = auto\n"
                                       "flow.0.dst = 7\n"
                                       "flow.0.interval = 0.05\n");
    REQUIRE(r.ok());
    REQUIRE(r.config.flows.size() == 1);
    CHECK(r.config.flows[0].src == kNoNode);
    CHECK(r.config.flows[0].dst == 7);
    CHECK(r.config.flows[0].interval == 0.05);
}
