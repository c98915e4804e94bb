#include <climits>
#include <cmath>
#include <filesystem>
#include <fstream>

#include "doctest.h"
#include "hallmhd/config.hpp"

using namespace hallmhd;

namespace {

std::string message_of(const std::string& yaml) {
    try {
        parse_config(yaml);
    } catch (const ValidationError& e) {
        return e.what();
    }
    return "";
}

}  // namespace

TEST_CASE("config: defaults round trip") {
    const RunConfig c;
    const std::string text = emit_config(c);
    CHECK(parse_config(text) == c);
    CHECK(emit_config(parse_config(text)) == text);
    CHECK_NOTHROW(validate(c));
}

TEST_CASE("config: empty document gives defaults") {
    CHECK(parse_config("") == RunConfig{});
    CHECK(parse_config("grid:\n") == RunConfig{});
}

TEST_CASE("config: every field survives a round trip bit for bit") {
    RunConfig c;
    c.grid = {40, 8.0 * kPi / 0.12, 0.3};
    c.recipe = {0.1, TransitionProfile::ExpSmoothstep};
    c.params = {0.1, 1e-300, 0.75};
    c.scheme.dt = 1.0 / 3.0;
    c.scheme.T = 5.0;
    c.scheme.dt_cap = 0.3;
    c.scheme.eta_relative = 2.5e-3;
    c.condition = {0.01, 1e-7};
    c.perturbation = {1e-3, 2.0 / 7.0};
    c.verify.random_states = 7;
    c.verify.commutator_band = 12.5;
    c.io.output_path = "runs/a b";
    c.io.observer_stride = 3;
    c.io.checkpoint_stride = 17;
    c.io.seed = UINT64_MAX;

    const RunConfig back = parse_config(emit_config(c));
    CHECK(back == c);
    CHECK(back.grid.box_side == c.grid.box_side);
    CHECK(back.scheme.dt == c.scheme.dt);
    CHECK(back.params.nu == 1e-300);
    CHECK(back.perturbation.c0_l2 == c.perturbation.c0_l2);
    CHECK(back.recipe.profile == TransitionProfile::ExpSmoothstep);
    CHECK(back.io.seed == UINT64_MAX);
    CHECK(back.io.output_path == "runs/a b");
}

TEST_CASE("config: dt accepts auto") {
    const RunConfig c = parse_config("scheme:\n  dt: auto\n");
    CHECK(c.scheme.auto_dt);
    CHECK(scheme_params(c).dt == 0.0);
    CHECK(parse_config(emit_config(c)).scheme.auto_dt);
    CHECK(emit_config(c).find("dt: auto") != std::string::npos);
    const RunConfig d = parse_config("scheme:\n  dt: 0.002\n");
    CHECK_FALSE(d.scheme.auto_dt);
    CHECK(d.scheme.dt == 0.002);
}

TEST_CASE("config: file save and load") {
    const auto path = std::filesystem::temp_directory_path() / "hallmhd_config_test.yaml";
    RunConfig c;
    c.recipe.epsilon = 0.12;
    c.io.seed = 99;
    save_config(path, c);
    CHECK(load_config(path) == c);
    std::filesystem::remove(path);
    CHECK_THROWS_AS(load_config(path), ValidationError);
}

TEST_CASE("config: unknown and duplicate entries are rejected") {
    CHECK(message_of("grdi:\n  n: 16\n").find("grdi") != std::string::npos);
    CHECK(message_of("grid:\n  nn: 16\n").find("grid.nn") != std::string::npos);
    CHECK(message_of("grid:\n  n: 16\n  n: 32\n").find("duplicate") != std::string::npos);
    CHECK(message_of("grid:\n  n: 16\ngrid:\n  box_side: 3\n").find("duplicate") != std::string::npos);
    CHECK(message_of("- 1\n- 2\n") != "");
    CHECK(message_of("grid: [1, 2]\n") != "");
    CHECK(message_of("grid: {n: [16]}\n").find("grid.n") != std::string::npos);
    CHECK(message_of("grid: {n: 1\n") != "");
}

TEST_CASE("config: wrongly typed values are rejected") {
    CHECK(message_of("grid:\n  n: 3.5\n").find("grid.n") != std::string::npos);
    CHECK(message_of("grid:\n  n: 99999999999\n").find("grid.n") != std::string::npos);
    CHECK(message_of("params:\n  mu: fast\n").find("params.mu") != std::string::npos);
    CHECK(message_of("params:\n  mu: 1.0x\n").find("params.mu") != std::string::npos);
    CHECK(message_of("io:\n  seed: -1\n").find("io.seed") != std::string::npos);
    CHECK(message_of("scheme:\n  dt: never\n").find("scheme.dt") != std::string::npos);
    CHECK(message_of("recipe:\n  profile: square\n") != "");
}

TEST_CASE("config: validate checks ranges") {
    auto invalid = [](auto mutate) {
        RunConfig c;
        mutate(c);
        CHECK_THROWS_AS(validate(c), ValidationError);
    };
    invalid([](RunConfig& c) { c.grid.n = 15; });
    invalid([](RunConfig& c) { c.grid.n = 4; });
    invalid([](RunConfig& c) { c.grid.box_side = -1.0; });
    invalid([](RunConfig& c) { c.grid.max_dk_over_epsilon = 0.0; });
    invalid([](RunConfig& c) { c.recipe.epsilon = 0.0; });
    invalid([](RunConfig& c) { c.recipe.epsilon = max_admissible_epsilon(); });
    invalid([](RunConfig& c) { c.params.mu = 0.0; });
    invalid([](RunConfig& c) { c.params.alpha = 1.5; });
    invalid([](RunConfig& c) { c.scheme.dt = 0.0; });
    invalid([](RunConfig& c) { c.scheme.T = -1.0; });
    invalid([](RunConfig& c) { c.scheme.eta_relative = 0.0; });
    invalid([](RunConfig& c) { c.condition.delta = 0.0; });
    invalid([](RunConfig& c) { c.perturbation.v0_l2 = -1.0; });
    invalid([](RunConfig& c) { c.verify.random_states = 0; });
    invalid([](RunConfig& c) { c.io.output_path = ""; });
    invalid([](RunConfig& c) { c.io.observer_stride = 0; });
    invalid([](RunConfig& c) { c.io.checkpoint_stride = -2; });

    RunConfig ok;
    ok.scheme.auto_dt = true;
    ok.scheme.dt = 0.0;
    CHECK_NOTHROW(validate(ok));
}

TEST_CASE("config: shortest_double") {
    CHECK(shortest_double(0.1) == "0.1");
    CHECK(shortest_double(1.0) == "1.0");
    CHECK(shortest_double(-3.0) == "-3.0");
    CHECK(shortest_double(1e-300) == "1e-300");
    CHECK(shortest_double(INFINITY) == ".inf");
    CHECK(std::stod(shortest_double(kPi)) == kPi);
}
