#include "tavis/config.hpp"
#include "tavis/errors.hpp"

#include <doctest.h>

#include <random>

using namespace tavis;

namespace {

constexpr const char* kFull = R"(# reference experiment
format = tavis-config/1
spin = 6
excitations = 4
coupling = 1
delta0 = 5
frequencies = 3.57, 3.68, 3.75
drive = cosine
cycles = 4000
steps_per_cycle = 20000
output = out
seed = 12345
emit = timeseries, strobe_map, weights, classical_crosscheck
timeseries_cycles = 200
samples_per_cycle = 50
crosscheck_cycles = 5
convergence_check = false
)";

}  // namespace

TEST_CASE("parse a full config") {
    const auto c = parse_config(kFull);
    CHECK(c.sector.two_s == 12);
    CHECK(c.sector.m == 4);
    CHECK(c.sector.g == 1.0);
    CHECK(c.sector.delta0 == 5.0);
    CHECK(c.frequencies == std::vector<double>{3.57, 3.68, 3.75});
    CHECK(c.drive == DriveProtocol::Form::Cosine);
    CHECK(c.cycles == 4000);
    CHECK(c.steps_per_cycle == 20000);
    CHECK(c.output_dir == "out");
    CHECK(c.emit.classical_crosscheck);
    CHECK(c.crosscheck_cycles == 5);
    CHECK(!c.convergence_check);
    CHECK(c.params_for(3.68).omega == 3.68);
    CHECK(c.drive_for(3.68).delta0 == 5.0);
}

TEST_CASE("defaults and half-integer spin") {
    const auto c = parse_config("format = tavis-config/1\nspin = 2.5 # comment\nexcitations = 3\n");
    CHECK(c.sector.two_s == 5);
    CHECK(c.sector.m == 3);
    CHECK(c.cycles == 4000);
    CHECK(c.emit == EmitFlags{});
    const auto flat = parse_config("format = tavis-config/1\ndrive = constant\nemit = weights\n");
    CHECK(flat.drive == DriveProtocol::Form::Constant);
    CHECK(flat.emit == EmitFlags{false, false, true, false});
}

TEST_CASE("serialize and parse round trip") {
    std::mt19937_64 rng(61);
    std::uniform_real_distribution<double> uni(0.01, 10.0);
    for (int trial = 0; trial < 200; ++trial) {
        ExperimentConfig c;
        c.sector.two_s = 1 + static_cast<int>(rng() % 20);
        c.sector.m = static_cast<int>(rng() % 10);
        c.sector.g = uni(rng);
        c.sector.delta0 = uni(rng) - 5.0;
        c.frequencies.assign(1 + rng() % 4, 0.0);
        for (auto& w : c.frequencies) w = uni(rng);
        c.drive = rng() % 2 ? DriveProtocol::Form::Cosine : DriveProtocol::Form::Constant;
        c.cycles = 1 + static_cast<long>(rng() % 10000);
        c.steps_per_cycle = 1 + static_cast<int>(rng() % 50000);
        c.output_dir = "dir" + std::to_string(trial);
        c.seed = rng();
        c.emit = EmitFlags{rng() % 2 == 0, rng() % 2 == 0, rng() % 2 == 0, rng() % 2 == 0};
        c.timeseries_cycles = static_cast<long>(rng() % 300);
        c.samples_per_cycle = 1 + static_cast<int>(rng() % 100);
        c.crosscheck_cycles = static_cast<long>(rng() % 10);
        c.convergence_check = rng() % 2 == 0;
        const auto text = serialize_config(c);
        const auto back = parse_config(text);
        CHECK(serialize_config(back) == text);
        CHECK(back.sector.g == c.sector.g);
        CHECK(back.frequencies == c.frequencies);
        CHECK(back.seed == c.seed);
        CHECK(back.emit == c.emit);
    }
}

TEST_CASE("shortest decimal form") {
    CHECK(format_shortest(3.57) == "3.57");
    CHECK(format_shortest(0.5) == "0.5");
    CHECK(format_shortest(4.0) == "4");
}

TEST_CASE("config errors") {
    const std::string head = "format = tavis-config/1\n";
    CHECK_THROWS_AS(parse_config("spin = 6\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("format = tavis-config/2\n"), ConfigError);
    CHECK_THROWS_AS(parse_config(head + "cycles = 0\n"), ConfigError);
    CHECK_THROWS_AS(parse_config(head + "cycles = -3\n"), ConfigError);
    CHECK_THROWS_AS(parse_config(head + "cycles = ten\n"), ConfigError);
    CHECK_THROWS_AS(parse_config(head + "spin = 1.3\n"), ConfigError);
    CHECK_THROWS_AS(parse_config(head + "spin = -1\n"), ConfigError);
    CHECK_THROWS_AS(parse_config(head + "coupling = 0\n"), ConfigError);
    CHECK_THROWS_AS(parse_config(head + "excitations = -1\n"), ConfigError);
    CHECK_THROWS_AS(parse_config(head + "frequencies = 3.5, -1\n"), ConfigError);
    CHECK_THROWS_AS(parse_config(head + "frequencies =\n"), ConfigError);
    CHECK_THROWS_AS(parse_config(head + "drive = square\n"), ConfigError);
    CHECK_THROWS_AS(parse_config(head + "emit = movies\n"), ConfigError);
    CHECK_THROWS_AS(parse_config(head + "colour = blue\n"), ConfigError);
    CHECK_THROWS_AS(parse_config(head + "cycles = 3\ncycles = 4\n"), ConfigError);
    CHECK_THROWS_AS(parse_config(head + "just words\n"), ConfigError);
    CHECK_THROWS_AS(parse_config(head + "convergence_check = maybe\n"), ConfigError);
    CHECK_THROWS_AS(load_config("/nonexistent/path/config.cfg"), ConfigError);
}
