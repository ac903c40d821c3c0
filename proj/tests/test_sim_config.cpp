#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <string>

#include "atomsg/errors.hpp"
#include "atomsg/sim_config.hpp"

using namespace atomsg;

namespace {

std::string base_config() {
    return R"(# minimal valid config
cm_grid.min = -20
cm_grid.max = 20
cm_grid.points = 64
r_grid.min = -6
r_grid.max = 6
r_grid.points = 32
mass.cm = 50
mass.r = 10
time.dt = 0.01
time.total = 1.0
)";
}

} // namespace

TEST_CASE("minimal config parses with documented defaults") {
    auto cfg = parse_sim_config(base_config());
    CHECK(cfg.cm_grid.points == 64);
    CHECK(cfg.mass_cm == 50.0);
    CHECK(cfg.field_gradient == 0.0);
    CHECK(cfg.omega_r == 1.0);
    CHECK_FALSE(cfg.coupling.enabled);
    CHECK(cfg.snapshot_stride == 10);
    // equal spin superposition by default
    CHECK(std::norm(cfg.spin_plus) == doctest::Approx(0.5));
    CHECK(std::norm(cfg.spin_minus) == doctest::Approx(0.5));
}

TEST_CASE("missing mass key is named in the error") {
    std::string text = base_config();
    auto pos = text.find("mass.cm = 50\n");
    text.erase(pos, std::string("mass.cm = 50\n").size());
    try {
        parse_sim_config(text);
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        CHECK(std::string(e.what()).find("mass.cm") != std::string::npos);
    }
}

TEST_CASE("unknown keys are named") {
    try {
        parse_sim_config(base_config() + "masss.cm = 3\n");
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        CHECK(std::string(e.what()).find("masss.cm") != std::string::npos);
    }
}

TEST_CASE("duplicate and malformed lines are rejected") {
    CHECK_THROWS_AS(parse_sim_config(base_config() + "mass.cm = 3\n"), ConfigError);
    CHECK_THROWS_AS(parse_sim_config(base_config() + "mass.r 3\n"), ConfigError);
    CHECK_THROWS_AS(parse_sim_config(base_config() + "time.dt = abc\n"), ConfigError);
}

TEST_CASE("coupling block round-trips") {
    auto cfg = parse_sim_config(base_config() +
                                "coupling.enabled = true\n"
                                "coupling.lambda = 0.5\n"
                                "coupling.offset = 12\n"
                                "coupling.source = analytic\n"
                                "coupling.Z = 10\n");
    CHECK(cfg.coupling.enabled);
    CHECK(cfg.coupling.lambda == 0.5);
    CHECK(cfg.coupling.source == CouplingSource::analytic);
}

TEST_CASE("profile source requires a path") {
    CHECK_THROWS_AS(parse_sim_config(base_config() +
                                     "coupling.enabled = true\n"
                                     "coupling.source = profile\n"),
                    ConfigError);
}

TEST_CASE("spin vector is four numbers") {
    auto cfg = parse_sim_config(base_config() + "initial.spin = 1 0 0 0\n");
    CHECK(std::norm(cfg.spin_plus) == doctest::Approx(1.0));
    CHECK_THROWS_AS(parse_sim_config(base_config() + "initial.spin = 1 0\n"),
                    ConfigError);
}

TEST_CASE("stability guard fires before any stepping") {
    std::string text = base_config();
    auto pos = text.find("time.dt = 0.01");
    text.replace(pos, std::string("time.dt = 0.01").size(), "time.dt = 1000");
    CHECK_THROWS_AS(parse_sim_config(text), StabilityError);
}

TEST_CASE("grid floor of 16 points") {
    std::string text = base_config();
    auto pos = text.find("r_grid.points = 32");
    text.replace(pos, std::string("r_grid.points = 32").size(), "r_grid.points = 8");
    CHECK_THROWS_AS(parse_sim_config(text), ConfigError);
}

TEST_CASE("max kinetic eigenvalue formula") {
    auto cfg = parse_sim_config(base_config());
    const double dx = cfg.cm_grid.step(), dr = cfg.r_grid.step();
    CHECK(cfg.max_kinetic_eigenvalue() ==
          doctest::Approx(2.0 / (50.0 * dx * dx) + 2.0 / (10.0 * dr * dr)));
}
