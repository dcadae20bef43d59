#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <sstream>

#include "paircorr/rng.hpp"
#include "paircorr/torus.hpp"

using namespace paircorr;

TEST_CASE("torus distance handles wrap-around") {
    REQUIRE(torus_distance(TorusPoint(0.9), TorusPoint(0.1)) == Catch::Approx(0.2).margin(1e-15));
    REQUIRE(torus_distance(TorusPoint(0.4), TorusPoint(0.4)) == 0.0);
    REQUIRE(torus_distance(TorusPoint(0.25), TorusPoint(0.75)) == 0.5);
}

TEST_CASE("reduce_mod_1 basics") {
    REQUIRE(reduce_mod_1(2.75).value() == 0.75);
    REQUIRE(reduce_mod_1(-0.25).value() == 0.75);
    REQUIRE(reduce_mod_1(3.0).value() == 0.0);
    REQUIRE_THROWS_AS(reduce_mod_1(std::numeric_limits<double>::infinity()),
                      std::invalid_argument);
    REQUIRE_THROWS_AS(reduce_mod_1(std::nan("")), std::invalid_argument);
}

TEST_CASE("reduce_mod_1 never yields 1.0") {
    // -1e-17 + 1.0 rounds to 1.0; construction must clamp back to 0
    REQUIRE(reduce_mod_1(-1e-17).value() == 0.0);
    REQUIRE(reduce_mod_1(std::nextafter(1.0, 0.0)).value() < 1.0);
}

TEST_CASE("torus distance properties on random pairs") {
    SplitMix64 rng(2024);
    for (int trial = 0; trial < 2000; ++trial) {
        TorusPoint a(rng.next_unit()), b(rng.next_unit()), c(rng.next_unit());
        double dab = torus_distance(a, b);
        REQUIRE(dab == torus_distance(b, a));
        REQUIRE(dab >= 0.0);
        REQUIRE(dab <= 0.5);
        double dac = torus_distance(a, c);
        double dbc = torus_distance(b, c);
        REQUIRE(dac <= dab + dbc + 1e-15);
    }
}

TEST_CASE("reduce_mod_1 is periodic in integer shifts") {
    SplitMix64 rng(99);
    for (int trial = 0; trial < 2000; ++trial) {
        double x = (rng.next_unit() - 0.5) * 8.0;
        double base = reduce_mod_1(x).value();
        for (int k = -3; k <= 3; ++k)
            REQUIRE(reduce_mod_1(x + k).value() == Catch::Approx(base).margin(1e-12));
    }
}

TEST_CASE("point file round trip is exact") {
    PointSet ps;
    SplitMix64 rng(5);
    for (int i = 0; i < 100; ++i)
        ps.points.push_back(TorusPoint(rng.next_unit()));

    std::stringstream buf;
    write_points(buf, ps);
    PointSet back = read_points(buf, "roundtrip");
    REQUIRE(back.points.size() == ps.points.size());
    for (std::size_t i = 0; i < ps.points.size(); ++i)
        REQUIRE(back.points[i].value() == ps.points[i].value());
}

TEST_CASE("point file reader skips comments and rejects bad input") {
    {
        std::stringstream in("# header\n0.25\n\n  # indented comment\n0.5\n");
        PointSet ps = read_points(in);
        REQUIRE(ps.points.size() == 2);
        REQUIRE(ps.points[0].value() == 0.25);
        REQUIRE(ps.points[1].value() == 0.5);
    }
    {
        std::stringstream in("0.25\noops\n");
        REQUIRE_THROWS_AS(read_points(in), std::runtime_error);
    }
    {
        std::stringstream in("1.5\n");
        REQUIRE_THROWS_AS(read_points(in), std::runtime_error);
    }
    {
        std::stringstream in("-0.1\n");
        REQUIRE_THROWS_AS(read_points(in), std::runtime_error);
    }
    {
        std::stringstream in("# only comments\n");
        REQUIRE_THROWS_AS(read_points(in), std::runtime_error);
    }
}
