#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "torsionlab/maps.hpp"

using namespace torsionlab;
using Catch::Approx;

TEST_CASE("lift step on the presets", "[maps]") {
    const MapDef shear = MapDef::standard(0.0);
    const PhasePoint a = lift_step(shear, {0.3, 0.25});
    CHECK(a.x == Approx(0.55).margin(1e-15));
    CHECK(a.y == Approx(0.25).margin(1e-15));

    const MapDef std2 = MapDef::standard(2.0);
    const PhasePoint fixed = lift_step(std2, {0.0, 0.0});
    CHECK(fixed.x == 0.0);
    CHECK(fixed.y == 0.0);

    // the three-harmonic force vanishes at x = 0, so (0, 1/2) maps to (1/2, 1/2)
    const MapDef th = MapDef::three_harmonic(1.0);
    const PhasePoint b = lift_step(th, {0.0, 0.5});
    CHECK(b.x == Approx(0.5).margin(1e-15));
    CHECK(b.y == Approx(0.5).margin(1e-15));
}

TEST_CASE("inverse step", "[maps]") {
    const MapDef shear = MapDef::standard(0.0);
    const PhasePoint a = inverse_step(shear, {0.55, 0.25});
    CHECK(a.x == Approx(0.3).margin(1e-15));
    CHECK(a.y == Approx(0.25).margin(1e-15));

    const MapDef th = MapDef::three_harmonic(1.0);
    const PhasePoint b = inverse_step(th, {0.5, 0.5});
    CHECK(b.x == Approx(0.0).margin(1e-14));
    CHECK(b.y == Approx(0.5).margin(1e-14));

    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> ux(-3.0, 3.0);
    for (const MapDef& map :
         {MapDef::standard(1.7), MapDef::three_harmonic(0.6),
          MapDef::rational_harmonic(1.2, -0.3)}) {
        double worst = 0.0;
        for (int i = 0; i < 1000; ++i) {
            const PhasePoint z{ux(rng), ux(rng)};
            const PhasePoint back = inverse_step(map, lift_step(map, z));
            worst = std::max({worst, std::abs(back.x - z.x), std::abs(back.y - z.y)});
            const PhasePoint fwd = lift_step(map, inverse_step(map, z));
            worst = std::max({worst, std::abs(fwd.x - z.x), std::abs(fwd.y - z.y)});
        }
        CHECK(worst < 1e-13);
    }
}

TEST_CASE("derivative entries and unit determinant", "[maps]") {
    const Mat2 d4 = derivative(MapDef::standard(4.0), {0.0, 0.0});
    CHECK(d4.a == Approx(-3.0).margin(1e-14));
    CHECK(d4.b == 1.0);
    CHECK(d4.c == Approx(-4.0).margin(1e-14));
    CHECK(d4.d == 1.0);
    CHECK(d4.trace() == Approx(-2.0).margin(1e-14));

    const Mat2 shear = derivative(MapDef::standard(0.0), {0.37, -1.2});
    CHECK(shear.a == 1.0);
    CHECK(shear.b == 1.0);
    CHECK(shear.c == 0.0);

    const Mat2 d2 = derivative(MapDef::standard(2.0), {0.0, 0.5});
    CHECK(d2.a == Approx(-1.0).margin(1e-14));
    CHECK(d2.c == Approx(-2.0).margin(1e-14));

    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> ux(-50.0, 50.0);
    const MapDef map = MapDef::three_harmonic(0.9);
    double worst = 0.0;
    for (int i = 0; i < 1000000; ++i) {
        const Mat2 m = derivative(map, {ux(rng), ux(rng)});
        worst = std::max(worst, std::abs(m.det() - 1.0));
    }
    CHECK(worst <= 1e-12);
}

TEST_CASE("action term and the standard potential", "[maps]") {
    const MapDef shear = MapDef::standard(0.0);
    CHECK(action_term(shear, 0.2, 0.7) == Approx(0.125).margin(1e-15));

    // standard preset: h(x,x') = (x'-x)^2/2 + eps cos(2 pi x)/(2 pi)^2
    const MapDef map = MapDef::standard(1.3);
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> ux(-2.0, 2.0);
    for (int i = 0; i < 200; ++i) {
        const double x = ux(rng), xp = ux(rng);
        const double expected = 0.5 * (xp - x) * (xp - x) +
                                1.3 * std::cos(kTwoPi * x) / (kTwoPi * kTwoPi);
        CHECK(action_term(map, x, xp) == Approx(expected).margin(1e-14));
    }
}

TEST_CASE("symmetry lines", "[maps]") {
    const auto lines = symmetry_lines(MapDef::standard(1.0));
    CHECK(lines[0].a == 1.0);
    CHECK(lines[0].b == 0.0);
    CHECK(lines[0].c == 0.0);
    CHECK(lines[1].c == -0.5);
    CHECK(lines[2].b == -0.5);
    CHECK(lines[2].c == 0.0);
    CHECK(lines[3].b == -0.5);
    CHECK(lines[3].c == -0.5);

    // points generated on each line satisfy its equation
    for (int k = 0; k < 4; ++k) {
        const PhasePoint z = point_on_symmetry_line(k, 0.37);
        const LineCoeffs& l = lines[k];
        const double v = l.a * z.x + l.b * z.y + l.c;
        CHECK(std::abs(std::min(std::abs(v), std::abs(v - 1.0))) < 1e-15);
    }
}

TEST_CASE("lift periodicity in x", "[maps]") {
    std::mt19937_64 rng(23);
    std::uniform_real_distribution<double> ux(-4.0, 4.0);
    for (const MapDef& map : {MapDef::standard(1.9), MapDef::three_harmonic(0.8)}) {
        for (int i = 0; i < 5000; ++i) {
            const PhasePoint z{ux(rng), ux(rng)};
            const PhasePoint a = lift_step(map, {z.x + 1.0, z.y});
            const PhasePoint b = lift_step(map, z);
            CHECK(a.y == Approx(b.y).margin(1e-14));
            CHECK(a.x == Approx(b.x + 1.0).margin(1e-14));
        }
    }
}

TEST_CASE("generating function consistency", "[maps]") {
    std::mt19937_64 rng(31);
    std::uniform_real_distribution<double> ux(-2.0, 2.0);
    const MapDef map = MapDef::three_harmonic(0.7);
    for (int i = 0; i < 2000; ++i) {
        const double x = ux(rng), xp = ux(rng);
        const double y = -gen_h1(map, x, xp);
        const double yp = gen_h2(map, x, xp);
        const PhasePoint img = lift_step(map, {x, y});
        CHECK(img.x == Approx(xp).margin(1e-12));
        CHECK(img.y == Approx(yp).margin(1e-12));
    }
}

TEST_CASE("reversibility: I o R = F", "[maps]") {
    std::mt19937_64 rng(41);
    std::uniform_real_distribution<double> ux(-2.0, 2.0);
    for (const MapDef& map : {MapDef::standard(2.2), MapDef::three_harmonic(0.9),
                              MapDef::rational_harmonic(0.8, 0.4)}) {
        for (int i = 0; i < 2000; ++i) {
            const PhasePoint z{ux(rng), ux(rng)};
            const PhasePoint r = reversor(map, z);
            const PhasePoint ir{-r.x + r.y, r.y};
            const PhasePoint f = lift_step(map, z);
            CHECK(ir.x == Approx(f.x).margin(1e-12));
            CHECK(ir.y == Approx(f.y).margin(1e-12));
        }
    }
}

TEST_CASE("rational force derivatives match finite differences", "[maps]") {
    const MapDef map = MapDef::rational_harmonic(1.0, -0.3);
    const double h = 1e-6;
    for (double x : {0.0, 0.13, 0.37, 0.49, -0.31}) {
        const double fd = (map.force(x + h) - map.force(x - h)) / (2.0 * h);
        CHECK(map.force_deriv(x) == Approx(fd).margin(1e-7));
        const double vd = (map.potential(x + h) - 2.0 * map.potential(x) +
                           map.potential(x - h)) / (h * h);
        CHECK(map.potential_dd(x) == Approx(vd).margin(1e-3));
        // g = -eps V'
        const double vfd = (map.potential(x + h) - map.potential(x - h)) / (2.0 * h);
        CHECK(map.force(x) == Approx(-map.epsilon * vfd).margin(1e-7));
    }
}

TEST_CASE("map validation", "[maps]") {
    CHECK_THROWS_AS(MapDef::rational_harmonic(1.0, 1.0), ValidationError);
    CHECK_THROWS_AS(MapDef::standard(-0.5), ValidationError);
    MapDef empty;
    CHECK_THROWS_AS(empty.validate(), ValidationError);
}
