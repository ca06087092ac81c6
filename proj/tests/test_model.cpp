#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "radkg/model.hpp"

using namespace radkg;

TEST_CASE("bump_h known values") {
    CHECK(bump_h(0.1) == 5.0);
    CHECK(bump_h(0.0) == 0.0);
    CHECK(bump_h(0.2) == 0.0);
    CHECK(bump_h(0.25) == 0.0);
    // 50-digit reference: 5*exp(100*(1 - 1/(1 - 0.25)))
    CHECK(bump_h(0.05) == doctest::Approx(1.6691188976825031e-14).epsilon(1e-12));
    CHECK_THROWS_AS(bump_h(-1e-3), std::domain_error);
}

TEST_CASE("bump_h is smooth, non-negative and peaks at r = 0.1") {
    double peak = 0.0, where = -1.0;
    for (int i = 0; i <= 100000; ++i) {
        const double r = 0.4 * i / 100000;
        const double h = bump_h(r);
        REQUIRE(std::isfinite(h));
        CHECK(h >= 0.0);
        if (r >= 0.2) CHECK(h == 0.0);
        if (h > peak) peak = h, where = r;
    }
    CHECK(peak == doctest::Approx(5.0));
    CHECK(where == doctest::Approx(0.1).epsilon(1e-4));
}

TEST_CASE("bump_h_prime matches a centered difference") {
    CHECK(bump_h_prime(0.1) == 0.0);
    CHECK(bump_h_prime(0.25) == 0.0);
    for (double r : {0.03, 0.05, 0.08, 0.12, 0.15, 0.18}) {
        const double fd = oracle::central_difference(bump_h, r, 1e-7);
        CHECK(bump_h_prime(r) == doctest::Approx(fd).epsilon(1e-5));
    }
}

TEST_CASE("power law potentials") {
    const auto u3 = Nonlinearity::power(3);
    CHECK(u3.G(2.0) == 4.0);
    CHECK(u3.Gp(2.0) == 8.0);
    CHECK(u3.Gpp(2.0) == 12.0);
    CHECK(u3.name() == "u3");
    CHECK(u3.power_exponent() == 3);
    CHECK_THROWS_AS(Nonlinearity::power(4), std::invalid_argument);
    CHECK_THROWS_AS(Nonlinearity::power(1), std::invalid_argument);
    CHECK_THROWS_AS(Nonlinearity::from_name("u4"), std::invalid_argument);
    CHECK_THROWS_AS(Nonlinearity::zero().power_exponent(), std::exception);
}

TEST_CASE("catalog potentials vanish at zero and have consistent derivatives") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    for (const auto& name : Nonlinearity::catalog_names()) {
        CAPTURE(name);
        const auto nl = Nonlinearity::from_name(name);
        CHECK(nl.name() == name);
        CHECK(nl.G(0.0) == doctest::Approx(0.0));
        CHECK(nl.Gp(0.0) == doctest::Approx(0.0));
        for (int k = 0; k < 100; ++k) {
            const double w = u(rng);
            const double h = 1e-5;
            const double dG = oracle::central_difference([&](double x) { return nl.G(x); }, w, h);
            const double d2G = oracle::central_difference([&](double x) { return nl.Gp(x); }, w, h);
            CHECK(std::abs(nl.Gp(w) - dG) <= 1e-5 * (std::abs(nl.Gp(w)) + 1.0));
            CHECK(std::abs(nl.Gpp(w) - d2G) <= 1e-5 * (std::abs(nl.Gpp(w)) + 1.0));
        }
    }
}

TEST_CASE("sinh5 and sin5 closed forms") {
    const auto sh = Nonlinearity::sinh5();
    const auto sn = Nonlinearity::sin5();
    for (double w : {-0.7, 0.1, 0.3, 1.2}) {
        CHECK(sh.Gp(w) == doctest::Approx(std::sinh(5 * w) - 5 * w).epsilon(1e-13));
        CHECK(sn.Gp(w) == doctest::Approx(std::sin(5 * w) - 5 * w).epsilon(1e-13));
        CHECK(sh.G(w) == doctest::Approx((std::cosh(5 * w) - 1) / 5 - 2.5 * w * w).epsilon(1e-12));
    }
    const double fd = oracle::central_difference([&](double x) { return sh.G(x); }, 0.1, 1e-6);
    CHECK(sh.Gp(0.1) == doctest::Approx(fd).epsilon(1e-6));
}

TEST_CASE("grid construction") {
    GridSpec g;
    CHECK(g.dr() == doctest::Approx(0.002));
    CHECK(g.dt() == doctest::Approx(0.002));
    CHECK_NOTHROW(g.validate());
    const auto h = GridSpec::from_steps(0.4, 0.2, 0.001, 0.0005);
    CHECK(h.M == 400);
    CHECK(h.N == 400);
    CHECK_THROWS_AS(GridSpec::from_steps(0.4, 0.2, 0.003, 0.002), std::invalid_argument);
    CHECK_THROWS_AS((GridSpec{0.4, 0.2, 2, 10}.validate()), std::invalid_argument);
    CHECK_THROWS_AS((GridSpec{0.4, 0.2, 10, 0}.validate()), std::invalid_argument);
    CHECK_THROWS_AS((GridSpec{-0.4, 0.2, 10, 10}.validate()), std::invalid_argument);
}

TEST_CASE("parameter validation") {
    PhysicsParams p;
    CHECK_NOTHROW(p.validate());
    p.gamma = -1.0;  // negative damping is allowed
    CHECK_NOTHROW(p.validate());
    p.m = -1.0;
    CHECK_THROWS_AS(p.validate(), std::invalid_argument);
    p.m = 1.0;
    p.beta = std::nan("");
    CHECK_THROWS_AS(p.validate(), std::invalid_argument);
    CHECK_THROWS_AS((NewtonConfig{0.0, 20}.validate()), std::invalid_argument);
    CHECK_THROWS_AS((NewtonConfig{1e-5, 0}.validate()), std::invalid_argument);
}

TEST_CASE("initial presets") {
    const GridSpec g;
    const auto a = sample_initial_levels(g, InitialPreset::A);
    const auto b = sample_initial_levels(g, InitialPreset::B);
    const auto c = sample_initial_levels(g, InitialPreset::C);
    REQUIRE(a.v0.size() == 201);
    for (const auto* lv : {&a, &b, &c}) {
        CHECK(lv->v0[0] == 0.0);
        CHECK(lv->vt0[0] == 0.0);
        CHECK(lv->v0[200] == 0.0);
    }
    for (double x : b.v0) CHECK(x == 0.0);
    for (double x : c.vt0) CHECK(x == 0.0);
    CHECK(a.v0[50] == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(b.vt0[50] == doctest::Approx(50.0).epsilon(1e-12));
    // psi_A = h' + h/r, so r psi_A = r h' + h
    for (int j : {20, 40, 60, 80}) {
        const double r = g.r(j);
        CHECK(a.vt0[j] == doctest::Approx(r * bump_h_prime(r) + bump_h(r)).epsilon(1e-12));
    }
    CHECK(InitialData::from_name("presetB").name() == "presetB");
    CHECK(InitialData::from_name("C").name() == "presetC");
    CHECK_THROWS_AS(InitialData::from_name("presetD"), std::invalid_argument);
}
