#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "tamedns/wiener.hpp"

using namespace tns;

TEST_CASE("philox 4x32-10 known-answer vectors") {
    // reference vectors from the Random123 test suite
    auto zero = philox4x32({0, 0, 0, 0}, {0, 0});
    CHECK(zero[0] == 0x6627e8d5u);
    CHECK(zero[1] == 0xe169c58du);
    CHECK(zero[2] == 0xbc57ac4cu);
    CHECK(zero[3] == 0x9b00dbd8u);

    auto ones = philox4x32({0xffffffffu, 0xffffffffu, 0xffffffffu, 0xffffffffu},
                           {0xffffffffu, 0xffffffffu});
    CHECK(ones[0] == 0x408f276du);
    CHECK(ones[1] == 0x41c83b0eu);
    CHECK(ones[2] == 0xa20bc7c6u);
    CHECK(ones[3] == 0x6d5451fdu);
}

TEST_CASE("wiener path is reproducible and counter-indexed") {
    WienerPath a(123, 0.01, 100, 3);
    WienerPath b(123, 0.01, 100, 3);
    WienerPath c(124, 0.01, 100, 3);
    bool same = true, diff = false;
    for (int n = 0; n < 100; ++n)
        for (int j = 0; j < 3; ++j) {
            same = same && a.increment(n, j) == b.increment(n, j);
            diff = diff || a.increment(n, j) != c.increment(n, j);
        }
    CHECK(same);
    CHECK(diff);
    CHECK(a.horizon() == doctest::Approx(1.0));
    CHECK_THROWS(WienerPath(1, -0.1, 10, 1));
}

TEST_CASE("increment statistics match Normal(0, dt)") {
    const double dt = 0.05;
    const int n_steps = 20000;
    WienerPath p(7, dt, n_steps, 1);
    double sum = 0.0, sq = 0.0;
    for (int n = 0; n < n_steps; ++n) {
        double x = p.increment(n, 0);
        sum += x;
        sq += x * x;
    }
    double mean = sum / n_steps;
    double var = sq / n_steps - mean * mean;
    // mean within 4 sigma of 0, variance within 5% of dt
    CHECK(std::abs(mean) < 4.0 * std::sqrt(dt / n_steps));
    CHECK(std::abs(var - dt) < 0.05 * dt);
}

TEST_CASE("coarsening sums consecutive increments of the same path") {
    WienerPath fine(55, 0.005, 200, 2);
    WienerPath coarse = fine.coarsen(4);
    CHECK(coarse.n_steps() == 50);
    CHECK(coarse.dt() == doctest::Approx(0.02));
    for (int n = 0; n < 50; ++n)
        for (int j = 0; j < 2; ++j) {
            double s = 0.0;
            for (int r = 0; r < 4; ++r) s += fine.increment(4 * n + r, j);
            CHECK(coarse.increment(n, j) == doctest::Approx(s).epsilon(1e-15));
        }
    CHECK_THROWS(fine.coarsen(3));
    CHECK_THROWS(fine.coarsen(0));
}
