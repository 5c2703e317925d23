#include <doctest.h>

#include <cmath>

#include "dilative/core_model.hpp"
#include "dilative/rng.hpp"

using namespace dilative;

TEST_CASE("validate_params accepts the LIS-style parameter pair") {
    // H = 0.75 with delta = 2H-2 = -0.5
    CHECK(validate_params({0.75, -0.5, true}).empty());
    CHECK(validate_params({0.75, 1.0, true}).empty());
    CHECK(validate_params({1.0, 0.0, true}).empty());
}

TEST_CASE("validate_params reports delta bound violations") {
    const auto v = validate_params({0.75, 2.0, false});
    REQUIRE(v.size() == 1);
    CHECK(v[0].find("delta <= 2*alpha") != std::string::npos);
}

TEST_CASE("validate_params: H=1 with nonzero delta is degenerate-Gaussian") {
    const auto v = validate_params({1.0, 0.5, true});
    REQUIRE(v.size() == 1);
    CHECK(v[0].find("H=1 forces delta=0") != std::string::npos);
}

TEST_CASE("validate_params: stationary increments bound H") {
    const auto v = validate_params({1.4, 0.0, true});
    REQUIRE(v.size() == 1);
    CHECK(v[0].find("(0,1]") != std::string::npos);
}

TEST_CASE("cumulant_at plugs into the scaling exponent") {
    CumulantVector c(std::vector<double>{0.0, 3.0, 1.0, 2.0});

    // (H-delta/2)n + delta = (0.75-0.5)*2 + 1 = 1.5, so t=4 gives 4^1.5 = 8
    DilativeParams flp_like{0.75, 1.0, true};
    CHECK(cumulant_at(flp_like, c, 2, 4.0) == doctest::Approx(8.0 * 3.0).epsilon(1e-14));

    // t = 1 is the identity regardless of parameters
    CHECK(cumulant_at({0.33, -1.7, false}, c, 3, 1.0) == doctest::Approx(1.0));

    // exponent recomputed independently: (alpha - delta/2)*n + delta
    const double alpha = 0.75, delta = -0.5;
    const int n = 3;
    const double expo = (alpha - delta / 2.0) * n + delta;
    CHECK(expo == doctest::Approx(2.5));
    const double t = 1.7;
    CHECK(cumulant_at({alpha, delta, true}, c, n, t) ==
          doctest::Approx(std::pow(t, 2.5) * 1.0).epsilon(1e-14));
}

TEST_CASE("cumulant_at semigroup property") {
    CumulantVector c(std::vector<double>{0.0, 1.3, -0.4, 2.2});
    DilativeParams p{0.6, -0.8, true};
    Rng rng(3);
    for (int i = 0; i < 50; ++i) {
        const double t = 0.1 + 3.0 * rng.uniform();
        const double s = 0.1 + 3.0 * rng.uniform();
        const int n = 2 + static_cast<int>(rng.uniform() * 3);
        const double expo = (p.alpha - 0.5 * p.delta) * n + p.delta;
        CHECK(cumulant_at(p, c, n, t * s) ==
              doctest::Approx(std::pow(s, expo) * cumulant_at(p, c, n, t)).epsilon(1e-12));
    }
}

TEST_CASE("cumulant_at rejects out-of-range orders") {
    CumulantVector c(std::vector<double>{0.0, 1.0});
    CHECK_THROWS_AS(cumulant_at({0.6, 0.0, true}, c, 3, 1.0), std::invalid_argument);
}

TEST_CASE("fbm_covariance basics") {
    // Brownian case collapses to min(t1,t2)
    CHECK(fbm_covariance(0.5, 1.0, 1.0, 2.0) == doctest::Approx(1.0));
    // diagonal is v t^{2H}
    CHECK(fbm_covariance(0.7, 2.0, 1.5, 1.5) ==
          doctest::Approx(2.0 * std::pow(1.5, 1.4)).epsilon(1e-14));
    // direct formula evaluation
    CHECK(fbm_covariance(0.75, 1.0, 1.0, 3.0) ==
          doctest::Approx(0.5 * (1.0 + std::pow(3.0, 1.5) - std::pow(2.0, 1.5))));
    // symmetry and vanishing at t = 0
    Rng rng(17);
    for (int i = 0; i < 30; ++i) {
        const double h = 0.05 + 0.95 * rng.uniform();
        const double t1 = 3.0 * rng.uniform();
        const double t2 = 3.0 * rng.uniform();
        CHECK(fbm_covariance(h, 1.0, t1, t2) ==
              doctest::Approx(fbm_covariance(h, 1.0, t2, t1)));
        CHECK(fbm_covariance(h, 1.0, t1, 0.0) == doctest::Approx(0.0));
    }
}

TEST_CASE("cumulant_at order 2 matches the covariance diagonal") {
    // (alpha - delta/2)*2 + delta = 2*alpha for any delta
    Rng rng(29);
    for (int i = 0; i < 30; ++i) {
        const double h = 0.1 + 0.85 * rng.uniform();
        const double delta = -1.0 + rng.uniform(); // keep delta < 2H
        const double c2 = 0.5 + rng.uniform();
        const double t = 0.2 + 2.0 * rng.uniform();
        CumulantVector c(std::vector<double>{0.0, c2});
        CHECK(cumulant_at({h, delta, true}, c, 2, t) ==
              doctest::Approx(fbm_covariance(h, c2, t, t)).epsilon(1e-12));
    }
}

TEST_CASE("holder_case regimes and bounds") {
    const HolderCase c1 = holder_case({0.75, -0.5, true});
    CHECK(c1.regime == HolderRegime::case_i);
    CHECK(c1.bound == doctest::Approx(0.75));

    const HolderCase c2 = holder_case({0.75, 1.0, true});
    CHECK(c2.regime == HolderRegime::case_ii);
    CHECK(c2.bound == doctest::Approx(0.25));

    const HolderCase c3 = holder_case({0.6, 1.2, true});
    CHECK(c3.regime == HolderRegime::case_iii);
    CHECK(c3.bound == doctest::Approx(0.1));

    CHECK_THROWS_AS(holder_case({0.4, 0.8, true}), std::invalid_argument);
    CHECK_THROWS_AS(holder_case({0.6, 0.0, false}), std::invalid_argument);
}

TEST_CASE("holder_case bounds are strictly positive on their domain") {
    Rng rng(31);
    for (int i = 0; i < 200; ++i) {
        const double h = 0.02 + 0.98 * rng.uniform();
        double delta = 2.0 * h * (2.0 * rng.uniform() - 1.0); // in (-2H, 2H)
        if (delta == 2.0 * h) delta -= 1e-6;
        const HolderCase hc = holder_case({h, delta, true});
        CHECK(hc.bound > 0.0);
    }
}

TEST_CASE("cumulant vector invariants are reported as data") {
    CumulantVector ok(std::vector<double>{0.0, 1.0, -0.2, 0.5});
    CHECK(ok.validate().empty());

    CumulantVector bad(std::vector<double>{0.1, -1.0, 0.0, -2.0});
    const auto v = bad.validate();
    CHECK(v.size() == 3); // c1 != 0, c2 <= 0, c4 < 0
}

TEST_CASE("sample path lookup refuses interpolation") {
    SamplePath p;
    p.times = {0.0, 0.5, 1.0};
    p.values = {0.0, 0.3, -0.1};
    CHECK(p.value_at(0.5) == doctest::Approx(0.3));
    CHECK(p.value_at(0.0) == doctest::Approx(0.0));
    CHECK_THROWS_AS(p.value_at(0.25), std::runtime_error);
    CHECK(p.validate().empty());

    SamplePath bad = p;
    bad.values[0] = 1.0;
    CHECK(!bad.validate().empty());
}
