#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "contrast/params.hpp"

using namespace contrast;
namespace {
constexpr double kPi = std::numbers::pi;
const DomainSpec kSymRect{DomainKind::BoundedRectangle, 1.0, -1.0, 1.0};
}  // namespace

TEST_CASE("q_eps direct substitution") {
    ModelParams p;
    p.n = 2;
    p.R = 0.25;
    p.d_law = {1.0, 0.0};
    p.alpha_law = {1.0, 0.0};
    p.beta_law = {1.0, 0.0};
    CHECK(q_eps(p, 1.0) == doctest::Approx(8.0).epsilon(1e-14));

    p.alpha_law.coeff = 2.0;
    CHECK(q_eps(p, 1.0) == doctest::Approx(16.0).epsilon(1e-14));

    CHECK_THROWS_AS(q_eps(p, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(q_eps(p, -1.0), std::invalid_argument);
}

TEST_CASE("canonical scaling keeps q_eps and r_eps constant in eps") {
    const auto p = canonical_params(5.0, 1.0, kSymRect);
    for (double eps : {0.5, 0.25, 0.1, 1.0 / 64.0, 1e-3}) {
        CHECK(q_eps(p, eps) == doctest::Approx(5.0).epsilon(1e-13));
        CHECK(r_eps(p, eps) == doctest::Approx(1.0).epsilon(1e-13));
    }
    const auto lim = limits(p);
    CHECK(lim.q == doctest::Approx(5.0).epsilon(1e-13));
    CHECK(lim.r == doctest::Approx(1.0).epsilon(1e-13));
}

TEST_CASE("r_eps hard-coded ball volumes") {
    ModelParams p;
    p.R = 0.25;
    p.beta_law = {10.0, 0.0};
    p.n = 2;
    CHECK(r_eps(p, 0.1) == doctest::Approx(kPi / 16.0).epsilon(1e-14));
    p.n = 3;
    p.beta_law = {1.0, 0.0};
    CHECK(r_eps(p, 1.0) == doctest::Approx(kPi / 48.0).epsilon(1e-14));
    CHECK(r_eps(p, 1.0) == doctest::Approx(0.0654498469).epsilon(1e-9));
}

TEST_CASE("scaling homogeneity in alpha and beta") {
    std::mt19937_64 rng(42);
    std::uniform_real_distribution<double> coeff(0.1, 10.0);
    std::uniform_real_distribution<double> expo(-2.0, 3.0);
    for (int trial = 0; trial < 50; ++trial) {
        ModelParams p;
        p.n = 2 + (trial % 3);
        p.R = 0.3;
        p.d_law = {coeff(rng), expo(rng)};
        p.alpha_law = {coeff(rng), expo(rng)};
        p.beta_law = {coeff(rng), expo(rng)};
        const double eps = coeff(rng) * 0.1;
        const double c = coeff(rng);

        ModelParams scaled = p;
        scaled.alpha_law.coeff *= c;
        CHECK(q_eps(scaled, eps) == doctest::Approx(c * q_eps(p, eps)).epsilon(1e-12));

        scaled = p;
        scaled.beta_law.coeff *= c;
        CHECK(r_eps(scaled, eps) == doctest::Approx(c * r_eps(p, eps)).epsilon(1e-12));
    }
}

TEST_CASE("limits from exponent algebra") {
    ModelParams p = canonical_params(5.0, 1.0, kSymRect);

    SUBCASE("alpha = d * eps^2 gives q = 0") {
        p.alpha_law = {p.d_law.coeff, p.d_law.exponent + 2.0};
        p.beta_law = {1.0, -1.0};
        CHECK(limits(p).q == 0.0);
    }
    SUBCASE("alpha = d * eps^-1 gives q = +inf") {
        p.alpha_law = {p.d_law.coeff, p.d_law.exponent - 1.0};
        p.beta_law = {1.0, -1.0};
        CHECK(limits(p).q == std::numeric_limits<double>::infinity());
    }
    SUBCASE("beta exponent below -1 rejected") {
        p.beta_law = {1.0, -1.5};
        CHECK_THROWS_AS(limits(p), std::invalid_argument);
    }
    SUBCASE("canonical q = 0 and q = inf targets") {
        CHECK(limits(canonical_params(0.0, 1.0, kSymRect)).q == 0.0);
        CHECK(limits(canonical_params(std::numeric_limits<double>::infinity(), 1.0, kSymRect)).q ==
              std::numeric_limits<double>::infinity());
        CHECK(limits(canonical_params(5.0, 0.0, kSymRect)).r == 0.0);
    }
}

TEST_CASE("validate reports named violations") {
    CHECK(validate(canonical_params(5.0, 1.0, kSymRect)).empty());

    ModelParams bad = canonical_params(5.0, 1.0, kSymRect);
    bad.R = 0.6;
    auto report = validate(bad);
    REQUIRE(report.size() == 1);
    CHECK(report[0].find("radius") != std::string::npos);

    // exponent equality: (d_eps)^2 / alpha_eps is a nonzero constant
    bad = canonical_params(5.0, 1.0, kSymRect);
    bad.d_law = {1.0, 2.0};
    bad.alpha_law = {1.0, 4.0};
    report = validate(bad);
    REQUIRE(report.size() == 1);
    CHECK(report[0].find("soft-shell") != std::string::npos);
}

TEST_CASE("validate accepts exactly the valid exponent grid") {
    for (double de : {0.5, 1.0, 1.5, 2.0, 3.0})
        for (double ae : {0.5, 1.5, 2.5, 4.0, 6.5})
            for (double be : {-2.0, -1.0, 0.0, 1.0}) {
                ModelParams p;
                p.n = 2;
                p.R = 0.25;
                p.d_law = {1.0, de};
                p.alpha_law = {1.0, ae};
                p.beta_law = {1.0, be};
                p.domain = kSymRect;
                const bool expected = de > 1.0 && 2.0 * de - ae > 0.0 && 1.0 + be >= 0.0;
                CHECK(validate(p).empty() == expected);
            }
}

TEST_CASE("shell mass converges to r |Gamma|") {
    const auto p = canonical_params(5.0, 1.0, kSymRect);
    double prev_err = 1e9;
    double final_ratio = 0.0;
    for (int k = 3; k <= 10; ++k) {
        const double eps = std::pow(2.0, -k);
        const double ratio = shell_mass(p, eps, 1.0) / 1.0;
        const double err = std::abs(ratio - 1.0);
        CHECK(err < prev_err + 1e-12);
        prev_err = err;
        final_ratio = ratio;
    }
    CHECK(std::abs(final_ratio - 1.0) < 0.01);
}

TEST_CASE("shell mass exact algebra with d = 0 and exact N") {
    // beta_eps * (R eps)^n * kappa_n * eps^(1-n) == r_eps; checked per shell
    const auto p = canonical_params(5.0, 1.0, kSymRect);
    for (double eps : {0.25, 0.1, 0.01}) {
        const double per_shell = p.beta_law(eps) * std::pow(p.R * eps, p.n) * unit_ball_volume(p.n);
        const double exact_n = std::pow(eps, 1.0 - p.n);
        CHECK(per_shell * exact_n == doctest::Approx(r_eps(p, eps)).epsilon(1e-13));
    }
}

TEST_CASE("no admissible shell center is a distinct signal") {
    const auto p = canonical_params(5.0, 1.0, kSymRect);
    CHECK(admissible_center_count(p, 0.5, 1.0) == 1);
    CHECK_THROWS_AS(shell_mass(p, 1.0, 1.0), ZeroShellsError);
}

TEST_CASE("unit ball volumes") {
    CHECK(unit_ball_volume(2) == kPi);
    CHECK(unit_ball_volume(3) == 4.0 * kPi / 3.0);
    CHECK(unit_ball_volume(4) == doctest::Approx(kPi * kPi / 2.0).epsilon(1e-14));
    CHECK(unit_sphere_area(2) == doctest::Approx(2.0 * kPi).epsilon(1e-14));
    CHECK(unit_sphere_area(3) == doctest::Approx(4.0 * kPi).epsilon(1e-14));
}
