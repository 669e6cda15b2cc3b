#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "contrast/dispersion.hpp"
#include "oracles.hpp"

using namespace contrast;
namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("dispersion value on both branches") {
    CHECK(dispersion_value(0.0, -1.0, 1.0) == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(dispersion_value(kPi * kPi / 4.0, -1.0, 1.0) == doctest::Approx(0.0).scale(1.0).epsilon(1e-12));
    // hyperbolic branch, frozen from an independent high-precision evaluation
    CHECK(dispersion_value(-1.0, -1.0, 1.0) == doctest::Approx(2.6260705709986622).epsilon(1e-13));
    // continuity across 0
    CHECK(dispersion_value(1e-9, -1.0, 1.0) == doctest::Approx(dispersion_value(-1e-9, -1.0, 1.0)).epsilon(1e-8));
}

TEST_CASE("pole proximity carries the pole") {
    const double pole = kPi * kPi;  // k=1 on the left half interval
    try {
        dispersion_value(pole * (1.0 + 1e-14), -1.0, 0.7);
        CHECK(false);
    } catch (const PoleProximityError& e) {
        CHECK(e.pole == doctest::Approx(pole).epsilon(1e-12));
    }
}

TEST_CASE("half interval poles merged with coincidence flags") {
    SUBCASE("symmetric geometry: all poles coincident") {
        const auto poles = half_interval_poles(-1.0, 1.0, 0.0, 50.0);
        REQUIRE(poles.size() == 2);
        CHECK(poles[0].value == doctest::Approx(kPi * kPi).epsilon(1e-14));
        CHECK(poles[1].value == doctest::Approx(4.0 * kPi * kPi).epsilon(1e-14));
        CHECK(poles[0].coincident());
        CHECK(poles[1].coincident());
    }
    SUBCASE("rational ratio 1:1/2") {
        const auto poles = half_interval_poles(-1.0, 0.5, 0.0, 50.0);
        REQUIRE(poles.size() == 2);
        CHECK(poles[0].value == doctest::Approx(kPi * kPi).epsilon(1e-14));
        CHECK_FALSE(poles[0].coincident());
        CHECK(poles[0].from_left);
        CHECK(poles[1].value == doctest::Approx(4.0 * kPi * kPi).epsilon(1e-14));
        CHECK(poles[1].coincident());
    }
    SUBCASE("irrational ratio: no coincidences") {
        const auto poles = half_interval_poles(-1.0, 1.0 / std::sqrt(2.0), 0.0, 25.0);
        REQUIRE(poles.size() == 2);
        CHECK(poles[0].value == doctest::Approx(kPi * kPi).epsilon(1e-14));
        CHECK(poles[1].value == doctest::Approx(2.0 * kPi * kPi).epsilon(1e-13));
        CHECK_FALSE(poles[0].coincident());
        CHECK_FALSE(poles[1].coincident());
    }
}

TEST_CASE("transversal eigenvalues: Dirichlet and flagged modes") {
    SUBCASE("mu = 0 is the full-interval problem") {
        const auto sp = transversal_eigs({-1.0, 1.0, 0.0}, 3);
        REQUIRE(sp.eigenvalues.size() == 3);
        CHECK(sp.eigenvalues[0] == doctest::Approx(kPi * kPi / 4.0).epsilon(1e-12));
        CHECK(sp.eigenvalues[1] == doctest::Approx(kPi * kPi).epsilon(1e-12));
        CHECK(sp.eigenvalues[2] == doctest::Approx(9.0 * kPi * kPi / 4.0).epsilon(1e-12));
        CHECK_FALSE(sp.mu_independent[0]);
        CHECK(sp.mu_independent[1]);
        CHECK_FALSE(sp.mu_independent[2]);
    }
    SUBCASE("mu = F(0) puts the ground state at 0") {
        const auto sp = transversal_eigs({-1.0, 1.0, 2.0}, 1);
        CHECK(std::abs(sp.eigenvalues[0]) < 1e-12);
    }
    SUBCASE("dense lambda-grid scan oracle, asymmetric negative mu") {
        const double mu = -10.0;
        const double b = 1.0 / std::sqrt(2.0);
        const auto sp = transversal_eigs({-1.0, b, mu}, 2);
        auto g = [&](double lam) { return detail::dispersion_value_unchecked(lam, -1.0, b) - mu; };
        // scan each inter-pole bracket with step 1e-4
        const double p1 = kPi * kPi;
        const double p2 = 2.0 * kPi * kPi;
        std::vector<double> found;
        double prev_lo = -40.0;
        for (double hi : {p1, p2}) {
            double prev = g(prev_lo);
            for (double lam = prev_lo + 1e-4; lam < hi - 1e-9; lam += 1e-4) {
                const double cur = g(lam);
                if (prev > 0.0 && cur < 0.0) found.push_back(lam - 0.5e-4);
                prev = cur;
            }
            prev_lo = hi + 1e-9;
        }
        REQUIRE(found.size() >= 2);
        CHECK(sp.eigenvalues[0] == doctest::Approx(found[0]).epsilon(2e-4));
        CHECK(sp.eigenvalues[1] == doctest::Approx(found[1]).epsilon(2e-4));
    }
}

TEST_CASE("alpha(mu) values and limits") {
    CHECK(alpha_of_mu(0.0, -1.0, 1.0) == doctest::Approx(kPi * kPi / 4.0).epsilon(1e-12));
    // F(0) = 1/|d-| + 1/d+
    CHECK(std::abs(alpha_of_mu(3.0, -1.0, 0.5)) < 1e-10);
    CHECK(alpha_of_mu(-1e6, -1.0, 1.0) == doctest::Approx(kPi * kPi).epsilon(1e-3));
    CHECK(first_pole(-1.0, 0.5) == doctest::Approx(kPi * kPi).epsilon(1e-14));
}

TEST_CASE("alpha strictly decreasing over sampled mu") {
    double prev = std::numeric_limits<double>::infinity();
    for (int i = 0; i < 200; ++i) {
        const double mu = -1e3 + 2e3 * i / 199.0;
        const double a = alpha_of_mu(mu, -0.8, 1.3);
        CHECK(a < prev);
        prev = a;
    }
}

TEST_CASE("residual and interlacing invariants") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> mu_d(-40.0, 40.0);
    std::uniform_real_distribution<double> len(0.4, 1.8);
    for (int trial = 0; trial < 60; ++trial) {
        const double a = len(rng), b = len(rng), mu = mu_d(rng);
        const auto sp = transversal_eigs({-a, b, mu}, 5);
        const auto poles = half_interval_poles(-a, b, 0.0, sp.eigenvalues.back() * 4.0 + 50.0);
        int root_idx = 0;
        for (std::size_t i = 0; i < sp.eigenvalues.size(); ++i) {
            if (sp.mu_independent[i]) continue;
            const double tau = sp.eigenvalues[i];
            const double res = detail::dispersion_value_unchecked(tau, -a, b) - mu;
            CHECK(std::abs(res) <= 1e-9 * (1.0 + std::abs(mu)));
            // interlacing: root j strictly between poles j-1 and j
            const double lo = root_idx == 0 ? -std::numeric_limits<double>::infinity()
                                            : poles[root_idx - 1].value;
            REQUIRE(root_idx < static_cast<int>(poles.size()));
            CHECK(tau > lo);
            CHECK(tau < poles[root_idx].value);
            ++root_idx;
        }
    }
}

TEST_CASE("matrix oracle agreement on first three eigenvalues") {
    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> mu_d(-30.0, 30.0);
    std::uniform_real_distribution<double> len(0.3, 2.0);
    for (int trial = 0; trial < 100; ++trial) {
        const double a = len(rng), b = len(rng), mu = mu_d(rng);
        const auto sp = transversal_eigs({-a, b, mu}, 3);
        const oracles::FdInterfaceOracle fd(-a, b, mu, 10000);
        const auto ref = fd.smallest(3);
        for (int j = 0; j < 3; ++j)
            CHECK(std::abs(sp.eigenvalues[j] - ref[j]) <= 1e-4 * (1.0 + std::abs(ref[j])));
    }
}

TEST_CASE("geometry validation") {
    CHECK_THROWS_AS(dispersion_value(1.0, 1.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(transversal_eigs({-1.0, 1.0, 0.0}, 0), std::invalid_argument);
}
