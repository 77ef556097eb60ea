#include <cmath>
#include <cstdint>
#include <map>
#include <random>
#include <stdexcept>
#include <vector>

#include <doctest.h>

#include "isq/theory.hpp"

using namespace isq;

TEST_CASE("theoretical mean sojourn values") {
    CHECK(theoretical_mean_sojourn(0, 4.0, 4.016) ==
          doctest::Approx(0.9960159362549801).epsilon(1e-12));
    CHECK(theoretical_mean_sojourn(1, 1.0, 1.0) == doctest::Approx(0.5));
    double prev = theoretical_mean_sojourn(0, 4.0, 4.016);
    for (int i = 1; i < 200; ++i) {
        const double v = theoretical_mean_sojourn(i, 4.0, 4.016);
        CHECK(v < prev);
        prev = v;
    }
    CHECK(theoretical_mean_sojourn(100000, 4.0, 4.016) < 1e-4);
}

TEST_CASE("state-0 sojourn equals the mean inter-arrival time") {
    // mu^-1 / (0 + lambda mu^-1) = lambda^-1
    for (double lam_inv : {0.5, 0.996, 2.0}) {
        for (double mu_inv : {1.0, 4.0, 5.0}) {
            const double rho = mu_inv / lam_inv;
            CHECK(theoretical_mean_sojourn(0, mu_inv, rho) ==
                  doctest::Approx(lam_inv).epsilon(1e-12));
        }
    }
}

TEST_CASE("poisson pmf basics") {
    CHECK(poisson_pmf(0, 4.016) == doctest::Approx(std::exp(-4.016)).epsilon(1e-12));
    double total = 0.0;
    for (int n = 0; n <= 60; ++n) total += poisson_pmf(n, 5.020);
    CHECK(total == doctest::Approx(1.0).epsilon(1e-12));

    int mode = 0;
    double best = 0.0;
    for (int n = 0; n <= 20; ++n) {
        if (poisson_pmf(n, 4.016) > best) {
            best = poisson_pmf(n, 4.016);
            mode = n;
        }
    }
    CHECK(mode == 4);
}

TEST_CASE("poisson pmf matches an exact factorial oracle") {
    // n! fits in uint64 up to n = 20
    for (double rho : {0.5, 4.016, 5.020, 9.0}) {
        std::uint64_t fact = 1;
        for (int n = 0; n <= 20; ++n) {
            if (n > 0) fact *= static_cast<std::uint64_t>(n);
            const double expected =
                std::exp(-rho) * std::pow(rho, n) / static_cast<double>(fact);
            CHECK(poisson_pmf(n, rho) == doctest::Approx(expected).epsilon(1e-12));
        }
    }
}

TEST_CASE("regression on an exact exponential relation") {
    std::vector<double> xs, ys;
    for (int x = 1; x <= 10; ++x) {
        xs.push_back(x);
        ys.push_back(std::exp(0.5 * x + 1.0));
    }
    RegressionResult r = fit_regression(xs, ys);
    CHECK(r.intercept == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(r.slope == doctest::Approx(0.5).epsilon(1e-9));
    CHECK(r.correlation == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(r.n_points == 10);
}

TEST_CASE("regression on constant Z") {
    std::vector<double> xs{1, 2, 3};
    std::vector<double> ys{std::exp(1.0), std::exp(1.0), std::exp(1.0)};
    RegressionResult r = fit_regression(xs, ys);
    CHECK(r.slope == doctest::Approx(0.0));
    CHECK(r.intercept == doctest::Approx(1.0));
    CHECK(r.correlation == doctest::Approx(0.0));
}

TEST_CASE("regression matches a normal-equations oracle") {
    std::mt19937 rng(321);
    std::uniform_real_distribution<double> xr(0.0, 10.0);
    std::uniform_real_distribution<double> yr(1.0, 50.0);
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<double> xs, ys;
        for (int i = 0; i < 5; ++i) {
            xs.push_back(xr(rng));
            ys.push_back(yr(rng));
        }
        // 2x2 normal equations: [n sum_x; sum_x sum_xx] [a; b] = [sum_z; sum_xz]
        double sx = 0, sxx = 0, sz = 0, sxz = 0;
        const double n = 5.0;
        for (int i = 0; i < 5; ++i) {
            const double z = std::log(ys[i]);
            sx += xs[i];
            sxx += xs[i] * xs[i];
            sz += z;
            sxz += xs[i] * z;
        }
        const double det = n * sxx - sx * sx;
        const double a = (sz * sxx - sx * sxz) / det;
        const double b = (n * sxz - sx * sz) / det;
        RegressionResult r = fit_regression(xs, ys);
        CHECK(r.intercept == doctest::Approx(a).epsilon(1e-12));
        CHECK(r.slope == doctest::Approx(b).epsilon(1e-12));

        // residual orthogonality
        double rsum = 0.0, rxsum = 0.0;
        for (int i = 0; i < 5; ++i) {
            const double res = std::log(ys[i]) - (r.intercept + r.slope * xs[i]);
            rsum += res;
            rxsum += res * xs[i];
        }
        CHECK(std::abs(rsum) < 1e-9);
        CHECK(std::abs(rxsum) < 1e-9);
    }
}

TEST_CASE("scaling Y shifts the intercept by ln c and nothing else") {
    std::vector<double> xs{1, 2, 3, 5, 8};
    std::vector<double> ys{2, 7, 3, 20, 60};
    RegressionResult base = fit_regression(xs, ys);
    std::vector<double> scaled;
    const double c = 13.0;
    for (double y : ys) scaled.push_back(c * y);
    RegressionResult shifted = fit_regression(xs, scaled);
    CHECK(shifted.intercept == doctest::Approx(base.intercept + std::log(c)).epsilon(1e-12));
    CHECK(shifted.slope == doctest::Approx(base.slope).epsilon(1e-12));
    CHECK(shifted.correlation == doctest::Approx(base.correlation).epsilon(1e-12));
}

TEST_CASE("regression error paths") {
    std::vector<double> one_x{1.0}, one_y{2.0};
    CHECK_THROWS_AS(fit_regression(one_x, one_y), std::invalid_argument);
    std::vector<double> same_x{2.0, 2.0, 2.0};
    std::vector<double> ys{2.0, 3.0, 4.0};
    CHECK_THROWS_AS(fit_regression(same_x, ys), std::invalid_argument);
    std::vector<double> xs{1.0, 2.0, 3.0};
    std::vector<double> below_one{0.5, 2.0, 3.0};
    CHECK_THROWS_AS(fit_regression(xs, below_one), std::invalid_argument);
}

TEST_CASE("distribution distances") {
    std::map<int, double> p{{0, 0.6}, {1, 0.4}};
    CHECK(compare_distributions(p, p).total_variation == doctest::Approx(0.0));

    std::map<int, double> q{{0, 0.5}, {1, 0.5}};
    CHECK(compare_distributions(p, q).total_variation == doctest::Approx(0.1));

    std::map<int, double> disjoint{{5, 0.6}, {6, 0.4}};
    CHECK(compare_distributions(p, disjoint).total_variation == doctest::Approx(1.0));

    // mismatched support zero-fills
    std::map<int, double> wider{{0, 0.6}, {1, 0.3}, {2, 0.1}};
    CHECK(compare_distributions(p, wider).total_variation == doctest::Approx(0.1));
}

TEST_CASE("theoretical occupancy table") {
    TheoreticalOccupancy theo = theoretical_occupancy(4.016, 30, 4.0, true);
    double total = 0.0;
    for (const auto& [n, p] : theo.pmf) total += p;
    CHECK(total >= 1.0 - 1e-9);
    CHECK(theo.mean_sojourn.at(0) == doctest::Approx(4.0 / 4.016).epsilon(1e-12));

    TheoreticalOccupancy no_ms = theoretical_occupancy(4.016, 10, 4.0, false);
    CHECK(no_ms.mean_sojourn.empty());
}
