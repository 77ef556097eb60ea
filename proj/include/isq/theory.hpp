#pragma once

#include <cstddef>
#include <map>
#include <span>

namespace isq {

// M/M/infinity mean sojourn time in state i: mu^-1 / (i + rho).
double theoretical_mean_sojourn(int state, double mean_service, double rho);

// Equilibrium number-in-system probability e^-rho rho^n / n!, evaluated
// in log space so large n stays stable.
double poisson_pmf(int n, double rho);

struct TheoreticalOccupancy {
    double rho = 0.0;
    std::map<int, double> pmf;
    std::map<int, double> mean_sojourn; // empty when no closed form applies
};

// pmf support 0..max_state inclusive.
TheoreticalOccupancy theoretical_occupancy(double rho, int max_state,
                                           double mean_service,
                                           bool with_mean_sojourn);

struct RegressionResult {
    double intercept = 0.0;   // alpha-hat
    double slope = 0.0;       // beta-hat
    double correlation = 0.0; // Pearson R of (X, ln Y)
    std::size_t n_points = 0;
};

// Ordinary least squares of Z = ln Y on X. Requires ys >= 1 and xs with
// nonzero variance; degenerate input throws std::invalid_argument.
RegressionResult fit_regression(std::span<const double> xs, std::span<const double> ys);

struct DistributionDistance {
    double total_variation = 0.0;
    double chi_square = 0.0;
};

// Mismatched supports are zero-filled. Chi-square pools states whose
// expected count falls below 5 into a tail bin; `n_observations` scales
// the theoretical pmf into expected counts.
DistributionDistance compare_distributions(const std::map<int, double>& empirical_pmf,
                                           const std::map<int, double>& theoretical_pmf,
                                           double n_observations = 1000.0);

} // namespace isq
