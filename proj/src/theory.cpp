#include "isq/theory.hpp"

#include <cmath>
#include <set>
#include <stdexcept>
#include <vector>

namespace isq {

double theoretical_mean_sojourn(int state, double mean_service, double rho) {
    if (state < 0 || !(mean_service > 0.0) || !(rho > 0.0)) {
        throw std::invalid_argument("theoretical_mean_sojourn: bad arguments");
    }
    return mean_service / (state + rho);
}

double poisson_pmf(int n, double rho) {
    if (n < 0 || !(rho > 0.0)) {
        throw std::invalid_argument("poisson_pmf: bad arguments");
    }
    return std::exp(n * std::log(rho) - rho - std::lgamma(n + 1.0));
}

TheoreticalOccupancy theoretical_occupancy(double rho, int max_state,
                                           double mean_service,
                                           bool with_mean_sojourn) {
    TheoreticalOccupancy theo;
    theo.rho = rho;
    for (int n = 0; n <= max_state; ++n) {
        theo.pmf[n] = poisson_pmf(n, rho);
        if (with_mean_sojourn) {
            theo.mean_sojourn[n] = theoretical_mean_sojourn(n, mean_service, rho);
        }
    }
    return theo;
}

RegressionResult fit_regression(std::span<const double> xs, std::span<const double> ys) {
    if (xs.size() != ys.size() || xs.size() < 2) {
        throw std::invalid_argument("regression needs >= 2 equal-length samples");
    }
    const auto n = static_cast<double>(xs.size());
    std::vector<double> zs;
    zs.reserve(xs.size());
    for (double y : ys) {
        if (!(y >= 1.0)) throw std::invalid_argument("regression requires Y >= 1");
        zs.push_back(std::log(y));
    }
    double mean_x = 0.0, mean_z = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        mean_x += xs[i];
        mean_z += zs[i];
    }
    mean_x /= n;
    mean_z /= n;
    double sxx = 0.0, szz = 0.0, sxz = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double dx = xs[i] - mean_x;
        const double dz = zs[i] - mean_z;
        sxx += dx * dx;
        szz += dz * dz;
        sxz += dx * dz;
    }
    if (sxx == 0.0) {
        throw std::invalid_argument("regression: X has zero variance");
    }
    RegressionResult result;
    result.n_points = xs.size();
    result.slope = sxz / sxx;
    result.intercept = mean_z - result.slope * mean_x;
    result.correlation = (szz == 0.0) ? 0.0 : sxz / std::sqrt(sxx * szz);
    return result;
}

DistributionDistance compare_distributions(const std::map<int, double>& empirical_pmf,
                                           const std::map<int, double>& theoretical_pmf,
                                           double n_observations) {
    std::set<int> support;
    for (const auto& [k, _] : empirical_pmf) support.insert(k);
    for (const auto& [k, _] : theoretical_pmf) support.insert(k);

    auto mass = [](const std::map<int, double>& pmf, int k) {
        auto it = pmf.find(k);
        return it == pmf.end() ? 0.0 : it->second;
    };

    DistributionDistance d;
    double tail_obs = 0.0, tail_exp = 0.0;
    for (int k : support) {
        const double p = mass(empirical_pmf, k);
        const double q = mass(theoretical_pmf, k);
        d.total_variation += std::abs(p - q);
        const double expected = q * n_observations;
        if (expected >= 5.0) {
            const double observed = p * n_observations;
            d.chi_square += (observed - expected) * (observed - expected) / expected;
        } else {
            tail_obs += p * n_observations;
            tail_exp += expected;
        }
    }
    d.total_variation *= 0.5;
    if (tail_exp > 0.0) {
        d.chi_square += (tail_obs - tail_exp) * (tail_obs - tail_exp) / tail_exp;
    }
    return d;
}

} // namespace isq
