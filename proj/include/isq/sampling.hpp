#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "isq/rng.hpp"

namespace isq {

enum class ArrivalKind { Exponential, Erlang2 };

enum class ServiceKind {
    Pareto,
    Exponential,
    Erlang2,
    Lognormal,
    ExpMixture,
    ErlangMixture,
};

std::string to_string(ArrivalKind kind);
std::string to_string(ServiceKind kind);
ArrivalKind arrival_kind_from_string(const std::string& name);
ServiceKind service_kind_from_string(const std::string& name);

struct ArrivalLaw {
    ArrivalKind kind = ArrivalKind::Exponential;
    double mean_interarrival = 0.996; // lambda^-1

    void validate() const;
};

struct ServiceLaw {
    ServiceKind kind = ServiceKind::Exponential;
    double mean_service = 4.0; // mu^-1
    std::optional<double> pareto_gamma;
    std::optional<double> mixture_p;

    void validate() const;
};

// Inverse transform, -mean * ln(u).
double sample_exponential(double mean, double u);

// Sum of two exponential stages, each with mean mean/2.
double sample_erlang2(double mean, double u1, double u2);

// Pareto with shape alpha = 2*gamma/(gamma-1) and scale chosen so the
// variate mean equals `mean`. u = 0 returns the scale minimum.
double sample_pareto(double gamma, double mean, double u);

// Box-Muller normal with sigma = 1, exponentiated and rescaled so the
// variate mean equals `mean`.
double sample_lognormal(double mean, double u1, double u2);

// Hyperexponential: branch 1 (probability p) has mean (mean/2)/p, branch
// 2 has mean (mean/2)/(1-p); the overall mean is exactly `mean`.
double sample_exp_mixture(double p, double mean, double u_sel, double u1, double u2);

// Three-component Erlang mixture, weights 0.40 / 0.35 / 0.25 over
// Erlang-4, Erlang-2 and Erlang-3 with stage scales in ratio
// (10/2.7)/4 : (10/4.2)/2 : (10/3.6)/3, all rescaled uniformly so the
// mixture mean equals `mean`. uniforms[0] selects the component.
double sample_erlang_mixture(double mean, const std::array<double, 6>& uniforms);

// Analytic variance of the Erlang-mixture variate at the given mean,
// used by statistical tests to size their tolerance bands.
double erlang_mixture_variance(double mean);

// One service variate drawn per `law`, consuming uniforms from g (and h
// for the Erlang-2 second stage; mixtures take extra draws from g).
double sample_service(const ServiceLaw& law, UniformStream& g, UniformStream* h);

// n strictly positive inter-arrival gaps per `law`, stream E (and F for
// Erlang-2 arrivals).
std::vector<double> generate_interarrivals(const ArrivalLaw& law, std::size_t n,
                                           UniformStream& e, UniformStream* f);

// Convenience overload building the streams from a SeedPlan (replication 0).
std::vector<double> generate_interarrivals(const ArrivalLaw& law, std::size_t n,
                                           const SeedPlan& seeds);

std::vector<double> generate_services(const ServiceLaw& law, std::size_t n,
                                      UniformStream& g, UniformStream* h);

} // namespace isq
