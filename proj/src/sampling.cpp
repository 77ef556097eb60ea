#include "isq/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace isq {

namespace {

void require_interior(double u, const char* name) {
    if (!(u > 0.0 && u < 1.0)) {
        throw std::domain_error(std::string(name) + " must lie strictly inside (0,1)");
    }
}

constexpr double kErlMixWeights[3] = {0.40, 0.35, 0.25};
constexpr int kErlMixStages[3] = {4, 2, 3};
constexpr double kErlMixStageScale[3] = {(10.0 / 2.7) / 4.0, (10.0 / 4.2) / 2.0,
                                         (10.0 / 3.6) / 3.0};

double erlang_mixture_base_mean() {
    double m = 0.0;
    for (int c = 0; c < 3; ++c) {
        m += kErlMixWeights[c] * kErlMixStages[c] * kErlMixStageScale[c];
    }
    return m;
}

} // namespace

std::string to_string(ArrivalKind kind) {
    return kind == ArrivalKind::Exponential ? "exponential" : "erlang2";
}

std::string to_string(ServiceKind kind) {
    switch (kind) {
        case ServiceKind::Pareto: return "pareto";
        case ServiceKind::Exponential: return "exponential";
        case ServiceKind::Erlang2: return "erlang2";
        case ServiceKind::Lognormal: return "lognormal";
        case ServiceKind::ExpMixture: return "exp_mixture";
        case ServiceKind::ErlangMixture: return "erlang_mixture";
    }
    return "?";
}

ArrivalKind arrival_kind_from_string(const std::string& name) {
    if (name == "exponential" || name == "M") return ArrivalKind::Exponential;
    if (name == "erlang2" || name == "E2") return ArrivalKind::Erlang2;
    throw ConfigError("unknown arrival law: " + name);
}

ServiceKind service_kind_from_string(const std::string& name) {
    if (name == "pareto") return ServiceKind::Pareto;
    if (name == "exponential" || name == "M") return ServiceKind::Exponential;
    if (name == "erlang2" || name == "E2") return ServiceKind::Erlang2;
    if (name == "lognormal") return ServiceKind::Lognormal;
    if (name == "exp_mixture") return ServiceKind::ExpMixture;
    if (name == "erlang_mixture") return ServiceKind::ErlangMixture;
    throw ConfigError("unknown service law: " + name);
}

void ArrivalLaw::validate() const {
    if (!(mean_interarrival > 0.0)) {
        throw ConfigError("mean inter-arrival time must be > 0");
    }
}

void ServiceLaw::validate() const {
    if (!(mean_service > 0.0)) {
        throw ConfigError("mean service time must be > 0");
    }
    if (kind == ServiceKind::Pareto) {
        if (!pareto_gamma) throw ConfigError("Pareto service law needs pareto_gamma");
        if (!(*pareto_gamma > 1.0)) throw ConfigError("pareto_gamma must be > 1");
    }
    if (kind == ServiceKind::ExpMixture) {
        if (!mixture_p) throw ConfigError("exponential mixture needs mixture_p");
        if (!(*mixture_p > 0.0 && *mixture_p < 1.0)) {
            throw ConfigError("mixture_p must lie strictly inside (0,1)");
        }
    }
}

double sample_exponential(double mean, double u) {
    if (!(mean > 0.0)) throw std::domain_error("exponential mean must be > 0");
    require_interior(u, "u");
    return -mean * std::log(u);
}

double sample_erlang2(double mean, double u1, double u2) {
    if (!(mean > 0.0)) throw std::domain_error("Erlang-2 mean must be > 0");
    require_interior(u1, "u1");
    require_interior(u2, "u2");
    return -(mean / 2.0) * (std::log(u1) + std::log(u2));
}

double sample_pareto(double gamma, double mean, double u) {
    if (!(gamma > 1.0)) throw std::domain_error("Pareto gamma must be > 1");
    if (!(mean > 0.0)) throw std::domain_error("Pareto mean must be > 0");
    if (!(u >= 0.0 && u < 1.0)) throw std::domain_error("u must lie in [0,1)");
    const double alpha = 2.0 * gamma / (gamma - 1.0);
    const double scale = mean * (alpha - 1.0) / alpha;
    return scale / std::pow(1.0 - u, 1.0 / alpha);
}

double sample_lognormal(double mean, double u1, double u2) {
    if (!(mean > 0.0)) throw std::domain_error("lognormal mean must be > 0");
    require_interior(u1, "u1");
    require_interior(u2, "u2");
    const double z = std::sqrt(-2.0 * std::log(u1)) *
                     std::cos(2.0 * std::numbers::pi * u2);
    // sigma = 1, so E[exp(Z)] = exp(1/2); rescale to hit the target mean.
    return mean / std::exp(0.5) * std::exp(z);
}

double sample_exp_mixture(double p, double mean, double u_sel, double u1, double u2) {
    if (!(p > 0.0 && p < 1.0)) throw std::domain_error("mixture p must lie inside (0,1)");
    if (!(mean > 0.0)) throw std::domain_error("mixture mean must be > 0");
    require_interior(u_sel, "u_sel");
    if (u_sel <= p) {
        return sample_exponential((mean / 2.0) / p, u1);
    }
    return sample_exponential((mean / 2.0) / (1.0 - p), u2);
}

double sample_erlang_mixture(double mean, const std::array<double, 6>& uniforms) {
    if (!(mean > 0.0)) throw std::domain_error("mixture mean must be > 0");
    for (double u : uniforms) require_interior(u, "uniform");
    const double calibration = mean / erlang_mixture_base_mean();
    int component;
    if (uniforms[0] < 0.40) component = 0;
    else if (uniforms[0] < 0.75) component = 1;
    else component = 2;
    double sum_logs = 0.0;
    for (int stage = 0; stage < kErlMixStages[component]; ++stage) {
        sum_logs += std::log(uniforms[1 + stage]);
    }
    return -calibration * kErlMixStageScale[component] * sum_logs;
}

double erlang_mixture_variance(double mean) {
    const double c = mean / erlang_mixture_base_mean();
    double second = 0.0;
    for (int i = 0; i < 3; ++i) {
        const double theta = c * kErlMixStageScale[i];
        const double k = kErlMixStages[i];
        second += kErlMixWeights[i] * k * (k + 1.0) * theta * theta;
    }
    return second - mean * mean;
}

double sample_service(const ServiceLaw& law, UniformStream& g, UniformStream* h) {
    switch (law.kind) {
        case ServiceKind::Exponential:
            return sample_exponential(law.mean_service, g.next());
        case ServiceKind::Erlang2:
            if (h == nullptr) throw ConfigError("Erlang-2 service law needs stream H");
            return sample_erlang2(law.mean_service, g.next(), h->next());
        case ServiceKind::Pareto:
            return sample_pareto(*law.pareto_gamma, law.mean_service, g.next());
        case ServiceKind::Lognormal:
            return sample_lognormal(law.mean_service, g.next(), g.next());
        case ServiceKind::ExpMixture:
            return sample_exp_mixture(*law.mixture_p, law.mean_service, g.next(),
                                      g.next(), g.next());
        case ServiceKind::ErlangMixture: {
            std::array<double, 6> u;
            for (double& v : u) v = g.next();
            return sample_erlang_mixture(law.mean_service, u);
        }
    }
    throw std::logic_error("unreachable service kind");
}

std::vector<double> generate_interarrivals(const ArrivalLaw& law, std::size_t n,
                                           UniformStream& e, UniformStream* f) {
    if (n < 1) throw ConfigError("arrival count must be >= 1");
    law.validate();
    std::vector<double> gaps;
    gaps.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (law.kind == ArrivalKind::Exponential) {
            gaps.push_back(sample_exponential(law.mean_interarrival, e.next()));
        } else {
            if (f == nullptr) throw ConfigError("Erlang-2 arrival law needs stream F");
            gaps.push_back(sample_erlang2(law.mean_interarrival, e.next(), f->next()));
        }
    }
    return gaps;
}

std::vector<double> generate_interarrivals(const ArrivalLaw& law, std::size_t n,
                                           const SeedPlan& seeds) {
    UniformStream e = seeds.stream(SeedPlan::Role::E, 0);
    if (law.kind == ArrivalKind::Erlang2) {
        UniformStream f = seeds.stream(SeedPlan::Role::F, 0);
        return generate_interarrivals(law, n, e, &f);
    }
    return generate_interarrivals(law, n, e, nullptr);
}

std::vector<double> generate_services(const ServiceLaw& law, std::size_t n,
                                      UniformStream& g, UniformStream* h) {
    law.validate();
    std::vector<double> times;
    times.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        times.push_back(sample_service(law, g, h));
    }
    return times;
}

} // namespace isq
