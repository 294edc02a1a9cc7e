#include "costpath/model_prior.hpp"

#include <cmath>
#include <stdexcept>

namespace costpath {

double cost_ratio_g(double ratio, double b, CostRatioKind kind) {
    if (!(ratio >= 1.0)) throw std::domain_error("cost ratio must be >= 1");
    if (!(b >= 0.0)) throw std::domain_error("tuning parameter b must be >= 0");
    switch (kind) {
        case CostRatioKind::Ecp:
            return std::pow(ratio, b);
        case CostRatioKind::Lcp:
            return (ratio - 1.0) * b + 1.0;
    }
    throw std::logic_error("unknown cost ratio kind");
}

double log_model_prior(const ModelIndicator& gamma, const CostSchedule& costs,
                       std::int64_t n, const PriorSpec& spec) {
    const auto p = costs.size();
    if (static_cast<std::size_t>(gamma.num_predictors()) != p)
        throw std::invalid_argument("gamma length must match the cost schedule");
    if (n < 1) throw std::invalid_argument("sample size must be >= 1");

    if (spec.family == PriorFamily::Uniform)
        return -static_cast<double>(p) * std::log(2.0);

    const double log_n = std::log(static_cast<double>(n));
    double included_penalty = 0.0;   // (1/2) ln n * sum_j gamma_j (g_j - 1)
    double normalizer = 0.0;         // sum_j log(n^{-(g_j-1)/2} + 1)
    for (std::size_t j = 0; j < p; ++j) {
        const double g = cost_ratio_g(costs.ratio(j), spec.b, spec.g_kind);
        const double e = 0.5 * (g - 1.0) * log_n;
        if (gamma.includes(static_cast<int>(j))) included_penalty += e;
        normalizer += std::log1p(std::exp(-e));
    }
    return -included_penalty - normalizer;
}

double prior_inclusion_probability(std::size_t j, const CostSchedule& costs,
                                   std::int64_t n, const PriorSpec& spec) {
    if (j >= costs.size()) throw std::out_of_range("predictor index out of range");
    if (n < 1) throw std::invalid_argument("sample size must be >= 1");
    if (spec.family == PriorFamily::Uniform) return 0.5;
    const double g = cost_ratio_g(costs.ratio(j), spec.b, spec.g_kind);
    const double e = 0.5 * (g - 1.0) * std::log(static_cast<double>(n));
    const double t = std::exp(-e);  // n^{-(g-1)/2}
    return t / (1.0 + t);
}

}  // namespace costpath
