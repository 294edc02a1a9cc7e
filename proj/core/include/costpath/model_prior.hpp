#pragma once

#include <cstdint>

#include "costpath/cost_schedule.hpp"
#include "costpath/model_indicator.hpp"
#include "costpath/prior_spec.hpp"

namespace costpath {

// Cost ratio function g(ratio, b). Requires ratio >= 1 and b >= 0; the
// result is always >= 1, with g == 1 exactly when b == 0 or ratio == 1.
double cost_ratio_g(double ratio, double b, CostRatioKind kind);

// Natural-log prior probability of one model.
//
// Uniform family: -p * ln 2.
//
// FND family:
//   -(1/2) ln n * sum_j gamma_j (g_j - 1) - sum_j log(n^{-(g_j-1)/2} + 1)
// with g_j = cost_ratio_g(c_j/c0, b). Evaluated entirely in log space as
// log1p(exp(.)); the penalty terms reach the 1e-29 scale at moderate n, far
// below what naive exponentiation survives.
double log_model_prior(const ModelIndicator& gamma, const CostSchedule& costs,
                       std::int64_t n, const PriorSpec& spec);

// Marginal prior inclusion probability of predictor j implied by the
// Bernoulli factorization of the prior:
//   q_j = n^{-(g_j-1)/2} / (1 + n^{-(g_j-1)/2}).
// Baseline-cost predictors and the uniform family give exactly 1/2.
double prior_inclusion_probability(std::size_t j, const CostSchedule& costs,
                                   std::int64_t n, const PriorSpec& spec);

}  // namespace costpath
