#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "costpath/cost_schedule.hpp"
#include "costpath/design_data.hpp"
#include "costpath/laplace.hpp"
#include "costpath/model_indicator.hpp"
#include "costpath/model_prior.hpp"
#include "costpath/prior_spec.hpp"

namespace costpath {

// Full enumeration is refused above this many predictors; larger spaces need
// the stochastic search machinery this library deliberately does not ship.
inline constexpr int kMaxEnumerablePredictors = 25;

// Laplace log marginal likelihoods for every model in the space. Marginal
// likelihoods carry no model-prior term, so one table serves any number of
// prior specifications over the same data.
struct MarginalRecord {
    double log_marginal = 0.0;
    int newton_iters = 0;
    bool ok = false;
    std::string exclusion_reason;
};

struct MarginalTable {
    std::vector<MarginalRecord> records;  // indexed by model id, size 2^p
    std::int64_t n = 0;
    int p = 0;
};

MarginalTable enumerate_marginals(const DesignData& data, int threads = 0);

struct PosteriorRow {
    std::uint32_t model_id = 0;
    double log_prior = 0.0;
    double log_marginal = 0.0;
    double post_prob = 0.0;
};

struct ExcludedModel {
    std::uint32_t model_id = 0;
    std::string reason;
};

// Normalized posterior over the enumerated model space. Rows cover the
// included models in ascending model id; excluded models (singular design or
// non-converged fit) are reported separately and the probabilities
// renormalize over what remains.
struct PosteriorTable {
    std::vector<PosteriorRow> rows;
    std::vector<ExcludedModel> excluded;
    std::int64_t n = 0;
    int p = 0;
    PriorSpec spec;

    const PosteriorRow* find(std::uint32_t model_id) const;
};

PosteriorTable posterior_from_marginals(const MarginalTable& marginals,
                                        const CostSchedule& costs, const PriorSpec& spec);

PosteriorTable enumerate_posterior(const DesignData& data, const CostSchedule& costs,
                                   const PriorSpec& spec, int threads = 0);

// Ratio of integrated likelihoods of two included models; prior free.
double bayes_factor(const PosteriorTable& table, std::uint32_t id1, std::uint32_t id2);

// pips[j] = sum of post_prob over rows that include predictor j.
std::vector<double> posterior_inclusion_probabilities(const PosteriorTable& table);

// Highest-posterior model; exact ties resolve to the smallest model id.
ModelIndicator map_model(const PosteriorTable& table);

// Model of all predictors with pips[j] >= threshold (boundary inclusive).
ModelIndicator median_probability_model(const std::vector<double>& pips,
                                        double threshold = 0.5);

struct ModelCost {
    double per_observation = 0.0;
    double total = 0.0;
};

// A categorical predictor charges its single listed cost once, however many
// dummy columns it expands to.
ModelCost model_cost(const ModelIndicator& gamma, const CostSchedule& costs,
                     std::int64_t n = 0);

void write_models_csv(std::ostream& out, const PosteriorTable& table,
                      const CostSchedule& costs);
void write_models_csv(const std::string& path, const PosteriorTable& table,
                      const CostSchedule& costs);

}  // namespace costpath
