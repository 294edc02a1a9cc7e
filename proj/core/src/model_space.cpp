#include "costpath/model_space.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <ostream>
#include <stdexcept>

#include "costpath/csv.hpp"
#include "costpath/errors.hpp"
#include "costpath/parallel.hpp"

namespace costpath {

MarginalTable enumerate_marginals(const DesignData& data, int threads) {
    data.validate();
    const int p = data.num_predictors();
    if (p > kMaxEnumerablePredictors)
        throw std::invalid_argument(
            "refusing to enumerate 2^" + std::to_string(p) + " models (p > " +
            std::to_string(kMaxEnumerablePredictors) +
            "); large model spaces need stochastic search, which is out of scope here");

    MarginalTable table;
    table.n = data.n();
    table.p = p;
    const std::size_t count = std::size_t{1} << p;
    table.records.resize(count);

    parallel_for(count, threads, [&](std::size_t id) {
        MarginalRecord& rec = table.records[id];
        try {
            const ModelIndicator gamma(static_cast<std::uint32_t>(id), p);
            const Eigen::MatrixXd Xg = model_design(data, gamma);
            const CoefficientPrior prior = CoefficientPrior::from_design(Xg, table.n);
            const ModelFit fit = log_marginal_laplace(Xg, data.y, prior);
            rec.log_marginal = fit.log_marginal;
            rec.newton_iters = fit.newton_iters;
            rec.ok = true;
        } catch (const SingularModelError& e) {
            rec.ok = false;
            rec.exclusion_reason = e.what();
        } catch (const NonConvergenceError& e) {
            rec.ok = false;
            rec.exclusion_reason = e.what();
        }
    });
    return table;
}

PosteriorTable posterior_from_marginals(const MarginalTable& marginals,
                                        const CostSchedule& costs, const PriorSpec& spec) {
    if (static_cast<std::size_t>(marginals.p) != costs.size())
        throw std::invalid_argument("cost schedule length must match the number of predictors");

    PosteriorTable table;
    table.n = marginals.n;
    table.p = marginals.p;
    table.spec = spec;
    table.rows.reserve(marginals.records.size());

    for (std::size_t id = 0; id < marginals.records.size(); ++id) {
        const auto& rec = marginals.records[id];
        if (!rec.ok) {
            table.excluded.push_back({static_cast<std::uint32_t>(id), rec.exclusion_reason});
            continue;
        }
        PosteriorRow row;
        row.model_id = static_cast<std::uint32_t>(id);
        row.log_marginal = rec.log_marginal;
        row.log_prior = log_model_prior(ModelIndicator(row.model_id, marginals.p), costs,
                                        marginals.n, spec);
        table.rows.push_back(row);
    }
    if (table.rows.empty()) throw std::runtime_error("every model was excluded");

    // One log-sum-exp pass; cost-penalized priors reach the 1e-29 scale, so
    // nothing here may leave log space early.
    double max_score = -std::numeric_limits<double>::infinity();
    for (const auto& row : table.rows)
        max_score = std::max(max_score, row.log_prior + row.log_marginal);
    double sum = 0.0;
    for (const auto& row : table.rows)
        sum += std::exp(row.log_prior + row.log_marginal - max_score);
    const double log_norm = max_score + std::log(sum);
    for (auto& row : table.rows)
        row.post_prob = std::exp(row.log_prior + row.log_marginal - log_norm);
    return table;
}

PosteriorTable enumerate_posterior(const DesignData& data, const CostSchedule& costs,
                                   const PriorSpec& spec, int threads) {
    return posterior_from_marginals(enumerate_marginals(data, threads), costs, spec);
}

const PosteriorRow* PosteriorTable::find(std::uint32_t model_id) const {
    const auto it = std::lower_bound(
        rows.begin(), rows.end(), model_id,
        [](const PosteriorRow& row, std::uint32_t id) { return row.model_id < id; });
    if (it == rows.end() || it->model_id != model_id) return nullptr;
    return &*it;
}

double bayes_factor(const PosteriorTable& table, std::uint32_t id1, std::uint32_t id2) {
    const PosteriorRow* r1 = table.find(id1);
    const PosteriorRow* r2 = table.find(id2);
    if (!r1) throw std::invalid_argument("model " + std::to_string(id1) + " is not in the table");
    if (!r2) throw std::invalid_argument("model " + std::to_string(id2) + " is not in the table");
    return std::exp(r1->log_marginal - r2->log_marginal);
}

std::vector<double> posterior_inclusion_probabilities(const PosteriorTable& table) {
    std::vector<double> pips(static_cast<std::size_t>(table.p), 0.0);
    for (const auto& row : table.rows)
        for (int j = 0; j < table.p; ++j)
            if ((row.model_id >> j) & 1u) pips[static_cast<std::size_t>(j)] += row.post_prob;
    return pips;
}

ModelIndicator map_model(const PosteriorTable& table) {
    if (table.rows.empty()) throw std::invalid_argument("posterior table is empty");
    const PosteriorRow* best = &table.rows.front();
    for (const auto& row : table.rows)
        if (row.post_prob > best->post_prob) best = &row;  // ties keep the smaller id
    return {best->model_id, table.p};
}

ModelIndicator median_probability_model(const std::vector<double>& pips, double threshold) {
    std::vector<int> gamma(pips.size(), 0);
    for (std::size_t j = 0; j < pips.size(); ++j)
        if (pips[j] >= threshold) gamma[j] = 1;
    return ModelIndicator::from_gamma(gamma);
}

ModelCost model_cost(const ModelIndicator& gamma, const CostSchedule& costs, std::int64_t n) {
    if (static_cast<std::size_t>(gamma.num_predictors()) != costs.size())
        throw std::invalid_argument("gamma length must match the cost schedule");
    ModelCost out;
    for (int j = 0; j < gamma.num_predictors(); ++j)
        if (gamma.includes(j)) out.per_observation += costs.cost(static_cast<std::size_t>(j));
    out.total = static_cast<double>(n) * out.per_observation;
    return out;
}

void write_models_csv(std::ostream& out, const PosteriorTable& table,
                      const CostSchedule& costs) {
    out << "model_id,gamma_bits,k,cost_per_obs,log_prior,log_marginal,post_prob\n";
    for (const auto& row : table.rows) {
        const ModelIndicator gamma(row.model_id, table.p);
        out << row.model_id << ',' << gamma.bits_string() << ',' << gamma.count() << ','
            << format_g17(model_cost(gamma, costs).per_observation) << ','
            << format_g17(row.log_prior) << ',' << format_g17(row.log_marginal) << ','
            << format_g17(row.post_prob) << '\n';
    }
}

void write_models_csv(const std::string& path, const PosteriorTable& table,
                      const CostSchedule& costs) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    write_models_csv(out, table, costs);
}

}  // namespace costpath
