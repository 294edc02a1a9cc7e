#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "costpath/cost_schedule.hpp"
#include "costpath/design_data.hpp"

namespace costpath {

// One candidate predictor as declared by a dataset spec: numeric predictors
// pass through as a single column; categorical predictors expand to one
// dummy column per non-reference level and are selected atomically, charging
// their cost once.
struct PredictorSpec {
    enum class Kind { Numeric, Categorical };
    std::string name;
    Kind kind = Kind::Numeric;
    std::vector<std::string> levels;  // categorical only, reference included
    std::string reference;            // categorical only
    double cost = 1.0;
};

struct Dataset {
    DesignData design;
    CostSchedule costs;
    std::vector<PredictorSpec> predictors;
    int dropped_rows = 0;  // rows removed by listwise deletion

    std::vector<std::string> predictor_names() const;
};

// Loads a CSV data file against a JSON spec declaring the response column
// and the predictors (name, kind, levels, reference, cost). Rows with
// missing values ('?', 'NA' or empty) are dropped and counted.
Dataset load_dataset(const std::string& data_path, const std::string& spec_path);

// Loads the raw UCI Cleveland heart disease file: 14 comma-separated fields
// per row, '?' for missing. Incomplete rows are dropped; the response is the
// indicator of the disease field being at least 1. Predictor kinds,
// reference levels and dollar costs follow the published schedule.
Dataset load_cleveland(const std::string& path);

// The nine-predictor logistic simulation setting: X1..X9 standard normal,
// effects (0, 0, 0, 0.5, 0.5, 0.5, 0.8, 0.8, 0.8) with intercept 1, costs
// (1, 3, 9, 1, 3, 9, 1, 3, 9). An optional correlation rho couples one
// predictor pair (default X4 and X6, zero-based indices 3 and 5). Draws are
// positional in the observation index: row i depends only on (seed, i), so
// growing a dataset extends it without disturbing existing rows.
struct SimulationConfig {
    int n = 150;
    double rho = 0.0;
    std::pair<int, int> correlated_pair{3, 5};
    std::uint64_t seed = 0;

    static constexpr std::array<double, 10> kBeta = {1.0, 0.0, 0.0, 0.0, 0.5,
                                                     0.5, 0.5, 0.8, 0.8, 0.8};
    static constexpr std::array<double, 9> kCosts = {1, 3, 9, 1, 3, 9, 1, 3, 9};
    static constexpr int kNumPredictors = 9;
};

Dataset simulate_dataset(const SimulationConfig& config);

// Appends additional_n fresh observations drawn from the same configuration;
// existing rows are preserved byte for byte.
DesignData grow_dataset(const SimulationConfig& config, const DesignData& existing,
                        int additional_n);

// Writes a dataset in the generic CSV + JSON spec form that load_dataset
// reads back.
void write_dataset_csv(const std::string& path, const Dataset& dataset,
                       const std::string& response_name = "y");
void write_dataset_spec_json(const std::string& path, const Dataset& dataset,
                             const std::string& response_name = "y");

}  // namespace costpath
