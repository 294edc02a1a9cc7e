#pragma once

#include <string>
#include <vector>

#include "costpath/cost_schedule.hpp"
#include "costpath/design_data.hpp"
#include "costpath/model_indicator.hpp"
#include "costpath/model_space.hpp"
#include "costpath/prior_spec.hpp"

namespace costpath {

// Grid of tuning parameter values, strictly increasing, all >= 0. b = 0 is
// the benefit-only anchor.
struct BGrid {
    std::vector<double> values;

    // start:stop:step with step > 0; start == stop yields a single point.
    static BGrid parse(const std::string& text);
    static BGrid range(double start, double stop, double step);

    void validate() const;
};

// One grid point of the inclusion path: posterior inclusion probabilities
// plus the MAP and median-probability models with their per-observation
// costs and in-sample C-statistics (fitted probabilities at the posterior
// mode of the selected model).
struct PathRecord {
    double b = 0.0;
    std::vector<double> pips;
    ModelIndicator map_model{0, 1};
    ModelIndicator median_model{0, 1};
    double map_cost = 0.0;
    double median_cost = 0.0;
    double map_cstat = 0.0;
    double median_cstat = 0.0;
};

struct PathResult {
    std::vector<PathRecord> records;  // one per grid value, grid order
    int p = 0;
    CostRatioKind g_kind = CostRatioKind::Ecp;
    double threshold = 0.5;
};

// Sweeps the grid: at each b the cost-penalized prior is rebuilt and applied
// to the enumerated model space. The Laplace marginal likelihoods carry no
// prior term, so they are enumerated once and shared across the grid; every
// grid point then sees exactly the values an isolated run would produce.
PathResult compute_path(const DesignData& data, const CostSchedule& costs,
                        CostRatioKind g_kind, const BGrid& grid, double threshold = 0.5,
                        int threads = 0);

// Long-format tables: pips.csv (b, predictor, pip) and path_summary.csv
// (b, map_bits, map_cost, map_cstat, median_bits, median_cost, median_cstat).
void write_pips_csv(const std::string& path, const PathResult& result,
                    const std::vector<std::string>& predictor_names);
void write_path_summary_csv(const std::string& path, const PathResult& result);

struct PipsRow {
    double b = 0.0;
    std::string predictor;
    double pip = 0.0;
};

std::vector<PipsRow> read_pips_csv(const std::string& path);

struct PathSummaryRow {
    double b = 0.0;
    std::string map_bits;
    double map_cost = 0.0;
    double map_cstat = 0.0;
    std::string median_bits;
    double median_cost = 0.0;
    double median_cstat = 0.0;
};

std::vector<PathSummaryRow> read_path_summary_csv(const std::string& path);

}  // namespace costpath
