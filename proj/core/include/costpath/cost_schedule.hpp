#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace costpath {

// Per-predictor marginal costs (cost units per observation). The baseline
// cost c0 is the minimum over the schedule; every penalty in the model prior
// is expressed through the unit-free ratios cost[j]/c0, so rescaling all
// costs by a positive constant changes nothing downstream. Several
// predictors may share the baseline; none of them is ever penalized.
class CostSchedule {
public:
    explicit CostSchedule(std::vector<double> costs);

    std::size_t size() const { return costs_.size(); }
    double cost(std::size_t j) const { return costs_.at(j); }
    double baseline() const { return baseline_; }
    double ratio(std::size_t j) const { return costs_.at(j) / baseline_; }
    const std::vector<double>& costs() const { return costs_; }

private:
    std::vector<double> costs_;
    double baseline_;
};

struct NamedCostSchedule {
    std::vector<std::string> names;
    CostSchedule schedule;
};

// Loads a two-column `predictor,cost` table. The header line is required;
// decimal separator is '.'.
NamedCostSchedule load_cost_schedule_csv(const std::string& path);

}  // namespace costpath
