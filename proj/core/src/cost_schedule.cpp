#include "costpath/cost_schedule.hpp"

#include <algorithm>
#include <stdexcept>

#include "costpath/csv.hpp"

namespace costpath {

CostSchedule::CostSchedule(std::vector<double> costs) : costs_(std::move(costs)) {
    if (costs_.empty()) throw std::invalid_argument("cost schedule must not be empty");
    for (std::size_t j = 0; j < costs_.size(); ++j) {
        if (!(costs_[j] > 0.0))
            throw std::invalid_argument("cost for predictor " + std::to_string(j + 1) +
                                        " must be strictly positive");
    }
    baseline_ = *std::min_element(costs_.begin(), costs_.end());
}

NamedCostSchedule load_cost_schedule_csv(const std::string& path) {
    const auto rows = read_csv(path);
    if (rows.empty()) throw std::runtime_error(path + ": empty cost table");
    const auto& header = rows.front();
    if (header.size() < 2)
        throw std::runtime_error(path + ": expected header 'predictor,cost'");
    // A parseable second field means the header line is missing.
    try {
        (void)parse_double(header[1], "");
        throw std::runtime_error(path + ": first line must be the 'predictor,cost' header");
    } catch (const std::runtime_error& e) {
        if (std::string(e.what()).find("header") != std::string::npos) throw;
    }
    std::vector<std::string> names;
    std::vector<double> costs;
    for (std::size_t r = 1; r < rows.size(); ++r) {
        if (rows[r].size() != 2)
            throw std::runtime_error(path + ": line " + std::to_string(r + 1) +
                                     ": expected 2 fields, got " + std::to_string(rows[r].size()));
        names.push_back(rows[r][0]);
        costs.push_back(parse_double(rows[r][1], path + " line " + std::to_string(r + 1)));
    }
    return {std::move(names), CostSchedule(std::move(costs))};
}

}  // namespace costpath
