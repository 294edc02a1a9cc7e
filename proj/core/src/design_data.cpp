#include "costpath/design_data.hpp"

#include <stdexcept>
#include <string>

namespace costpath {

void DesignData::validate() const {
    if (X.rows() != y.size()) throw std::invalid_argument("X and y row counts differ");
    if (X.rows() < 1) throw std::invalid_argument("design must contain at least one row");
    for (Eigen::Index i = 0; i < X.rows(); ++i) {
        if (X(i, 0) != 1.0)
            throw std::invalid_argument("design column 0 must be the intercept (all ones)");
        if (y(i) != 0.0 && y(i) != 1.0)
            throw std::invalid_argument("responses must be 0 or 1 (row " + std::to_string(i) + ")");
    }
    int next = 1;
    for (std::size_t j = 0; j < groups.size(); ++j) {
        const auto& g = groups[j];
        if (g.count < 1)
            throw std::invalid_argument("predictor " + std::to_string(j + 1) + " owns no columns");
        if (g.start != next)
            throw std::invalid_argument("column groups must tile the design in order");
        next += g.count;
    }
    if (next != X.cols())
        throw std::invalid_argument("column groups must cover every non-intercept column");
}

Eigen::MatrixXd model_design(const DesignData& data, const ModelIndicator& gamma) {
    if (gamma.num_predictors() != data.num_predictors())
        throw std::invalid_argument("gamma length must match the number of predictor groups");
    int d = 1;
    for (int j = 0; j < data.num_predictors(); ++j)
        if (gamma.includes(j)) d += data.groups[static_cast<std::size_t>(j)].count;

    Eigen::MatrixXd Xg(data.X.rows(), d);
    Xg.col(0) = data.X.col(0);
    int at = 1;
    for (int j = 0; j < data.num_predictors(); ++j) {
        if (!gamma.includes(j)) continue;
        const auto& g = data.groups[static_cast<std::size_t>(j)];
        Xg.middleCols(at, g.count) = data.X.middleCols(g.start, g.count);
        at += g.count;
    }
    return Xg;
}

}  // namespace costpath
