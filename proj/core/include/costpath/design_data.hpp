#pragma once

#include <Eigen/Dense>
#include <vector>

#include "costpath/model_indicator.hpp"

namespace costpath {

// Contiguous run of expanded design columns belonging to one predictor.
// Numeric predictors own a single column; a categorical predictor owns one
// dummy column per non-reference level and enters or leaves models as a
// unit.
struct ColumnGroup {
    int start = 0;  // absolute column index in X (column 0 is the intercept)
    int count = 0;
};

struct DesignData {
    Eigen::VectorXd y;                // binary responses, values in {0, 1}
    Eigen::MatrixXd X;                // n x (1 + total expanded columns); column 0 all ones
    std::vector<ColumnGroup> groups;  // one entry per candidate predictor

    Eigen::Index n() const { return X.rows(); }
    int num_predictors() const { return static_cast<int>(groups.size()); }

    // Checks the structural invariants: intercept column of ones, binary y,
    // and groups that tile columns 1..cols-1 in order. Throws on violation.
    void validate() const;
};

// Assembles the design matrix of one model: the intercept column followed by
// the expanded columns of every included predictor, in ascending predictor
// and level order.
Eigen::MatrixXd model_design(const DesignData& data, const ModelIndicator& gamma);

}  // namespace costpath
