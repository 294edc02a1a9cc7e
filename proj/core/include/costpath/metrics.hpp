#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "costpath/data_io.hpp"
#include "costpath/design_data.hpp"
#include "costpath/model_indicator.hpp"

namespace costpath {

// Concordance statistic (area under the ROC curve) in Mann-Whitney form,
// (concordant + 0.5 * tied) / (n_pos * n_neg), computed in O(n log n) via
// midranks. Requires at least one positive and one negative label.
double c_statistic(std::span<const double> scores, std::span<const double> labels);

// Fitted probabilities of one model at its posterior mode, and the in-sample
// C-statistic they achieve against the observed responses.
std::vector<double> fitted_probabilities(const DesignData& data, const ModelIndicator& gamma);
double in_sample_c_statistic(const DesignData& data, const ModelIndicator& gamma);

struct RocPoint {
    double fpr = 0.0;
    double tpr = 0.0;
};

// Threshold-ordered ROC points from (0,0) to (1,1); one step per distinct
// score so the trapezoid area reproduces the tie convention exactly.
std::vector<RocPoint> roc_curve(std::span<const double> scores,
                                std::span<const double> labels);

double roc_trapezoid_area(const std::vector<RocPoint>& curve);

void write_roc_csv(const std::string& path, const std::vector<RocPoint>& curve);

// Kullback-Leibler divergence sum_x P(x) ln(P(x)/Q(x)) with 0 ln(0/q) = 0.
// Both arguments must sum to 1 within 1e-8. Returns +infinity when P puts
// mass where Q has none.
double kl_divergence(std::span<const double> p, std::span<const double> q);

struct KlCurveRow {
    int rep = 0;
    std::int64_t n = 0;
    double kl = 0.0;
};

// The shrinking-penalty experiment: per replicate, simulate n0 observations
// from the nine-predictor setting, then repeatedly append `step` more up to
// n_max; at each size enumerate the posterior under the uniform prior and
// under the b = 1 cost-penalized prior and record the divergence of the
// cost-penalized table (P) from the benefit-only table (Q).
std::vector<KlCurveRow> kl_vs_n_experiment(int reps, int n0, int step, int n_max,
                                           std::uint64_t seed, int threads = 0);

void write_kl_curve_csv(const std::string& path, const std::vector<KlCurveRow>& rows);

struct CvReport {
    std::vector<double> fold_cstats;
    double mean = 0.0;
    double stddev = 0.0;
    std::uint64_t seed = 0;
};

// 10-fold cross-validated C-statistic for one model: folds by seeded shuffle
// and round-robin assignment (re-randomized up to 20 times until every fold
// holds both classes), per-fold posterior-mode fit on the training folds with
// the prior rebuilt from the training design, held-out probabilities through
// the logistic transform.
CvReport cv_cstatistic(const DesignData& data, const ModelIndicator& gamma, int folds = 10,
                       std::uint64_t seed = 0);

void write_cv_report_csv(const std::string& path, const CvReport& report);

}  // namespace costpath
