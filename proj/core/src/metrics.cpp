#include "costpath/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "costpath/csv.hpp"
#include "costpath/errors.hpp"
#include "costpath/laplace.hpp"
#include "costpath/model_space.hpp"
#include "costpath/rng.hpp"

namespace costpath {

namespace {

void check_binary_labels(std::span<const double> labels, std::size_t* n_pos,
                         std::size_t* n_neg) {
    *n_pos = 0;
    *n_neg = 0;
    for (const double y : labels) {
        if (y == 1.0)
            ++*n_pos;
        else if (y == 0.0)
            ++*n_neg;
        else
            throw std::invalid_argument("labels must be 0 or 1");
    }
    if (*n_pos == 0 || *n_neg == 0)
        throw std::invalid_argument("C-statistic needs both classes present");
}

}  // namespace

double c_statistic(std::span<const double> scores, std::span<const double> labels) {
    if (scores.size() != labels.size())
        throw std::invalid_argument("scores and labels must have equal length");
    std::size_t n_pos = 0, n_neg = 0;
    check_binary_labels(labels, &n_pos, &n_neg);

    std::vector<std::size_t> order(scores.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return scores[a] < scores[b]; });

    // Midranks over tie groups; the 0.5 credit for tied pairs falls out.
    double rank_sum_pos = 0.0;
    std::size_t i = 0;
    while (i < order.size()) {
        std::size_t j = i;
        while (j < order.size() && scores[order[j]] == scores[order[i]]) ++j;
        const double midrank = 0.5 * static_cast<double>(i + 1 + j);  // (i+1 + j) / 2
        for (std::size_t k = i; k < j; ++k)
            if (labels[order[k]] == 1.0) rank_sum_pos += midrank;
        i = j;
    }
    const double u = rank_sum_pos -
                     0.5 * static_cast<double>(n_pos) * static_cast<double>(n_pos + 1);
    return u / (static_cast<double>(n_pos) * static_cast<double>(n_neg));
}

std::vector<double> fitted_probabilities(const DesignData& data, const ModelIndicator& gamma) {
    const Eigen::MatrixXd Xg = model_design(data, gamma);
    const CoefficientPrior prior = CoefficientPrior::from_design(Xg, data.n());
    const NewtonResult fit = newton_mode(Xg, data.y, prior);
    if (!fit.converged) throw NonConvergenceError("model fit did not converge");
    std::vector<double> probs(static_cast<std::size_t>(data.n()));
    for (Eigen::Index i = 0; i < data.n(); ++i)
        probs[static_cast<std::size_t>(i)] = logistic(Xg.row(i).dot(fit.beta_hat));
    return probs;
}

double in_sample_c_statistic(const DesignData& data, const ModelIndicator& gamma) {
    const std::vector<double> probs = fitted_probabilities(data, gamma);
    std::vector<double> labels(static_cast<std::size_t>(data.n()));
    for (Eigen::Index i = 0; i < data.n(); ++i)
        labels[static_cast<std::size_t>(i)] = data.y(i);
    return c_statistic(probs, labels);
}

std::vector<RocPoint> roc_curve(std::span<const double> scores,
                                std::span<const double> labels) {
    if (scores.size() != labels.size())
        throw std::invalid_argument("scores and labels must have equal length");
    std::size_t n_pos = 0, n_neg = 0;
    check_binary_labels(labels, &n_pos, &n_neg);

    std::vector<std::size_t> order(scores.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return scores[a] > scores[b]; });

    std::vector<RocPoint> curve;
    curve.push_back({0.0, 0.0});
    std::size_t tp = 0, fp = 0, i = 0;
    while (i < order.size()) {
        std::size_t j = i;
        while (j < order.size() && scores[order[j]] == scores[order[i]]) ++j;
        for (std::size_t k = i; k < j; ++k) {
            if (labels[order[k]] == 1.0)
                ++tp;
            else
                ++fp;
        }
        curve.push_back({static_cast<double>(fp) / static_cast<double>(n_neg),
                         static_cast<double>(tp) / static_cast<double>(n_pos)});
        i = j;
    }
    return curve;
}

double roc_trapezoid_area(const std::vector<RocPoint>& curve) {
    double area = 0.0;
    for (std::size_t i = 1; i < curve.size(); ++i)
        area += 0.5 * (curve[i].tpr + curve[i - 1].tpr) * (curve[i].fpr - curve[i - 1].fpr);
    return area;
}

void write_roc_csv(const std::string& path, const std::vector<RocPoint>& curve) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out << "fpr,tpr\n";
    for (const auto& pt : curve) out << format_g17(pt.fpr) << ',' << format_g17(pt.tpr) << '\n';
}

double kl_divergence(std::span<const double> p, std::span<const double> q) {
    if (p.size() != q.size())
        throw std::invalid_argument("distributions must have equal length");
    double sum_p = 0.0, sum_q = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (p[i] < 0.0 || q[i] < 0.0)
            throw std::invalid_argument("probabilities must be non-negative");
        sum_p += p[i];
        sum_q += q[i];
    }
    if (std::abs(sum_p - 1.0) > 1e-8 || std::abs(sum_q - 1.0) > 1e-8)
        throw std::invalid_argument("distributions must each sum to 1 within 1e-8");
    double kl = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (p[i] == 0.0) continue;
        if (q[i] == 0.0) return std::numeric_limits<double>::infinity();
        kl += p[i] * std::log(p[i] / q[i]);
    }
    return kl;
}

std::vector<KlCurveRow> kl_vs_n_experiment(int reps, int n0, int step, int n_max,
                                           std::uint64_t seed, int threads) {
    constexpr int kMinHeadroom = 10;
    if (reps < 1) throw std::invalid_argument("reps must be >= 1");
    if (n0 < SimulationConfig::kNumPredictors + kMinHeadroom)
        throw std::invalid_argument("n0 must be at least p + 10 = " +
                                    std::to_string(SimulationConfig::kNumPredictors +
                                                   kMinHeadroom));
    if (step < 1 || n_max < n0) throw std::invalid_argument("need step >= 1 and n_max >= n0");

    std::vector<KlCurveRow> rows;
    for (int rep = 0; rep < reps; ++rep) {
        SimulationConfig config;
        config.n = n0;
        config.seed = splitmix64(seed ^ splitmix64(static_cast<std::uint64_t>(rep)));
        Dataset dataset = simulate_dataset(config);
        DesignData design = std::move(dataset.design);

        for (int n = n0; n <= n_max; n += step) {
            if (n > static_cast<int>(design.n()))
                design = grow_dataset(config, design, n - static_cast<int>(design.n()));
            const MarginalTable marginals = enumerate_marginals(design, threads);
            const PosteriorTable penalized =
                posterior_from_marginals(marginals, dataset.costs, PriorSpec::fnd());
            const PosteriorTable benefit =
                posterior_from_marginals(marginals, dataset.costs, PriorSpec::uniform());
            std::vector<double> p_probs, q_probs;
            p_probs.reserve(penalized.rows.size());
            q_probs.reserve(benefit.rows.size());
            for (const auto& row : penalized.rows) p_probs.push_back(row.post_prob);
            for (const auto& row : benefit.rows) q_probs.push_back(row.post_prob);
            rows.push_back({rep, n, kl_divergence(p_probs, q_probs)});
        }
    }
    return rows;
}

void write_kl_curve_csv(const std::string& path, const std::vector<KlCurveRow>& rows) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out << "rep,n,kl\n";
    for (const auto& row : rows)
        out << row.rep << ',' << row.n << ',' << format_g17(row.kl) << '\n';
}

CvReport cv_cstatistic(const DesignData& data, const ModelIndicator& gamma, int folds,
                       std::uint64_t seed) {
    data.validate();
    if (folds < 2) throw std::invalid_argument("folds must be >= 2");
    const auto n = static_cast<std::size_t>(data.n());
    if (n < static_cast<std::size_t>(folds))
        throw std::invalid_argument("more folds than observations");

    // Seeded shuffle, round-robin assignment, re-randomize until every fold
    // keeps both classes.
    constexpr int kMaxAttempts = 20;
    std::vector<int> fold_of(n);
    bool ok = false;
    for (int attempt = 0; attempt < kMaxAttempts && !ok; ++attempt) {
        SubstreamRng rng(seed, static_cast<std::uint64_t>(attempt));
        std::vector<std::size_t> perm(n);
        std::iota(perm.begin(), perm.end(), 0);
        for (std::size_t i = n - 1; i > 0; --i)
            std::swap(perm[i], perm[rng.bounded(i + 1)]);
        for (std::size_t k = 0; k < n; ++k)
            fold_of[perm[k]] = static_cast<int>(k % static_cast<std::size_t>(folds));

        ok = true;
        for (int f = 0; f < folds && ok; ++f) {
            bool has_pos = false, has_neg = false;
            for (std::size_t i = 0; i < n; ++i) {
                if (fold_of[i] != f) continue;
                (data.y(static_cast<Eigen::Index>(i)) == 1.0 ? has_pos : has_neg) = true;
            }
            ok = has_pos && has_neg;
        }
    }
    if (!ok)
        throw std::runtime_error("could not stratify folds with both classes after " +
                                 std::to_string(kMaxAttempts) + " attempts");

    const Eigen::MatrixXd Xg = model_design(data, gamma);
    CvReport report;
    report.seed = seed;
    for (int f = 0; f < folds; ++f) {
        std::vector<Eigen::Index> train, test;
        for (std::size_t i = 0; i < n; ++i)
            (fold_of[i] == f ? test : train).push_back(static_cast<Eigen::Index>(i));

        Eigen::MatrixXd X_train(train.size(), Xg.cols());
        Eigen::VectorXd y_train(train.size());
        for (std::size_t k = 0; k < train.size(); ++k) {
            X_train.row(static_cast<Eigen::Index>(k)) = Xg.row(train[k]);
            y_train(static_cast<Eigen::Index>(k)) = data.y(train[k]);
        }
        const CoefficientPrior prior =
            CoefficientPrior::from_design(X_train, static_cast<std::int64_t>(train.size()));
        const NewtonResult fit = newton_mode(X_train, y_train, prior);
        if (!fit.converged)
            throw NonConvergenceError("training fit did not converge in fold " +
                                      std::to_string(f + 1));

        std::vector<double> scores, labels;
        scores.reserve(test.size());
        labels.reserve(test.size());
        for (const auto i : test) {
            scores.push_back(logistic(Xg.row(i).dot(fit.beta_hat)));
            labels.push_back(data.y(i));
        }
        report.fold_cstats.push_back(c_statistic(scores, labels));
    }

    const double k = static_cast<double>(folds);
    report.mean = std::accumulate(report.fold_cstats.begin(), report.fold_cstats.end(), 0.0) / k;
    double ss = 0.0;
    for (const double c : report.fold_cstats) ss += (c - report.mean) * (c - report.mean);
    report.stddev = folds > 1 ? std::sqrt(ss / (k - 1.0)) : 0.0;
    return report;
}

void write_cv_report_csv(const std::string& path, const CvReport& report) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out << "fold,cstat\n";
    for (std::size_t f = 0; f < report.fold_cstats.size(); ++f)
        out << (f + 1) << ',' << format_g17(report.fold_cstats[f]) << '\n';
    out << "mean," << format_g17(report.mean) << '\n';
    out << "stddev," << format_g17(report.stddev) << '\n';
}

}  // namespace costpath
