#include <CLI11.hpp>
#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <utility>
#include <vector>

#include "costpath/csv.hpp"
#include "costpath/data_io.hpp"
#include "costpath/inclusion_path.hpp"
#include "costpath/metrics.hpp"
#include "costpath/model_space.hpp"
#include "costpath/svg_plot.hpp"

namespace fs = std::filesystem;
using namespace costpath;

namespace {

struct CommonOpts {
    std::string out = ".";
    int threads = 0;  // 0: COSTPATH_THREADS env, then hardware count
};

void add_common(CLI::App* cmd, CommonOpts* opts) {
    cmd->add_option("--out", opts->out, "Output directory (created if absent)");
    cmd->add_option("--threads", opts->threads,
                    "Worker thread cap; 0 uses COSTPATH_THREADS or all cores");
}

std::string out_file(const CommonOpts& opts, const std::string& name) {
    fs::create_directories(opts.out);
    return (fs::path(opts.out) / name).string();
}

struct DataOpts {
    std::string data_path;
    std::string spec_path;
};

void add_data(CLI::App* cmd, DataOpts* opts) {
    cmd->add_option("--data", opts->data_path, "Input data file")->required();
    cmd->add_option("--spec", opts->spec_path,
                    "JSON dataset spec; omit to read --data as a raw Cleveland file");
}

Dataset load_input(const DataOpts& opts) {
    if (!opts.spec_path.empty()) return load_dataset(opts.data_path, opts.spec_path);
    return load_cleveland(opts.data_path);
}

struct PriorOpts {
    std::string prior = "uniform";
    double b = 0.0;
};

void add_prior(CLI::App* cmd, PriorOpts* opts) {
    cmd->add_option("--prior", opts->prior, "Model prior: uniform, ecp, lcp or fnd")
        ->check(CLI::IsMember({"uniform", "ecp", "lcp", "fnd"}));
    cmd->add_option("--b", opts->b, "Tuning parameter for ecp/lcp (>= 0)");
}

PriorSpec build_prior(const PriorOpts& opts) {
    if (opts.prior == "uniform") return PriorSpec::uniform();
    if (opts.prior == "ecp") return PriorSpec::ecp(opts.b);
    if (opts.prior == "lcp") return PriorSpec::lcp(opts.b);
    return PriorSpec::fnd();
}

void warn_exclusions(const PosteriorTable& table) {
    if (table.excluded.empty()) return;
    std::cerr << "warning: " << table.excluded.size()
              << " model(s) excluded and probabilities renormalized:\n";
    for (const auto& ex : table.excluded)
        std::cerr << "  model " << ex.model_id << ": " << ex.reason << "\n";
}

void write_single_pips_csv(const std::string& path, double b,
                           const std::vector<std::string>& names,
                           const std::vector<double>& pips) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out << "b,predictor,pip\n";
    for (std::size_t j = 0; j < names.size(); ++j)
        out << format_g17(b) << ',' << names[j] << ',' << format_g17(pips[j]) << '\n';
}

std::string joined_names(const ModelIndicator& gamma, const std::vector<std::string>& names) {
    std::string s;
    for (const int j : gamma.included_indices()) {
        if (!s.empty()) s += ';';
        s += names[static_cast<std::size_t>(j)];
    }
    return s.empty() ? "(intercept only)" : s;
}

int run_select(const DataOpts& data_opts, const PriorOpts& prior_opts, double threshold,
               const CommonOpts& common) {
    const Dataset dataset = load_input(data_opts);
    const PriorSpec spec = build_prior(prior_opts);
    const PosteriorTable table =
        enumerate_posterior(dataset.design, dataset.costs, spec, common.threads);
    warn_exclusions(table);

    const auto pips = posterior_inclusion_probabilities(table);
    const ModelIndicator map = map_model(table);
    const ModelIndicator median = median_probability_model(pips, threshold);
    const auto names = dataset.predictor_names();

    write_models_csv(out_file(common, "models.csv"), table, dataset.costs);
    write_single_pips_csv(out_file(common, "pips.csv"),
                          spec.family == PriorFamily::Uniform ? 0.0 : spec.b, names, pips);

    std::ofstream summary(out_file(common, "selection_summary.csv"));
    summary << "kind,model_id,gamma_bits,predictors,k,cost_per_obs,total_cost,post_prob,cstat\n";
    for (const auto& [kind, gamma] :
         {std::pair<std::string, ModelIndicator>{"map", map}, {"median", median}}) {
        const ModelCost cost = model_cost(gamma, dataset.costs, dataset.design.n());
        const PosteriorRow* row = table.find(gamma.id());
        const double post = row ? row->post_prob : 0.0;
        const double cstat = in_sample_c_statistic(dataset.design, gamma);
        summary << kind << ',' << gamma.id() << ',' << gamma.bits_string() << ','
                << joined_names(gamma, names) << ',' << gamma.count() << ','
                << format_g17(cost.per_observation) << ',' << format_g17(cost.total) << ','
                << format_g17(post) << ',' << format_g17(cstat) << '\n';
        std::cout << kind << " model: {" << joined_names(gamma, names) << "}"
                  << "  cost/obs=" << cost.per_observation << "  post=" << post
                  << "  cstat=" << cstat << "\n";
    }
    return 0;
}

int run_path(const DataOpts& data_opts, const std::string& g_kind_name,
             const std::string& grid_text, double threshold, const CommonOpts& common) {
    const Dataset dataset = load_input(data_opts);
    const CostRatioKind g_kind =
        g_kind_name == "lcp" ? CostRatioKind::Lcp : CostRatioKind::Ecp;
    const BGrid grid = BGrid::parse(grid_text);
    const PathResult result =
        compute_path(dataset.design, dataset.costs, g_kind, grid, threshold, common.threads);
    const auto names = dataset.predictor_names();

    write_pips_csv(out_file(common, "pips.csv"), result, names);
    write_path_summary_csv(out_file(common, "path_summary.csv"), result);

    const double min_cost = dataset.costs.baseline();
    const double max_cost =
        *std::max_element(dataset.costs.costs().begin(), dataset.costs.costs().end());

    ChartSpec pip_chart;
    pip_chart.title = "Inclusion path (" + std::string(g_kind_name == "lcp" ? "LCP" : "ECP") + ")";
    pip_chart.x_label = "tuning parameter b";
    pip_chart.y_label = "posterior inclusion probability";
    pip_chart.fixed_y_range = true;
    pip_chart.y_min = 0.0;
    pip_chart.y_max = 1.0;
    for (int j = 0; j < result.p; ++j) {
        LineSeries series;
        series.label = names[static_cast<std::size_t>(j)];
        series.color = cost_tier_color(dataset.costs.cost(static_cast<std::size_t>(j)),
                                       min_cost, max_cost);
        series.dashed = (j % 2 == 1);  // distinguish same-cost predictors
        for (const auto& record : result.records) {
            series.x.push_back(record.b);
            series.y.push_back(record.pips[static_cast<std::size_t>(j)]);
        }
        pip_chart.series.push_back(std::move(series));
    }
    write_line_chart_svg(out_file(common, "path.svg"), pip_chart);

    const auto summary_chart = [&](const std::string& title, const std::string& ylabel,
                                   auto map_field, auto median_field) {
        ChartSpec chart;
        chart.title = title;
        chart.x_label = "tuning parameter b";
        chart.y_label = ylabel;
        LineSeries map_series{"MAP model", {}, {}, "#1f4e8c", false};
        LineSeries median_series{"median model", {}, {}, "#c23b22", true};
        for (const auto& record : result.records) {
            map_series.x.push_back(record.b);
            map_series.y.push_back(map_field(record));
            median_series.x.push_back(record.b);
            median_series.y.push_back(median_field(record));
        }
        chart.series = {std::move(map_series), std::move(median_series)};
        return chart;
    };
    write_line_chart_svg(
        out_file(common, "cost.svg"),
        summary_chart(
            "Selected-model cost", "cost per observation",
            [](const PathRecord& r) { return r.map_cost; },
            [](const PathRecord& r) { return r.median_cost; }));
    write_line_chart_svg(
        out_file(common, "cstat.svg"),
        summary_chart(
            "Selected-model accuracy", "in-sample C-statistic",
            [](const PathRecord& r) { return r.map_cstat; },
            [](const PathRecord& r) { return r.median_cstat; }));

    std::cout << "inclusion path over " << result.records.size() << " grid points written to "
              << common.out << "\n";
    return 0;
}

int run_simulate(int n, double rho, std::uint64_t seed, const CommonOpts& common) {
    SimulationConfig config;
    config.n = n;
    config.rho = rho;
    config.seed = seed;
    const Dataset dataset = simulate_dataset(config);
    write_dataset_csv(out_file(common, "sim_data.csv"), dataset);
    write_dataset_spec_json(out_file(common, "sim_spec.json"), dataset);
    std::ofstream costs(out_file(common, "sim_costs.csv"));
    costs << "predictor,cost\n";
    for (const auto& spec : dataset.predictors)
        costs << spec.name << ',' << format_g17(spec.cost) << '\n';
    std::cout << "simulated " << n << " observations (seed " << seed << ", rho " << rho
              << ") into " << common.out << "\n";
    return 0;
}

int run_klcurve(int reps, int n0, int step, int n_max, std::uint64_t seed,
                const CommonOpts& common) {
    const auto rows = kl_vs_n_experiment(reps, n0, step, n_max, seed, common.threads);
    write_kl_curve_csv(out_file(common, "kl_curve.csv"), rows);
    std::cout << "kl_curve.csv: " << rows.size() << " rows (" << reps << " reps)\n";
    return 0;
}

int run_cv(const DataOpts& data_opts, const std::string& gamma_bits, int folds,
           std::uint64_t seed, const CommonOpts& common) {
    const Dataset dataset = load_input(data_opts);
    const ModelIndicator gamma = ModelIndicator::from_bits_string(gamma_bits);
    if (gamma.num_predictors() != dataset.design.num_predictors())
        throw std::invalid_argument("--gamma must have one bit per predictor (" +
                                    std::to_string(dataset.design.num_predictors()) + ")");
    const CvReport report = cv_cstatistic(dataset.design, gamma, folds, seed);
    write_cv_report_csv(out_file(common, "cv_report.csv"), report);
    std::cout << "cv mean cstat = " << report.mean << " (sd " << report.stddev << ") over "
              << folds << " folds\n";
    return 0;
}

int run_roc(const DataOpts& data_opts, const std::string& gamma_bits,
            const CommonOpts& common) {
    const Dataset dataset = load_input(data_opts);
    const ModelIndicator gamma = ModelIndicator::from_bits_string(gamma_bits);
    if (gamma.num_predictors() != dataset.design.num_predictors())
        throw std::invalid_argument("--gamma must have one bit per predictor (" +
                                    std::to_string(dataset.design.num_predictors()) + ")");
    const std::vector<double> probs = fitted_probabilities(dataset.design, gamma);
    std::vector<double> labels(probs.size());
    for (Eigen::Index i = 0; i < dataset.design.n(); ++i)
        labels[static_cast<std::size_t>(i)] = dataset.design.y(i);
    const auto curve = roc_curve(probs, labels);
    write_roc_csv(out_file(common, "roc.csv"), curve);
    std::cout << "roc.csv: " << curve.size() << " points, area = " << roc_trapezoid_area(curve)
              << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Cost-penalized Bayesian variable selection for logistic regression"};
    app.require_subcommand(1);

    auto* select = app.add_subcommand("select", "Posterior over all models for one prior");
    DataOpts select_data;
    PriorOpts select_prior;
    double select_threshold = 0.5;
    CommonOpts select_common;
    add_data(select, &select_data);
    add_prior(select, &select_prior);
    select->add_option("--threshold", select_threshold, "Median-model inclusion threshold");
    add_common(select, &select_common);

    auto* path = app.add_subcommand("path", "Inclusion path over a grid of b values");
    DataOpts path_data;
    std::string path_g = "ecp";
    std::string path_grid = "0:2:0.1";
    double path_threshold = 0.5;
    CommonOpts path_common;
    add_data(path, &path_data);
    path->add_option("--g", path_g, "Cost ratio function: ecp or lcp")
        ->check(CLI::IsMember({"ecp", "lcp"}));
    path->add_option("--b-grid", path_grid, "Grid start:stop:step (step > 0)");
    path->add_option("--threshold", path_threshold, "Median-model inclusion threshold");
    add_common(path, &path_common);

    auto* simulate =
        app.add_subcommand("simulate", "Draw a dataset from the 9-predictor setting");
    int sim_n = 150;
    double sim_rho = 0.0;
    std::uint64_t sim_seed = 0;
    CommonOpts sim_common;
    simulate->add_option("--n", sim_n, "Number of observations")->required();
    simulate->add_option("--rho", sim_rho, "Correlation between predictors 4 and 6");
    simulate->add_option("--seed", sim_seed, "RNG seed");
    add_common(simulate, &sim_common);

    auto* klcurve = app.add_subcommand(
        "klcurve", "Divergence of cost-penalized from benefit-only posteriors as n grows");
    int kl_reps = 10, kl_n0 = 150, kl_step = 300, kl_nmax = 2550;
    std::uint64_t kl_seed = 0;
    CommonOpts kl_common;
    klcurve->add_option("--reps", kl_reps, "Number of replicate dataset series");
    klcurve->add_option("--n0", kl_n0, "Initial sample size");
    klcurve->add_option("--step", kl_step, "Observations appended per stage");
    klcurve->add_option("--n-max", kl_nmax, "Final sample size");
    klcurve->add_option("--seed", kl_seed, "RNG seed");
    add_common(klcurve, &kl_common);

    auto* cv = app.add_subcommand("cv", "k-fold cross-validated C-statistic for one model");
    DataOpts cv_data;
    std::string cv_gamma;
    int cv_folds = 10;
    std::uint64_t cv_seed = 0;
    CommonOpts cv_common;
    add_data(cv, &cv_data);
    cv->add_option("--gamma", cv_gamma, "Model bits, predictor 1 leftmost")->required();
    cv->add_option("--folds", cv_folds, "Number of folds");
    cv->add_option("--seed", cv_seed, "Fold assignment seed");
    add_common(cv, &cv_common);

    auto* roc = app.add_subcommand("roc", "ROC curve of one model's fitted probabilities");
    DataOpts roc_data;
    std::string roc_gamma;
    CommonOpts roc_common;
    add_data(roc, &roc_data);
    roc->add_option("--gamma", roc_gamma, "Model bits, predictor 1 leftmost")->required();
    add_common(roc, &roc_common);

    CLI11_PARSE(app, argc, argv);

    try {
        if (select->parsed())
            return run_select(select_data, select_prior, select_threshold, select_common);
        if (path->parsed())
            return run_path(path_data, path_g, path_grid, path_threshold, path_common);
        if (simulate->parsed()) return run_simulate(sim_n, sim_rho, sim_seed, sim_common);
        if (klcurve->parsed())
            return run_klcurve(kl_reps, kl_n0, kl_step, kl_nmax, kl_seed, kl_common);
        if (cv->parsed()) return run_cv(cv_data, cv_gamma, cv_folds, cv_seed, cv_common);
        if (roc->parsed()) return run_roc(roc_data, roc_gamma, roc_common);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
