#include "costpath/data_io.hpp"

#include <cmath>
#include <fstream>
#include <json.hpp>
#include <stdexcept>

#include "costpath/csv.hpp"
#include "costpath/laplace.hpp"
#include "costpath/rng.hpp"

namespace costpath {

namespace {

bool is_missing(const std::string& cell) {
    return cell.empty() || cell == "?" || cell == "NA";
}

// A raw cell matches a declared level either verbatim or, when both sides
// parse as numbers, numerically ("3.0" matches level "3").
bool level_matches(const std::string& cell, const std::string& level) {
    if (cell == level) return true;
    try {
        std::size_t used_a = 0, used_b = 0;
        const double a = std::stod(cell, &used_a);
        const double b = std::stod(level, &used_b);
        return used_a == cell.size() && used_b == level.size() && a == b;
    } catch (const std::exception&) {
        return false;
    }
}

int expanded_columns(const PredictorSpec& spec) {
    if (spec.kind == PredictorSpec::Kind::Numeric) return 1;
    return static_cast<int>(spec.levels.size()) - 1;
}

// Shared assembly path: takes the response cell and predictor cells of the
// rows that survived listwise deletion and expands them into the design.
Dataset build_dataset(const std::vector<std::string>& y_cells,
                      const std::vector<std::vector<std::string>>& predictor_cells,
                      std::vector<PredictorSpec> predictors, int dropped,
                      const std::string& origin) {
    const std::size_t n = y_cells.size();
    if (n == 0) throw std::runtime_error(origin + ": no complete rows");

    int total_cols = 1;
    for (const auto& spec : predictors) {
        if (spec.kind == PredictorSpec::Kind::Categorical) {
            if (spec.levels.size() < 2)
                throw std::runtime_error(origin + ": categorical predictor '" + spec.name +
                                         "' needs at least two levels");
            bool ref_found = false;
            for (const auto& level : spec.levels) ref_found |= (level == spec.reference);
            if (!ref_found)
                throw std::runtime_error(origin + ": reference level '" + spec.reference +
                                         "' of predictor '" + spec.name +
                                         "' is not among its levels");
        }
        total_cols += expanded_columns(spec);
    }

    DesignData design;
    design.y.resize(static_cast<Eigen::Index>(n));
    design.X = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n), total_cols);
    design.X.col(0).setOnes();

    for (std::size_t i = 0; i < n; ++i) {
        const double y = parse_double(y_cells[i], origin + ": response, row " + std::to_string(i + 1));
        if (y != 0.0 && y != 1.0)
            throw std::runtime_error(origin + ": response must be binary, got '" + y_cells[i] +
                                     "' at row " + std::to_string(i + 1));
        design.y(static_cast<Eigen::Index>(i)) = y;
    }

    int col = 1;
    std::vector<double> costs;
    for (std::size_t jp = 0; jp < predictors.size(); ++jp) {
        const auto& spec = predictors[jp];
        const int width = expanded_columns(spec);
        for (std::size_t i = 0; i < n; ++i) {
            const std::string& cell = predictor_cells[i][jp];
            const std::string where =
                origin + ": row " + std::to_string(i + 1) + ", column '" + spec.name + "'";
            if (spec.kind == PredictorSpec::Kind::Numeric) {
                design.X(static_cast<Eigen::Index>(i), col) = parse_double(cell, where);
            } else {
                int dummy = 0;
                bool matched = false;
                for (const auto& level : spec.levels) {
                    const bool is_ref = (level == spec.reference);
                    if (level_matches(cell, level)) {
                        if (!is_ref)
                            design.X(static_cast<Eigen::Index>(i), col + dummy) = 1.0;
                        matched = true;
                        break;
                    }
                    if (!is_ref) ++dummy;
                }
                if (!matched)
                    throw std::runtime_error(where + ": unknown level '" + cell + "'");
            }
        }
        design.groups.push_back({col, width});
        col += width;
        costs.push_back(spec.cost);
    }

    design.validate();
    return Dataset{std::move(design), CostSchedule(std::move(costs)), std::move(predictors),
                   dropped};
}

}  // namespace

std::vector<std::string> Dataset::predictor_names() const {
    std::vector<std::string> names;
    names.reserve(predictors.size());
    for (const auto& spec : predictors) names.push_back(spec.name);
    return names;
}

Dataset load_dataset(const std::string& data_path, const std::string& spec_path) {
    std::ifstream spec_in(spec_path);
    if (!spec_in) throw std::runtime_error("cannot open spec file: " + spec_path);
    nlohmann::json spec_json;
    try {
        spec_in >> spec_json;
    } catch (const nlohmann::json::exception& e) {
        throw std::runtime_error(spec_path + ": " + e.what());
    }

    const std::string response = spec_json.at("response").get<std::string>();
    std::vector<PredictorSpec> predictors;
    for (const auto& item : spec_json.at("predictors")) {
        PredictorSpec spec;
        spec.name = item.at("name").get<std::string>();
        const std::string kind = item.at("kind").get<std::string>();
        if (kind == "numeric") {
            spec.kind = PredictorSpec::Kind::Numeric;
        } else if (kind == "categorical") {
            spec.kind = PredictorSpec::Kind::Categorical;
            for (const auto& level : item.at("levels"))
                spec.levels.push_back(level.get<std::string>());
            spec.reference = item.at("reference").get<std::string>();
        } else {
            throw std::runtime_error(spec_path + ": predictor '" + spec.name +
                                     "': unknown kind '" + kind + "'");
        }
        spec.cost = item.at("cost").get<double>();
        if (!(spec.cost > 0.0))
            throw std::runtime_error(spec_path + ": predictor '" + spec.name +
                                     "' must have a positive cost");
        predictors.push_back(std::move(spec));
    }

    const auto rows = read_csv(data_path);
    if (rows.size() < 2) throw std::runtime_error(data_path + ": need a header and data rows");
    const auto& header = rows.front();
    auto column_of = [&](const std::string& name) {
        for (std::size_t c = 0; c < header.size(); ++c)
            if (header[c] == name) return c;
        throw std::runtime_error(data_path + ": column '" + name + "' not found in header");
    };
    const std::size_t y_col = column_of(response);
    std::vector<std::size_t> pred_cols;
    for (const auto& spec : predictors) pred_cols.push_back(column_of(spec.name));

    std::vector<std::string> y_cells;
    std::vector<std::vector<std::string>> predictor_cells;
    int dropped = 0;
    for (std::size_t r = 1; r < rows.size(); ++r) {
        if (rows[r].size() != header.size())
            throw std::runtime_error(data_path + ": line " + std::to_string(r + 1) + " has " +
                                     std::to_string(rows[r].size()) + " fields, expected " +
                                     std::to_string(header.size()));
        bool missing = is_missing(rows[r][y_col]);
        for (const auto c : pred_cols) missing |= is_missing(rows[r][c]);
        if (missing) {
            ++dropped;
            continue;
        }
        y_cells.push_back(rows[r][y_col]);
        std::vector<std::string> cells;
        cells.reserve(pred_cols.size());
        for (const auto c : pred_cols) cells.push_back(rows[r][c]);
        predictor_cells.push_back(std::move(cells));
    }
    return build_dataset(y_cells, predictor_cells, std::move(predictors), dropped, data_path);
}

Dataset load_cleveland(const std::string& path) {
    // Raw column order: age, sex, cp, trestbps, chol, fbs, restecg, thalach,
    // exang, oldpeak, slope, ca, thal, num.
    struct Field {
        const char* name;
        int raw_column;
        PredictorSpec::Kind kind;
        double cost;
        std::vector<std::string> levels;
        const char* reference;
    };
    using Kind = PredictorSpec::Kind;
    const std::vector<Field> fields = {
        {"age", 0, Kind::Numeric, 1.0, {}, ""},
        {"sex", 1, Kind::Categorical, 1.0, {"0", "1"}, "0"},
        {"chest pain", 2, Kind::Categorical, 1.0, {"1", "2", "3", "4"}, "1"},
        {"resting BP", 3, Kind::Numeric, 1.0, {}, ""},
        {"cholesterol", 4, Kind::Numeric, 7.27, {}, ""},
        {"blood sugar", 5, Kind::Categorical, 5.20, {"0", "1"}, "0"},
        {"EKG", 6, Kind::Categorical, 15.50, {"0", "1", "2"}, "0"},
        {"heart rate", 7, Kind::Numeric, 102.90, {}, ""},
        {"exercise angina", 8, Kind::Categorical, 87.30, {"0", "1"}, "0"},
        {"ST depression", 9, Kind::Numeric, 87.30, {}, ""},
        {"peak ST segment", 10, Kind::Categorical, 87.30, {"1", "2", "3"}, "1"},
        {"major vessels", 11, Kind::Categorical, 100.90, {"0", "1", "2", "3"}, "0"},
        {"defect type", 12, Kind::Categorical, 102.90, {"3", "6", "7"}, "3"},
    };
    constexpr int kRawFields = 14;
    constexpr int kDiseaseColumn = 13;

    const auto rows = read_csv(path);
    std::vector<std::string> y_cells;
    std::vector<std::vector<std::string>> predictor_cells;
    int dropped = 0;
    for (std::size_t r = 0; r < rows.size(); ++r) {
        const auto& row = rows[r];
        if (row.size() != kRawFields)
            throw std::runtime_error(path + ": line " + std::to_string(r + 1) + " has " +
                                     std::to_string(row.size()) + " fields, expected 14");
        bool missing = false;
        for (const auto& cell : row) missing |= is_missing(cell);
        if (missing) {
            ++dropped;
            continue;
        }
        const double disease = parse_double(
            row[kDiseaseColumn], path + " line " + std::to_string(r + 1) + ", disease field");
        y_cells.push_back(disease >= 1.0 ? "1" : "0");
        std::vector<std::string> cells;
        cells.reserve(fields.size());
        for (const auto& f : fields) cells.push_back(row[static_cast<std::size_t>(f.raw_column)]);
        predictor_cells.push_back(std::move(cells));
    }

    std::vector<PredictorSpec> predictors;
    for (const auto& f : fields)
        predictors.push_back({f.name, f.kind, f.levels, f.reference, f.cost});
    return build_dataset(y_cells, predictor_cells, std::move(predictors), dropped, path);
}

namespace {

// Fills row i of a simulation design in place; draws depend only on
// (config.seed, i).
void fill_simulated_row(DesignData& design, int i, const SimulationConfig& config) {
    SubstreamRng rng(config.seed, static_cast<std::uint64_t>(i));
    std::array<double, SimulationConfig::kNumPredictors> z;
    for (auto& v : z) v = rng.normal();

    const auto [a, b] = config.correlated_pair;
    std::array<double, SimulationConfig::kNumPredictors> x = z;
    x[static_cast<std::size_t>(b)] = config.rho * z[static_cast<std::size_t>(a)] +
                                     std::sqrt(1.0 - config.rho * config.rho) *
                                         z[static_cast<std::size_t>(b)];

    double eta = SimulationConfig::kBeta[0];
    for (int j = 0; j < SimulationConfig::kNumPredictors; ++j) {
        design.X(i, 1 + j) = x[static_cast<std::size_t>(j)];
        eta += SimulationConfig::kBeta[static_cast<std::size_t>(1 + j)] *
               x[static_cast<std::size_t>(j)];
    }
    design.y(i) = rng.uniform() < logistic(eta) ? 1.0 : 0.0;
}

void check_simulation_config(const SimulationConfig& config) {
    if (config.n < 1) throw std::invalid_argument("simulation size must be >= 1");
    if (!(std::abs(config.rho) < 1.0)) throw std::invalid_argument("|rho| must be < 1");
    const auto [a, b] = config.correlated_pair;
    if (a < 0 || b < 0 || a >= SimulationConfig::kNumPredictors ||
        b >= SimulationConfig::kNumPredictors || a == b)
        throw std::invalid_argument("correlated pair must name two distinct predictors");
}

}  // namespace

Dataset simulate_dataset(const SimulationConfig& config) {
    check_simulation_config(config);
    DesignData design;
    design.y.resize(config.n);
    design.X.resize(config.n, 1 + SimulationConfig::kNumPredictors);
    design.X.col(0).setOnes();
    for (int j = 0; j < SimulationConfig::kNumPredictors; ++j)
        design.groups.push_back({1 + j, 1});
    for (int i = 0; i < config.n; ++i) fill_simulated_row(design, i, config);

    std::vector<PredictorSpec> predictors;
    std::vector<double> costs;
    for (int j = 0; j < SimulationConfig::kNumPredictors; ++j) {
        PredictorSpec spec;
        spec.name = "X" + std::to_string(j + 1);
        spec.cost = SimulationConfig::kCosts[static_cast<std::size_t>(j)];
        predictors.push_back(std::move(spec));
        costs.push_back(SimulationConfig::kCosts[static_cast<std::size_t>(j)]);
    }
    return Dataset{std::move(design), CostSchedule(std::move(costs)), std::move(predictors), 0};
}

DesignData grow_dataset(const SimulationConfig& config, const DesignData& existing,
                        int additional_n) {
    check_simulation_config(config);
    if (additional_n < 0) throw std::invalid_argument("additional_n must be >= 0");
    if (existing.X.cols() != 1 + SimulationConfig::kNumPredictors)
        throw std::invalid_argument("existing design does not match the simulation setting");

    const int n0 = static_cast<int>(existing.n());
    DesignData grown;
    grown.groups = existing.groups;
    grown.y.resize(n0 + additional_n);
    grown.X.resize(n0 + additional_n, existing.X.cols());
    grown.y.head(n0) = existing.y;
    grown.X.topRows(n0) = existing.X;
    for (int i = 0; i < additional_n; ++i) fill_simulated_row(grown, n0 + i, config);
    return grown;
}

void write_dataset_csv(const std::string& path, const Dataset& dataset,
                       const std::string& response_name) {
    for (const auto& spec : dataset.predictors)
        if (spec.kind != PredictorSpec::Kind::Numeric)
            throw std::invalid_argument("write_dataset_csv supports numeric predictors only");
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out << response_name;
    for (const auto& spec : dataset.predictors) out << ',' << spec.name;
    out << '\n';
    const auto& design = dataset.design;
    for (Eigen::Index i = 0; i < design.n(); ++i) {
        out << (design.y(i) == 1.0 ? '1' : '0');
        for (int j = 0; j < design.num_predictors(); ++j)
            out << ',' << format_g17(design.X(i, dataset.design.groups[(std::size_t)j].start));
        out << '\n';
    }
}

void write_dataset_spec_json(const std::string& path, const Dataset& dataset,
                             const std::string& response_name) {
    nlohmann::json spec_json;
    spec_json["response"] = response_name;
    nlohmann::json predictors = nlohmann::json::array();
    for (const auto& spec : dataset.predictors) {
        nlohmann::json item;
        item["name"] = spec.name;
        item["cost"] = spec.cost;
        if (spec.kind == PredictorSpec::Kind::Numeric) {
            item["kind"] = "numeric";
        } else {
            item["kind"] = "categorical";
            item["levels"] = spec.levels;
            item["reference"] = spec.reference;
        }
        predictors.push_back(std::move(item));
    }
    spec_json["predictors"] = std::move(predictors);
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out << spec_json.dump(2) << '\n';
}

}  // namespace costpath
