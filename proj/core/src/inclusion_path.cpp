#include "costpath/inclusion_path.hpp"

#include <cmath>
#include <fstream>
#include <map>
#include <stdexcept>

#include "costpath/csv.hpp"
#include "costpath/errors.hpp"
#include "costpath/laplace.hpp"
#include "costpath/metrics.hpp"

namespace costpath {

BGrid BGrid::parse(const std::string& text) {
    const auto first = text.find(':');
    const auto second = text.find(':', first == std::string::npos ? first : first + 1);
    if (first == std::string::npos || second == std::string::npos)
        throw std::invalid_argument("grid must have the form start:stop:step");
    const double start = parse_double(text.substr(0, first), "grid start");
    const double stop = parse_double(text.substr(first + 1, second - first - 1), "grid stop");
    const double step = parse_double(text.substr(second + 1), "grid step");
    return range(start, stop, step);
}

BGrid BGrid::range(double start, double stop, double step) {
    if (!(step > 0.0)) throw std::invalid_argument("grid step must be > 0");
    if (stop < start) throw std::invalid_argument("grid stop must be >= start");
    BGrid grid;
    const int count = static_cast<int>(std::floor((stop - start) / step + 1e-9)) + 1;
    for (int i = 0; i < count; ++i) grid.values.push_back(start + i * step);
    grid.validate();
    return grid;
}

void BGrid::validate() const {
    if (values.empty()) throw std::invalid_argument("grid must not be empty");
    if (values.front() < 0.0) throw std::invalid_argument("grid values must be >= 0");
    for (std::size_t i = 1; i < values.size(); ++i)
        if (!(values[i] > values[i - 1]))
            throw std::invalid_argument("grid values must be strictly increasing");
}

namespace {

// In-sample C-statistic of one selected model, memoized across grid points
// (the same few models win at many values of b).
class SelectedModelCstat {
public:
    SelectedModelCstat(const DesignData& data) : data_(data) {}

    double operator()(const ModelIndicator& gamma) {
        const auto it = cache_.find(gamma.id());
        if (it != cache_.end()) return it->second;
        const double cstat = in_sample_c_statistic(data_, gamma);
        cache_.emplace(gamma.id(), cstat);
        return cstat;
    }

private:
    const DesignData& data_;
    std::map<std::uint32_t, double> cache_;
};

}  // namespace

PathResult compute_path(const DesignData& data, const CostSchedule& costs,
                        CostRatioKind g_kind, const BGrid& grid, double threshold,
                        int threads) {
    grid.validate();
    const MarginalTable marginals = enumerate_marginals(data, threads);

    PathResult result;
    result.p = marginals.p;
    result.g_kind = g_kind;
    result.threshold = threshold;
    SelectedModelCstat cstat_of(data);

    for (const double b : grid.values) {
        try {
            PriorSpec spec{PriorFamily::FndFamily, g_kind, b};
            const PosteriorTable table = posterior_from_marginals(marginals, costs, spec);
            PathRecord record;
            record.b = b;
            record.pips = posterior_inclusion_probabilities(table);
            record.map_model = map_model(table);
            record.median_model = median_probability_model(record.pips, threshold);
            record.map_cost = model_cost(record.map_model, costs).per_observation;
            record.median_cost = model_cost(record.median_model, costs).per_observation;
            record.map_cstat = cstat_of(record.map_model);
            record.median_cstat = cstat_of(record.median_model);
            result.records.push_back(std::move(record));
        } catch (const std::exception& e) {
            throw std::runtime_error("inclusion path failed at b=" + format_g17(b) + ": " +
                                     e.what());
        }
    }
    return result;
}

void write_pips_csv(const std::string& path, const PathResult& result,
                    const std::vector<std::string>& predictor_names) {
    if (static_cast<int>(predictor_names.size()) != result.p)
        throw std::invalid_argument("predictor name count must match p");
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out << "b,predictor,pip\n";
    for (const auto& record : result.records)
        for (int j = 0; j < result.p; ++j)
            out << format_g17(record.b) << ',' << predictor_names[static_cast<std::size_t>(j)]
                << ',' << format_g17(record.pips[static_cast<std::size_t>(j)]) << '\n';
}

void write_path_summary_csv(const std::string& path, const PathResult& result) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out << "b,map_bits,map_cost,map_cstat,median_bits,median_cost,median_cstat\n";
    for (const auto& record : result.records)
        out << format_g17(record.b) << ',' << record.map_model.bits_string() << ','
            << format_g17(record.map_cost) << ',' << format_g17(record.map_cstat) << ','
            << record.median_model.bits_string() << ',' << format_g17(record.median_cost)
            << ',' << format_g17(record.median_cstat) << '\n';
}

std::vector<PipsRow> read_pips_csv(const std::string& path) {
    const auto rows = read_csv(path);
    if (rows.empty() || rows.front() != std::vector<std::string>{"b", "predictor", "pip"})
        throw std::runtime_error(path + ": not a pips table");
    std::vector<PipsRow> out;
    for (std::size_t r = 1; r < rows.size(); ++r) {
        if (rows[r].size() != 3)
            throw std::runtime_error(path + ": line " + std::to_string(r + 1) + " malformed");
        out.push_back({parse_double(rows[r][0], "b"), rows[r][1],
                       parse_double(rows[r][2], "pip")});
    }
    return out;
}

std::vector<PathSummaryRow> read_path_summary_csv(const std::string& path) {
    const auto rows = read_csv(path);
    const std::vector<std::string> header{"b",           "map_bits",    "map_cost",
                                          "map_cstat",   "median_bits", "median_cost",
                                          "median_cstat"};
    if (rows.empty() || rows.front() != header)
        throw std::runtime_error(path + ": not a path summary table");
    std::vector<PathSummaryRow> out;
    for (std::size_t r = 1; r < rows.size(); ++r) {
        if (rows[r].size() != 7)
            throw std::runtime_error(path + ": line " + std::to_string(r + 1) + " malformed");
        out.push_back({parse_double(rows[r][0], "b"), rows[r][1],
                       parse_double(rows[r][2], "map_cost"),
                       parse_double(rows[r][3], "map_cstat"), rows[r][4],
                       parse_double(rows[r][5], "median_cost"),
                       parse_double(rows[r][6], "median_cstat")});
    }
    return out;
}

}  // namespace costpath
