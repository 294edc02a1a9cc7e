#include <cmath>
#include <filesystem>
#include <fstream>
#include <vector>

#include "costpath/cost_schedule.hpp"
#include "costpath/model_indicator.hpp"
#include "costpath/model_prior.hpp"
#include "costpath/rng.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace costpath;

namespace {

const std::vector<double> kSimCosts{1, 3, 9, 1, 3, 9, 1, 3, 9};
const std::vector<double> kHeartCosts{1,    1,    1,     1,    7.27,  5.20, 15.50,
                                      102.90, 87.30, 87.30, 87.30, 100.90, 102.90};

ModelIndicator model_of(std::initializer_list<int> included, int p) {
    std::vector<int> gamma(static_cast<std::size_t>(p), 0);
    for (const int j : included) gamma[static_cast<std::size_t>(j)] = 1;
    return ModelIndicator::from_gamma(gamma);
}

}  // namespace

TEST_CASE("cost ratio function") {
    CHECK(cost_ratio_g(9, 0, CostRatioKind::Ecp) == 1.0);
    CHECK(cost_ratio_g(9, 1, CostRatioKind::Ecp) == 9.0);
    CHECK(cost_ratio_g(1, 7.3, CostRatioKind::Ecp) == 1.0);
    CHECK(cost_ratio_g(1, 7.3, CostRatioKind::Lcp) == 1.0);
    CHECK(cost_ratio_g(3, 0.5, CostRatioKind::Lcp) == 2.0);

    CHECK_THROWS_AS(cost_ratio_g(0.9, 1, CostRatioKind::Ecp), std::domain_error);
    CHECK_THROWS_AS(cost_ratio_g(3, -0.1, CostRatioKind::Lcp), std::domain_error);

    // g >= 1 across the family
    SubstreamRng rng(11);
    for (int t = 0; t < 100; ++t) {
        const double ratio = 1.0 + 30.0 * rng.uniform();
        const double b = 3.0 * rng.uniform();
        CHECK(cost_ratio_g(ratio, b, CostRatioKind::Ecp) >= 1.0);
        CHECK(cost_ratio_g(ratio, b, CostRatioKind::Lcp) >= 1.0);
    }
}

TEST_CASE("log model prior reproduces the published values") {
    const CostSchedule sim(kSimCosts);
    const CostSchedule heart(kHeartCosts);

    // uniform prior over 2^9 and 2^13 models
    const ModelIndicator any9 = model_of({0, 4}, 9);
    CHECK(log_model_prior(any9, sim, 150, PriorSpec::uniform()) ==
          doctest::Approx(std::log(1.0 / 512.0)).epsilon(1e-14));
    const ModelIndicator any13 = model_of({2}, 13);
    CHECK(log_model_prior(any13, heart, 297, PriorSpec::uniform()) ==
          doctest::Approx(std::log(1.0 / 8192.0)).epsilon(1e-14));

    // {X7, X8} at n=150, b=1; value frozen from an independent transcription
    const double p78 =
        std::exp(log_model_prior(model_of({6, 7}, 9), sim, 150, PriorSpec::fnd()));
    CHECK(p78 == doctest::Approx(8.168864393752141e-4).epsilon(1e-12));

    // {X4..X9} at n=600, b=1 sits far below double underflow if computed naively
    const double p_six =
        std::exp(log_model_prior(model_of({3, 4, 5, 6, 7, 8}, 9), sim, 600, PriorSpec::fnd()));
    CHECK(p_six == doctest::Approx(2.0569694626934914e-29).epsilon(1e-12));

    // the four baseline-cost predictors of the heart schedule at n=297, b=1
    const double p_base =
        std::exp(log_model_prior(model_of({0, 1, 2, 3}, 13), heart, 297, PriorSpec::fnd()));
    CHECK(p_base == doctest::Approx(0.06249959794533464).epsilon(1e-12));
    CHECK(p_base == doctest::Approx(0.0625).epsilon(2e-5));
}

TEST_CASE("prior inclusion probability") {
    const CostSchedule sim(kSimCosts);

    SUBCASE("baseline predictors and the uniform family sit at one half") {
        for (const double b : {0.0, 0.5, 1.0, 7.0}) {
            CHECK(prior_inclusion_probability(0, sim, 150, PriorSpec::ecp(b)) == 0.5);
            CHECK(prior_inclusion_probability(6, sim, 150, PriorSpec::lcp(b)) == 0.5);
        }
        CHECK(prior_inclusion_probability(2, sim, 150, PriorSpec::uniform()) == 0.5);
    }

    SUBCASE("closed form matches brute-force summation over the model space") {
        // cost ratio 3 at n=150, b=1: 1/151
        const double q = prior_inclusion_probability(1, sim, 150, PriorSpec::fnd());
        CHECK(q == doctest::Approx(1.0 / 151.0).epsilon(1e-14));
        const double brute = oracles::brute_force_prior_inclusion(1, sim, 150, 1.0, true);
        CHECK(q == doctest::Approx(brute).epsilon(1e-12));

        const double q9 = prior_inclusion_probability(2, sim, 150, PriorSpec::fnd());
        const double brute9 = oracles::brute_force_prior_inclusion(2, sim, 150, 1.0, true);
        CHECK(q9 == doctest::Approx(brute9).epsilon(1e-12));
    }

    SUBCASE("strictly decreasing in b for above-baseline costs") {
        double prev = 1.0;
        for (const double b : {0.0, 0.25, 0.5, 1.0, 2.0}) {
            const double q = prior_inclusion_probability(2, sim, 150, PriorSpec::ecp(b));
            CHECK(q < prev);
            prev = q;
        }
    }
}

TEST_CASE("prior normalization over the whole model space") {
    SubstreamRng rng(202);
    for (const int p : {1, 3, 9, 13}) {
        std::vector<double> costs(static_cast<std::size_t>(p));
        for (auto& c : costs) c = 0.5 + 10.0 * rng.uniform();
        const CostSchedule schedule(costs);
        for (const std::int64_t n : {std::int64_t{1}, std::int64_t{150}, std::int64_t{1000000}}) {
            for (const double b : {0.0, 0.15, 0.5, 1.0, 2.0}) {
                for (const auto spec : {PriorSpec::ecp(b), PriorSpec::lcp(b)}) {
                    double total = 0.0;
                    for (std::uint32_t id = 0; id < (1u << p); ++id)
                        total += std::exp(
                            log_model_prior(ModelIndicator(id, p), schedule, n, spec));
                    CHECK(total == doctest::Approx(1.0).epsilon(1e-10));
                }
            }
        }
    }
}

TEST_CASE("prior factorizes into independent Bernoulli inclusions") {
    SubstreamRng rng(303);
    for (int draw = 0; draw < 200; ++draw) {
        const int p = 1 + static_cast<int>(rng.bounded(12));
        std::vector<double> costs(static_cast<std::size_t>(p));
        for (auto& c : costs) c = 1.0 + 7.0 * rng.uniform();
        const CostSchedule schedule(costs);
        const std::int64_t n = 10 + static_cast<std::int64_t>(rng.bounded(999990));
        const double b = 2.0 * rng.uniform();
        const auto spec = (draw % 2 == 0) ? PriorSpec::ecp(b) : PriorSpec::lcp(b);
        const ModelIndicator gamma(static_cast<std::uint32_t>(rng.bounded(1u << p)), p);

        double factored = 0.0;
        for (int j = 0; j < p; ++j) {
            const double q =
                prior_inclusion_probability(static_cast<std::size_t>(j), schedule, n, spec);
            factored += gamma.includes(j) ? std::log(q) : std::log1p(-q);
        }
        const double direct = log_model_prior(gamma, schedule, n, spec);
        CHECK(std::abs(direct - factored) <= 1e-12 * std::max(1.0, std::abs(direct)));
    }
}

TEST_CASE("family properties") {
    const CostSchedule sim(kSimCosts);
    const ModelIndicator gamma = model_of({1, 2, 5}, 9);

    SUBCASE("(a) b = 0 collapses to the uniform prior") {
        const double uniform = log_model_prior(gamma, sim, 450, PriorSpec::uniform());
        CHECK(std::abs(log_model_prior(gamma, sim, 450, PriorSpec::ecp(0.0)) - uniform) <=
              1e-14);
        CHECK(std::abs(log_model_prior(gamma, sim, 450, PriorSpec::lcp(0.0)) - uniform) <=
              1e-14);
    }

    SUBCASE("(b) b = 1 reproduces the unadjusted cost-penalized prior") {
        SubstreamRng rng(404);
        for (int t = 0; t < 50; ++t) {
            const ModelIndicator g(static_cast<std::uint32_t>(rng.bounded(512)), 9);
            const std::int64_t n = 20 + static_cast<std::int64_t>(rng.bounded(5000));
            const double direct = oracles::fnd_log_prior_direct(g, sim, n);
            CHECK(log_model_prior(g, sim, n, PriorSpec::fnd()) ==
                  doctest::Approx(direct).epsilon(1e-12));
            CHECK(log_model_prior(g, sim, n, PriorSpec::lcp(1.0)) ==
                  doctest::Approx(direct).epsilon(1e-12));
        }
    }

    SUBCASE("(c) strictly decreasing in b when an above-baseline predictor is included") {
        for (const auto kind : {CostRatioKind::Ecp, CostRatioKind::Lcp}) {
            double prev = std::numeric_limits<double>::infinity();
            for (const double b : {0.0, 0.15, 0.5, 1.0, 2.0, 4.0}) {
                const double lp =
                    log_model_prior(gamma, sim, 450, {PriorFamily::FndFamily, kind, b});
                CHECK(lp < prev);
                prev = lp;
            }
        }
    }

    SUBCASE("cost-unit invariance") {
        for (const double scale : {0.01, 100.0}) {
            std::vector<double> scaled = kSimCosts;
            for (auto& c : scaled) c *= scale;
            const CostSchedule rescaled(scaled);
            for (const double b : {0.3, 1.0, 2.0}) {
                const double lhs = log_model_prior(gamma, sim, 450, PriorSpec::ecp(b));
                const double rhs = log_model_prior(gamma, rescaled, 450, PriorSpec::ecp(b));
                CHECK(std::abs(lhs - rhs) <= 1e-12 * std::max(1.0, std::abs(lhs)));
            }
        }
    }

    SUBCASE("larger cost ratio means smaller single-predictor prior") {
        const double cheap =
            log_model_prior(model_of({1}, 9), sim, 450, PriorSpec::ecp(0.8));
        const double expensive =
            log_model_prior(model_of({2}, 9), sim, 450, PriorSpec::ecp(0.8));
        CHECK(expensive < cheap);
    }
}

TEST_CASE("cost schedule construction and loading") {
    CHECK_THROWS_AS(CostSchedule({}), std::invalid_argument);
    CHECK_THROWS_AS(CostSchedule({1.0, 0.0}), std::invalid_argument);
    CHECK_THROWS_AS(CostSchedule({1.0, -2.0}), std::invalid_argument);

    const CostSchedule tied({2.0, 5.0, 2.0});
    CHECK(tied.baseline() == 2.0);
    CHECK(tied.ratio(0) == 1.0);
    CHECK(tied.ratio(2) == 1.0);

    const auto dir = std::filesystem::temp_directory_path() / "costpath_prior_test";
    std::filesystem::create_directories(dir);

    {
        std::ofstream out(dir / "costs.csv");
        out << "predictor,cost\nage,1\nheart rate,102.90\n";
    }
    const auto loaded = load_cost_schedule_csv((dir / "costs.csv").string());
    CHECK(loaded.names == std::vector<std::string>{"age", "heart rate"});
    CHECK(loaded.schedule.cost(1) == doctest::Approx(102.90));

    {
        std::ofstream out(dir / "noheader.csv");
        out << "age,1\nsex,2\n";
    }
    CHECK_THROWS(load_cost_schedule_csv((dir / "noheader.csv").string()));

    {
        std::ofstream out(dir / "bad.csv");
        out << "predictor,cost\nage,notanumber\n";
    }
    CHECK_THROWS(load_cost_schedule_csv((dir / "bad.csv").string()));
}

TEST_CASE("model indicator round trips") {
    const std::vector<int> gamma{1, 0, 0, 1, 0, 1};
    const ModelIndicator m = ModelIndicator::from_gamma(gamma);
    CHECK(m.id() == 0b101001u);
    CHECK(m.gamma() == gamma);
    CHECK(m.count() == 3);
    CHECK(m.bits_string() == "100101");
    CHECK(ModelIndicator::from_bits_string("100101") == m);
    CHECK(m.included_indices() == std::vector<int>{0, 3, 5});

    for (std::uint32_t id = 0; id < 64; ++id)
        CHECK(ModelIndicator::from_gamma(ModelIndicator(id, 6).gamma()).id() == id);

    CHECK_THROWS_AS(ModelIndicator(8, 3), std::invalid_argument);
    CHECK_THROWS_AS(ModelIndicator::from_bits_string("10x"), std::invalid_argument);
    CHECK_THROWS_AS(ModelIndicator(0, 32), std::invalid_argument);
}
