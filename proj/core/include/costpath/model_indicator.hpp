#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace costpath {

// Inclusion vector over the p candidate predictors. Bit j of `id` is the
// indicator for predictor j (zero based); the intercept is implicit and
// belongs to every model, so the empty indicator is the intercept-only
// model. p is capped at 31 so ids fit a uint32 with room to spare.
class ModelIndicator {
public:
    ModelIndicator(std::uint32_t id, int p);

    static ModelIndicator from_gamma(const std::vector<int>& gamma);
    // Parses the p-character 0/1 string with predictor 1 leftmost.
    static ModelIndicator from_bits_string(const std::string& bits);

    std::uint32_t id() const { return id_; }
    int num_predictors() const { return p_; }
    bool includes(int j) const;
    int count() const;  // number of included predictors

    std::vector<int> gamma() const;
    std::vector<int> included_indices() const;
    std::string bits_string() const;  // predictor 1 leftmost

    bool operator==(const ModelIndicator& other) const = default;

private:
    std::uint32_t id_;
    int p_;
};

}  // namespace costpath
