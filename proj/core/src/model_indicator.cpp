#include "costpath/model_indicator.hpp"

#include <bit>
#include <stdexcept>

namespace costpath {

ModelIndicator::ModelIndicator(std::uint32_t id, int p) : id_(id), p_(p) {
    if (p < 1 || p > 31)
        throw std::invalid_argument("number of predictors must be in [1, 31]");
    if (p < 32 && (id >> p) != 0)
        throw std::invalid_argument("model id has bits beyond predictor " + std::to_string(p));
}

ModelIndicator ModelIndicator::from_gamma(const std::vector<int>& gamma) {
    std::uint32_t id = 0;
    for (std::size_t j = 0; j < gamma.size(); ++j) {
        if (gamma[j] != 0 && gamma[j] != 1)
            throw std::invalid_argument("gamma entries must be 0 or 1");
        if (gamma[j]) id |= (1u << j);
    }
    return {id, static_cast<int>(gamma.size())};
}

ModelIndicator ModelIndicator::from_bits_string(const std::string& bits) {
    std::vector<int> gamma;
    gamma.reserve(bits.size());
    for (char c : bits) {
        if (c != '0' && c != '1')
            throw std::invalid_argument("bits string must contain only 0 and 1");
        gamma.push_back(c == '1' ? 1 : 0);
    }
    return from_gamma(gamma);
}

bool ModelIndicator::includes(int j) const {
    if (j < 0 || j >= p_) throw std::out_of_range("predictor index out of range");
    return (id_ >> j) & 1u;
}

int ModelIndicator::count() const { return std::popcount(id_); }

std::vector<int> ModelIndicator::gamma() const {
    std::vector<int> g(static_cast<std::size_t>(p_));
    for (int j = 0; j < p_; ++j) g[static_cast<std::size_t>(j)] = includes(j) ? 1 : 0;
    return g;
}

std::vector<int> ModelIndicator::included_indices() const {
    std::vector<int> idx;
    for (int j = 0; j < p_; ++j)
        if (includes(j)) idx.push_back(j);
    return idx;
}

std::string ModelIndicator::bits_string() const {
    std::string s(static_cast<std::size_t>(p_), '0');
    for (int j = 0; j < p_; ++j)
        if (includes(j)) s[static_cast<std::size_t>(j)] = '1';
    return s;
}

}  // namespace costpath
