#pragma once

#include <stdexcept>
#include <string>

namespace costpath {

// Thrown when a model's design is rank deficient: the Gaussian coefficient
// prior does not exist, so the model cannot enter the posterior table.
class SingularModelError : public std::runtime_error {
public:
    explicit SingularModelError(const std::string& what) : std::runtime_error(what) {}
};

// Thrown when the posterior-mode search exhausts its iteration budget.
class NonConvergenceError : public std::runtime_error {
public:
    explicit NonConvergenceError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace costpath
