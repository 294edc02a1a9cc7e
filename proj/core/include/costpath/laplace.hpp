#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

namespace costpath {

// Gaussian coefficient prior N(0, 4n (X'X)^-1) over a model's coefficients,
// intercept included. Held in precision form: the precision X'X/(4n) is what
// every downstream expression needs, so the covariance is never inverted
// explicitly.
struct CoefficientPrior {
    Eigen::MatrixXd precision;
    double log_det_covariance = 0.0;
    int dim = 0;

    // Throws SingularModelError when X'X is (numerically) rank deficient,
    // in which case the prior does not exist and the model is rejected.
    static CoefficientPrior from_design(const Eigen::MatrixXd& X, std::int64_t n);
};

// Log joint density of data and coefficients: the Bernoulli log likelihood
// with a softplus-stable logistic term plus the Gaussian prior log density.
double log_joint(const Eigen::VectorXd& beta, const Eigen::MatrixXd& X,
                 const Eigen::VectorXd& y, const CoefficientPrior& prior);

struct NewtonOptions {
    double gradient_tol = 1e-8;  // max-norm convergence threshold
    int max_iterations = 100;
    int max_halvings = 60;
    bool record_trace = false;  // collect log_joint at every accepted iterate
};

struct NewtonResult {
    Eigen::VectorXd beta_hat;
    Eigen::MatrixXd neg_hessian;  // X'WX + prior precision at beta_hat
    int iterations = 0;
    bool converged = false;
    std::vector<double> log_joint_trace;  // filled when record_trace is set
};

// Newton-Raphson ascent of the log joint from beta = 0 with step-halving.
// Steps whose predicted improvement is below the floating-point noise floor
// of the objective are taken unguarded: near the mode the objective cannot
// discriminate while the gradient still can, and the unguarded Newton step
// is what polishes the gradient below tolerance.
NewtonResult newton_mode(const Eigen::MatrixXd& X, const Eigen::VectorXd& y,
                         const CoefficientPrior& prior, const NewtonOptions& opts = {});

// One model's fit and Laplace-approximated log marginal likelihood:
//   log p(Y|M) = log_joint(beta_hat) + (d/2) ln 2pi - (1/2) logdet(neg Hessian).
struct ModelFit {
    Eigen::VectorXd beta_hat;
    double log_marginal = 0.0;
    double neg_hessian_logdet = 0.0;
    int newton_iters = 0;
    bool converged = false;
};

// Throws NonConvergenceError if the mode search exhausts its budget and
// SingularModelError if the negative Hessian cannot be factorized.
ModelFit log_marginal_laplace(const Eigen::MatrixXd& X, const Eigen::VectorXd& y,
                              const CoefficientPrior& prior, const NewtonOptions& opts = {});

// Stable log(1 + e^x) and logistic function.
double softplus(double x);
double logistic(double x);

}  // namespace costpath
