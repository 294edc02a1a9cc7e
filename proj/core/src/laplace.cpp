#include "costpath/laplace.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "costpath/errors.hpp"

namespace costpath {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

// Cholesky log-determinant with a relative pivot floor. Eigen's LLT only
// rejects non-positive pivots; an exactly duplicated column can slip through
// with a pivot of rounding size, so anything below max_diag * 1e-10 is
// treated as rank deficient.
double spd_log_det(const Eigen::MatrixXd& A, const char* what) {
    Eigen::LLT<Eigen::MatrixXd> llt(A);
    if (llt.info() != Eigen::Success) throw SingularModelError(what);
    const auto L = llt.matrixLLT();
    const double floor = A.diagonal().maxCoeff() * 1e-10;
    double log_det = 0.0;
    for (Eigen::Index i = 0; i < A.rows(); ++i) {
        const double pivot = L(i, i);
        if (!(pivot * pivot > floor)) throw SingularModelError(what);
        log_det += std::log(pivot);
    }
    return 2.0 * log_det;
}

}  // namespace

double softplus(double x) {
    return x > 0.0 ? x + std::log1p(std::exp(-x)) : std::log1p(std::exp(x));
}

double logistic(double x) {
    if (x >= 0.0) return 1.0 / (1.0 + std::exp(-x));
    const double e = std::exp(x);
    return e / (1.0 + e);
}

CoefficientPrior CoefficientPrior::from_design(const Eigen::MatrixXd& X, std::int64_t n) {
    if (n < 1) throw std::invalid_argument("sample size must be >= 1");
    const Eigen::MatrixXd gram = X.transpose() * X;
    const double log_det_gram = spd_log_det(gram, "rank-deficient design: X'X is singular");
    CoefficientPrior prior;
    prior.dim = static_cast<int>(X.cols());
    prior.precision = gram / (4.0 * static_cast<double>(n));
    prior.log_det_covariance =
        prior.dim * std::log(4.0 * static_cast<double>(n)) - log_det_gram;
    return prior;
}

double log_joint(const Eigen::VectorXd& beta, const Eigen::MatrixXd& X,
                 const Eigen::VectorXd& y, const CoefficientPrior& prior) {
    const Eigen::VectorXd eta = X * beta;
    double log_lik = 0.0;
    for (Eigen::Index i = 0; i < eta.size(); ++i)
        log_lik += y(i) * eta(i) - softplus(eta(i));
    const double quad = beta.dot(prior.precision * beta);
    const double log_prior = -0.5 * prior.dim * std::log(kTwoPi) -
                             0.5 * prior.log_det_covariance - 0.5 * quad;
    return log_lik + log_prior;
}

NewtonResult newton_mode(const Eigen::MatrixXd& X, const Eigen::VectorXd& y,
                         const CoefficientPrior& prior, const NewtonOptions& opts) {
    const Eigen::Index d = X.cols();
    NewtonResult result;
    result.beta_hat = Eigen::VectorXd::Zero(d);

    Eigen::VectorXd eta = Eigen::VectorXd::Zero(X.rows());
    Eigen::VectorXd prob(X.rows());
    if (opts.record_trace)
        result.log_joint_trace.push_back(log_joint(result.beta_hat, X, y, prior));

    for (int iter = 0; iter <= opts.max_iterations; ++iter) {
        for (Eigen::Index i = 0; i < eta.size(); ++i) prob(i) = logistic(eta(i));
        const Eigen::VectorXd grad =
            X.transpose() * (y - prob) - prior.precision * result.beta_hat;
        const Eigen::VectorXd weights = prob.array() * (1.0 - prob.array());
        result.neg_hessian = X.transpose() * weights.asDiagonal() * X + prior.precision;
        result.iterations = iter;

        if (grad.lpNorm<Eigen::Infinity>() <= opts.gradient_tol) {
            result.converged = true;
            return result;
        }
        if (iter == opts.max_iterations) break;

        const Eigen::VectorXd delta = result.neg_hessian.llt().solve(grad);
        const double f0 = log_joint(result.beta_hat, X, y, prior);
        const double predicted = grad.dot(delta);
        const double noise =
            4.0 * std::numeric_limits<double>::epsilon() * (1.0 + std::abs(f0));

        double step = 1.0;
        if (predicted > noise) {
            for (int h = 0; h < opts.max_halvings; ++h) {
                if (log_joint(result.beta_hat + step * delta, X, y, prior) >= f0) break;
                step *= 0.5;
            }
        }
        result.beta_hat += step * delta;
        eta.noalias() = X * result.beta_hat;
        if (opts.record_trace)
            result.log_joint_trace.push_back(log_joint(result.beta_hat, X, y, prior));
    }
    result.converged = false;
    return result;
}

ModelFit log_marginal_laplace(const Eigen::MatrixXd& X, const Eigen::VectorXd& y,
                              const CoefficientPrior& prior, const NewtonOptions& opts) {
    const NewtonResult mode = newton_mode(X, y, prior, opts);
    if (!mode.converged)
        throw NonConvergenceError("posterior mode search did not converge in " +
                                  std::to_string(opts.max_iterations) + " iterations");
    const double log_det =
        spd_log_det(mode.neg_hessian, "negative Hessian is not positive definite");
    ModelFit fit;
    fit.beta_hat = mode.beta_hat;
    fit.neg_hessian_logdet = log_det;
    fit.newton_iters = mode.iterations;
    fit.converged = true;
    fit.log_marginal = log_joint(mode.beta_hat, X, y, prior) +
                       0.5 * X.cols() * std::log(kTwoPi) - 0.5 * log_det;
    return fit;
}

}  // namespace costpath
