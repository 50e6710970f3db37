#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>

namespace sie {

/// Observations-by-regressors matrix. The first column is the intercept
/// (all ones); col_names label the remaining columns for diagnostics.
struct DesignMatrix {
    Eigen::MatrixXd X;
    std::vector<std::string> col_names;

    [[nodiscard]] Eigen::Index n() const noexcept { return X.rows(); }
    [[nodiscard]] Eigen::Index k() const noexcept { return X.cols(); }
};

/// Least-squares fit summary.
///
/// Invariants: sigma_hat >= 0; with an intercept the residuals sum to ~0;
/// sigma_hat^2 * (n - k) equals the residual sum of squares.
struct RegressionFit {
    Eigen::VectorXd beta;
    Eigen::VectorXd residuals;
    double sigma_hat = 0.0;  // sqrt(RSS / (n - k)); 0 when n == k
    double r2_adj = 0.0;     // 1 - (RSS/(n-k)) / (TSS/(n-1))
    Eigen::Index n = 0;
    Eigen::Index k = 0;
};

/// Fit y = X beta + e by least squares via a rank-revealing orthogonal
/// factorization (never the normal equations).
///
/// Throws InsufficientDataError when n < k and CollinearityError naming the
/// dependent column(s) when X is rank deficient at a relative pivot
/// tolerance of 1e-10.
[[nodiscard]] RegressionFit ols_fit(const DesignMatrix& X, const Eigen::VectorXd& y);

/// Fitted value at a single regressor vector (length k).
/// Throws ArgumentError on a length mismatch.
[[nodiscard]] double predict(const RegressionFit& fit, const Eigen::VectorXd& x);

}  // namespace sie
