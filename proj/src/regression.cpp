#include "sie/regression.hpp"

#include "sie/errors.hpp"

#include <cmath>
#include <string>

namespace sie {

RegressionFit ols_fit(const DesignMatrix& design, const Eigen::VectorXd& y) {
    const Eigen::Index n = design.n();
    const Eigen::Index k = design.k();
    if (y.size() != n) {
        throw ArgumentError("target length " + std::to_string(y.size()) +
                            " does not match design rows " + std::to_string(n));
    }
    if (k == 0) {
        throw ArgumentError("design matrix has no columns");
    }
    if (n < k) {
        throw InsufficientDataError("need at least " + std::to_string(k) + " observations for " +
                                    std::to_string(k) + " regressors, got " + std::to_string(n));
    }

    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(design.X);
    qr.setThreshold(1e-10);
    if (qr.rank() < k) {
        // Columns permuted beyond the numerical rank are the ones that add
        // no independent variation.
        std::string names;
        const auto& perm = qr.colsPermutation().indices();
        for (Eigen::Index j = qr.rank(); j < k; ++j) {
            const auto col = static_cast<std::size_t>(perm[j]);
            if (!names.empty()) names += ", ";
            names += col < design.col_names.size() ? design.col_names[col]
                                                   : "column " + std::to_string(col);
        }
        throw CollinearityError("design matrix is rank " + std::to_string(qr.rank()) + " < " +
                                std::to_string(k) + "; dependent: " + names);
    }

    RegressionFit fit;
    fit.n = n;
    fit.k = k;
    fit.beta = qr.solve(y);
    fit.residuals = y - design.X * fit.beta;

    const double rss = fit.residuals.squaredNorm();
    fit.sigma_hat = n > k ? std::sqrt(rss / static_cast<double>(n - k)) : 0.0;

    const double mean = y.mean();
    const double tss = (y.array() - mean).matrix().squaredNorm();
    if (n > k && tss > 0.0) {
        fit.r2_adj = 1.0 - (rss / static_cast<double>(n - k)) / (tss / static_cast<double>(n - 1));
    } else {
        // Saturated fit or constant target: the ratio is undefined; report
        // a perfect score for an exact fit and 0 otherwise.
        fit.r2_adj = rss <= 1e-24 ? 1.0 : 0.0;
    }
    return fit;
}

double predict(const RegressionFit& fit, const Eigen::VectorXd& x) {
    if (x.size() != fit.beta.size()) {
        throw ArgumentError("regressor vector length " + std::to_string(x.size()) +
                            " does not match " + std::to_string(fit.beta.size()) +
                            " coefficients");
    }
    return fit.beta.dot(x);
}

}  // namespace sie
