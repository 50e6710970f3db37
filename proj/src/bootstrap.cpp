#include "sie/bootstrap.hpp"

#include "sie/errors.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>
#include <random>

namespace sie {

namespace {

/// Uniform index in [0, n) by rejection, so the mapping from the
/// generator's standardized output stream to indices has no
/// platform-dependent step.
std::size_t bounded_index(std::mt19937_64& rng, std::size_t n) {
    const std::uint64_t span = std::numeric_limits<std::uint64_t>::max() / n;
    const std::uint64_t limit = span * n;
    std::uint64_t r = rng();
    while (r >= limit) r = rng();
    return static_cast<std::size_t>(r / span);
}

}  // namespace

BootstrapDistribution residual_bootstrap(const DailySeries& series, const ForecastSpec& spec,
                                         const BootstrapConfig& config) {
    if (config.draws == 0) {
        throw ArgumentError("bootstrap draw count must be >= 1");
    }

    const ForecastDistribution base = forecast(series, spec);
    const auto n = static_cast<std::size_t>(base.fit.residuals.size());

    BootstrapDistribution dist;
    dist.spec = spec;
    dist.config = config;
    dist.draws.reserve(config.draws);

    std::mt19937_64 rng(config.seed);

    if (config.mode == BootstrapMode::ShiftOnly) {
        for (std::size_t b = 0; b < config.draws; ++b) {
            dist.draws.push_back(base.mu + base.fit.residuals[
                static_cast<Eigen::Index>(bounded_index(rng, n))]);
        }
        return dist;
    }

    // Refit mode: rebuild targets from resampled residuals, re-estimate,
    // predict, and add one further residual. One factorization of the
    // fixed design serves every replication.
    const FeatureSet features = build_feature_rows(series, spec);
    const AssembledDesign ad = assemble_design(features);
    const Eigen::VectorXd fitted = ad.y - base.fit.residuals;

    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(ad.design.X);
    qr.setThreshold(1e-10);

    Eigen::VectorXd y_star(static_cast<Eigen::Index>(n));
    for (std::size_t b = 0; b < config.draws; ++b) {
        for (std::size_t i = 0; i < n; ++i) {
            y_star[static_cast<Eigen::Index>(i)] =
                fitted[static_cast<Eigen::Index>(i)] +
                base.fit.residuals[static_cast<Eigen::Index>(bounded_index(rng, n))];
        }
        const Eigen::VectorXd beta_star = qr.solve(y_star);
        const double mu_star = ad.x_forecast.dot(beta_star);
        dist.draws.push_back(mu_star + base.fit.residuals[
            static_cast<Eigen::Index>(bounded_index(rng, n))]);
    }
    return dist;
}

double BootstrapDistribution::quantile(double p) const {
    if (draws.empty()) {
        throw ArgumentError("no draws to take a quantile of");
    }
    if (!(p >= 0.0 && p <= 1.0)) {
        throw ArgumentError("quantile probability must lie in [0, 1]");
    }
    std::vector<double> sorted = draws;
    std::sort(sorted.begin(), sorted.end());
    const double h = (static_cast<double>(sorted.size()) - 1.0) * p;
    const auto i = static_cast<std::size_t>(std::floor(h));
    if (i + 1 >= sorted.size()) return sorted.back();
    return sorted[i] + (h - std::floor(h)) * (sorted[i + 1] - sorted[i]);
}

std::pair<double, double> quantile_interval(const BootstrapDistribution& dist, double coverage) {
    if (!(coverage > 0.0 && coverage < 1.0)) {
        throw ArgumentError("coverage must lie strictly between 0 and 1");
    }
    const double tail = (1.0 - coverage) / 2.0;
    return {dist.quantile(tail), dist.quantile(1.0 - tail)};
}

void write_draws_csv(const BootstrapDistribution& dist, std::ostream& out) {
    char buf[32];
    for (const double d : dist.draws) {
        std::snprintf(buf, sizeof buf, "%.6f", d);
        out << buf << '\n';
    }
}

}  // namespace sie
