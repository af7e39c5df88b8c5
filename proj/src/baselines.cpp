#include "vecuq/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "vecuq/error.hpp"

namespace vecuq {

void validate_probabilities(std::span<const double> probs) {
    require(!probs.empty(), "probability vector is empty");
    double sum = 0.0;
    for (double p : probs) {
        if (!std::isfinite(p) || p < 0.0) fail(ErrorKind::InvalidInput, "probabilities must be finite and >= 0");
        sum += p;
    }
    if (std::fabs(sum - 1.0) > 1e-9) fail(ErrorKind::InvalidInput, "probabilities do not sum to 1");
}

double predictive_entropy(std::span<const double> probs) {
    validate_probabilities(probs);
    double h = 0.0;
    for (double p : probs)
        if (p > 0.0) h -= p * std::log(p);
    return std::max(h, 0.0);
}

double one_minus_msp(std::span<const double> probs) {
    validate_probabilities(probs);
    return std::max(0.0, 1.0 - *std::max_element(probs.begin(), probs.end()));
}

GaussianClassStats fit_gaussian_stats(const Matrix& embeddings, std::span<const int> class_ids) {
    const auto n = embeddings.rows();
    const auto d = embeddings.cols();
    require(n >= 1 && d >= 1, "embeddings are empty");
    require(static_cast<std::size_t>(n) == class_ids.size(), "embeddings and class ids differ in length");
    if (!embeddings.allFinite()) fail(ErrorKind::InvalidInput, "embeddings contain non-finite values");
    for (int c : class_ids) require(c >= 0, "class ids must be >= 0");
    const int classes = *std::max_element(class_ids.begin(), class_ids.end()) + 1;

    GaussianClassStats stats;
    stats.means = Matrix::Zero(classes, d);
    std::vector<double> counts(static_cast<std::size_t>(classes), 0.0);
    for (Eigen::Index i = 0; i < n; ++i) {
        stats.means.row(class_ids[i]) += embeddings.row(i);
        counts[static_cast<std::size_t>(class_ids[i])] += 1.0;
    }
    for (int c = 0; c < classes; ++c) {
        if (counts[static_cast<std::size_t>(c)] == 0.0)
            fail(ErrorKind::InvalidInput, "class " + std::to_string(c) + " has no samples");
        stats.means.row(c) /= counts[static_cast<std::size_t>(c)];
    }

    Matrix cov = Matrix::Zero(d, d);
    for (Eigen::Index i = 0; i < n; ++i) {
        const Eigen::RowVectorXd dev = embeddings.row(i) - stats.means.row(class_ids[i]);
        cov.noalias() += dev.transpose() * dev;
    }
    cov /= static_cast<double>(n);
    cov = 0.5 * (cov + cov.transpose());

    const double scale = cov.trace() / static_cast<double>(d);
    Eigen::SelfAdjointEigenSolver<Matrix> eig(cov, Eigen::EigenvaluesOnly);
    const double smallest = eig.eigenvalues().minCoeff();
    if (smallest < 1e-10 * scale || scale <= 0.0) {
        stats.ridge = scale > 0.0 ? 1e-6 * scale : 1e-6;
        stats.ridge_applied = true;
        cov.diagonal().array() += stats.ridge;
    }
    stats.pooled_cov = cov;

    Eigen::LLT<Matrix> llt(cov);
    if (llt.info() != Eigen::Success) fail(ErrorKind::Numerical, "pooled covariance is not positive definite");
    stats.precision = llt.solve(Matrix::Identity(d, d));
    stats.precision = 0.5 * (stats.precision + stats.precision.transpose());
    return stats;
}

double mahalanobis_score(const GaussianClassStats& stats, std::span<const double> embedding) {
    const auto d = static_cast<Eigen::Index>(stats.dimension());
    if (static_cast<Eigen::Index>(embedding.size()) != d)
        fail(ErrorKind::InvalidInput, "embedding has dimension " + std::to_string(embedding.size()) +
                                          ", stats expect " + std::to_string(d));
    const Eigen::Map<const Eigen::RowVectorXd> x(embedding.data(), d);
    double best = std::numeric_limits<double>::infinity();
    for (Eigen::Index c = 0; c < stats.means.rows(); ++c) {
        const Eigen::RowVectorXd dev = x - stats.means.row(c);
        const double q = dev * stats.precision * dev.transpose();
        best = std::min(best, q);
    }
    return std::max(best, 0.0);
}

Vector mahalanobis_scores(const GaussianClassStats& stats, const Matrix& embeddings) {
    Vector out(embeddings.rows());
    for (Eigen::Index i = 0; i < embeddings.rows(); ++i)
        out[i] = mahalanobis_score(stats, std::span<const double>(embeddings.row(i).data(),
                                                                  static_cast<std::size_t>(embeddings.cols())));
    return out;
}

}  // namespace vecuq
