#pragma once

#include <span>

#include "vecuq/types.hpp"

namespace vecuq {

// Entries >= 0 summing to 1 within 1e-9; throws InvalidInput otherwise.
void validate_probabilities(std::span<const double> probs);

// -sum p log p in nats, with 0 log 0 = 0.
double predictive_entropy(std::span<const double> probs);

// 1 - max_c p_c.
double one_minus_msp(std::span<const double> probs);

// Per-class means and pooled within-class covariance (1/N normalisation).
struct GaussianClassStats {
    Matrix means;       // C x d
    Matrix pooled_cov;  // d x d, includes the ridge when one was needed
    Matrix precision;   // inverse of pooled_cov
    double ridge = 0.0;
    bool ridge_applied = false;

    std::size_t classes() const noexcept { return static_cast<std::size_t>(means.rows()); }
    std::size_t dimension() const noexcept { return static_cast<std::size_t>(means.cols()); }
};

// class_ids must cover 0 .. C-1 with at least one sample each.
//
// When the smallest eigenvalue of the pooled covariance falls below
// 1e-10 * trace / d a ridge of 1e-6 * trace / d (or 1e-6 when the trace is
// zero) is added to the diagonal and flagged in the result.
GaussianClassStats fit_gaussian_stats(const Matrix& embeddings, std::span<const int> class_ids);

// min_c (x - mu_c)^T Sigma^-1 (x - mu_c), squared, no root.
double mahalanobis_score(const GaussianClassStats& stats, std::span<const double> embedding);

Vector mahalanobis_scores(const GaussianClassStats& stats, const Matrix& embeddings);

}  // namespace vecuq
