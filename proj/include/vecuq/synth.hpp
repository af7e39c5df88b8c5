#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "vecuq/types.hpp"

namespace vecuq {

struct GaussianComponent {
    Vector mean;
    Matrix covariance;  // symmetric positive definite
    int label = 0;
    std::size_t count = 1;
};

struct GaussianMixtureSpec {
    std::vector<GaussianComponent> components;
};

struct LabeledData {
    Matrix x;
    std::vector<int> y;
};

// Rows grouped by component in spec order. Bit-deterministic for a given seed.
LabeledData sample_mixture(const GaussianMixtureSpec& spec, std::uint64_t seed);

// Two-class problem with shared covariance plus an overconfident OOD blob.
struct ToyConfig {
    std::size_t train_per_class = 2000;
    std::size_t test_per_class = 2000;
    std::size_t calibration_per_class = 250;  // unlabeled ID rows used to fit the transport
    std::size_t ood_count = 2000;
    double ood_mean_x = -4.0;
    double ood_mean_y = 4.0;
    double ood_variance = 0.25;
};

struct ToyData {
    LabeledData train;
    LabeledData test;
    LabeledData calibration;
    Matrix ood;
};

GaussianMixtureSpec toy_id_mixture(std::size_t per_class);
ToyData make_toy_experiment(std::uint64_t seed, const ToyConfig& config = {});

// n_classes isotropic blobs with centres evenly spaced on a circle.
LabeledData make_blobs(std::size_t n_classes, double radius, double std_dev, std::size_t per_class,
                       std::uint64_t seed);

struct LinearSoftmaxModel {
    Matrix weights;  // C x d
    Vector biases;   // C

    std::size_t classes() const noexcept { return static_cast<std::size_t>(weights.rows()); }
    // Row-wise class probabilities (N x C).
    Matrix predict_proba(const Matrix& x) const;
};

struct LossAndGradient {
    double loss = 0.0;  // mean cross-entropy
    Matrix weights;     // d loss / d W
    Vector biases;      // d loss / d b
};

LossAndGradient softmax_loss_and_gradient(const LinearSoftmaxModel& model, const Matrix& x, std::span<const int> y);

struct TrainResult {
    LinearSoftmaxModel model;
    double final_loss = 0.0;
};

// Full-batch gradient descent on mean cross-entropy from zero initialisation.
TrainResult train_softmax(const Matrix& x, std::span<const int> y, std::size_t epochs, double learning_rate);

}  // namespace vecuq
