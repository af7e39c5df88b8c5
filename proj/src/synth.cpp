#include "vecuq/synth.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <limits>
#include <random>

#include "vecuq/error.hpp"

namespace vecuq {

namespace {

std::mt19937_64 make_engine(std::uint64_t seed, std::uint64_t stream) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(stream)};
    return std::mt19937_64(seq);
}

int class_count(std::span<const int> y) {
    require(!y.empty(), "no labels");
    for (int c : y) require(c >= 0, "labels must be >= 0");
    return *std::max_element(y.begin(), y.end()) + 1;
}

}  // namespace

LabeledData sample_mixture(const GaussianMixtureSpec& spec, std::uint64_t seed) {
    require(!spec.components.empty(), "mixture has no components");
    const auto d = spec.components.front().mean.size();
    std::size_t total = 0;
    for (const auto& c : spec.components) {
        require(c.mean.size() == d && c.covariance.rows() == d && c.covariance.cols() == d,
                "mixture components disagree on dimension");
        require(c.count >= 1, "component counts must be >= 1");
        total += c.count;
    }

    auto engine = make_engine(seed, 0);
    std::normal_distribution<double> normal(0.0, 1.0);
    LabeledData out;
    out.x.resize(static_cast<Eigen::Index>(total), d);
    out.y.reserve(total);
    Eigen::Index row = 0;
    for (const auto& c : spec.components) {
        if (!c.covariance.isApprox(c.covariance.transpose(), 1e-12))
            fail(ErrorKind::InvalidInput, "component covariance is not symmetric");
        Eigen::LLT<Matrix> llt(c.covariance);
        if (llt.info() != Eigen::Success)
            fail(ErrorKind::InvalidInput, "component covariance is not positive definite");
        const Matrix lower = llt.matrixL();
        Vector z(d);
        for (std::size_t i = 0; i < c.count; ++i, ++row) {
            for (Eigen::Index k = 0; k < d; ++k) z[k] = normal(engine);
            out.x.row(row) = (c.mean + lower * z).transpose();
            out.y.push_back(c.label);
        }
    }
    return out;
}

GaussianMixtureSpec toy_id_mixture(std::size_t per_class) {
    Matrix cov(2, 2);
    cov << 1.0, 0.6, 0.6, 1.2;
    GaussianMixtureSpec spec;
    spec.components.push_back({Eigen::Vector2d(-0.8, 0.0), cov, 0, per_class});
    spec.components.push_back({Eigen::Vector2d(0.8, 0.2), cov, 1, per_class});
    return spec;
}

ToyData make_toy_experiment(std::uint64_t seed, const ToyConfig& config) {
    require(config.ood_variance > 0.0, "OOD variance must be > 0");
    ToyData data;
    // Independent streams per split so changing one size leaves the others intact.
    data.train = sample_mixture(toy_id_mixture(config.train_per_class), seed * 4 + 0);
    data.test = sample_mixture(toy_id_mixture(config.test_per_class), seed * 4 + 1);
    data.calibration = sample_mixture(toy_id_mixture(config.calibration_per_class), seed * 4 + 2);

    GaussianMixtureSpec ood;
    ood.components.push_back({Eigen::Vector2d(config.ood_mean_x, config.ood_mean_y),
                              Matrix::Identity(2, 2) * config.ood_variance, 0, config.ood_count});
    data.ood = sample_mixture(ood, seed * 4 + 3).x;
    return data;
}

LabeledData make_blobs(std::size_t n_classes, double radius, double std_dev, std::size_t per_class,
                       std::uint64_t seed) {
    require(n_classes >= 2, "make_blobs needs at least two classes");
    require(std_dev > 0.0, "blob standard deviation must be > 0");
    GaussianMixtureSpec spec;
    for (std::size_t c = 0; c < n_classes; ++c) {
        const double angle = 2.0 * std::numbers::pi * static_cast<double>(c) / static_cast<double>(n_classes);
        spec.components.push_back({Eigen::Vector2d(radius * std::cos(angle), radius * std::sin(angle)),
                                   Matrix::Identity(2, 2) * (std_dev * std_dev), static_cast<int>(c), per_class});
    }
    return sample_mixture(spec, seed);
}

Matrix LinearSoftmaxModel::predict_proba(const Matrix& x) const {
    require(x.cols() == weights.cols(), "input dimension does not match the model");
    Matrix logits = x * weights.transpose();
    logits.rowwise() += biases.transpose();
    for (Eigen::Index i = 0; i < logits.rows(); ++i) {
        const double hi = logits.row(i).maxCoeff();
        logits.row(i) = (logits.row(i).array() - hi).exp();
        logits.row(i) /= logits.row(i).sum();
    }
    return logits;
}

LossAndGradient softmax_loss_and_gradient(const LinearSoftmaxModel& model, const Matrix& x, std::span<const int> y) {
    const auto n = x.rows();
    require(static_cast<std::size_t>(n) == y.size() && n >= 1, "inputs and labels differ in length");
    Matrix probs = model.predict_proba(x);
    LossAndGradient out;
    for (Eigen::Index i = 0; i < n; ++i) {
        const int c = y[static_cast<std::size_t>(i)];
        require(c >= 0 && c < probs.cols(), "label outside the model's classes");
        out.loss -= std::log(std::max(probs(i, c), std::numeric_limits<double>::min()));
        probs(i, c) -= 1.0;  // now dL/dlogits
    }
    const double inv_n = 1.0 / static_cast<double>(n);
    out.loss *= inv_n;
    out.weights = probs.transpose() * x * inv_n;
    out.biases = probs.colwise().sum().transpose() * inv_n;
    return out;
}

TrainResult train_softmax(const Matrix& x, std::span<const int> y, std::size_t epochs, double learning_rate) {
    const int classes = class_count(y);
    {
        std::vector<int> seen(static_cast<std::size_t>(classes), 0);
        for (int c : y) seen[static_cast<std::size_t>(c)] = 1;
        if (std::count(seen.begin(), seen.end(), 1) < 2)
            fail(ErrorKind::InvalidInput, "train_softmax needs at least two classes present");
    }
    require(learning_rate > 0.0, "learning rate must be > 0");
    TrainResult result;
    result.model.weights = Matrix::Zero(classes, x.cols());
    result.model.biases = Vector::Zero(classes);
    for (std::size_t e = 0; e < epochs; ++e) {
        const auto g = softmax_loss_and_gradient(result.model, x, y);
        result.model.weights -= learning_rate * g.weights;
        result.model.biases -= learning_rate * g.biases;
    }
    result.final_loss = softmax_loss_and_gradient(result.model, x, y).loss;
    return result;
}

}  // namespace vecuq
