#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "vecuq/baselines.hpp"
#include "vecuq/rank.hpp"
#include "vecuq/synth.hpp"

namespace vecuq {

struct DetectionAuc {
    double misclassification = 0.0;
    double ood = 0.0;
};

struct ToyOptions {
    ToyConfig data;
    FitOptions fit;
    std::size_t epochs = 500;
    double learning_rate = 0.5;
};

// Everything that does not depend on the transport configuration: data,
// classifier and the two scalar measures on each split.
struct ToyBaselines {
    ToyData data;
    LinearSoftmaxModel classifier;
    GaussianClassStats gaussian;
    std::vector<int> misclassified;  // per ID test row
    Matrix calibration_scores;       // (1 - MSP, Mahalanobis) on the calibration split
    Matrix id_scores;                // same on ID test rows
    Matrix ood_scores;               // same on OOD rows
};

ToyBaselines prepare_toy(std::uint64_t seed, const ToyOptions& options = {});

struct ToyResult {
    ToyBaselines baselines;
    Vector vecuq_id;
    Vector vecuq_ood;
    DetectionAuc msp;
    DetectionAuc mahalanobis;
    DetectionAuc vecuq;
    std::size_t sinkhorn_iterations = 0;
    double sinkhorn_residual = 0.0;
    bool sinkhorn_converged = false;
};

// Scores the prepared baselines with a rank model fitted under `fit`.
ToyResult evaluate_toy(ToyBaselines baselines, const FitOptions& fit);
ToyResult run_toy(std::uint64_t seed, const ToyOptions& options = {});

std::string format_toy_table(const ToyResult& result);
void write_toy_outputs(const ToyResult& result, const std::filesystem::path& dir);

struct AblationCell {
    std::string target;  // "beta" or "exp"
    ScalingKind scaling = ScalingKind::FeatureWise;
    double gamma = 0.0;
    DetectionAuc auc;
    bool finite = true;
    bool converged = true;
};

// {beta, exp} x {featurewise, global, identity} x {0, 2, 5} on one toy draw.
std::vector<AblationCell> run_toy_ablation(std::uint64_t seed, const ToyOptions& options = {});

struct BlobsOptions {
    std::size_t classes = 10;
    double radius = 8.0;
    double std_dev = 1.0;
    std::size_t per_class = 200;
    std::size_t calibration_per_class = 30;
    std::size_t grid_size = 60;  // evaluation grid is grid_size x grid_size
    double grid_extent = 12.0;   // grid covers [-extent, extent]^2
    std::size_t epochs = 500;
    double learning_rate = 0.5;
    FitOptions fit;
};

struct BlobsResult {
    LabeledData data;
    Matrix grid;                 // grid points (G x 2)
    Matrix point_scores;         // entropy, mahalanobis, vecuq_ot per data row
    Matrix grid_scores;          // same per grid point
    std::size_t sinkhorn_iterations = 0;
    double sinkhorn_residual = 0.0;
};

BlobsResult run_blobs(std::uint64_t seed, const BlobsOptions& options = {});
void write_blobs_outputs(const BlobsResult& result, const std::filesystem::path& dir);

}  // namespace vecuq
