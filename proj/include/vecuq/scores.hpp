#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "vecuq/types.hpp"

namespace vecuq {

// n x m matrix of nonnegative uncertainty scores: one row per sample, one
// column per measure. Entries are validated finite and >= 0 on construction.
class ScoreMatrix {
public:
    // Empty names are replaced with s0, s1, ...
    explicit ScoreMatrix(Matrix values, std::vector<std::string> measure_names = {});

    // Stacks equal-length columns side by side.
    static ScoreMatrix stack(std::span<const std::vector<double>> columns,
                             std::vector<std::string> measure_names = {});

    const Matrix& values() const noexcept { return values_; }
    const std::vector<std::string>& measure_names() const noexcept { return names_; }
    std::size_t rows() const noexcept { return static_cast<std::size_t>(values_.rows()); }
    std::size_t cols() const noexcept { return static_cast<std::size_t>(values_.cols()); }

private:
    Matrix values_;
    std::vector<std::string> names_;
};

// Throws InvalidInput naming the first negative or non-finite column.
void validate_scores(const Matrix& values);

enum class ScalingKind { FeatureWise, Global, Identity };

const char* to_string(ScalingKind kind);
ScalingKind scaling_from_string(const std::string& name);

// Min-max parameters mapping raw scores to the transport working space.
// Identity is stored as mins = 0, maxes = 1.
struct Scaler {
    ScalingKind kind = ScalingKind::Identity;
    std::vector<double> mins;
    std::vector<double> maxes;

    std::size_t dimension() const noexcept { return mins.size(); }
};

Scaler fit_scaler(ScalingKind kind, const ScoreMatrix& data);

// (x - min) / (max - min) per column, 0 for constant columns, no clipping.
// Accepts any finite matrix with a matching column count; query rows may sit
// outside the calibration range and then map outside [0, 1].
Matrix apply_scaler(const Scaler& scaler, const Matrix& data);

}  // namespace vecuq
