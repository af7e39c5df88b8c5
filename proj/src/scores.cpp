#include "vecuq/scores.hpp"

#include <algorithm>
#include <cmath>

#include "vecuq/error.hpp"

namespace vecuq {

void validate_scores(const Matrix& values) {
    for (Eigen::Index j = 0; j < values.cols(); ++j) {
        for (Eigen::Index i = 0; i < values.rows(); ++i) {
            const double x = values(i, j);
            if (!std::isfinite(x))
                fail(ErrorKind::InvalidInput,
                     "score column " + std::to_string(j) + " has a non-finite entry at row " + std::to_string(i));
            if (x < 0.0)
                fail(ErrorKind::InvalidInput,
                     "score column " + std::to_string(j) + " has a negative entry at row " + std::to_string(i));
        }
    }
}

ScoreMatrix::ScoreMatrix(Matrix values, std::vector<std::string> measure_names)
    : values_(std::move(values)), names_(std::move(measure_names)) {
    require(values_.rows() >= 1 && values_.cols() >= 1, "score matrix needs at least one row and one column");
    validate_scores(values_);
    if (names_.empty()) {
        for (Eigen::Index j = 0; j < values_.cols(); ++j) names_.push_back("s" + std::to_string(j));
    }
    require(names_.size() == cols(), "measure name count does not match column count");
}

ScoreMatrix ScoreMatrix::stack(std::span<const std::vector<double>> columns, std::vector<std::string> measure_names) {
    require(!columns.empty(), "stack needs at least one column");
    const std::size_t n = columns.front().size();
    require(n >= 1, "stack needs columns of length >= 1");
    Matrix out(n, columns.size());
    for (std::size_t j = 0; j < columns.size(); ++j) {
        if (columns[j].size() != n)
            fail(ErrorKind::InvalidInput, "column " + std::to_string(j) + " has length " +
                                              std::to_string(columns[j].size()) + ", expected " + std::to_string(n));
        for (std::size_t i = 0; i < n; ++i) out(i, j) = columns[j][i];
    }
    return ScoreMatrix(std::move(out), std::move(measure_names));
}

const char* to_string(ScalingKind kind) {
    switch (kind) {
        case ScalingKind::FeatureWise: return "featurewise";
        case ScalingKind::Global: return "global";
        case ScalingKind::Identity: return "identity";
    }
    return "?";
}

ScalingKind scaling_from_string(const std::string& name) {
    if (name == "featurewise") return ScalingKind::FeatureWise;
    if (name == "global") return ScalingKind::Global;
    if (name == "identity") return ScalingKind::Identity;
    fail(ErrorKind::InvalidInput, "unknown scaling '" + name + "' (expected featurewise, global or identity)");
}

Scaler fit_scaler(ScalingKind kind, const ScoreMatrix& data) {
    const auto& v = data.values();
    const std::size_t m = data.cols();
    Scaler s;
    s.kind = kind;
    switch (kind) {
        case ScalingKind::FeatureWise:
            for (std::size_t k = 0; k < m; ++k) {
                s.mins.push_back(v.col(k).minCoeff());
                s.maxes.push_back(v.col(k).maxCoeff());
            }
            break;
        case ScalingKind::Global:
            s.mins.assign(m, v.minCoeff());
            s.maxes.assign(m, v.maxCoeff());
            break;
        case ScalingKind::Identity:
            s.mins.assign(m, 0.0);
            s.maxes.assign(m, 1.0);
            break;
    }
    return s;
}

Matrix apply_scaler(const Scaler& scaler, const Matrix& data) {
    const auto m = static_cast<Eigen::Index>(scaler.dimension());
    if (data.cols() != m)
        fail(ErrorKind::InvalidInput, "scaler expects " + std::to_string(m) + " columns, got " +
                                          std::to_string(data.cols()));
    if (scaler.kind == ScalingKind::Identity) return data;
    Matrix out(data.rows(), data.cols());
    for (Eigen::Index k = 0; k < m; ++k) {
        const double lo = scaler.mins[k];
        const double range = scaler.maxes[k] - lo;
        if (range == 0.0) {
            out.col(k).setZero();
        } else {
            out.col(k) = (data.col(k).array() - lo) / range;
        }
    }
    return out;
}

}  // namespace vecuq
