#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "vecuq/reference.hpp"
#include "vecuq/scores.hpp"
#include "vecuq/sinkhorn.hpp"
#include "vecuq/types.hpp"

namespace vecuq {

// Outer anchors at the nonzero corners of [0, gamma * M_1] x ... x [0, gamma * M_m].
// gamma == 0 disables them; otherwise gamma must exceed 1.
struct AnchorConfig {
    double gamma = 5.0;

    bool enabled() const noexcept { return gamma != 0.0; }
    void validate() const;
};

inline constexpr std::size_t kDefaultAnchorDimensionCap = 20;

// All 2^m - 1 nonzero corners a_k in {0, gamma * maxes[k]}, ordered by the
// binary counter over coordinates (last coordinate fastest).
Matrix make_anchors(std::span<const double> maxes_scaled, double gamma,
                    std::size_t dimension_cap = kDefaultAnchorDimensionCap);

struct FitOptions {
    ScalingKind scaling = ScalingKind::FeatureWise;
    Marginal target = BetaMarginal{};
    AnchorConfig anchors;
    SinkhornOptions sinkhorn;
    std::size_t anchor_dimension_cap = kDefaultAnchorDimensionCap;
};

// Fitted pipeline: scaler, outer anchors, reference cloud and coupling.
// Immutable after construction; scoring is const and thread-safe.
class RankModel {
public:
    static RankModel fit(const ScoreMatrix& calibration, const FitOptions& options = {});

    // Reassembles a model from its parts (used by the model file loader).
    RankModel(Scaler scaler, AnchorConfig anchors, ReferenceSpec reference_spec, ReferenceCloud reference,
              Coupling coupling, std::vector<std::string> measure_names, std::size_t anchor_count);

    // Rank vectors for raw query scores (k x m). k may be zero.
    Matrix project(const Matrix& query) const;
    Matrix project(const ScoreMatrix& query) const { return project(query.values()); }

    // Barycentric weights of one already-scaled query row; sums to 1.
    Vector transport_weights(std::span<const double> scaled_row) const;

    // Euclidean norm of each rank vector; larger means more uncertain.
    Vector rank_score(const Matrix& query) const;
    Vector rank_score(const ScoreMatrix& query) const { return rank_score(query.values()); }

    const Scaler& scaler() const noexcept { return scaler_; }
    const AnchorConfig& anchor_config() const noexcept { return anchors_; }
    const ReferenceSpec& reference_spec() const noexcept { return reference_spec_; }
    const ReferenceCloud& reference() const noexcept { return reference_; }
    const Coupling& coupling() const noexcept { return coupling_; }
    const std::vector<std::string>& measure_names() const noexcept { return names_; }
    double epsilon() const noexcept { return coupling_.epsilon; }
    std::size_t dimension() const noexcept { return names_.size(); }
    std::size_t anchor_count() const noexcept { return anchor_count_; }
    std::size_t calibration_count() const noexcept {
        return static_cast<std::size_t>(coupling_.source_atoms.rows()) - anchor_count_;
    }

private:
    void check_consistency() const;

    Scaler scaler_;
    AnchorConfig anchors_;
    ReferenceSpec reference_spec_;
    ReferenceCloud reference_;
    Coupling coupling_;
    std::vector<std::string> names_;
    std::size_t anchor_count_ = 0;
};

}  // namespace vecuq
