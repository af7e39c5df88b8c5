#include "vecuq/rank.hpp"

#include <cmath>
#include <limits>

#include "vecuq/error.hpp"
#include "vecuq/parallel.hpp"

namespace vecuq {

void AnchorConfig::validate() const {
    require(std::isfinite(gamma) && (gamma == 0.0 || gamma > 1.0), "anchor gamma must be 0 (disabled) or > 1");
}

Matrix make_anchors(std::span<const double> maxes_scaled, double gamma, std::size_t dimension_cap) {
    require(gamma > 1.0, "anchor gamma must be > 1");
    const std::size_t m = maxes_scaled.size();
    require(m >= 1, "anchors need at least one coordinate");
    if (m > dimension_cap)
        fail(ErrorKind::InvalidInput, "outer anchors need 2^" + std::to_string(m) + " - 1 points; more than " +
                                          std::to_string(dimension_cap) +
                                          " measures is not supported, disable anchors with gamma = 0");
    for (std::size_t k = 0; k < m; ++k)
        require(std::isfinite(maxes_scaled[k]) && maxes_scaled[k] > 0.0, "anchor maxima must be > 0");

    const std::size_t count = (std::size_t{1} << m) - 1;
    Matrix anchors(count, m);
    for (std::size_t mask = 1; mask <= count; ++mask) {
        for (std::size_t k = 0; k < m; ++k) {
            // Bit (m-1-k) drives coordinate k so the last coordinate toggles fastest.
            const bool high = (mask >> (m - 1 - k)) & 1U;
            anchors(mask - 1, k) = high ? gamma * maxes_scaled[k] : 0.0;
        }
    }
    return anchors;
}

namespace {

// Anchors over the coordinates whose scaled maximum is positive; the rest stay
// at 0. A zero maximum happens for constant columns under min-max scaling.
Matrix anchors_for(const Matrix& scaled, double gamma, std::size_t cap) {
    const auto m = scaled.cols();
    std::vector<Eigen::Index> active;
    std::vector<double> maxima;
    for (Eigen::Index k = 0; k < m; ++k) {
        const double hi = scaled.col(k).maxCoeff();
        if (hi > 0.0) {
            active.push_back(k);
            maxima.push_back(hi);
        }
    }
    if (active.empty()) return Matrix(0, m);
    const Matrix sub = make_anchors(maxima, gamma, cap);
    Matrix full = Matrix::Zero(sub.rows(), m);
    for (std::size_t a = 0; a < active.size(); ++a) full.col(active[a]) = sub.col(static_cast<Eigen::Index>(a));
    return full;
}

}  // namespace

RankModel RankModel::fit(const ScoreMatrix& calibration, const FitOptions& options) {
    options.anchors.validate();
    options.sinkhorn.validate();

    Scaler scaler = fit_scaler(options.scaling, calibration);
    const Matrix scaled = apply_scaler(scaler, calibration.values());

    Matrix anchors(0, scaled.cols());
    if (options.anchors.enabled()) anchors = anchors_for(scaled, options.anchors.gamma, options.anchor_dimension_cap);

    Matrix source(scaled.rows() + anchors.rows(), scaled.cols());
    source.topRows(scaled.rows()) = scaled;
    source.bottomRows(anchors.rows()) = anchors;
    const auto p = source.rows();

    ReferenceSpec spec;
    spec.family = options.target;
    spec.dimension = calibration.cols();
    spec.atom_budget = static_cast<std::size_t>(p);
    ReferenceCloud reference = sample_reference(spec);

    const Vector source_weights = Vector::Constant(p, 1.0 / static_cast<double>(p));
    Coupling coupling = fit_coupling(source, source_weights, reference, options.sinkhorn);

    return RankModel(std::move(scaler), options.anchors, spec, std::move(reference), std::move(coupling),
                     calibration.measure_names(), static_cast<std::size_t>(anchors.rows()));
}

RankModel::RankModel(Scaler scaler, AnchorConfig anchors, ReferenceSpec reference_spec, ReferenceCloud reference,
                     Coupling coupling, std::vector<std::string> measure_names, std::size_t anchor_count)
    : scaler_(std::move(scaler)),
      anchors_(anchors),
      reference_spec_(std::move(reference_spec)),
      reference_(std::move(reference)),
      coupling_(std::move(coupling)),
      names_(std::move(measure_names)),
      anchor_count_(anchor_count) {
    check_consistency();
}

void RankModel::check_consistency() const {
    const auto m = static_cast<Eigen::Index>(names_.size());
    require(m >= 1, "model has no measures");
    require(scaler_.dimension() == names_.size(), "scaler dimension does not match measure count");
    require(reference_.atoms.cols() == m && reference_.atoms.rows() >= 1, "reference atoms have the wrong shape");
    require(reference_.weights.size() == reference_.atoms.rows(), "reference weights have the wrong length");
    require(coupling_.log_v.size() == reference_.atoms.rows(), "coupling scalings do not match the reference");
    require(coupling_.source_atoms.cols() == m, "coupling source atoms have the wrong width");
    require(static_cast<Eigen::Index>(anchor_count_) <= coupling_.source_atoms.rows(), "anchor count too large");
    require(coupling_.epsilon > 0.0, "epsilon must be > 0");
    require(coupling_.log_v.allFinite(), "coupling scalings are not finite");
}

Vector RankModel::transport_weights(std::span<const double> scaled_row) const {
    const auto q = reference_.atoms.rows();
    const Eigen::Map<const Eigen::RowVectorXd> s(scaled_row.data(), static_cast<Eigen::Index>(scaled_row.size()));
    Vector logits(q);
    double hi = -std::numeric_limits<double>::infinity();
    for (Eigen::Index j = 0; j < q; ++j) {
        const double d2 = (s - reference_.atoms.row(j)).squaredNorm();
        logits[j] = coupling_.log_v[j] - d2 / coupling_.epsilon;
        hi = std::max(hi, logits[j]);
    }
    Vector w = (logits.array() - hi).exp();
    w /= w.sum();
    return w;
}

Matrix RankModel::project(const Matrix& query) const {
    const auto m = static_cast<Eigen::Index>(dimension());
    if (query.cols() != m)
        fail(ErrorKind::InvalidInput, "query has " + std::to_string(query.cols()) + " columns, model expects " +
                                          std::to_string(m));
    validate_scores(query);
    const Matrix scaled = apply_scaler(scaler_, query);
    Matrix out(query.rows(), m);
    parallel_for(static_cast<std::size_t>(query.rows()), [&](std::size_t begin, std::size_t end) {
        for (std::size_t r = begin; r < end; ++r) {
            const auto i = static_cast<Eigen::Index>(r);
            const Vector w = transport_weights(std::span<const double>(scaled.row(i).data(), static_cast<std::size_t>(m)));
            out.row(i) = w.transpose() * reference_.atoms;
        }
    }, 16);
    return out;
}

Vector RankModel::rank_score(const Matrix& query) const {
    return project(query).rowwise().norm();
}

}  // namespace vecuq
