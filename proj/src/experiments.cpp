#include "vecuq/experiments.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "vecuq/csv.hpp"
#include "vecuq/error.hpp"
#include "vecuq/metrics.hpp"

namespace vecuq {

namespace {

// (1 - MSP, Mahalanobis) for each row of x.
Matrix toy_score_vectors(const LinearSoftmaxModel& clf, const GaussianClassStats& stats, const Matrix& x) {
    const Matrix probs = clf.predict_proba(x);
    const Vector maha = mahalanobis_scores(stats, x);
    Matrix out(x.rows(), 2);
    for (Eigen::Index i = 0; i < x.rows(); ++i) {
        out(i, 0) = one_minus_msp(std::span<const double>(probs.row(i).data(), static_cast<std::size_t>(probs.cols())));
        out(i, 1) = maha[i];
    }
    return out;
}

std::vector<double> concat(const Vector& a, const Vector& b) {
    std::vector<double> out(a.data(), a.data() + a.size());
    out.insert(out.end(), b.data(), b.data() + b.size());
    return out;
}

DetectionAuc detection(const Vector& id, const Vector& ood, const std::vector<int>& misclassified) {
    std::vector<int> ood_labels(static_cast<std::size_t>(id.size()), 0);
    ood_labels.resize(static_cast<std::size_t>(id.size() + ood.size()), 1);
    DetectionAuc auc;
    auc.misclassification = roc_auc(std::span<const double>(id.data(), static_cast<std::size_t>(id.size())),
                                    misclassified);
    auc.ood = roc_auc(concat(id, ood), ood_labels);
    return auc;
}

const std::vector<std::string> kToyMeasures{"one_minus_msp", "mahalanobis"};

}  // namespace

ToyBaselines prepare_toy(std::uint64_t seed, const ToyOptions& options) {
    ToyBaselines b;
    b.data = make_toy_experiment(seed, options.data);
    b.classifier = train_softmax(b.data.train.x, b.data.train.y, options.epochs, options.learning_rate).model;
    b.gaussian = fit_gaussian_stats(b.data.train.x, b.data.train.y);

    const Matrix test_probs = b.classifier.predict_proba(b.data.test.x);
    b.misclassified.resize(b.data.test.y.size());
    for (Eigen::Index i = 0; i < test_probs.rows(); ++i) {
        Eigen::Index predicted = 0;
        test_probs.row(i).maxCoeff(&predicted);
        b.misclassified[static_cast<std::size_t>(i)] = predicted != b.data.test.y[static_cast<std::size_t>(i)];
    }
    b.calibration_scores = toy_score_vectors(b.classifier, b.gaussian, b.data.calibration.x);
    b.id_scores = toy_score_vectors(b.classifier, b.gaussian, b.data.test.x);
    b.ood_scores = toy_score_vectors(b.classifier, b.gaussian, b.data.ood);
    return b;
}

ToyResult evaluate_toy(ToyBaselines baselines, const FitOptions& fit) {
    ToyResult r;
    r.baselines = std::move(baselines);
    const auto& b = r.baselines;
    const RankModel model = RankModel::fit(ScoreMatrix(b.calibration_scores, kToyMeasures), fit);
    r.vecuq_id = model.rank_score(b.id_scores);
    r.vecuq_ood = model.rank_score(b.ood_scores);
    r.sinkhorn_iterations = model.coupling().iterations_run;
    r.sinkhorn_residual = model.coupling().marginal_residual;
    r.sinkhorn_converged = model.coupling().converged;

    r.msp = detection(b.id_scores.col(0), b.ood_scores.col(0), b.misclassified);
    r.mahalanobis = detection(b.id_scores.col(1), b.ood_scores.col(1), b.misclassified);
    r.vecuq = detection(r.vecuq_id, r.vecuq_ood, b.misclassified);
    return r;
}

ToyResult run_toy(std::uint64_t seed, const ToyOptions& options) {
    return evaluate_toy(prepare_toy(seed, options), options.fit);
}

std::string format_toy_table(const ToyResult& r) {
    char buf[512];
    std::snprintf(buf, sizeof buf,
                  "%-28s %8s %12s %9s\n"
                  "%-28s %8.4f %12.4f %9.4f\n"
                  "%-28s %8.4f %12.4f %9.4f\n",
                  "ROC-AUC", "1-MSP", "Mahalanobis", "VecUQ-OT",  //
                  "Misclassification detection", r.msp.misclassification, r.mahalanobis.misclassification,
                  r.vecuq.misclassification,  //
                  "OOD detection", r.msp.ood, r.mahalanobis.ood, r.vecuq.ood);
    return buf;
}

void write_toy_outputs(const ToyResult& r, const std::filesystem::path& dir) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) fail(ErrorKind::Io, "cannot create output directory '" + dir.string() + "': " + ec.message());
    const auto& b = r.baselines;
    const auto n_id = b.id_scores.rows();
    const auto n_ood = b.ood_scores.rows();

    write_csv(dir / "toy_calibration.csv", kToyMeasures, b.calibration_scores);

    Matrix query(n_id + n_ood, 2);
    query << b.id_scores, b.ood_scores;
    write_csv(dir / "toy_query.csv", kToyMeasures, query);

    Matrix scored(n_id + n_ood, 3);
    scored.leftCols(2) = query;
    scored.col(2) << r.vecuq_id, r.vecuq_ood;
    write_csv(dir / "toy_query_scores.csv", {"one_minus_msp", "mahalanobis", "vecuq_ot"}, scored);

    Matrix ood_labels(n_id + n_ood, 1);
    ood_labels.topRows(n_id).setZero();
    ood_labels.bottomRows(n_ood).setOnes();
    write_csv(dir / "toy_ood_labels.csv", {"label"}, ood_labels);

    Matrix id_scored(n_id, 3);
    id_scored.leftCols(2) = b.id_scores;
    id_scored.col(2) = r.vecuq_id;
    write_csv(dir / "toy_id_scores.csv", {"one_minus_msp", "mahalanobis", "vecuq_ot"}, id_scored);

    Matrix miscls(n_id, 1);
    for (Eigen::Index i = 0; i < n_id; ++i) miscls(i, 0) = b.misclassified[static_cast<std::size_t>(i)];
    write_csv(dir / "toy_misclassified_labels.csv", {"label"}, miscls);

    Matrix summary(3, 2);
    summary << r.msp.misclassification, r.msp.ood,  //
        r.mahalanobis.misclassification, r.mahalanobis.ood,  //
        r.vecuq.misclassification, r.vecuq.ood;
    // Rows: 1-MSP, Mahalanobis, VecUQ-OT.
    write_csv(dir / "toy_roc_auc.csv", {"misclassification", "ood"}, summary);
}

std::vector<AblationCell> run_toy_ablation(std::uint64_t seed, const ToyOptions& options) {
    const ToyBaselines prepared = prepare_toy(seed, options);
    std::vector<AblationCell> cells;
    for (const char* target : {"beta", "exp"}) {
        for (ScalingKind scaling : {ScalingKind::FeatureWise, ScalingKind::Global, ScalingKind::Identity}) {
            for (double gamma : {0.0, 2.0, 5.0}) {
                FitOptions fit = options.fit;
                fit.target = std::string(target) == "beta" ? Marginal{BetaMarginal{}} : Marginal{ExponentialMarginal{}};
                fit.scaling = scaling;
                fit.anchors.gamma = gamma;
                const ToyResult r = evaluate_toy(prepared, fit);
                AblationCell cell{target, scaling, gamma, r.vecuq, true, r.sinkhorn_converged};
                cell.finite = r.vecuq_id.allFinite() && r.vecuq_ood.allFinite() && std::isfinite(r.sinkhorn_residual);
                cells.push_back(cell);
            }
        }
    }
    return cells;
}

BlobsResult run_blobs(std::uint64_t seed, const BlobsOptions& options) {
    require(options.grid_size >= 2, "blobs grid needs at least 2 points per axis");
    BlobsResult r;
    r.data = make_blobs(options.classes, options.radius, options.std_dev, options.per_class, seed * 2);
    const LabeledData calibration =
        make_blobs(options.classes, options.radius, options.std_dev, options.calibration_per_class, seed * 2 + 1);
    const auto clf = train_softmax(r.data.x, r.data.y, options.epochs, options.learning_rate).model;
    const auto stats = fit_gaussian_stats(r.data.x, r.data.y);

    auto score_pair = [&](const Matrix& x) {
        const Matrix probs = clf.predict_proba(x);
        Matrix out(x.rows(), 2);
        const Vector maha = mahalanobis_scores(stats, x);
        for (Eigen::Index i = 0; i < x.rows(); ++i) {
            out(i, 0) = predictive_entropy(std::span<const double>(probs.row(i).data(),
                                                                   static_cast<std::size_t>(probs.cols())));
            out(i, 1) = maha[i];
        }
        return out;
    };

    const RankModel model = RankModel::fit(ScoreMatrix(score_pair(calibration.x), {"entropy", "mahalanobis"}),
                                           options.fit);
    r.sinkhorn_iterations = model.coupling().iterations_run;
    r.sinkhorn_residual = model.coupling().marginal_residual;

    const std::size_t g = options.grid_size;
    r.grid.resize(static_cast<Eigen::Index>(g * g), 2);
    for (std::size_t i = 0; i < g; ++i)
        for (std::size_t j = 0; j < g; ++j) {
            const double step = 2.0 * options.grid_extent / static_cast<double>(g - 1);
            r.grid(static_cast<Eigen::Index>(i * g + j), 0) = -options.grid_extent + step * static_cast<double>(j);
            r.grid(static_cast<Eigen::Index>(i * g + j), 1) = -options.grid_extent + step * static_cast<double>(i);
        }

    auto with_ot = [&](const Matrix& x) {
        const Matrix pair = score_pair(x);
        Matrix out(x.rows(), 3);
        out.leftCols(2) = pair;
        out.col(2) = model.rank_score(pair);
        return out;
    };
    r.point_scores = with_ot(r.data.x);
    r.grid_scores = with_ot(r.grid);
    return r;
}

void write_blobs_outputs(const BlobsResult& r, const std::filesystem::path& dir) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) fail(ErrorKind::Io, "cannot create output directory '" + dir.string() + "': " + ec.message());
    Matrix points(r.data.x.rows(), 6);
    points.leftCols(2) = r.data.x;
    for (Eigen::Index i = 0; i < points.rows(); ++i) points(i, 2) = r.data.y[static_cast<std::size_t>(i)];
    points.rightCols(3) = r.point_scores;
    write_csv(dir / "blobs_points.csv", {"x", "y", "label", "entropy", "mahalanobis", "vecuq_ot"}, points);

    Matrix grid(r.grid.rows(), 5);
    grid.leftCols(2) = r.grid;
    grid.rightCols(3) = r.grid_scores;
    write_csv(dir / "blobs_grid.csv", {"x", "y", "entropy", "mahalanobis", "vecuq_ot"}, grid);
}

}  // namespace vecuq
