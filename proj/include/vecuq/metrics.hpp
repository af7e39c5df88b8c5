#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "vecuq/types.hpp"

namespace vecuq {

// Detection-task inputs. Label 1 marks the event to detect (OOD sample or
// misclassified sample); higher scores should point at it.
struct LabeledScores {
    std::vector<double> scores;
    std::vector<int> labels;
};

// Selective-generation inputs: per-sample uncertainty and task quality.
struct QualitySeries {
    std::vector<double> uncertainty;
    std::vector<double> quality;
};

// Mann-Whitney ROC-AUC with half credit for ties, via average ranks.
double roc_auc(std::span<const double> scores, std::span<const int> labels);
inline double roc_auc(const LabeledScores& d) { return roc_auc(d.scores, d.labels); }

// Mean prefix accuracy when samples are admitted in ascending uncertainty
// order (stable for ties).
double accuracy_coverage_auc(std::span<const double> uncertainty, std::span<const int> correct);

// Prediction Rejection Ratio integrated over rejection rates i/n for
// i = 1 .. floor(max_rejection * n) (capped at n - 1).
double prr(std::span<const double> uncertainty, std::span<const double> quality, double max_rejection = 0.5);
inline double prr(const QualitySeries& d, double max_rejection = 0.5) {
    return prr(d.uncertainty, d.quality, max_rejection);
}

// Area under a rejection curve for a given retention order (best-kept first).
// Exposed so callers can compare against the random and oracle baselines.
double rejection_curve_area(std::span<const std::size_t> keep_order, std::span<const double> quality,
                            std::size_t max_rejected);

struct MethodTaskTable {
    std::vector<std::string> methods;
    std::vector<std::string> tasks;
    Matrix values;  // methods x tasks, higher is better

    void validate() const;
};

using TaskPair = std::pair<std::size_t, std::size_t>;

// Every unordered pair (i, j), i < j.
std::vector<TaskPair> all_task_pairs(std::size_t task_count);

// Fraction of task pairs on which each method is not weakly dominated by
// another (>= in both metrics, > in at least one). Defaults to all pairs.
std::vector<double> pareto_front_share(const MethodTaskTable& table,
                                       std::optional<std::vector<TaskPair>> pairs = std::nullopt);

}  // namespace vecuq
