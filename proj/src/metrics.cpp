#include "vecuq/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "vecuq/error.hpp"

namespace vecuq {

namespace {

void check_finite(std::span<const double> xs, const char* what) {
    for (double x : xs)
        if (!std::isfinite(x)) fail(ErrorKind::InvalidInput, std::string(what) + " contains a non-finite value");
}

void check_binary(std::span<const int> xs, const char* what) {
    for (int x : xs)
        if (x != 0 && x != 1) fail(ErrorKind::InvalidInput, std::string(what) + " must be 0 or 1");
}

std::vector<std::size_t> stable_order(std::span<const double> key, bool descending) {
    std::vector<std::size_t> idx(key.size());
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    if (descending)
        std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return key[a] > key[b]; });
    else
        std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return key[a] < key[b]; });
    return idx;
}

}  // namespace

double roc_auc(std::span<const double> scores, std::span<const int> labels) {
    require(scores.size() == labels.size(), "scores and labels differ in length");
    check_finite(scores, "scores");
    check_binary(labels, "labels");
    const std::size_t n = scores.size();
    const auto positives = static_cast<std::size_t>(std::count(labels.begin(), labels.end(), 1));
    const std::size_t negatives = n - positives;
    if (positives == 0 || negatives == 0)
        fail(ErrorKind::InvalidInput, "roc_auc needs at least one positive and one negative label");

    const auto order = stable_order(scores, false);
    double positive_rank_sum = 0.0;
    for (std::size_t i = 0; i < n;) {
        std::size_t j = i + 1;
        while (j < n && scores[order[j]] == scores[order[i]]) ++j;
        // 1-based ranks i+1 .. j share their average.
        const double avg = 0.5 * static_cast<double>(i + 1 + j);
        for (std::size_t k = i; k < j; ++k)
            if (labels[order[k]] == 1) positive_rank_sum += avg;
        i = j;
    }
    const double np = static_cast<double>(positives);
    const double u = positive_rank_sum - np * (np + 1.0) / 2.0;
    return u / (np * static_cast<double>(negatives));
}

double accuracy_coverage_auc(std::span<const double> uncertainty, std::span<const int> correct) {
    require(uncertainty.size() == correct.size(), "uncertainty and correctness flags differ in length");
    require(!uncertainty.empty(), "accuracy_coverage_auc needs at least one sample");
    check_finite(uncertainty, "uncertainty");
    check_binary(correct, "correctness flags");
    const auto order = stable_order(uncertainty, false);
    double hits = 0.0;
    double total = 0.0;
    for (std::size_t i = 0; i < order.size(); ++i) {
        hits += correct[order[i]];
        total += hits / static_cast<double>(i + 1);
    }
    return total / static_cast<double>(order.size());
}

double rejection_curve_area(std::span<const std::size_t> keep_order, std::span<const double> quality,
                            std::size_t max_rejected) {
    const std::size_t n = keep_order.size();
    require(max_rejected < n, "cannot reject every sample");
    std::vector<double> prefix(n + 1, 0.0);
    for (std::size_t i = 0; i < n; ++i) prefix[i + 1] = prefix[i] + quality[keep_order[i]];
    double area = 0.0;
    for (std::size_t rejected = 1; rejected <= max_rejected; ++rejected) {
        const std::size_t kept = n - rejected;
        area += prefix[kept] / static_cast<double>(kept);
    }
    return area / static_cast<double>(n);
}

double prr(std::span<const double> uncertainty, std::span<const double> quality, double max_rejection) {
    require(uncertainty.size() == quality.size(), "uncertainty and quality differ in length");
    require(uncertainty.size() >= 2, "prr needs at least two samples");
    require(max_rejection > 0.0 && max_rejection <= 1.0, "max_rejection must be in (0, 1]");
    check_finite(uncertainty, "uncertainty");
    check_finite(quality, "quality");
    const std::size_t n = uncertainty.size();
    const auto steps = std::min(static_cast<std::size_t>(std::floor(max_rejection * static_cast<double>(n))), n - 1);

    const double mean = std::accumulate(quality.begin(), quality.end(), 0.0) / static_cast<double>(n);
    const double random_area = mean * static_cast<double>(steps) / static_cast<double>(n);
    const double unc_area = rejection_curve_area(stable_order(uncertainty, false), quality, steps);
    const double oracle_area = rejection_curve_area(stable_order(quality, true), quality, steps);

    const double denom = oracle_area - random_area;
    if (!(std::fabs(denom) > 0.0))
        fail(ErrorKind::InvalidInput, "PRR is undefined: the oracle and random rejection curves coincide");
    return (unc_area - random_area) / denom;
}

void MethodTaskTable::validate() const {
    require(values.rows() == static_cast<Eigen::Index>(methods.size()), "method labels do not match table rows");
    require(values.cols() == static_cast<Eigen::Index>(tasks.size()), "task labels do not match table columns");
    require(values.allFinite(), "method/task table has non-finite values");
}

std::vector<TaskPair> all_task_pairs(std::size_t task_count) {
    std::vector<TaskPair> pairs;
    for (std::size_t a = 0; a < task_count; ++a)
        for (std::size_t b = a + 1; b < task_count; ++b) pairs.emplace_back(a, b);
    return pairs;
}

std::vector<double> pareto_front_share(const MethodTaskTable& table, std::optional<std::vector<TaskPair>> pairs) {
    table.validate();
    const auto tasks = static_cast<std::size_t>(table.values.cols());
    if (tasks < 2) fail(ErrorKind::InvalidInput, "pareto_front_share needs at least two tasks");
    const std::vector<TaskPair> universe = pairs ? std::move(*pairs) : all_task_pairs(tasks);
    require(!universe.empty(), "pareto_front_share needs at least one task pair");
    for (const auto& [a, b] : universe) require(a < tasks && b < tasks && a != b, "invalid task pair");

    const auto methods = static_cast<Eigen::Index>(table.values.rows());
    const auto& v = table.values;
    std::vector<double> share(static_cast<std::size_t>(methods), 0.0);
    for (const auto& [a0, b0] : universe) {
        const auto a = static_cast<Eigen::Index>(a0);
        const auto b = static_cast<Eigen::Index>(b0);
        for (Eigen::Index i = 0; i < methods; ++i) {
            bool dominated = false;
            for (Eigen::Index j = 0; j < methods && !dominated; ++j) {
                if (j == i) continue;
                dominated = v(j, a) >= v(i, a) && v(j, b) >= v(i, b) && (v(j, a) > v(i, a) || v(j, b) > v(i, b));
            }
            if (!dominated) share[static_cast<std::size_t>(i)] += 1.0;
        }
    }
    for (double& s : share) s /= static_cast<double>(universe.size());
    return share;
}

}  // namespace vecuq
