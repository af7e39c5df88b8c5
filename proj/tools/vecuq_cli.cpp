// vecuq command-line tool. Talks to the library exclusively through the C API.
//
//   vecuq fit   calibration.csv --out model.json [options]
//   vecuq rank  model.json query.csv [--out ranks.csv]
//   vecuq eval  scores.csv labels.csv --metric roc_auc|acc_cov|prr
//   vecuq synth toy|blobs --seed N --out-dir DIR
//
// Exit codes: 0 success (including convergence warnings), 1 input error,
// 2 numerical or internal failure.

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "vecuq/vecuq.h"

namespace {

struct Failure {
    int exit_code;
    std::string message;
};

int exit_code_for(vecuq_status s) {
    switch (s) {
        case VECUQ_OK: return 0;
        case VECUQ_ERR_INVALID_ARGUMENT:
        case VECUQ_ERR_IO:
        case VECUQ_ERR_FORMAT: return 1;
        default: return 2;
    }
}

void check(vecuq_status s) {
    if (s != VECUQ_OK) throw Failure{exit_code_for(s), vecuq_last_error()};
}

[[noreturn]] void input_error(const std::string& message) { throw Failure{1, message}; }

struct TableDeleter {
    void operator()(vecuq_table* t) const { vecuq_table_free(t); }
};
struct ModelDeleter {
    void operator()(vecuq_model* m) const { vecuq_model_free(m); }
};
using Table = std::unique_ptr<vecuq_table, TableDeleter>;
using Model = std::unique_ptr<vecuq_model, ModelDeleter>;

Table read_table(const std::string& path) {
    vecuq_table* raw = nullptr;
    check(vecuq_table_read_csv(path.c_str(), &raw));
    return Table(raw);
}

std::vector<std::string> column_names(const vecuq_table* t) {
    std::vector<std::string> names;
    for (size_t c = 0; c < vecuq_table_cols(t); ++c) names.emplace_back(vecuq_table_column_name(t, c));
    return names;
}

std::vector<double> column(const vecuq_table* t, size_t col) {
    const size_t rows = vecuq_table_rows(t);
    const size_t cols = vecuq_table_cols(t);
    const double* data = vecuq_table_data(t);
    std::vector<double> out(rows);
    for (size_t r = 0; r < rows; ++r) out[r] = data[r * cols + col];
    return out;
}

std::string join(const std::vector<std::string>& xs) {
    std::string out;
    for (const auto& x : xs) out += (out.empty() ? "" : ", ") + x;
    return out;
}

void write_table(const std::vector<double>& data, size_t rows, const std::vector<std::string>& names,
                 const std::string& path) {
    if (path.empty() || path == "-") {
        std::string text;
        for (size_t c = 0; c < names.size(); ++c) text += (c ? "," : "") + names[c];
        text += '\n';
        char buf[64];
        for (size_t r = 0; r < rows; ++r) {
            for (size_t c = 0; c < names.size(); ++c) {
                const auto res = std::to_chars(buf, buf + sizeof buf, data[r * names.size() + c]);
                if (c) text += ',';
                text.append(buf, res.ptr);
            }
            text += '\n';
        }
        std::fwrite(text.data(), 1, text.size(), stdout);
        return;
    }
    std::vector<const char*> cnames;
    for (const auto& n : names) cnames.push_back(n.c_str());
    vecuq_table* raw = nullptr;
    check(vecuq_table_create(data.data(), rows, names.size(), cnames.data(), &raw));
    Table t(raw);
    check(vecuq_table_write_csv(t.get(), path.c_str()));
}

// ---- fit ----

struct FitArgs {
    std::string calibration;
    std::string out;
    std::string scaling = "featurewise";
    std::string target = "beta";
    double alpha = 1.0;
    double beta = 1.0;
    double lambda = 1.0;
    double gamma = 5.0;
    double epsilon = 0.5;
    double tol = 1e-6;
    size_t max_iters = 10000;
};

int cmd_fit(const FitArgs& a) {
    const Table table = read_table(a.calibration);
    const size_t rows = vecuq_table_rows(table.get());
    const size_t cols = vecuq_table_cols(table.get());
    if (rows == 0) input_error(a.calibration + ": no data rows");

    vecuq_fit_options o;
    vecuq_fit_options_default(&o);
    o.scaling = a.scaling == "global"     ? VECUQ_SCALING_GLOBAL
                : a.scaling == "identity" ? VECUQ_SCALING_IDENTITY
                                          : VECUQ_SCALING_FEATUREWISE;
    o.target = a.target == "exp" ? VECUQ_TARGET_EXPONENTIAL : VECUQ_TARGET_BETA;
    o.alpha = a.alpha;
    o.beta = a.beta;
    o.lambda = a.lambda;
    o.gamma = a.gamma;
    o.epsilon = a.epsilon;
    o.tol = a.tol;
    o.max_iters = a.max_iters;

    const auto names = column_names(table.get());
    std::vector<const char*> cnames;
    for (const auto& n : names) cnames.push_back(n.c_str());

    vecuq_model* raw = nullptr;
    const vecuq_status s = vecuq_model_fit(vecuq_table_data(table.get()), rows, cols, cnames.data(), &o, &raw);
    if (s != VECUQ_OK) throw Failure{exit_code_for(s), a.calibration + ": " + vecuq_last_error()};
    Model model(raw);
    check(vecuq_model_save(model.get(), a.out.c_str()));

    vecuq_model_info info{};
    check(vecuq_model_get_info(model.get(), &info));
    std::printf("measures: %zu (%s)\n", info.measure_count, join(names).c_str());
    std::printf("source size: %zu (%zu calibration + %zu anchors)\n", info.calibration_count + info.anchor_count,
                info.calibration_count, info.anchor_count);
    std::printf("reference size: %zu\n", info.reference_count);
    std::printf("sinkhorn: %zu iterations, residual %.3e\n", info.iterations, info.residual);
    std::printf("model written to %s\n", a.out.c_str());
    if (!info.converged)
        std::fprintf(stderr, "warning: Sinkhorn did not reach tol %.3e within %zu iterations (residual %.3e)\n", a.tol,
                     a.max_iters, info.residual);
    return 0;
}

// ---- rank ----

int cmd_rank(const std::string& model_path, const std::string& query_path, const std::string& out) {
    vecuq_model* raw = nullptr;
    check(vecuq_model_load(model_path.c_str(), &raw));
    Model model(raw);
    vecuq_model_info info{};
    check(vecuq_model_get_info(model.get(), &info));

    const Table query = read_table(query_path);
    const auto have = column_names(query.get());
    std::vector<std::string> want;
    for (size_t k = 0; k < info.measure_count; ++k) want.emplace_back(vecuq_model_measure_name(model.get(), k));

    std::vector<std::string> missing, extra;
    for (const auto& w : want)
        if (std::find(have.begin(), have.end(), w) == have.end()) missing.push_back(w);
    for (const auto& h : have)
        if (std::find(want.begin(), want.end(), h) == want.end()) extra.push_back(h);
    if (std::set<std::string>(have.begin(), have.end()).size() != have.size())
        input_error(query_path + ": duplicate column names");
    if (!missing.empty() || !extra.empty()) {
        std::string msg = query_path + ": columns do not match the model";
        if (!missing.empty()) msg += "; missing: " + join(missing);
        if (!extra.empty()) msg += "; extra: " + join(extra);
        input_error(msg);
    }

    const size_t rows = vecuq_table_rows(query.get());
    const size_t cols = want.size();
    std::vector<double> ordered(rows * cols);
    for (size_t k = 0; k < cols; ++k) {
        const auto src = static_cast<size_t>(std::find(have.begin(), have.end(), want[k]) - have.begin());
        const auto col = column(query.get(), src);
        for (size_t r = 0; r < rows; ++r) ordered[r * cols + k] = col[r];
    }
    std::vector<double> scores(rows);
    const vecuq_status s = vecuq_model_rank(model.get(), ordered.data(), rows, cols, scores.data());
    if (s != VECUQ_OK) throw Failure{exit_code_for(s), query_path + ": " + vecuq_last_error()};

    std::vector<double> table(rows * 2);
    for (size_t r = 0; r < rows; ++r) {
        table[2 * r] = static_cast<double>(r);
        table[2 * r + 1] = scores[r];
    }
    write_table(table, rows, {"index", "rank_score"}, out);
    return 0;
}

// ---- eval ----

std::vector<double> pick_scores(const vecuq_table* t, const std::string& path, const std::string& requested) {
    const auto names = column_names(t);
    auto find = [&](const std::string& n) -> long {
        for (size_t i = 0; i < names.size(); ++i)
            if (names[i] == n) return static_cast<long>(i);
        return -1;
    };
    long idx = -1;
    if (!requested.empty()) {
        idx = find(requested);
        if (idx < 0) input_error(path + ": no column named '" + requested + "'");
    } else if ((idx = find("rank_score")) < 0) {
        std::vector<long> candidates;
        for (size_t i = 0; i < names.size(); ++i)
            if (names[i] != "index") candidates.push_back(static_cast<long>(i));
        if (candidates.size() != 1)
            input_error(path + ": cannot tell which column holds the scores (" + join(names) + "); use --column");
        idx = candidates.front();
    }
    return column(t, static_cast<size_t>(idx));
}

int cmd_eval(const std::string& scores_path, const std::string& labels_path, const std::string& metric,
             double max_rejection, const std::string& column_name) {
    const Table scores_table = read_table(scores_path);
    const Table labels_table = read_table(labels_path);
    const auto scores = pick_scores(scores_table.get(), scores_path, column_name);

    const auto label_names = column_names(labels_table.get());
    long label_col = -1;
    for (size_t i = 0; i < label_names.size(); ++i)
        if (label_names[i] == "label") label_col = static_cast<long>(i);
    if (label_col < 0) {
        if (label_names.size() != 1) input_error(labels_path + ": expected a single column named 'label'");
        label_col = 0;
    }
    const auto labels = column(labels_table.get(), static_cast<size_t>(label_col));
    if (labels.size() != scores.size())
        input_error("row count mismatch: " + scores_path + " has " + std::to_string(scores.size()) + " rows, " +
                    labels_path + " has " + std::to_string(labels.size()));

    double value = 0.0;
    if (metric == "prr") {
        check(vecuq_prr(scores.data(), labels.data(), scores.size(), max_rejection, &value));
    } else {
        std::vector<int> flags(labels.size());
        for (size_t i = 0; i < labels.size(); ++i) {
            if (labels[i] != 0.0 && labels[i] != 1.0)
                input_error(labels_path + ": row " + std::to_string(i + 1) + " label is not 0 or 1");
            flags[i] = static_cast<int>(labels[i]);
        }
        if (metric == "roc_auc")
            check(vecuq_roc_auc(scores.data(), flags.data(), scores.size(), &value));
        else
            check(vecuq_accuracy_coverage_auc(scores.data(), flags.data(), scores.size(), &value));
    }
    std::printf("%s: %.4f\n", metric.c_str(), value);
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, value);
    std::printf("%s,%.*s\n", metric.c_str(), static_cast<int>(res.ptr - buf), buf);
    return 0;
}

// ---- synth ----

int cmd_synth(const std::string& experiment, std::uint64_t seed, const std::string& out_dir) {
    char* report = nullptr;
    check(vecuq_synth_run(experiment.c_str(), seed, out_dir.c_str(), &report));
    std::fputs(report, stdout);
    vecuq_string_free(report);
    std::printf("outputs written to %s\n", out_dir.c_str());
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Aggregate vectors of uncertainty scores with optimal-transport ranks"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(vecuq_version()));

    FitArgs fit;
    auto* fit_cmd = app.add_subcommand("fit", "Fit a rank model on a calibration score CSV");
    fit_cmd->add_option("calibration", fit.calibration, "Calibration CSV (header of measure names)")->required();
    fit_cmd->add_option("--out,-o", fit.out, "Model file to write")->required();
    fit_cmd->add_option("--scaling", fit.scaling, "Component scaling")
        ->check(CLI::IsMember({"featurewise", "global", "identity"}))
        ->capture_default_str();
    fit_cmd->add_option("--target", fit.target, "Reference marginal")
        ->check(CLI::IsMember({"beta", "exp"}))
        ->capture_default_str();
    fit_cmd->add_option("--alpha", fit.alpha, "Beta target alpha")->capture_default_str();
    fit_cmd->add_option("--beta", fit.beta, "Beta target beta")->capture_default_str();
    fit_cmd->add_option("--lambda", fit.lambda, "Exponential target rate")->capture_default_str();
    fit_cmd->add_option("--gamma", fit.gamma, "Outer anchor multiplier (0 disables anchors)")->capture_default_str();
    fit_cmd->add_option("--epsilon", fit.epsilon, "Entropic regularisation")->capture_default_str();
    fit_cmd->add_option("--tol", fit.tol, "Sinkhorn L1 marginal tolerance")->capture_default_str();
    fit_cmd->add_option("--max-iters", fit.max_iters, "Sinkhorn iteration cap")->capture_default_str();

    std::string model_path, query_path, rank_out;
    auto* rank_cmd = app.add_subcommand("rank", "Score query vectors with a fitted model");
    rank_cmd->add_option("model", model_path, "Model file")->required();
    rank_cmd->add_option("query", query_path, "Query CSV (same measure names as the model)")->required();
    rank_cmd->add_option("--out,-o", rank_out, "Output CSV (default: stdout)");

    std::string scores_path, labels_path, metric = "roc_auc", column_name;
    double max_rejection = 0.5;
    auto* eval_cmd = app.add_subcommand("eval", "Evaluate scores against labels or quality values");
    eval_cmd->add_option("scores", scores_path, "Scores CSV")->required();
    eval_cmd->add_option("labels", labels_path, "Labels CSV with a 'label' column")->required();
    eval_cmd->add_option("--metric", metric, "roc_auc (label 1 = event), acc_cov (label 1 = correct), prr (quality)")
        ->check(CLI::IsMember({"roc_auc", "acc_cov", "prr"}))
        ->capture_default_str();
    eval_cmd->add_option("--max-rejection", max_rejection, "Largest rejection rate integrated by prr")
        ->capture_default_str();
    eval_cmd->add_option("--column", column_name, "Score column (default: rank_score or the only column)");

    std::string experiment, out_dir = ".";
    std::uint64_t seed = 0;
    auto* synth_cmd = app.add_subcommand("synth", "Run a synthetic experiment");
    synth_cmd->add_option("experiment", experiment, "toy or blobs")
        ->check(CLI::IsMember({"toy", "blobs"}))
        ->required();
    synth_cmd->add_option("--seed", seed, "Random seed")->capture_default_str();
    synth_cmd->add_option("--out-dir", out_dir, "Directory for the CSV outputs")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (*fit_cmd) return cmd_fit(fit);
        if (*rank_cmd) return cmd_rank(model_path, query_path, rank_out);
        if (*eval_cmd) return cmd_eval(scores_path, labels_path, metric, max_rejection, column_name);
        if (*synth_cmd) return cmd_synth(experiment, seed, out_dir);
    } catch (const Failure& f) {
        std::fprintf(stderr, "error: %s\n", f.message.c_str());
        return f.exit_code;
    }
    return 1;
}
