#include "vecuq/vecuq.h"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <exception>
#include <new>
#include <sstream>
#include <string>

#include "vecuq/csv.hpp"
#include "vecuq/error.hpp"
#include "vecuq/experiments.hpp"
#include "vecuq/metrics.hpp"
#include "vecuq/model_io.hpp"
#include "vecuq/rank.hpp"

struct vecuq_model {
    vecuq::RankModel model;
};

struct vecuq_table {
    vecuq::CsvTable table;
};

namespace {

thread_local std::string g_last_error;

vecuq_status status_of(vecuq::ErrorKind kind) {
    switch (kind) {
        case vecuq::ErrorKind::InvalidInput: return VECUQ_ERR_INVALID_ARGUMENT;
        case vecuq::ErrorKind::Numerical: return VECUQ_ERR_NUMERICAL;
        case vecuq::ErrorKind::Io: return VECUQ_ERR_IO;
        case vecuq::ErrorKind::Format: return VECUQ_ERR_FORMAT;
    }
    return VECUQ_ERR_INTERNAL;
}

template <class F>
vecuq_status guarded(F&& body) noexcept {
    try {
        g_last_error.clear();
        body();
        return VECUQ_OK;
    } catch (const vecuq::Error& e) {
        g_last_error = e.what();
        return status_of(e.kind());
    } catch (const std::bad_alloc&) {
        g_last_error = "out of memory";
        return VECUQ_ERR_INTERNAL;
    } catch (const std::exception& e) {
        g_last_error = e.what();
        return VECUQ_ERR_INTERNAL;
    } catch (...) {
        g_last_error = "unknown error";
        return VECUQ_ERR_INTERNAL;
    }
}

void need(const void* p, const char* what) {
    if (!p) vecuq::fail(vecuq::ErrorKind::InvalidInput, std::string(what) + " is NULL");
}

vecuq::Matrix copy_matrix(const double* data, size_t rows, size_t cols) {
    if (rows > 0 && cols > 0) need(data, "data");
    vecuq::Matrix m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
    if (rows * cols > 0) std::memcpy(m.data(), data, rows * cols * sizeof(double));
    return m;
}

std::vector<std::string> copy_names(const char* const* names, size_t cols) {
    std::vector<std::string> out;
    if (!names) return out;
    for (size_t i = 0; i < cols; ++i) {
        need(names[i], "column name");
        out.emplace_back(names[i]);
    }
    return out;
}

char* dup_string(const std::string& s) {
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    if (!out) throw std::bad_alloc();
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

}  // namespace

extern "C" {

const char* vecuq_version(void) { return "1.0.0"; }

const char* vecuq_last_error(void) { return g_last_error.c_str(); }

void vecuq_fit_options_default(vecuq_fit_options* o) {
    if (!o) return;
    o->scaling = VECUQ_SCALING_FEATUREWISE;
    o->target = VECUQ_TARGET_BETA;
    o->alpha = 1.0;
    o->beta = 1.0;
    o->lambda = 1.0;
    o->gamma = 5.0;
    o->epsilon = 0.5;
    o->tol = 1e-6;
    o->max_iters = 10000;
}

vecuq_status vecuq_model_fit(const double* scores, size_t rows, size_t cols, const char* const* names,
                             const vecuq_fit_options* options, vecuq_model** out) {
    return guarded([&] {
        need(out, "out");
        *out = nullptr;
        vecuq_fit_options o;
        vecuq_fit_options_default(&o);
        if (options) o = *options;

        vecuq::FitOptions fit;
        switch (o.scaling) {
            case VECUQ_SCALING_FEATUREWISE: fit.scaling = vecuq::ScalingKind::FeatureWise; break;
            case VECUQ_SCALING_GLOBAL: fit.scaling = vecuq::ScalingKind::Global; break;
            case VECUQ_SCALING_IDENTITY: fit.scaling = vecuq::ScalingKind::Identity; break;
            default: vecuq::fail(vecuq::ErrorKind::InvalidInput, "unknown scaling kind");
        }
        if (o.target == VECUQ_TARGET_BETA)
            fit.target = vecuq::BetaMarginal{o.alpha, o.beta};
        else if (o.target == VECUQ_TARGET_EXPONENTIAL)
            fit.target = vecuq::ExponentialMarginal{o.lambda};
        else
            vecuq::fail(vecuq::ErrorKind::InvalidInput, "unknown target family");
        fit.anchors.gamma = o.gamma;
        fit.sinkhorn.epsilon = o.epsilon;
        fit.sinkhorn.tol = o.tol;
        fit.sinkhorn.max_iters = o.max_iters;

        vecuq::ScoreMatrix calibration(copy_matrix(scores, rows, cols), copy_names(names, cols));
        *out = new vecuq_model{vecuq::RankModel::fit(calibration, fit)};
    });
}

void vecuq_model_free(vecuq_model* model) { delete model; }

vecuq_status vecuq_model_save(const vecuq_model* model, const char* path) {
    return guarded([&] {
        need(model, "model");
        need(path, "path");
        vecuq::save_model(model->model, path);
    });
}

vecuq_status vecuq_model_load(const char* path, vecuq_model** out) {
    return guarded([&] {
        need(out, "out");
        need(path, "path");
        *out = nullptr;
        *out = new vecuq_model{vecuq::load_model(path)};
    });
}

vecuq_status vecuq_model_get_info(const vecuq_model* model, vecuq_model_info* out) {
    return guarded([&] {
        need(model, "model");
        need(out, "out");
        const auto& m = model->model;
        out->measure_count = m.dimension();
        out->calibration_count = m.calibration_count();
        out->anchor_count = m.anchor_count();
        out->reference_count = m.reference().size();
        out->iterations = m.coupling().iterations_run;
        out->residual = m.coupling().marginal_residual;
        out->converged = m.coupling().converged ? 1 : 0;
        out->epsilon = m.epsilon();
        out->gamma = m.anchor_config().gamma;
    });
}

const char* vecuq_model_measure_name(const vecuq_model* model, size_t index) {
    if (!model || index >= model->model.measure_names().size()) return nullptr;
    return model->model.measure_names()[index].c_str();
}

vecuq_status vecuq_model_rank(const vecuq_model* model, const double* query, size_t rows, size_t cols,
                              double* out_scores) {
    return guarded([&] {
        need(model, "model");
        if (rows > 0) need(out_scores, "out_scores");
        const vecuq::Vector s = model->model.rank_score(copy_matrix(query, rows, cols));
        if (rows > 0) std::memcpy(out_scores, s.data(), rows * sizeof(double));
    });
}

vecuq_status vecuq_model_project(const vecuq_model* model, const double* query, size_t rows, size_t cols,
                                 double* out_vectors) {
    return guarded([&] {
        need(model, "model");
        if (rows > 0) need(out_vectors, "out_vectors");
        const vecuq::Matrix r = model->model.project(copy_matrix(query, rows, cols));
        if (r.size() > 0) std::memcpy(out_vectors, r.data(), static_cast<size_t>(r.size()) * sizeof(double));
    });
}

vecuq_status vecuq_table_read_csv(const char* path, vecuq_table** out) {
    return guarded([&] {
        need(path, "path");
        need(out, "out");
        *out = nullptr;
        *out = new vecuq_table{vecuq::read_csv(path)};
    });
}

vecuq_status vecuq_table_create(const double* data, size_t rows, size_t cols, const char* const* names,
                                vecuq_table** out) {
    return guarded([&] {
        need(out, "out");
        *out = nullptr;
        vecuq::CsvTable t;
        t.values = copy_matrix(data, rows, cols);
        t.header = copy_names(names, cols);
        if (t.header.empty())
            for (size_t i = 0; i < cols; ++i) t.header.push_back("s" + std::to_string(i));
        *out = new vecuq_table{std::move(t)};
    });
}

void vecuq_table_free(vecuq_table* table) { delete table; }

size_t vecuq_table_rows(const vecuq_table* t) { return t ? static_cast<size_t>(t->table.values.rows()) : 0; }

size_t vecuq_table_cols(const vecuq_table* t) { return t ? t->table.header.size() : 0; }

const char* vecuq_table_column_name(const vecuq_table* t, size_t col) {
    if (!t || col >= t->table.header.size()) return nullptr;
    return t->table.header[col].c_str();
}

const double* vecuq_table_data(const vecuq_table* t) { return t ? t->table.values.data() : nullptr; }

vecuq_status vecuq_table_write_csv(const vecuq_table* table, const char* path) {
    return guarded([&] {
        need(table, "table");
        need(path, "path");
        vecuq::write_csv(path, table->table.header, table->table.values);
    });
}

vecuq_status vecuq_roc_auc(const double* scores, const int* labels, size_t n, double* out) {
    return guarded([&] {
        need(out, "out");
        if (n > 0) {
            need(scores, "scores");
            need(labels, "labels");
        }
        *out = vecuq::roc_auc(std::span<const double>(scores, n), std::span<const int>(labels, n));
    });
}

vecuq_status vecuq_accuracy_coverage_auc(const double* uncertainty, const int* correct, size_t n, double* out) {
    return guarded([&] {
        need(out, "out");
        if (n > 0) {
            need(uncertainty, "uncertainty");
            need(correct, "correct");
        }
        *out = vecuq::accuracy_coverage_auc(std::span<const double>(uncertainty, n), std::span<const int>(correct, n));
    });
}

vecuq_status vecuq_prr(const double* uncertainty, const double* quality, size_t n, double max_rejection, double* out) {
    return guarded([&] {
        need(out, "out");
        if (n > 0) {
            need(uncertainty, "uncertainty");
            need(quality, "quality");
        }
        *out = vecuq::prr(std::span<const double>(uncertainty, n), std::span<const double>(quality, n), max_rejection);
    });
}

vecuq_status vecuq_pareto_front_share(const double* values, size_t methods, size_t tasks, double* out_share) {
    return guarded([&] {
        need(out_share, "out_share");
        vecuq::MethodTaskTable table;
        table.values = copy_matrix(values, methods, tasks);
        for (size_t i = 0; i < methods; ++i) table.methods.push_back("m" + std::to_string(i));
        for (size_t j = 0; j < tasks; ++j) table.tasks.push_back("t" + std::to_string(j));
        const auto share = vecuq::pareto_front_share(table);
        std::copy(share.begin(), share.end(), out_share);
    });
}

vecuq_status vecuq_synth_run(const char* experiment, uint64_t seed, const char* out_dir, char** report) {
    return guarded([&] {
        need(experiment, "experiment");
        need(out_dir, "out_dir");
        need(report, "report");
        *report = nullptr;
        const std::string kind = experiment;
        std::ostringstream os;
        if (kind == "toy") {
            const auto r = vecuq::run_toy(seed);
            vecuq::write_toy_outputs(r, out_dir);
            os << vecuq::format_toy_table(r);
            os << "sinkhorn: iterations " << r.sinkhorn_iterations << ", residual " << r.sinkhorn_residual
               << (r.sinkhorn_converged ? "" : " (not converged)") << "\n";
        } else if (kind == "blobs") {
            const auto r = vecuq::run_blobs(seed);
            vecuq::write_blobs_outputs(r, out_dir);
            os << "blobs: " << r.data.x.rows() << " points, " << r.grid.rows() << " grid points\n";
            os << "sinkhorn: iterations " << r.sinkhorn_iterations << ", residual " << r.sinkhorn_residual << "\n";
        } else {
            vecuq::fail(vecuq::ErrorKind::InvalidInput, "unknown experiment '" + kind + "' (expected toy or blobs)");
        }
        *report = dup_string(os.str());
    });
}

void vecuq_string_free(char* text) { std::free(text); }

}  // extern "C"
