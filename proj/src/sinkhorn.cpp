#include "vecuq/sinkhorn.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "vecuq/error.hpp"
#include "vecuq/parallel.hpp"

namespace vecuq {

namespace {

void check_weights(const Vector& w, const char* side) {
    require(w.size() >= 1, std::string(side) + " weights are empty");
    for (Eigen::Index i = 0; i < w.size(); ++i) {
        if (!(std::isfinite(w[i]) && w[i] > 0.0))
            fail(ErrorKind::InvalidInput, std::string(side) + " weight " + std::to_string(i) + " is not positive");
    }
    if (std::fabs(w.sum() - 1.0) > 1e-9) fail(ErrorKind::InvalidInput, std::string(side) + " weights do not sum to 1");
}

// out_i = log sum_j exp(kernel_ij + shift_j) for each row i of a row-major kernel.
void row_logsumexp(const Matrix& kernel, const Vector& shift, Vector& out) {
    const Eigen::Index cols = kernel.cols();
    parallel_for(static_cast<std::size_t>(kernel.rows()), [&](std::size_t begin, std::size_t end) {
        for (std::size_t r = begin; r < end; ++r) {
            const double* row = kernel.data() + static_cast<Eigen::Index>(r) * cols;
            const double* s = shift.data();
            double hi = -std::numeric_limits<double>::infinity();
            for (Eigen::Index j = 0; j < cols; ++j) hi = std::max(hi, row[j] + s[j]);
            double acc = 0.0;
            for (Eigen::Index j = 0; j < cols; ++j) acc += std::exp(row[j] + s[j] - hi);
            out[static_cast<Eigen::Index>(r)] = hi + std::log(acc);
        }
    });
}

}  // namespace

void SinkhornOptions::validate() const {
    require(std::isfinite(epsilon) && epsilon > 0.0, "epsilon must be > 0");
    require(std::isfinite(tol) && tol > 0.0, "tolerance must be > 0");
    require(max_iters >= 1, "max_iters must be >= 1");
}

Matrix Coupling::plan() const {
    const Matrix cost = cost_matrix(source_atoms, target_atoms);
    Matrix p(cost.rows(), cost.cols());
    for (Eigen::Index i = 0; i < cost.rows(); ++i)
        for (Eigen::Index j = 0; j < cost.cols(); ++j)
            p(i, j) = std::exp(log_u[i] - cost(i, j) / epsilon + log_v[j]);
    return p;
}

Matrix cost_matrix(const Matrix& source, const Matrix& target) {
    if (source.cols() != target.cols())
        fail(ErrorKind::InvalidInput, "cost_matrix dimension mismatch: " + std::to_string(source.cols()) + " vs " +
                                          std::to_string(target.cols()));
    Matrix c(source.rows(), target.rows());
    for (Eigen::Index i = 0; i < source.rows(); ++i)
        for (Eigen::Index j = 0; j < target.rows(); ++j) c(i, j) = (source.row(i) - target.row(j)).squaredNorm();
    return c;
}

double marginal_residual(const Matrix& plan, const Vector& source_weights, const Vector& target_weights) {
    const Vector rows = plan.rowwise().sum();
    const Vector cols = plan.colwise().sum().transpose();
    return (rows - source_weights).lpNorm<1>() + (cols - target_weights).lpNorm<1>();
}

Coupling fit_coupling_with_cost(const Matrix& cost, const Vector& source_weights, const Vector& target_weights,
                                const SinkhornOptions& options) {
    options.validate();
    check_weights(source_weights, "source");
    check_weights(target_weights, "target");
    require(cost.rows() == source_weights.size() && cost.cols() == target_weights.size(),
            "cost matrix shape does not match the weight vectors");
    if (!cost.allFinite()) fail(ErrorKind::InvalidInput, "cost matrix has non-finite entries");

    const Eigen::Index p = cost.rows();
    const Eigen::Index q = cost.cols();
    const Matrix kernel = -cost / options.epsilon;        // p x q
    const Matrix kernel_t = kernel.transpose();            // q x p, row-major for column passes
    const Vector log_mu = source_weights.array().log();
    const Vector log_nu = target_weights.array().log();

    Coupling out;
    out.epsilon = options.epsilon;
    out.source_weights = source_weights;
    out.target_weights = target_weights;
    out.log_u = Vector::Zero(p);
    out.log_v = Vector::Zero(q);

    Vector row_lse(p);
    Vector col_lse(q);
    double residual = std::numeric_limits<double>::infinity();
    std::size_t it = 0;
    for (;; ++it) {
        row_logsumexp(kernel, out.log_v, row_lse);
        if (it > 0) {
            // Columns are exact after the v-update; the row side carries the error.
            residual = 0.0;
            for (Eigen::Index i = 0; i < p; ++i)
                residual += std::fabs(std::exp(out.log_u[i] + row_lse[i]) - source_weights[i]);
            if (it == 1) out.first_residual = residual;
            if (residual <= options.tol || it == options.max_iters) break;
        }
        out.log_u = log_mu - row_lse;
        row_logsumexp(kernel_t, out.log_u, col_lse);
        out.log_v = log_nu - col_lse;
    }
    if (!out.log_u.allFinite() || !out.log_v.allFinite())
        fail(ErrorKind::Numerical, "Sinkhorn scalings became non-finite");

    out.iterations_run = it;
    // Report the two-sided residual so rounding on the column side is included.
    row_logsumexp(kernel_t, out.log_u, col_lse);
    double col_residual = 0.0;
    for (Eigen::Index j = 0; j < q; ++j)
        col_residual += std::fabs(std::exp(out.log_v[j] + col_lse[j]) - target_weights[j]);
    out.marginal_residual = residual + col_residual;
    if (it == 1) out.first_residual = out.marginal_residual;
    out.converged = residual <= options.tol;
    return out;
}

Coupling fit_coupling(const Matrix& source, const Vector& source_weights, const ReferenceCloud& reference,
                      const SinkhornOptions& options) {
    require(source.rows() == source_weights.size(), "source atoms and source weights differ in length");
    require(reference.atoms.rows() == reference.weights.size(), "reference atoms and weights differ in length");
    if (!source.allFinite()) fail(ErrorKind::InvalidInput, "source atoms contain non-finite values");
    Coupling out = fit_coupling_with_cost(cost_matrix(source, reference.atoms), source_weights, reference.weights,
                                          options);
    out.source_atoms = source;
    out.target_atoms = reference.atoms;
    return out;
}

}  // namespace vecuq
