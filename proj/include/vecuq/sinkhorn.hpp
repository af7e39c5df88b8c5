#pragma once

#include <cstddef>

#include "vecuq/reference.hpp"
#include "vecuq/types.hpp"

namespace vecuq {

struct SinkhornOptions {
    double epsilon = 0.5;
    std::size_t max_iters = 10000;
    double tol = 1e-6;  // L1 marginal residual

    void validate() const;
};

// Entropic OT plan in log-scaling form:
//   P_ij = exp(log_u_i - C_ij / epsilon + log_v_j),  C_ij = |source_i - target_j|^2.
struct Coupling {
    double epsilon = 0.5;
    Matrix source_atoms;
    Vector source_weights;
    Matrix target_atoms;
    Vector target_weights;
    Vector log_u;
    Vector log_v;
    std::size_t iterations_run = 0;
    double marginal_residual = 0.0;  // |P 1 - mu|_1 + |P^T 1 - nu|_1 at exit
    double first_residual = 0.0;     // same quantity after the first iteration
    bool converged = false;

    // Materialises the p x q plan. Intended for diagnostics and tests.
    Matrix plan() const;
};

// Squared Euclidean distances between rows of source and rows of target.
Matrix cost_matrix(const Matrix& source, const Matrix& target);

// L1 marginal residual of an arbitrary plan.
double marginal_residual(const Matrix& plan, const Vector& source_weights, const Vector& target_weights);

// Log-domain Sinkhorn. Stops once the L1 marginal residual is <= tol or after
// max_iters iterations; hitting the cap is reported through converged = false,
// not thrown.
Coupling fit_coupling(const Matrix& source, const Vector& source_weights, const ReferenceCloud& reference,
                      const SinkhornOptions& options);

// Same solver on an explicit cost matrix. Used by fit_coupling and by tests
// that need to rescale the cost independently of the atoms.
Coupling fit_coupling_with_cost(const Matrix& cost, const Vector& source_weights, const Vector& target_weights,
                                const SinkhornOptions& options);

}  // namespace vecuq
