#pragma once

#include <cstddef>
#include <string>
#include <variant>

#include "vecuq/types.hpp"

namespace vecuq {

struct ExponentialMarginal {
    double rate = 1.0;
};

struct BetaMarginal {
    double alpha = 1.0;
    double beta = 1.0;
};

// Every coordinate of the reference shares this marginal (isotropic product).
using Marginal = std::variant<ExponentialMarginal, BetaMarginal>;

std::string describe(const Marginal& marginal);

struct ReferenceSpec {
    Marginal family = BetaMarginal{};
    std::size_t dimension = 1;
    std::size_t atom_budget = 1;

    void validate() const;
};

// Discrete target cloud: q atoms (rows) with probability weights.
struct ReferenceCloud {
    Matrix atoms;
    Vector weights;

    std::size_t size() const noexcept { return static_cast<std::size_t>(atoms.rows()); }
};

// Largest grid we are willing to materialise (k^m atoms).
inline constexpr std::size_t kMaxGridAtoms = std::size_t{1} << 22;

// Smallest k with k^m >= budget. Throws if k^m would exceed kMaxGridAtoms.
std::size_t grid_axis_count(std::size_t dimension, std::size_t budget);

// Full Cartesian midpoint grid {(i + 0.5) / k}^m, last coordinate fastest.
Matrix unit_grid(std::size_t dimension, std::size_t budget);

// Regularized incomplete beta I_x(a, b).
double beta_cdf(double x, double a, double b);

// Quantile function of the marginal at u in (0, 1).
double inverse_cdf(const Marginal& marginal, double u);

ReferenceCloud sample_reference(const ReferenceSpec& spec);

}  // namespace vecuq
