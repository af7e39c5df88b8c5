#include "vecuq/reference.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <vector>

#include "vecuq/error.hpp"

namespace vecuq {

namespace {

// Continued fraction for the incomplete beta (modified Lentz).
double beta_continued_fraction(double x, double a, double b) {
    constexpr int kMaxTerms = 500;
    constexpr double kEps = 1e-16;
    constexpr double kTiny = 1e-300;

    const double qab = a + b;
    const double qap = a + 1.0;
    const double qam = a - 1.0;
    double c = 1.0;
    double d = 1.0 - qab * x / qap;
    if (std::fabs(d) < kTiny) d = kTiny;
    d = 1.0 / d;
    double h = d;
    for (int m = 1; m <= kMaxTerms; ++m) {
        const double m2 = 2.0 * m;
        double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < kTiny) d = kTiny;
        c = 1.0 + aa / c;
        if (std::fabs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        h *= d * c;
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < kTiny) d = kTiny;
        c = 1.0 + aa / c;
        if (std::fabs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::fabs(del - 1.0) < kEps) return h;
    }
    fail(ErrorKind::Numerical, "incomplete beta continued fraction did not converge");
}

double beta_quantile(double u, double a, double b) {
    if (a == 1.0 && b == 1.0) return u;
    // Bisection on the monotone CDF; 60 halvings take the bracket well below
    // the 1e-10 target.
    double lo = 0.0;
    double hi = 1.0;
    for (int it = 0; it < 60 && hi - lo > 1e-15; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (beta_cdf(mid, a, b) < u)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

}  // namespace

std::string describe(const Marginal& marginal) {
    std::ostringstream os;
    if (const auto* e = std::get_if<ExponentialMarginal>(&marginal))
        os << "exponential(rate=" << e->rate << ")";
    else {
        const auto& bm = std::get<BetaMarginal>(marginal);
        os << "beta(alpha=" << bm.alpha << ", beta=" << bm.beta << ")";
    }
    return os.str();
}

void ReferenceSpec::validate() const {
    if (const auto* e = std::get_if<ExponentialMarginal>(&family)) {
        require(std::isfinite(e->rate) && e->rate > 0.0, "exponential rate must be > 0");
    } else {
        const auto& bm = std::get<BetaMarginal>(family);
        require(std::isfinite(bm.alpha) && bm.alpha > 0.0, "beta alpha must be > 0");
        require(std::isfinite(bm.beta) && bm.beta > 0.0, "beta beta must be > 0");
    }
    require(dimension >= 1, "reference dimension must be >= 1");
    require(atom_budget >= 1, "reference atom budget must be >= 1");
}

std::size_t grid_axis_count(std::size_t dimension, std::size_t budget) {
    require(dimension >= 1 && budget >= 1, "grid needs dimension >= 1 and budget >= 1");
    // k^m saturated at kMaxGridAtoms + 1.
    auto saturated_power = [dimension](std::size_t k) {
        std::size_t value = 1;
        for (std::size_t d = 0; d < dimension; ++d) {
            if (value > kMaxGridAtoms / k) return kMaxGridAtoms + 1;
            value *= k;
        }
        return value;
    };
    const double root = std::floor(std::pow(static_cast<double>(budget), 1.0 / static_cast<double>(dimension)));
    std::size_t k = root > 2.0 ? static_cast<std::size_t>(root) - 1 : 1;
    for (;; ++k) {
        const std::size_t v = saturated_power(k);
        if (v > kMaxGridAtoms) break;
        if (v >= budget) return k;
    }
    fail(ErrorKind::InvalidInput, "reference grid for dimension " + std::to_string(dimension) + " and budget " +
                                      std::to_string(budget) + " exceeds " + std::to_string(kMaxGridAtoms) +
                                      " atoms; lower the atom budget or the number of measures");
}

Matrix unit_grid(std::size_t dimension, std::size_t budget) {
    const std::size_t k = grid_axis_count(dimension, budget);
    std::size_t q = 1;
    for (std::size_t d = 0; d < dimension; ++d) q *= k;
    Matrix grid(q, dimension);
    std::vector<std::size_t> idx(dimension, 0);
    for (std::size_t r = 0; r < q; ++r) {
        for (std::size_t d = 0; d < dimension; ++d)
            grid(r, d) = (static_cast<double>(idx[d]) + 0.5) / static_cast<double>(k);
        for (std::size_t d = dimension; d-- > 0;) {
            if (++idx[d] < k) break;
            idx[d] = 0;
        }
    }
    return grid;
}

double beta_cdf(double x, double a, double b) {
    require(a > 0.0 && b > 0.0, "beta parameters must be > 0");
    if (x <= 0.0) return 0.0;
    if (x >= 1.0) return 1.0;
    const double log_front =
        std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) + a * std::log(x) + b * std::log1p(-x);
    const double front = std::exp(log_front);
    if (x < (a + 1.0) / (a + b + 2.0)) return front * beta_continued_fraction(x, a, b) / a;
    return 1.0 - front * beta_continued_fraction(1.0 - x, b, a) / b;
}

double inverse_cdf(const Marginal& marginal, double u) {
    if (!(u > 0.0 && u < 1.0)) fail(ErrorKind::InvalidInput, "inverse_cdf needs u in the open interval (0, 1)");
    if (const auto* e = std::get_if<ExponentialMarginal>(&marginal)) return -std::log1p(-u) / e->rate;
    const auto& bm = std::get<BetaMarginal>(marginal);
    return beta_quantile(u, bm.alpha, bm.beta);
}

ReferenceCloud sample_reference(const ReferenceSpec& spec) {
    spec.validate();
    const std::size_t k = grid_axis_count(spec.dimension, spec.atom_budget);
    // All axes share the same k midpoints, so transform each once.
    std::vector<double> axis(k);
    for (std::size_t i = 0; i < k; ++i)
        axis[i] = inverse_cdf(spec.family, (static_cast<double>(i) + 0.5) / static_cast<double>(k));

    ReferenceCloud cloud;
    cloud.atoms = unit_grid(spec.dimension, spec.atom_budget);
    for (Eigen::Index r = 0; r < cloud.atoms.rows(); ++r) {
        for (Eigen::Index d = 0; d < cloud.atoms.cols(); ++d) {
            const auto i = static_cast<std::size_t>(std::lround(cloud.atoms(r, d) * static_cast<double>(k) - 0.5));
            cloud.atoms(r, d) = axis[i];
        }
    }
    const auto q = cloud.atoms.rows();
    cloud.weights = Vector::Constant(q, 1.0 / static_cast<double>(q));
    return cloud;
}

}  // namespace vecuq
