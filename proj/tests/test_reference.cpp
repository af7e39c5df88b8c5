#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include <boost/math/special_functions/beta.hpp>

#include "vecuq/error.hpp"
#include "vecuq/reference.hpp"

using namespace vecuq;

TEST_CASE("unit_grid uses midpoints and the smallest sufficient axis count") {
    const Matrix g1 = unit_grid(1, 4);
    REQUIRE(g1.rows() == 4);
    CHECK(g1(0, 0) == 0.125);
    CHECK(g1(1, 0) == 0.375);
    CHECK(g1(2, 0) == 0.625);
    CHECK(g1(3, 0) == 0.875);

    const Matrix g2 = unit_grid(2, 4);
    REQUIRE(g2.rows() == 4);
    std::vector<std::pair<double, double>> pts;
    for (Eigen::Index i = 0; i < 4; ++i) pts.emplace_back(g2(i, 0), g2(i, 1));
    std::sort(pts.begin(), pts.end());
    CHECK(pts == std::vector<std::pair<double, double>>{{0.25, 0.25}, {0.25, 0.75}, {0.75, 0.25}, {0.75, 0.75}});

    CHECK(unit_grid(2, 5).rows() == 9);
    CHECK(grid_axis_count(2, 5) == 3);
    CHECK(grid_axis_count(3, 27) == 3);
    CHECK(grid_axis_count(3, 28) == 4);
    CHECK(grid_axis_count(1, 1) == 1);
    CHECK(grid_axis_count(5, 231) == 3);

    const Matrix g = unit_grid(3, 100);
    CHECK(g.minCoeff() > 0.0);
    CHECK(g.maxCoeff() < 1.0);
}

TEST_CASE("unit_grid rejects grids beyond the atom cap") {
    CHECK_THROWS_AS(unit_grid(30, 100), Error);
    CHECK_THROWS_AS(grid_axis_count(1, kMaxGridAtoms + 1), Error);
    CHECK_THROWS_AS(unit_grid(0, 4), Error);
}

TEST_CASE("inverse_cdf closed forms") {
    CHECK(inverse_cdf(ExponentialMarginal{1.0}, 1.0 - std::exp(-1.0)) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(inverse_cdf(ExponentialMarginal{2.0}, 0.5) == doctest::Approx(std::log(2.0) / 2.0).epsilon(1e-14));
    CHECK(inverse_cdf(BetaMarginal{1, 1}, 0.3) == 0.3);
    CHECK(inverse_cdf(BetaMarginal{2, 2}, 0.5) == doctest::Approx(0.5).epsilon(1e-10));
    CHECK_THROWS_AS(inverse_cdf(BetaMarginal{}, 0.0), Error);
    CHECK_THROWS_AS(inverse_cdf(ExponentialMarginal{}, 1.0), Error);
}

TEST_CASE("beta_cdf agrees with an independent implementation") {
    for (double a : {0.5, 1.0, 2.0, 3.5, 10.0})
        for (double b : {0.5, 1.0, 2.0, 5.0})
            for (double x = 0.01; x < 1.0; x += 0.049) {
                CHECK(beta_cdf(x, a, b) == doctest::Approx(boost::math::ibeta(a, b, x)).epsilon(1e-12));
            }
}

TEST_CASE("beta inverse satisfies CDF(inverse(u)) == u") {
    for (double a : {0.5, 1.0, 2.0, 3.5, 10.0})
        for (double b : {0.5, 1.0, 2.0, 5.0})
            for (double u = 0.005; u < 1.0; u += 0.0331) {
                const double x = inverse_cdf(BetaMarginal{a, b}, u);
                CHECK(std::fabs(boost::math::ibeta(a, b, x) - u) < 1e-8);
                CHECK(std::fabs(x - boost::math::ibeta_inv(a, b, u)) < 1e-9);
            }
}

TEST_CASE("sample_reference examples") {
    const auto uni = sample_reference({BetaMarginal{1, 1}, 1, 4});
    REQUIRE(uni.size() == 4);
    CHECK(uni.atoms(0, 0) == 0.125);
    CHECK(uni.atoms(3, 0) == 0.875);
    for (Eigen::Index i = 0; i < 4; ++i) CHECK(uni.weights[i] == 0.25);

    const auto ex = sample_reference({ExponentialMarginal{1.0}, 1, 2});
    REQUIRE(ex.size() == 2);
    CHECK(ex.atoms(0, 0) == doctest::Approx(-std::log(0.75)).epsilon(1e-15));
    CHECK(ex.atoms(1, 0) == doctest::Approx(-std::log(0.25)).epsilon(1e-15));
}

TEST_CASE("reference cloud invariants") {
    for (std::size_t m : {1u, 2u, 3u, 4u}) {
        for (std::size_t budget : {1u, 7u, 50u, 300u}) {
            const auto beta = sample_reference({BetaMarginal{2, 3}, m, budget});
            CHECK(std::fabs(beta.weights.sum() - 1.0) < 1e-12);
            CHECK(beta.weights.minCoeff() > 0.0);
            CHECK(beta.atoms.minCoeff() >= 0.0);
            CHECK(beta.atoms.maxCoeff() <= 1.0);
            CHECK(beta.size() >= budget);

            const auto ex = sample_reference({ExponentialMarginal{0.5}, m, budget});
            CHECK(ex.atoms.minCoeff() >= 0.0);
            CHECK(std::fabs(ex.weights.sum() - 1.0) < 1e-12);

            // Uniform marginal: midpoint grid is symmetric about 1/2.
            const auto uni = sample_reference({BetaMarginal{1, 1}, m, budget});
            for (Eigen::Index d = 0; d < uni.atoms.cols(); ++d)
                CHECK(uni.atoms.col(d).mean() == doctest::Approx(0.5).epsilon(1e-12));
        }
    }
}

TEST_CASE("atoms increase along each grid axis and coordinates are exchangeable") {
    const std::size_t m = 3;
    const auto cloud = sample_reference({BetaMarginal{2, 5}, m, 64});
    const std::size_t k = grid_axis_count(m, 64);
    // Last coordinate fastest: consecutive rows within a block step along axis m-1.
    for (Eigen::Index r = 0; r + 1 < cloud.atoms.rows(); ++r) {
        if ((static_cast<std::size_t>(r) + 1) % k == 0) continue;
        CHECK(cloud.atoms(r + 1, m - 1) > cloud.atoms(r, m - 1));
    }
    // Swapping two coordinates maps the atom multiset onto itself.
    auto sorted_rows = [](Matrix a) {
        std::vector<std::vector<double>> out;
        for (Eigen::Index r = 0; r < a.rows(); ++r) out.emplace_back(a.row(r).data(), a.row(r).data() + a.cols());
        std::sort(out.begin(), out.end());
        return out;
    };
    Matrix swapped = cloud.atoms;
    swapped.col(0).swap(swapped.col(2));
    CHECK(sorted_rows(swapped) == sorted_rows(cloud.atoms));
}

TEST_CASE("reference spec validation") {
    CHECK_THROWS_AS(sample_reference({ExponentialMarginal{0.0}, 1, 4}), Error);
    CHECK_THROWS_AS(sample_reference({BetaMarginal{-1, 1}, 1, 4}), Error);
    CHECK_THROWS_AS(sample_reference({BetaMarginal{1, 1}, 1, 0}), Error);
}
