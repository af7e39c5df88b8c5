#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>

#include "vecuq/error.hpp"
#include "vecuq/scores.hpp"

using namespace vecuq;

namespace {

Matrix rows(std::initializer_list<std::initializer_list<double>> r) {
    Matrix m(static_cast<Eigen::Index>(r.size()), static_cast<Eigen::Index>(r.begin()->size()));
    Eigen::Index i = 0;
    for (const auto& row : r) {
        Eigen::Index j = 0;
        for (double v : row) m(i, j++) = v;
        ++i;
    }
    return m;
}

}  // namespace

TEST_CASE("stack places each input vector in its own column") {
    const std::vector<std::vector<double>> cols{{1, 2}, {3, 4}};
    const auto s = ScoreMatrix::stack(cols, {"a", "b"});
    CHECK(s.rows() == 2);
    CHECK(s.cols() == 2);
    CHECK(s.values() == rows({{1, 3}, {2, 4}}));
    CHECK(s.measure_names() == std::vector<std::string>{"a", "b"});

    const std::vector<std::vector<double>> single{{0.5}};
    const auto one = ScoreMatrix::stack(single);
    CHECK(one.rows() == 1);
    CHECK(one.values()(0, 0) == 0.5);
    CHECK(one.measure_names() == std::vector<std::string>{"s0"});
}

TEST_CASE("stack rejects negative, non-finite and ragged input naming the column") {
    const std::vector<std::vector<double>> neg{{1.0, 2.0}, {0.3, -0.1}};
    try {
        ScoreMatrix::stack(neg);
        FAIL("expected an error");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::InvalidInput);
        CHECK(std::string(e.what()).find("column 1") != std::string::npos);
    }
    const std::vector<std::vector<double>> nan{{std::numeric_limits<double>::quiet_NaN()}};
    CHECK_THROWS_AS(ScoreMatrix::stack(nan), Error);
    const std::vector<std::vector<double>> ragged{{1, 2}, {3}};
    CHECK_THROWS_AS(ScoreMatrix::stack(ragged), Error);
    CHECK_THROWS_AS(ScoreMatrix(Matrix(0, 2)), Error);
}

TEST_CASE("fit_scaler computes per-column, global and identity parameters") {
    const ScoreMatrix d(rows({{1, 10}, {3, 30}}));
    const auto fw = fit_scaler(ScalingKind::FeatureWise, d);
    CHECK(fw.mins == std::vector<double>{1, 10});
    CHECK(fw.maxes == std::vector<double>{3, 30});
    const auto gl = fit_scaler(ScalingKind::Global, d);
    CHECK(gl.mins == std::vector<double>{1, 1});
    CHECK(gl.maxes == std::vector<double>{30, 30});
    const auto id = fit_scaler(ScalingKind::Identity, d);
    CHECK(id.mins == std::vector<double>{0, 0});
    CHECK(id.maxes == std::vector<double>{1, 1});
}

TEST_CASE("apply_scaler arithmetic, constant columns and no clipping") {
    Scaler s{ScalingKind::FeatureWise, {1, 10}, {3, 30}};
    CHECK(apply_scaler(s, rows({{2, 20}})) == rows({{0.5, 0.5}}));
    CHECK(apply_scaler(s, rows({{5, 10}}))(0, 0) == doctest::Approx(2.0));

    Scaler constant{ScalingKind::FeatureWise, {7}, {7}};
    CHECK(apply_scaler(constant, rows({{7}}))(0, 0) == 0.0);
    CHECK(apply_scaler(constant, rows({{9}}))(0, 0) == 0.0);

    CHECK_THROWS_AS(apply_scaler(s, rows({{1, 2, 3}})), Error);
}

TEST_CASE("scaler properties on random data") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(0.0, 50.0);
    for (int trial = 0; trial < 20; ++trial) {
        Matrix m(30, 4);
        for (Eigen::Index i = 0; i < m.size(); ++i) m.data()[i] = u(rng);
        m.col(3).setConstant(4.25);  // constant column
        const ScoreMatrix d(m);

        const Matrix fw = apply_scaler(fit_scaler(ScalingKind::FeatureWise, d), m);
        for (Eigen::Index k = 0; k < 3; ++k) {
            CHECK(fw.col(k).minCoeff() >= 0.0);
            CHECK(fw.col(k).maxCoeff() <= 1.0);
        }
        CHECK(fw.col(3).isZero(0.0));

        CHECK(apply_scaler(fit_scaler(ScalingKind::Identity, d), m) == m);

        // Global scaling is one affine map: ratios of differences survive.
        const Matrix gl = apply_scaler(fit_scaler(ScalingKind::Global, d), m);
        const double before = (m(0, 0) - m(1, 1)) / (m(2, 2) - m(3, 0));
        const double after = (gl(0, 0) - gl(1, 1)) / (gl(2, 2) - gl(3, 0));
        CHECK(after == doctest::Approx(before).epsilon(1e-9));
    }
}

TEST_CASE("scaling kind names round-trip") {
    for (auto k : {ScalingKind::FeatureWise, ScalingKind::Global, ScalingKind::Identity})
        CHECK(scaling_from_string(to_string(k)) == k);
    CHECK_THROWS_AS(scaling_from_string("zscore"), Error);
}
