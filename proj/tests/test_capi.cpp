#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstring>
#include <filesystem>
#include <string>
#include <vector>

#include "vecuq/vecuq.h"

namespace {

std::vector<double> grid_scores(std::size_t rows, std::size_t cols) {
    std::vector<double> v(rows * cols);
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = std::fmod(0.37 * static_cast<double>(i * i % 97), 3.0);
    return v;
}

}  // namespace

TEST_CASE("version and defaults") {
    CHECK(std::strlen(vecuq_version()) > 0);
    vecuq_fit_options o;
    vecuq_fit_options_default(&o);
    CHECK(o.scaling == VECUQ_SCALING_FEATUREWISE);
    CHECK(o.target == VECUQ_TARGET_BETA);
    CHECK(o.gamma == 5.0);
    CHECK(o.epsilon == 0.5);
    CHECK(o.tol == 1e-6);
    CHECK(o.max_iters == 10000);
}

TEST_CASE("fit, rank, save and load through handles") {
    const auto cal = grid_scores(40, 2);
    const char* names[] = {"msp", "maha"};
    vecuq_fit_options o;
    vecuq_fit_options_default(&o);
    vecuq_model* model = nullptr;
    REQUIRE(vecuq_model_fit(cal.data(), 40, 2, names, &o, &model) == VECUQ_OK);

    vecuq_model_info info;
    REQUIRE(vecuq_model_get_info(model, &info) == VECUQ_OK);
    CHECK(info.measure_count == 2);
    CHECK(info.calibration_count == 40);
    CHECK(info.anchor_count == 3);
    CHECK(info.reference_count == 49);
    CHECK(info.converged == 1);
    CHECK(info.residual <= 1e-6);
    CHECK(std::string(vecuq_model_measure_name(model, 1)) == "maha");
    CHECK(vecuq_model_measure_name(model, 2) == nullptr);

    const auto q = grid_scores(7, 2);
    std::vector<double> scores(7), vectors(14);
    REQUIRE(vecuq_model_rank(model, q.data(), 7, 2, scores.data()) == VECUQ_OK);
    REQUIRE(vecuq_model_project(model, q.data(), 7, 2, vectors.data()) == VECUQ_OK);
    for (std::size_t i = 0; i < 7; ++i)
        CHECK(scores[i] == doctest::Approx(std::hypot(vectors[2 * i], vectors[2 * i + 1])));
    CHECK(vecuq_model_rank(model, nullptr, 0, 2, nullptr) == VECUQ_OK);

    CHECK(vecuq_model_rank(model, q.data(), 7, 3, scores.data()) == VECUQ_ERR_INVALID_ARGUMENT);
    CHECK(std::strlen(vecuq_last_error()) > 0);

    const auto dir = std::filesystem::temp_directory_path() / "vecuq_test_capi";
    std::filesystem::create_directories(dir);
    const auto path = (dir / "m.json").string();
    REQUIRE(vecuq_model_save(model, path.c_str()) == VECUQ_OK);
    vecuq_model* loaded = nullptr;
    REQUIRE(vecuq_model_load(path.c_str(), &loaded) == VECUQ_OK);
    std::vector<double> again(7);
    REQUIRE(vecuq_model_rank(loaded, q.data(), 7, 2, again.data()) == VECUQ_OK);
    CHECK(again == scores);
    vecuq_model_free(loaded);
    vecuq_model_free(model);

    CHECK(vecuq_model_load((dir / "missing.json").string().c_str(), &loaded) == VECUQ_ERR_IO);
    std::filesystem::remove_all(dir);
}

TEST_CASE("fit rejects invalid input with status codes") {
    vecuq_model* model = nullptr;
    const double negative[] = {-1.0, 2.0};
    CHECK(vecuq_model_fit(negative, 2, 1, nullptr, nullptr, &model) == VECUQ_ERR_INVALID_ARGUMENT);
    CHECK(model == nullptr);
    vecuq_fit_options o;
    vecuq_fit_options_default(&o);
    o.gamma = 0.5;
    const double ok[] = {1.0, 2.0};
    CHECK(vecuq_model_fit(ok, 2, 1, nullptr, &o, &model) == VECUQ_ERR_INVALID_ARGUMENT);
    CHECK(vecuq_model_fit(ok, 2, 1, nullptr, nullptr, nullptr) == VECUQ_ERR_INVALID_ARGUMENT);
}

TEST_CASE("tables") {
    const double data[] = {1.0, 2.0, 3.0, 4.0, 5.0, 6.0};
    const char* names[] = {"a", "b"};
    vecuq_table* t = nullptr;
    REQUIRE(vecuq_table_create(data, 3, 2, names, &t) == VECUQ_OK);
    CHECK(vecuq_table_rows(t) == 3);
    CHECK(vecuq_table_cols(t) == 2);
    CHECK(std::string(vecuq_table_column_name(t, 0)) == "a");

    const auto path = (std::filesystem::temp_directory_path() / "vecuq_test_capi_table.csv").string();
    REQUIRE(vecuq_table_write_csv(t, path.c_str()) == VECUQ_OK);
    vecuq_table* back = nullptr;
    REQUIRE(vecuq_table_read_csv(path.c_str(), &back) == VECUQ_OK);
    CHECK(std::memcmp(vecuq_table_data(back), data, sizeof data) == 0);
    CHECK(std::string(vecuq_table_column_name(back, 1)) == "b");
    vecuq_table_free(back);
    vecuq_table_free(t);
    std::filesystem::remove(path);

    CHECK(vecuq_table_read_csv("/nonexistent.csv", &back) == VECUQ_ERR_IO);
}

TEST_CASE("metrics") {
    const double s[] = {0.1, 0.4, 0.35, 0.8};
    const int y[] = {0, 0, 1, 1};
    double out = 0.0;
    REQUIRE(vecuq_roc_auc(s, y, 4, &out) == VECUQ_OK);
    CHECK(out == doctest::Approx(0.75));

    const double u[] = {0.1, 0.9};
    const int c[] = {1, 0};
    REQUIRE(vecuq_accuracy_coverage_auc(u, c, 2, &out) == VECUQ_OK);
    CHECK(out == doctest::Approx(0.75));

    const double q[] = {0.1, 0.4, 0.2, 0.9, 0.6};
    const double neg[] = {-0.1, -0.4, -0.2, -0.9, -0.6};
    REQUIRE(vecuq_prr(neg, q, 5, 0.5, &out) == VECUQ_OK);
    CHECK(out == doctest::Approx(1.0));
    const double flat[] = {0.5, 0.5, 0.5};
    CHECK(vecuq_prr(flat, flat, 3, 0.5, &out) == VECUQ_ERR_INVALID_ARGUMENT);

    const double table[] = {0.9, 0.9, 0.8, 0.8};
    double share[2];
    REQUIRE(vecuq_pareto_front_share(table, 2, 2, share) == VECUQ_OK);
    CHECK(share[0] == 1.0);
    CHECK(share[1] == 0.0);
}

TEST_CASE("synthetic experiment through the C interface") {
    const auto dir = std::filesystem::temp_directory_path() / "vecuq_test_capi_synth";
    char* report = nullptr;
    REQUIRE(vecuq_synth_run("toy", 0, dir.string().c_str(), &report) == VECUQ_OK);
    REQUIRE(report != nullptr);
    CHECK(std::string(report).find("Mahalanobis") != std::string::npos);
    vecuq_string_free(report);
    CHECK(std::filesystem::exists(dir / "toy_roc_auc.csv"));
    CHECK(vecuq_synth_run("nope", 0, dir.string().c_str(), &report) == VECUQ_ERR_INVALID_ARGUMENT);
    std::filesystem::remove_all(dir);
}
