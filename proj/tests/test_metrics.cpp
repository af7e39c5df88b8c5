#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "vecuq/error.hpp"
#include "vecuq/metrics.hpp"

using namespace vecuq;

namespace {

double pairwise_auc(const std::vector<double>& s, const std::vector<int>& y) {
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < s.size(); ++i)
        for (std::size_t j = 0; j < s.size(); ++j)
            if (y[i] == 1 && y[j] == 0) {
                den += 1.0;
                num += s[i] > s[j] ? 1.0 : (s[i] == s[j] ? 0.5 : 0.0);
            }
    return num / den;
}

double prefix_accuracy_auc(const std::vector<double>& u, const std::vector<int>& c) {
    std::vector<std::size_t> order(u.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return u[a] < u[b]; });
    double total = 0.0;
    for (std::size_t k = 1; k <= u.size(); ++k) {
        double hits = 0.0;
        for (std::size_t i = 0; i < k; ++i) hits += c[order[i]];
        total += hits / static_cast<double>(k);
    }
    return total / static_cast<double>(u.size());
}

}  // namespace

TEST_CASE("roc_auc examples") {
    CHECK(roc_auc(std::vector<double>{0.1, 0.4, 0.35, 0.8}, std::vector<int>{0, 0, 1, 1}) == doctest::Approx(0.75));
    CHECK(roc_auc(std::vector<double>{1, 2, 3}, std::vector<int>{0, 1, 1}) == 1.0);
    CHECK(roc_auc(std::vector<double>{3, 2, 1}, std::vector<int>{0, 1, 1}) == 0.0);
    CHECK(roc_auc(std::vector<double>{1, 1, 1, 1}, std::vector<int>{0, 1, 0, 1}) == 0.5);
    CHECK_THROWS_AS(roc_auc(std::vector<double>{1, 2}, std::vector<int>{1, 1}), Error);
    CHECK_THROWS_AS(roc_auc(std::vector<double>{1, 2}, std::vector<int>{0, 2}), Error);
    CHECK_THROWS_AS(roc_auc(std::vector<double>{1}, std::vector<int>{0, 1}), Error);
}

TEST_CASE("roc_auc matches the pairwise definition with ties") {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 50; ++trial) {
        const std::size_t n = 5 + rng() % 60;
        std::vector<double> s(n);
        std::vector<int> y(n);
        for (std::size_t i = 0; i < n; ++i) {
            s[i] = static_cast<double>(rng() % 7);  // plenty of ties
            y[i] = static_cast<int>(rng() % 2);
        }
        y[0] = 0;
        y[1] = 1;
        CHECK(roc_auc(s, y) == doctest::Approx(pairwise_auc(s, y)).epsilon(1e-14));
    }
}

TEST_CASE("roc_auc is invariant under strictly increasing transforms") {
    std::mt19937_64 rng(4);
    std::normal_distribution<double> g;
    std::vector<double> s(200), t(200);
    std::vector<int> y(200);
    for (std::size_t i = 0; i < s.size(); ++i) {
        s[i] = g(rng);
        t[i] = std::exp(3.0 * s[i]) + 1.0;
        y[i] = static_cast<int>(i % 3 == 0);
    }
    CHECK(roc_auc(s, y) == roc_auc(t, y));
}

TEST_CASE("accuracy_coverage_auc examples and oracle") {
    CHECK(accuracy_coverage_auc(std::vector<double>{0.1, 0.9}, std::vector<int>{1, 0}) == doctest::Approx(0.75));
    CHECK(accuracy_coverage_auc(std::vector<double>{0.9, 0.1}, std::vector<int>{1, 0}) == doctest::Approx(0.25));
    CHECK(accuracy_coverage_auc(std::vector<double>{1, 2, 3}, std::vector<int>{1, 1, 1}) == 1.0);
    CHECK_THROWS_AS(accuracy_coverage_auc(std::vector<double>{}, std::vector<int>{}), Error);

    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 30; ++trial) {
        const std::size_t n = 1 + rng() % 40;
        std::vector<double> u(n);
        std::vector<int> c(n);
        for (std::size_t i = 0; i < n; ++i) {
            u[i] = static_cast<double>(rng() % 5);
            c[i] = static_cast<int>(rng() % 2);
        }
        CHECK(accuracy_coverage_auc(u, c) == doctest::Approx(prefix_accuracy_auc(u, c)).epsilon(1e-14));
    }
}

TEST_CASE("prr of the oracle ordering is one") {
    std::mt19937_64 rng(6);
    std::uniform_real_distribution<double> unif;
    for (int trial = 0; trial < 10; ++trial) {
        std::vector<double> q(100), u(100);
        for (std::size_t i = 0; i < q.size(); ++i) {
            q[i] = unif(rng);
            u[i] = -q[i];
        }
        CHECK(prr(u, q) == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("prr of the worst ordering on a small example") {
    const std::vector<double> q{0.1, 0.4, 0.2, 0.9, 0.6};
    CHECK(prr(q, q, 0.5) == doctest::Approx(-193.0 / 167.0).epsilon(1e-12));
}

TEST_CASE("prr of independent uncertainty is close to zero") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> unif;
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<double> q(10000), u(10000);
        for (std::size_t i = 0; i < q.size(); ++i) {
            q[i] = unif(rng);
            u[i] = unif(rng);
        }
        CHECK(std::fabs(prr(u, q)) < 0.05);
    }
}

TEST_CASE("prr rejects degenerate input") {
    CHECK_THROWS_AS(prr(std::vector<double>{1, 2, 3}, std::vector<double>{0.5, 0.5, 0.5}), Error);
    CHECK_THROWS_AS(prr(std::vector<double>{1}, std::vector<double>{0.5}), Error);
    CHECK_THROWS_AS(prr(std::vector<double>{1, 2}, std::vector<double>{0.1, 0.2}, 1.5), Error);
}

TEST_CASE("pareto share examples") {
    MethodTaskTable t{{"a", "b"}, {"t1", "t2"}, Matrix(2, 2)};
    t.values << 0.9, 0.9, 0.8, 0.8;
    auto share = pareto_front_share(t);
    CHECK(share == std::vector<double>{1.0, 0.0});

    t.values << 0.9, 0.7, 0.8, 0.8;
    share = pareto_front_share(t);
    CHECK(share == std::vector<double>{1.0, 1.0});

    // Identical rows dominate nobody.
    t.values << 0.5, 0.5, 0.5, 0.5;
    CHECK(pareto_front_share(t) == std::vector<double>{1.0, 1.0});

    MethodTaskTable one_task{{"a"}, {"t"}, Matrix::Ones(1, 1)};
    CHECK_THROWS_AS(pareto_front_share(one_task), Error);
    CHECK(all_task_pairs(4).size() == 6);
}

TEST_CASE("pareto share matches brute force over random tables") {
    std::mt19937_64 rng(8);
    for (int trial = 0; trial < 50; ++trial) {
        const std::size_t methods = 2 + rng() % 5, tasks = 2 + rng() % 5;
        MethodTaskTable t;
        for (std::size_t i = 0; i < methods; ++i) t.methods.push_back("m" + std::to_string(i));
        for (std::size_t j = 0; j < tasks; ++j) t.tasks.push_back("t" + std::to_string(j));
        t.values.resize(static_cast<Eigen::Index>(methods), static_cast<Eigen::Index>(tasks));
        for (Eigen::Index i = 0; i < t.values.size(); ++i) t.values.data()[i] = static_cast<double>(rng() % 4);

        std::vector<double> expected(methods, 0.0);
        std::size_t pairs = 0;
        for (std::size_t a = 0; a < tasks; ++a)
            for (std::size_t b = a + 1; b < tasks; ++b) {
                ++pairs;
                for (std::size_t i = 0; i < methods; ++i) {
                    bool dominated = false;
                    for (std::size_t k = 0; k < methods && !dominated; ++k) {
                        const auto v = [&](std::size_t m, std::size_t c) {
                            return t.values(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(c));
                        };
                        dominated = v(k, a) >= v(i, a) && v(k, b) >= v(i, b) && (v(k, a) > v(i, a) || v(k, b) > v(i, b));
                    }
                    expected[i] += dominated ? 0.0 : 1.0;
                }
            }
        for (auto& e : expected) e /= static_cast<double>(pairs);
        const auto got = pareto_front_share(t);
        for (std::size_t i = 0; i < methods; ++i) CHECK(got[i] == doctest::Approx(expected[i]).epsilon(1e-15));

        // Adding a constant to a task column changes nothing.
        MethodTaskTable shifted = t;
        shifted.values.col(0).array() += 3.0;
        CHECK(pareto_front_share(shifted) == got);
    }
}

TEST_CASE("pareto share over a restricted pair list") {
    MethodTaskTable t{{"a", "b"}, {"t1", "t2", "t3"}, Matrix(2, 3)};
    t.values << 1, 1, 0, 0, 0, 1;
    const auto share = pareto_front_share(t, std::vector<TaskPair>{{0, 1}});
    CHECK(share == std::vector<double>{1.0, 0.0});
    CHECK_THROWS_AS(pareto_front_share(t, std::vector<TaskPair>{{0, 0}}), Error);
    CHECK_THROWS_AS(pareto_front_share(t, std::vector<TaskPair>{{0, 5}}), Error);
}
