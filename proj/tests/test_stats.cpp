#include <cmath>
#include <random>

#include "doctest.h"

#include "bures/error.hpp"
#include "bures/stats.hpp"
#include "oracles.hpp"

using namespace bures;

namespace {

std::vector<double> uniform_draws(std::size_t n, oracle::Engine& eng) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<double> out(n);
    for (auto& x : out) {
        x = u(eng);
    }
    return out;
}

}  // namespace

TEST_CASE("ecdf examples") {
    const std::vector<double> single{0.5};
    CHECK(ecdf(single)(0.4) == 0.0);
    CHECK(ecdf(single)(0.5) == 1.0);
    const std::vector<double> four{4.0, 2.0, 1.0, 3.0};
    CHECK(ecdf(four)(2.5) == 0.5);
    CHECK(ecdf(four)(0.0) == 0.0);
    CHECK(ecdf(four)(10.0) == 1.0);
    const std::vector<double> ties{1.0, 1.0, 2.0};
    CHECK(ecdf(ties)(1.0) == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
    CHECK_THROWS_AS(ecdf(std::vector<double>{}), InvalidInputError);
}

TEST_CASE("ks_two_sample examples") {
    const std::vector<double> a{0.3, 0.1, 0.2};
    CHECK(ks_two_sample(a, a).statistic == 0.0);
    CHECK(ks_two_sample(a, a).pass);
    const std::vector<double> b{1.0, 2.0};
    const KsResult disjoint = ks_two_sample(a, b);
    CHECK(disjoint.statistic == 1.0);
    CHECK(disjoint.n == 3);
    CHECK(disjoint.m == 2);
    CHECK_THROWS_AS(ks_two_sample(std::vector<double>{}, b), InvalidInputError);
}

TEST_CASE("ks_two_sample separates u from u^2") {
    oracle::Engine eng(31);
    const std::vector<double> u = uniform_draws(1000, eng);
    std::vector<double> sq = uniform_draws(1000, eng);
    for (auto& x : sq) {
        x *= x;
    }
    const KsResult r = ks_two_sample(u, sq);
    CHECK(r.statistic > 0.2);
    CHECK(!r.pass);
}

TEST_CASE("ks_two_sample matches the O(nm) oracle, including ties") {
    oracle::Engine eng(32);
    std::uniform_int_distribution<int> coarse(0, 9);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<double> a = uniform_draws(37 + trial, eng);
        std::vector<double> b = uniform_draws(53, eng);
        if (trial % 2 == 0) {
            for (auto& x : a) x = coarse(eng);
            for (auto& x : b) x = coarse(eng);
        }
        CHECK(ks_two_sample(a, b).statistic == doctest::Approx(oracle::brute_force_ks(a, b)).epsilon(1e-15));
    }
}

TEST_CASE("ks_two_sample is symmetric and invariant under monotone maps") {
    oracle::Engine eng(33);
    const std::vector<double> a = uniform_draws(300, eng);
    const std::vector<double> b = uniform_draws(400, eng);
    CHECK(ks_two_sample(a, b).statistic == ks_two_sample(b, a).statistic);
    std::vector<double> ea = a;
    std::vector<double> eb = b;
    for (auto& x : ea) x = std::exp(3.0 * x);
    for (auto& x : eb) x = std::exp(3.0 * x);
    CHECK(ks_two_sample(ea, eb).statistic == ks_two_sample(a, b).statistic);
}

TEST_CASE("ks_critical_001") {
    CHECK(ks_critical_001(1000, 1000) == doctest::Approx(0.072806).epsilon(1e-5));
    CHECK(ks_critical_001(1000, 1000) < 0.0729);
    CHECK(ks_critical_001(10000, 10000) == doctest::Approx(1.628 * std::sqrt(2e-4)).epsilon(1e-14));
}

TEST_CASE("ks_one_sample") {
    const std::vector<double> grid{0.125, 0.375, 0.625, 0.875};
    CHECK(ks_one_sample(grid, [](double t) { return t; }) == doctest::Approx(0.125).epsilon(1e-15));
    const std::vector<double> low{0.0, 0.0};
    CHECK(ks_one_sample(low, [](double t) { return t; }) == 1.0);
}

TEST_CASE("cumulative_pairs examples") {
    const std::vector<double> a{3.0, 1.0, 2.0};
    const std::vector<double> b{30.0, 10.0, 20.0};
    const auto pairs = cumulative_pairs(a, b);
    REQUIRE(pairs.size() == 3);
    CHECK(pairs[0] == std::pair{1.0, 10.0});
    CHECK(pairs[1] == std::pair{2.0, 20.0});
    CHECK(pairs[2] == std::pair{3.0, 30.0});
    CHECK(max_diagonal_deviation(pairs) == 27.0);

    const auto same = cumulative_pairs(a, a);
    CHECK(max_diagonal_deviation(same) == 0.0);
    CHECK_THROWS_AS(cumulative_pairs(a, std::vector<double>{1.0}), InvalidInputError);
    CHECK_THROWS_AS(cumulative_pairs(std::vector<double>{}, std::vector<double>{}), InvalidInputError);
}
