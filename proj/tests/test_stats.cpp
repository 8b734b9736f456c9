#include <doctest.h>

#include <cmath>

#include "cac/stats.hpp"

using namespace cac;

TEST_SUITE("stats") {

TEST_CASE("mean and sample standard deviation") {
    CHECK(mean({1.0, 2.0, 3.0, 4.0}) == doctest::Approx(2.5));
    CHECK(sample_stddev({2.0, 4.0, 4.0, 4.0, 5.0, 5.0, 7.0, 9.0}) ==
          doctest::Approx(std::sqrt(32.0 / 7.0)).epsilon(1e-12));
    CHECK(sample_stddev({3.0}) == 0.0);
}

TEST_CASE("student t 0.975 quantiles match the published table") {
    CHECK(student_t_975(1) == doctest::Approx(12.7062).epsilon(1e-4));
    CHECK(student_t_975(5) == doctest::Approx(2.5706).epsilon(1e-4));
    CHECK(student_t_975(10) == doctest::Approx(2.2281).epsilon(1e-4));
    CHECK(student_t_975(19) == doctest::Approx(2.0930).epsilon(1e-4));
    CHECK(student_t_975(30) == doctest::Approx(2.0423).epsilon(1e-4));
    CHECK(student_t_975(120) == doctest::Approx(1.9799).epsilon(1e-4));
}

TEST_CASE("confidence half-width") {
    // 20 values, stddev 1, mean irrelevant: hw = 2.093/sqrt(20)
    std::vector<double> xs;
    for (int i = 0; i < 10; ++i) {
        xs.push_back(-1.0);
        xs.push_back(1.0);
    }
    const double sd = sample_stddev(xs);
    CHECK(ci_halfwidth_95(xs) ==
          doctest::Approx(student_t_975(19) * sd / std::sqrt(20.0)).epsilon(1e-12));
    CHECK(ci_halfwidth_95({0.5}) == 0.0);
}

TEST_CASE("incomplete beta sanity") {
    CHECK(incomplete_beta(1.0, 1.0, 0.3) == doctest::Approx(0.3).epsilon(1e-12));  // uniform CDF
    CHECK(incomplete_beta(2.0, 2.0, 0.5) == doctest::Approx(0.5).epsilon(1e-12));  // symmetry
    CHECK(incomplete_beta(3.0, 1.0, 0.7) == doctest::Approx(0.343).epsilon(1e-12));  // x^3
}

}  // TEST_SUITE
