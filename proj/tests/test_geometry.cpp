#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include "doctest.h"
#include "rrgg/geometry.hpp"

using namespace rrgg;

namespace {

// Hit-or-miss estimate of the unit ball volume inside [-1,1]^d.
double monte_carlo_volume(int d, NormParam p, std::size_t samples, std::uint64_t seed) {
    std::mt19937_64 gen(seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::vector<double> x(static_cast<std::size_t>(d));
    std::size_t inside = 0;
    for (std::size_t s = 0; s < samples; ++s) {
        for (auto& c : x) c = u(gen);
        if (norm_of(x, p) <= 1.0) ++inside;
    }
    return std::ldexp(static_cast<double>(inside) / static_cast<double>(samples), d);
}

}  // namespace

TEST_CASE("distance examples") {
    const std::vector<double> o{0.0, 0.0}, a{0.75, 0.0}, b{1.0, 1.0};
    CHECK(distance(o, a, NormParam(2.0)) == doctest::Approx(0.75));
    CHECK(distance(o, b, NormParam::infinity()) == 1.0);
    CHECK(distance(o, b, NormParam(1.5)) == doctest::Approx(std::pow(2.0, 2.0 / 3.0)));
    CHECK(distance(o, b, NormParam(1.0)) == 2.0);
    CHECK(distance(a, a, NormParam(3.0)) == 0.0);
}

TEST_CASE("distance rejects mismatched dimensions") {
    const std::vector<double> a{0.1, 0.2}, b{0.1, 0.2, 0.3};
    CHECK_THROWS_AS(distance(a, b, NormParam(2.0)), std::invalid_argument);
}

TEST_CASE("norm parameter parsing and validation") {
    CHECK(NormParam::parse("inf").is_infinite());
    CHECK(NormParam::parse("1").is_l1());
    CHECK(NormParam::parse("2.5").value() == 2.5);
    CHECK_THROWS(NormParam(0.5));
    CHECK_THROWS(NormParam::parse("abc"));
    CHECK(NormParam::parse(NormParam(1.5).to_string()) == NormParam(1.5));
}

TEST_CASE("triangle inequality and norm sandwich on random triples") {
    std::mt19937_64 gen(7);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (double pv : {1.0, 1.5, 2.0, 3.0, double(INFINITY)}) {
        const NormParam p = std::isinf(pv) ? NormParam::infinity() : NormParam(pv);
        for (int d : {2, 3}) {
            for (int t = 0; t < 500; ++t) {
                std::vector<double> a(d), b(d), c(d), diff(d);
                for (int k = 0; k < d; ++k) {
                    a[k] = u(gen), b[k] = u(gen), c[k] = u(gen);
                    diff[k] = a[k] - b[k];
                }
                CHECK(distance(a, c, p) <= distance(a, b, p) + distance(b, c, p) + 1e-12);
                CHECK(distance(a, b, p) == doctest::Approx(distance(b, a, p)));
                const double inf_norm = norm_of(diff, NormParam::infinity());
                CHECK(inf_norm <= norm_of(diff, p) + 1e-15);
                CHECK(norm_of(diff, p) <= d * inf_norm + 1e-15);
            }
        }
    }
}

TEST_CASE("unit ball volumes") {
    CHECK(unit_ball_volume(2, NormParam::infinity()) == 4.0);
    CHECK(unit_ball_volume(2, NormParam(1.0)) == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(unit_ball_volume(2, NormParam(2.0)) == doctest::Approx(std::numbers::pi).epsilon(1e-14));
    CHECK(unit_ball_volume(3, NormParam(2.0)) == doctest::Approx(4.0 * std::numbers::pi / 3.0).epsilon(1e-14));
    const double mc = monte_carlo_volume(2, NormParam(2.0), 1'000'000, 11);
    CHECK(std::abs(unit_ball_volume(2, NormParam(2.0)) - mc) <= 0.01 * mc);
}

TEST_CASE("ball volume bounds and monotonicity in p") {
    for (int d : {2, 3, 4}) {
        double prev = 0.0;
        const double fact = std::tgamma(d + 1.0);
        for (double pv : {1.0, 1.25, 1.5, 2.0, 3.0, 8.0, double(INFINITY)}) {
            const NormParam p = std::isinf(pv) ? NormParam::infinity() : NormParam(pv);
            const double v = unit_ball_volume(d, p);
            CHECK(v >= std::ldexp(1.0, d) / fact * (1.0 - 1e-12));
            CHECK(v <= std::ldexp(1.0, d) * (1.0 + 1e-12));
            CHECK(v >= prev * (1.0 - 1e-12));
            prev = v;
        }
        const auto bv = ball_volumes(d, NormParam(2.0));
        CHECK(bv.theta_prime == doctest::Approx(unit_ball_volume(d - 1, NormParam(2.0))));
    }
}

TEST_CASE("sample_points") {
    CHECK_THROWS_AS(sample_points(0, 2, 1), std::invalid_argument);
    CHECK_THROWS_AS(sample_points(5, 1, 1), std::invalid_argument);
    const auto a = sample_points(5, 2, 42);
    const auto b = sample_points(5, 2, 42);
    CHECK(a.coords() == b.coords());
    CHECK(sample_points(5, 2, 43).coords() != a.coords());

    const auto big = sample_points(100'000, 2, 5);
    for (int k = 0; k < 2; ++k) {
        double sum = 0.0;
        for (std::size_t i = 0; i < big.size(); ++i) {
            const double x = big[i][k];
            REQUIRE(x >= 0.0);
            REQUIRE(x <= 1.0);
            sum += x;
        }
        CHECK(std::abs(sum / big.size() - 0.5) < 0.01);
    }
}

TEST_CASE("point sets reject coordinates outside the unit cube") {
    CHECK_THROWS(PointSet(2, NormParam(2.0), {0.5, 1.5}));
    CHECK_THROWS(PointSet(2, NormParam(2.0), {0.5, 0.5, 0.1}));
    CHECK_NOTHROW(PointSet(2, NormParam(2.0), {0.0, 1.0}));
}

TEST_CASE("corner distance") {
    CHECK(corner_distance(2, NormParam(2.0)) == doctest::Approx(std::sqrt(2.0)));
    CHECK(corner_distance(3, NormParam::infinity()) == 1.0);
    CHECK(corner_distance(3, NormParam(1.0)) == 3.0);
}
