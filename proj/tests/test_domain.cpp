#include <doctest.h>

#include <cmath>
#include <vector>

#include <polyframe/domain.hpp>
#include <polyframe/rng.hpp>

using namespace polyframe;

TEST_CASE("membership predicates") {
    std::vector<double> origin = {0.0, 0.0};
    CHECK(DomainSpec::circle(1.0).contains(origin));
    std::vector<double> corner = {1.0, 1.0};
    CHECK_FALSE(DomainSpec::linear_constraint().contains(corner));
    std::vector<double> p = {0.3, 0.0};
    CHECK(DomainSpec::annulus(0.125, 0.5).contains(p));
    CHECK_FALSE(DomainSpec::l_shape().contains(corner));
    std::vector<double> q = {-0.5, 0.5};
    CHECK(DomainSpec::l_shape().contains(q));

    std::vector<double> outside = {1.5, 0.0};
    CHECK_THROWS_AS(DomainSpec::circle(1.0).contains(outside), DomainError);
}

TEST_CASE("membership is total on the box") {
    std::vector<DomainSpec> catalog = {
        DomainSpec::full_box(2),      DomainSpec::l_shape(),
        DomainSpec::linear_constraint(), DomainSpec::disc_exclusion(0.5),
        DomainSpec::circle(0.8),      DomainSpec::annulus(0.125, 0.5),
        DomainSpec::corner(2),        DomainSpec::norm_exclusion(0.5, 2),
        DomainSpec::unit_ball(2),     DomainSpec::implicit_nonneg("cossin"),
        DomainSpec::mandelbrot()};
    SplitMix64 rng(3);
    for (const auto& dom : catalog)
        for (int t = 0; t < 200; ++t) {
            std::vector<double> y = {2 * rng.next_double() - 1,
                                     2 * rng.next_double() - 1};
            CHECK_NOTHROW((void)dom.contains(y));
        }
}

TEST_CASE("analytic volume fractions") {
    CHECK(DomainSpec::full_box(3).analytic_volume_fraction().value() == 1.0);
    CHECK(DomainSpec::l_shape().analytic_volume_fraction().value() == 0.75);
    CHECK(DomainSpec::linear_constraint().analytic_volume_fraction().value() ==
          doctest::Approx(7.0 / 8.0));
    CHECK(DomainSpec::circle(1.0).analytic_volume_fraction().value() ==
          doctest::Approx(std::numbers::pi / 4.0));
    CHECK(DomainSpec::corner(2).analytic_volume_fraction().value() ==
          doctest::Approx(7.0 / 8.0));
    CHECK_FALSE(DomainSpec::mandelbrot().analytic_volume_fraction().has_value());
}

TEST_CASE("lambda rectangle constants") {
    CHECK(DomainSpec::linear_constraint().lambda_rectangle_constant().value() ==
          doctest::Approx(4.0 / 7.0));
    CHECK(DomainSpec::l_shape().lambda_rectangle_constant().value() ==
          doctest::Approx(2.0 / 3.0));
    CHECK_FALSE(DomainSpec::unit_ball(2).lambda_rectangle_constant().has_value());
    CHECK_FALSE(DomainSpec::circle(0.5).lambda_rectangle_constant().has_value());
}

TEST_CASE("parameter validation") {
    CHECK_THROWS_AS(DomainSpec::circle(0.0), ParameterError);
    CHECK_THROWS_AS(DomainSpec::circle(1.5), ParameterError);
    CHECK_THROWS_AS(DomainSpec::annulus(0.5, 0.25), ParameterError);
    CHECK_THROWS_AS(DomainSpec::full_box(0), ParameterError);
}

TEST_CASE("mandelbrot embedding stays inside the box") {
    // main cardioid center maps from y = (0.6, 0)
    std::vector<double> inside = {0.6, 0.0};
    CHECK(DomainSpec::mandelbrot().contains(inside));
    std::vector<double> far = {-0.95, 0.9};
    CHECK_FALSE(DomainSpec::mandelbrot().contains(far));
}
