#include <doctest.h>

#include <cmath>
#include <vector>

#include <polyframe/basis.hpp>
#include <polyframe/rng.hpp>

using namespace polyframe;

namespace {

// extended-precision three-term recurrence as an independent oracle
long double legendre_oracle(int n, long double y) {
    if (n == 0) return 1.0L;
    long double pkm1 = 1.0L, pk = y;
    for (int k = 1; k < n; ++k) {
        long double pkp1 = ((2 * k + 1) * y * pk - k * pkm1) / (k + 1);
        pkm1 = pk;
        pk = pkp1;
    }
    return sqrtl(2.0L * n + 1.0L) * pk;
}

} // namespace

TEST_CASE("legendre values") {
    for (double y : {-1.0, -0.3, 0.0, 0.9}) CHECK(legendre_1d(0, y) == 1.0);
    CHECK(legendre_1d(2, 1.0) == doctest::Approx(std::sqrt(5.0)).epsilon(1e-15));
    CHECK(std::abs(legendre_1d(7, 0.3) -
                   static_cast<double>(legendre_oracle(7, 0.3L))) < 1e-13);
    CHECK_THROWS_AS(legendre_1d(-1, 0.0), ParameterError);
}

TEST_CASE("legendre bounds") {
    for (int n : {3, 10, 25, 50}) {
        double cap = std::sqrt(2.0 * n + 1.0);
        for (int i = 0; i <= 400; ++i) {
            double y = -1.0 + 2.0 * i / 400.0;
            CHECK(std::abs(legendre_1d(n, y)) <= cap * (1 + 1e-12));
        }
    }
    // uniform boundedness away from the endpoints
    for (int n : {10, 40, 80, 160}) {
        double worst = 0.0;
        for (int i = 0; i <= 200; ++i) {
            double y = -0.8 + 1.6 * i / 200.0;
            worst = std::max(worst, std::abs(legendre_1d(n, y)));
        }
        CHECK(worst < 3.0);
    }
}

TEST_CASE("chebyshev values") {
    CHECK(chebyshev_1d(0, 0.7) == 1.0);
    CHECK(chebyshev_1d(1, 0.5) ==
          doctest::Approx(std::numbers::sqrt2 * 0.5).epsilon(1e-15));
    CHECK(chebyshev_1d(5, -0.2) ==
          doctest::Approx(std::numbers::sqrt2 * std::cos(5 * std::acos(-0.2)))
              .epsilon(1e-12));
}

TEST_CASE("cosine values") {
    CHECK(cosine_1d(0, 0.3, 2.0) == 1.0);
    CHECK(cosine_1d(2, -2.0, 2.0) ==
          doctest::Approx(std::numbers::sqrt2).epsilon(1e-15));
    CHECK_THROWS_AS(cosine_1d(1, 0.0, 0.5), ParameterError);
}

TEST_CASE("tensor evaluation") {
    MultiIndexSet trivial(2, {{0, 0}});
    std::vector<double> origin = {0.0, 0.0};
    Eigen::VectorXd v = tensor_basis_eval(trivial, origin, BasisKind::legendre());
    CHECK(v.size() == 1);
    CHECK(v[0] == 1.0);

    MultiIndexSet tp = tensor_product_set(1, 2);
    std::vector<double> ones = {1.0, 1.0};
    Eigen::VectorXd w = tensor_basis_eval(tp, ones, BasisKind::legendre());
    double s3 = std::sqrt(3.0);
    CHECK(w[0] == doctest::Approx(1.0));
    CHECK(w[1] == doctest::Approx(s3));
    CHECK(w[2] == doctest::Approx(s3));
    CHECK(w[3] == doctest::Approx(3.0));

    // per-coordinate product oracle at random points
    MultiIndexSet td = total_degree_set(3, 2);
    SplitMix64 rng(11);
    for (int t = 0; t < 10; ++t) {
        std::vector<double> y = {2 * rng.next_double() - 1,
                                 2 * rng.next_double() - 1};
        for (const BasisKind& b :
             {BasisKind::legendre(), BasisKind::chebyshev(), BasisKind::cosine(1.0)}) {
            Eigen::VectorXd vals = tensor_basis_eval(td, y, b);
            for (std::size_t i = 0; i < td.size(); ++i) {
                double expect = basis_1d(b, td[i][0], y[0]) * basis_1d(b, td[i][1], y[1]);
                CHECK(vals[static_cast<Eigen::Index>(i)] ==
                      doctest::Approx(expect).epsilon(1e-12));
            }
        }
    }

    std::vector<double> bad = {0.0};
    CHECK_THROWS_AS(tensor_basis_eval(tp, bad, BasisKind::legendre()), ShapeError);
}

TEST_CASE("sobolev weights") {
    CHECK(sobolev_weight({0, 0, 0}, SobolevWeightKind::classical(3)) == 1.0);
    CHECK(sobolev_weight({0}, SobolevWeightKind::mixed(2)) == 1.0);
    CHECK(sobolev_weight({2}, SobolevWeightKind::classical(1)) == 7.0);
    CHECK(sobolev_weight({1, 1}, SobolevWeightKind::mixed(1)) == 9.0);

    // monotone in each entry and in m
    for (int m : {1, 2}) {
        auto kind = SobolevWeightKind::classical(m);
        CHECK(sobolev_weight({2, 3}, kind) <= sobolev_weight({3, 3}, kind));
        CHECK(sobolev_weight({2, 3}, kind) <= sobolev_weight({2, 4}, kind));
    }
    CHECK(sobolev_weight({2, 3}, SobolevWeightKind::classical(1)) <=
          sobolev_weight({2, 3}, SobolevWeightKind::classical(2)));
    CHECK_THROWS_AS(SobolevWeightKind::classical(-1), ParameterError);
}
