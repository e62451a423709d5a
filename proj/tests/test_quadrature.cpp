#include <doctest.h>

#include <cmath>
#include <numeric>
#include <span>

#include <polyframe/quadrature.hpp>
#include <polyframe/rng.hpp>

using namespace polyframe;

TEST_CASE("1-D rules integrate to probability one") {
    for (int q : {1, 3, 8, 33}) {
        Quadrature1D gl = gauss_legendre(q);
        double s = std::accumulate(gl.weights.begin(), gl.weights.end(), 0.0);
        CHECK(s == doctest::Approx(1.0).epsilon(1e-14));
        Quadrature1D gc = gauss_chebyshev(q);
        s = std::accumulate(gc.weights.begin(), gc.weights.end(), 0.0);
        CHECK(s == doctest::Approx(1.0).epsilon(1e-14));
    }
    CHECK_THROWS_AS(gauss_legendre(0), ParameterError);
}

TEST_CASE("quadrature gram is identity") {
    for (const BasisKind& b : {BasisKind::legendre(), BasisKind::chebyshev(),
                               BasisKind::cosine(1.5)}) {
        MultiIndexSet set = total_degree_set(6, 2);
        Eigen::MatrixXd g = quadrature_gram(set, b);
        double dev = (g - Eigen::MatrixXd::Identity(g.rows(), g.cols()))
                         .cwiseAbs()
                         .maxCoeff();
        CHECK(dev < 1e-12);
    }
}

TEST_CASE("projection of basis elements") {
    MultiIndexSet set = total_degree_set(4, 2);
    BasisKind b = BasisKind::legendre();
    for (std::size_t m : {std::size_t(0), set.size() / 2, set.size() - 1}) {
        auto f = [&](std::span<const double> y) {
            return tensor_basis_eval(set, y, b)[static_cast<Eigen::Index>(m)];
        };
        ProjectionResult r = projection_coefficients(f, set, b);
        CHECK_FALSE(r.accuracy_warning);
        for (std::size_t i = 0; i < set.size(); ++i) {
            double expect = i == m ? 1.0 : 0.0;
            CHECK(std::abs(r.coefficients[static_cast<Eigen::Index>(i)] - expect) <
                  1e-12);
        }
    }
}

TEST_CASE("projection of constants and y^2") {
    MultiIndexSet set1(2, {{0, 0}, {0, 1}, {1, 0}});
    auto one = [](std::span<const double>) { return 1.0; };
    ProjectionResult r = projection_coefficients(one, set1, BasisKind::chebyshev());
    CHECK(std::abs(r.coefficients[0] - 1.0) < 1e-13);
    CHECK(std::abs(r.coefficients[1]) < 1e-13);
    CHECK(std::abs(r.coefficients[2]) < 1e-13);

    MultiIndexSet set = tensor_product_set(3, 1);
    auto sq = [](std::span<const double> y) { return y[0] * y[0]; };
    ProjectionResult p = projection_coefficients(sq, set, BasisKind::legendre());
    CHECK(p.coefficients[0] == doctest::Approx(1.0 / 3.0).epsilon(1e-13));
    CHECK(std::abs(p.coefficients[1]) < 1e-14);
    CHECK(p.coefficients[2] ==
          doctest::Approx(2.0 / (3.0 * std::sqrt(5.0))).epsilon(1e-13));
    CHECK(std::abs(p.coefficients[3]) < 1e-13);
}

TEST_CASE("projection warns on insufficient order") {
    MultiIndexSet set = tensor_product_set(5, 1);
    auto one = [](std::span<const double>) { return 1.0; };
    ProjectionResult r = projection_coefficients(one, set, BasisKind::legendre(), 3);
    CHECK(r.accuracy_warning);
}

TEST_CASE("parseval on the box") {
    SplitMix64 rng(19);
    MultiIndexSet set = total_degree_set(5, 2);
    for (const BasisKind& b : {BasisKind::legendre(), BasisKind::cosine(1.0)}) {
        Eigen::VectorXd c(static_cast<Eigen::Index>(set.size()));
        for (Eigen::Index i = 0; i < c.size(); ++i)
            c[i] = 2 * rng.next_double() - 1;
        auto g = [&](std::span<const double> y) {
            return c.dot(tensor_basis_eval(set, y, b));
        };
        double norm = quadrature_l2_norm(g, 2, b, set.max_degree() + 10);
        CHECK(norm == doctest::Approx(c.norm()).epsilon(1e-10));
    }
}
