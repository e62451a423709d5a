#pragma once

#include <cmath>
#include <numbers>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "polyframe/basis.hpp"
#include "polyframe/errors.hpp"
#include "polyframe/multi_index.hpp"

namespace polyframe {

/// 1-D rule whose weights sum to 1, matching the probability measure of
/// the basis family on its bounding interval.
struct Quadrature1D {
    std::vector<double> nodes;
    std::vector<double> weights;
};

/// Gauss-Legendre nodes/weights on (-1,1) by Newton iteration on P_q,
/// normalized to the uniform probability measure.
inline Quadrature1D gauss_legendre(int q) {
    if (q < 1) throw ParameterError("quadrature order must be >= 1");
    Quadrature1D rule;
    rule.nodes.resize(q);
    rule.weights.resize(q);
    for (int i = 0; i < (q + 1) / 2; ++i) {
        double x = std::cos(std::numbers::pi * (i + 0.75) / (q + 0.5));
        double pp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            for (int k = 1; k < q; ++k) {
                double p2 = ((2 * k + 1) * x * p1 - k * p0) / (k + 1);
                p0 = p1;
                p1 = p2;
            }
            pp = q * (x * p1 - p0) / (x * x - 1.0);
            double dx = p1 / pp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        double w = 2.0 / ((1.0 - x * x) * pp * pp);
        rule.nodes[i] = -x;
        rule.nodes[q - 1 - i] = x;
        rule.weights[i] = w / 2.0;
        rule.weights[q - 1 - i] = w / 2.0;
    }
    return rule;
}

/// Gauss-Chebyshev rule for the Chebyshev probability measure on (-1,1).
inline Quadrature1D gauss_chebyshev(int q) {
    if (q < 1) throw ParameterError("quadrature order must be >= 1");
    Quadrature1D rule;
    rule.nodes.resize(q);
    rule.weights.assign(q, 1.0 / q);
    for (int i = 0; i < q; ++i)
        rule.nodes[i] = std::cos((2.0 * (q - i) - 1.0) * std::numbers::pi / (2.0 * q));
    return rule;
}

namespace detail {

/// Node count actually used per coordinate.  Cosine-family integrands are
/// trigonometric rather than polynomial, so the rule is not exact by
/// degree counting and needs roughly pi nodes per half-wave.
inline int effective_nodes(const BasisKind& basis, int q, int maxdeg) {
    if (basis.family == BasisKind::Family::Cosine)
        return std::max(q, 4 * maxdeg + 20);
    return q;
}

inline Quadrature1D basis_quadrature(const BasisKind& basis, int q) {
    switch (basis.family) {
        case BasisKind::Family::Legendre: return gauss_legendre(q);
        case BasisKind::Family::Chebyshev: return gauss_chebyshev(q);
        case BasisKind::Family::Cosine: {
            Quadrature1D rule = gauss_legendre(q);
            for (auto& x : rule.nodes) x *= basis.half_width;
            return rule;
        }
    }
    throw ParameterError("unknown basis family");
}

/// Iterate over the tensor grid of a 1-D rule in d dimensions, calling
/// visit(point, weight) at each node.
template <class Visitor>
void for_each_tensor_node(const Quadrature1D& rule, int d, Visitor&& visit) {
    const int q = static_cast<int>(rule.nodes.size());
    std::vector<int> pos(d, 0);
    std::vector<double> point(d);
    while (true) {
        double w = 1.0;
        for (int k = 0; k < d; ++k) {
            point[k] = rule.nodes[pos[k]];
            w *= rule.weights[pos[k]];
        }
        visit(std::span<const double>(point), w);
        int k = d - 1;
        while (k >= 0 && pos[k] == q - 1) pos[k--] = 0;
        if (k < 0) break;
        ++pos[k];
    }
}

} // namespace detail

struct ProjectionResult {
    Eigen::VectorXd coefficients;
    bool accuracy_warning = false; // q below the degree requirement
};

/// Coefficients <f, psi_n>_{L^2(D,nu)} by tensor quadrature matched to
/// the basis measure.  Exact for f in P_Lambda when q is sufficient.
template <class F>
ProjectionResult projection_coefficients(F&& f, const MultiIndexSet& set,
                                         const BasisKind& basis, int q = -1) {
    const int maxdeg = set.max_degree();
    if (q < 0) q = maxdeg + 10;
    ProjectionResult result;
    result.accuracy_warning = q < maxdeg + 1;
    const int nodes = detail::effective_nodes(basis, q, maxdeg);
    Quadrature1D rule = detail::basis_quadrature(basis, nodes);
    Eigen::VectorXd c = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(set.size()));
    detail::for_each_tensor_node(rule, set.dimension(),
        [&](std::span<const double> point, double w) {
            c += (w * f(point)) * tensor_basis_eval(set, point, basis);
        });
    result.coefficients = std::move(c);
    return result;
}

/// Quadrature Gram of {psi_n : n in Lambda} over D.  Identity to
/// rounding when the rule resolves products of basis elements.
inline Eigen::MatrixXd quadrature_gram(const MultiIndexSet& set,
                                       const BasisKind& basis, int q = -1) {
    const int maxdeg = set.max_degree();
    if (q < 0) q = maxdeg + 10;
    const int nodes = detail::effective_nodes(basis, q, maxdeg);
    Quadrature1D rule = detail::basis_quadrature(basis, nodes);
    const auto N = static_cast<Eigen::Index>(set.size());
    Eigen::MatrixXd gram = Eigen::MatrixXd::Zero(N, N);
    detail::for_each_tensor_node(rule, set.dimension(),
        [&](std::span<const double> point, double w) {
            Eigen::VectorXd phi = tensor_basis_eval(set, point, basis);
            gram.selfadjointView<Eigen::Lower>().rankUpdate(phi, w);
        });
    return gram.selfadjointView<Eigen::Lower>();
}

/// || g ||_{L^2(D,nu)} of an arbitrary function by tensor quadrature.
template <class F>
double quadrature_l2_norm(F&& g, int d, const BasisKind& basis, int q) {
    const int nodes = detail::effective_nodes(basis, q, q);
    Quadrature1D rule = detail::basis_quadrature(basis, nodes);
    double acc = 0.0;
    detail::for_each_tensor_node(rule, d,
        [&](std::span<const double> point, double w) {
            double v = g(point);
            acc += w * v * v;
        });
    return std::sqrt(acc);
}

} // namespace polyframe
