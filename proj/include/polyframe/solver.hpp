#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/SVD>

#include <json.hpp>

#include "polyframe/basis.hpp"
#include "polyframe/errors.hpp"
#include "polyframe/multi_index.hpp"
#include "polyframe/sampling.hpp"

namespace polyframe {

/// Default truncation threshold for the regularized solve.
inline constexpr double kDefaultEpsilon = 1e-8;

/// Scaled least-squares matrix with (i,n) entry phi_n(y_i)/sqrt(M);
/// column order follows the canonical ordering of Lambda.
struct DesignMatrix {
    Eigen::MatrixXd entries; // M x N
    MultiIndexSet index_set;
    BasisKind basis;
    std::uint64_t sample_seed = 0;

    Eigen::Index rows() const { return entries.rows(); }
    Eigen::Index cols() const { return entries.cols(); }
};

inline DesignMatrix assemble_design_matrix(const SampleSet& samples,
                                           const MultiIndexSet& set,
                                           const BasisKind& basis) {
    if (samples.dimension() != set.dimension())
        throw ShapeError("sample dimension does not match index set");
    const Eigen::Index M = samples.size();
    const auto N = static_cast<Eigen::Index>(set.size());
    const double scale = 1.0 / std::sqrt(static_cast<double>(M));
    DesignMatrix A{Eigen::MatrixXd(M, N), set, basis, samples.seed};
    std::vector<double> point(set.dimension());
    for (Eigen::Index i = 0; i < M; ++i) {
        for (int k = 0; k < set.dimension(); ++k) point[k] = samples.points(i, k);
        Eigen::VectorXd row = tensor_basis_eval(set, point, basis);
        if (!row.allFinite())
            throw NumericError("non-finite basis value at sample row " +
                               std::to_string(i));
        A.entries.row(i) = scale * row.transpose();
    }
    return A;
}

/// Scaled sample vector b with entries f(y_i)/sqrt(M).
template <class F>
Eigen::VectorXd sample_rhs(const SampleSet& samples, F&& f) {
    const Eigen::Index M = samples.size();
    const double scale = 1.0 / std::sqrt(static_cast<double>(M));
    Eigen::VectorXd b(M);
    std::vector<double> point(samples.dimension());
    for (Eigen::Index i = 0; i < M; ++i) {
        for (int k = 0; k < samples.dimension(); ++k)
            point[k] = samples.points(i, k);
        b[i] = scale * f(std::span<const double>(point));
    }
    return b;
}

struct TruncatedSvdSolution {
    Eigen::VectorXd coefficients;    // c_eps, length N
    Eigen::VectorXd singular_values; // nonincreasing, length min(M,N)
    Eigen::Index retained_rank = 0;  // count of sigma strictly > eps
    double epsilon = 0.0;
    double residual_norm = 0.0; // ||A c_eps - b||_2
};

namespace detail {

struct SvdParts {
    Eigen::MatrixXd U; // M x min(M,N)
    Eigen::VectorXd sigma;
    Eigen::MatrixXd V; // N x N (full, so rank-deficient directions are kept)
};

inline SvdParts svd_decompose(const Eigen::MatrixXd& A) {
    Eigen::BDCSVD<Eigen::MatrixXd> svd(A, Eigen::ComputeThinU | Eigen::ComputeFullV);
    if (svd.info() != Eigen::Success)
        throw NumericError("SVD failed to converge");
    return {svd.matrixU(), svd.singularValues(), svd.matrixV()};
}

} // namespace detail

/// c_eps = V Sigma_eps^+ U* b, retaining sigma strictly greater than eps
/// ("and zero otherwise"); eps = 0 gives the minimum-norm LS solution.
inline TruncatedSvdSolution truncated_svd_solve(const Eigen::MatrixXd& A,
                                                const Eigen::VectorXd& b,
                                                double eps) {
    if (eps < 0.0) throw ParameterError("threshold eps must be >= 0");
    if (b.size() != A.rows()) throw ShapeError("rhs length does not match rows");
    detail::SvdParts svd = detail::svd_decompose(A);
    TruncatedSvdSolution sol;
    sol.epsilon = eps;
    sol.singular_values = svd.sigma;
    Eigen::Index r = 0;
    while (r < svd.sigma.size() && svd.sigma[r] > eps) ++r;
    sol.retained_rank = r;
    Eigen::VectorXd c = Eigen::VectorXd::Zero(A.cols());
    for (Eigen::Index i = 0; i < r; ++i)
        c += (svd.U.col(i).dot(b) / svd.sigma[i]) * svd.V.col(i);
    sol.residual_norm = (A * c - b).norm();
    sol.coefficients = std::move(c);
    return sol;
}

inline TruncatedSvdSolution truncated_svd_solve(const DesignMatrix& A,
                                                const Eigen::VectorXd& b,
                                                double eps = kDefaultEpsilon) {
    return truncated_svd_solve(A.entries, b, eps);
}

/// Pointwise sum of c_n psi_n over a batch of points (rows).
inline Eigen::VectorXd evaluate_approximant(const Eigen::VectorXd& c,
                                            const MultiIndexSet& set,
                                            const BasisKind& basis,
                                            const Eigen::MatrixXd& points) {
    if (c.size() != static_cast<Eigen::Index>(set.size()))
        throw ShapeError("coefficient length does not match index set");
    if (points.cols() != set.dimension())
        throw ShapeError("point dimension does not match index set");
    Eigen::VectorXd out(points.rows());
    std::vector<double> point(set.dimension());
    for (Eigen::Index i = 0; i < points.rows(); ++i) {
        for (int k = 0; k < set.dimension(); ++k) point[k] = points(i, k);
        out[i] = c.dot(tensor_basis_eval(set, point, basis));
    }
    return out;
}

/// Truncation operator T_L: g -> sgn(g) min(|g|, L).
inline double truncate_pointwise(double g, double L) {
    if (L < 0.0) throw ParameterError("truncation bound L must be >= 0");
    return std::copysign(std::min(std::abs(g), L), g);
}

/// Complex sign convention: z/|z| for z != 0, else 0.
inline std::complex<double> truncate_pointwise(std::complex<double> g, double L) {
    if (L < 0.0) throw ParameterError("truncation bound L must be >= 0");
    double mag = std::abs(g);
    if (mag == 0.0) return g;
    return g / mag * std::min(mag, L);
}

inline Eigen::VectorXd truncate_pointwise(const Eigen::VectorXd& values, double L) {
    if (L < 0.0) throw ParameterError("truncation bound L must be >= 0");
    return values.unaryExpr([L](double g) {
        return std::copysign(std::min(std::abs(g), L), g);
    });
}

/// ||c_eps||_2; by Parseval this is the L^2(D,nu) norm of the approximant.
inline double coefficient_l2_norm(const TruncatedSvdSolution& sol) {
    return sol.coefficients.norm();
}

inline nlohmann::json solution_to_json(const TruncatedSvdSolution& sol,
                                       const DesignMatrix& A) {
    nlohmann::json j;
    j["epsilon"] = sol.epsilon;
    j["retained_rank"] = sol.retained_rank;
    j["residual_norm"] = sol.residual_norm;
    j["singular_values"] =
        std::vector<double>(sol.singular_values.data(),
                            sol.singular_values.data() + sol.singular_values.size());
    j["coefficients"] =
        std::vector<double>(sol.coefficients.data(),
                            sol.coefficients.data() + sol.coefficients.size());
    j["index_set_descriptor"] = {{"kind", to_string(A.index_set.kind())},
                                 {"n", A.index_set.degree()},
                                 {"dim", A.index_set.dimension()},
                                 {"N", A.index_set.size()}};
    j["basis_descriptor"] = {{"family", A.basis.name()},
                             {"half_width", A.basis.half_width}};
    j["seed"] = A.sample_seed;
    return j;
}

} // namespace polyframe
