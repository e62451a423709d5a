#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "polyframe/basis.hpp"
#include "polyframe/domain.hpp"
#include "polyframe/errors.hpp"
#include "polyframe/multi_index.hpp"
#include "polyframe/sampling.hpp"
#include "polyframe/solver.hpp"

namespace polyframe {

/// Default Monte-Carlo point count for Gram estimation.
inline constexpr std::size_t kDefaultGramPoints = 10'000;

/// Relative rank tolerance for generalized-eigenproblem whitening.
inline constexpr double kRankTolerance = 1e-12;

/// Conditioning constants of the regularized reconstruction operator.
struct ConditionReport {
    double c_prime = 0.0;        // operator norm of the reconstruction map
    double c_double_prime = 0.0; // eps^-1 distance from a projection
    double c_max = 0.0;          // max of the two
    std::optional<double> c_unregularized; // C_{Upsilon,Lambda}, when finite
    std::size_t gram_sample_count = 0;
    std::uint64_t seed = 0;
};

/// Monte-Carlo factor H of the truncated Gram: K x N with rows
/// phi_n(z_k)/sqrt(K), z_k i.i.d. from mu.  H^T H estimates G_Lambda.
struct GramEstimate {
    Eigen::MatrixXd H;
    std::size_t sample_count = 0;
    std::uint64_t seed = 0;
    bool undersampled = false; // K < N
};

inline SampleMeasure measure_for_basis(const BasisKind& basis) {
    return basis.family == BasisKind::Family::Chebyshev
               ? SampleMeasure::ChebyshevOnOmega
               : SampleMeasure::UniformOnOmega;
}

inline GramEstimate monte_carlo_gram(const DomainSpec& domain,
                                     const MultiIndexSet& set,
                                     const BasisKind& basis, std::size_t K,
                                     std::uint64_t seed) {
    SampleSet z = draw_samples(domain, static_cast<Eigen::Index>(K), seed,
                               measure_for_basis(basis));
    GramEstimate est;
    est.sample_count = K;
    est.seed = seed;
    est.undersampled = K < set.size();
    est.H.resize(static_cast<Eigen::Index>(K),
                 static_cast<Eigen::Index>(set.size()));
    const double scale = 1.0 / std::sqrt(static_cast<double>(K));
    std::vector<double> point(set.dimension());
    for (Eigen::Index i = 0; i < est.H.rows(); ++i) {
        for (int k = 0; k < set.dimension(); ++k) point[k] = z.points(i, k);
        est.H.row(i) = scale * tensor_basis_eval(set, point, basis).transpose();
    }
    return est;
}

namespace detail {

/// ||H X||_2 via the largest eigenvalue of X^T (H^T H) X.
inline double spectral_norm_through_gram(const Eigen::MatrixXd& gram,
                                         const Eigen::MatrixXd& X) {
    if (X.cols() == 0) return 0.0;
    Eigen::MatrixXd S = X.transpose() * gram * X;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(S, Eigen::EigenvaluesOnly);
    double lmax = eig.eigenvalues().maxCoeff();
    return std::sqrt(std::max(lmax, 0.0));
}

} // namespace detail

/// C' ~ ||H V Sigma_eps^+||_2 and C'' ~ eps^-1 ||H V I_eps^perp||_2 from
/// the SVD of A, with H the Monte-Carlo Gram factor.  C''_{.,0} = 0 since
/// the unregularized map is a projection.
inline ConditionReport condition_constants(const Eigen::MatrixXd& A, double eps,
                                           const GramEstimate& gram) {
    if (gram.H.cols() != A.cols())
        throw ShapeError("Gram factor column count does not match design matrix");
    detail::SvdParts svd = detail::svd_decompose(A);
    const Eigen::Index N = A.cols();
    // pad sigma with zeros for nullspace directions of a wide A
    Eigen::VectorXd sigma = Eigen::VectorXd::Zero(N);
    sigma.head(svd.sigma.size()) = svd.sigma;

    Eigen::MatrixXd gram_mc = gram.H.transpose() * gram.H;

    std::vector<Eigen::Index> kept, dropped;
    for (Eigen::Index i = 0; i < N; ++i)
        (sigma[i] > eps ? kept : dropped).push_back(i);

    Eigen::MatrixXd Xk(N, static_cast<Eigen::Index>(kept.size()));
    for (std::size_t j = 0; j < kept.size(); ++j)
        Xk.col(static_cast<Eigen::Index>(j)) = svd.V.col(kept[j]) / sigma[kept[j]];
    Eigen::MatrixXd Xd(N, static_cast<Eigen::Index>(dropped.size()));
    for (std::size_t j = 0; j < dropped.size(); ++j)
        Xd.col(static_cast<Eigen::Index>(j)) = svd.V.col(dropped[j]);

    ConditionReport report;
    report.gram_sample_count = gram.sample_count;
    report.seed = gram.seed;
    report.c_prime = detail::spectral_norm_through_gram(gram_mc, Xk);
    report.c_double_prime =
        eps > 0.0
            ? detail::spectral_norm_through_gram(gram_mc, Xd) / eps
            : 0.0;
    report.c_max = std::max(report.c_prime, report.c_double_prime);

    // unregularized constant when A has full column rank
    double smax = sigma.maxCoeff();
    double smin = sigma.minCoeff();
    if (smin > kRankTolerance * smax) {
        Eigen::MatrixXd X(N, N);
        for (Eigen::Index i = 0; i < N; ++i) X.col(i) = svd.V.col(i) / sigma[i];
        report.c_unregularized = detail::spectral_norm_through_gram(gram_mc, X);
    }
    return report;
}

inline ConditionReport condition_constants(const DesignMatrix& A, double eps,
                                           const GramEstimate& gram) {
    return condition_constants(A.entries, eps, gram);
}

/// C_{Upsilon,Lambda}: maximal ratio of the L^2(Omega,mu) norm to the
/// discrete norm over P_Lambda, as the largest generalized eigenvalue of
/// (H^T H, A^T A).  Infinite when A is rank deficient.
inline double c_upsilon_lambda(const Eigen::MatrixXd& A, const GramEstimate& gram) {
    detail::SvdParts svd = detail::svd_decompose(A);
    const Eigen::Index N = A.cols();
    if (svd.sigma.size() < N ||
        svd.sigma.minCoeff() <= kRankTolerance * svd.sigma.maxCoeff())
        return std::numeric_limits<double>::infinity();
    Eigen::MatrixXd gram_mc = gram.H.transpose() * gram.H;
    Eigen::MatrixXd X(N, N);
    for (Eigen::Index i = 0; i < N; ++i) X.col(i) = svd.V.col(i) / svd.sigma[i];
    return detail::spectral_norm_through_gram(gram_mc, X);
}

inline double c_upsilon_lambda(const DesignMatrix& A, const GramEstimate& gram) {
    return c_upsilon_lambda(A.entries, gram);
}

struct NikolskiiEstimate {
    double value = 0.0;
    bool regularized = false; // Gram inverse needed ridge stabilization
    std::size_t candidate_count = 0;
    std::uint64_t seed = 0;
};

/// Lower-bound estimate of N(P_Lambda, Omega, mu): the exact Nikolskii
/// constant of the sampled sup, max over candidates y of
/// sqrt(Phi(y)^T G^-1 Phi(y)) with G the Monte-Carlo Gram.  Candidates
/// are the Gram points plus a fresh pool.
inline NikolskiiEstimate nikolskii_constant_estimate(
    const DomainSpec& domain, const MultiIndexSet& set, std::size_t K_points,
    std::uint64_t seed, const BasisKind& basis = BasisKind::legendre(),
    std::size_t gram_points = kDefaultGramPoints) {
    SampleSet z = draw_samples(domain, static_cast<Eigen::Index>(gram_points),
                               seed, measure_for_basis(basis));
    Eigen::MatrixXd H(z.points.rows(), static_cast<Eigen::Index>(set.size()));
    {
        const double scale = 1.0 / std::sqrt(static_cast<double>(gram_points));
        std::vector<double> pt(set.dimension());
        for (Eigen::Index i = 0; i < H.rows(); ++i) {
            for (int k = 0; k < set.dimension(); ++k) pt[k] = z.points(i, k);
            H.row(i) = scale * tensor_basis_eval(set, pt, basis).transpose();
        }
    }
    Eigen::MatrixXd G = H.transpose() * H;

    NikolskiiEstimate est;
    est.seed = seed;
    Eigen::LDLT<Eigen::MatrixXd> ldlt(G);
    if (ldlt.info() != Eigen::Success || !ldlt.isPositive()) {
        double ridge = kRankTolerance * G.diagonal().maxCoeff();
        ldlt.compute(G + ridge * Eigen::MatrixXd::Identity(G.rows(), G.cols()));
        est.regularized = true;
        if (ldlt.info() != Eigen::Success)
            throw NumericError("Gram estimate not invertible");
    }

    SampleSet fresh = draw_samples(domain, static_cast<Eigen::Index>(K_points),
                                   seed + 1, measure_for_basis(basis));
    auto christoffel = [&](std::span<const double> y) {
        Eigen::VectorXd phi = tensor_basis_eval(set, y, basis);
        return phi.dot(ldlt.solve(phi));
    };
    double best = 0.0;
    std::vector<double> point(set.dimension());
    auto scan = [&](const Eigen::MatrixXd& pts, Eigen::Index rows_scaled) {
        for (Eigen::Index i = 0; i < rows_scaled; ++i) {
            for (int k = 0; k < set.dimension(); ++k) point[k] = pts(i, k);
            best = std::max(best, christoffel(point));
        }
    };
    scan(z.points, z.points.rows());
    scan(fresh.points, fresh.points.rows());
    est.value = std::sqrt(std::max(best, 0.0));
    est.candidate_count = gram_points + K_points;
    return est;
}

/// Chernoff-bound sample budget: with the lambda-rectangle Nikolskii
/// bound N^2/lambda, M >= N^2 lambda^-1 ((1-d)log(1-d)+d)^-1 log(N/g).
inline std::uint64_t sample_complexity_bound_lambda(std::uint64_t N, double lambda,
                                                    double delta, double gamma) {
    if (!(delta > 0.0 && delta < 1.0) || !(gamma > 0.0 && gamma < 1.0))
        throw ParameterError("require 0 < delta, gamma < 1");
    if (!(lambda > 0.0 && lambda <= 1.0))
        throw ParameterError("require 0 < lambda <= 1");
    double denom = (1.0 - delta) * std::log(1.0 - delta) + delta;
    double m = static_cast<double>(N) * static_cast<double>(N) / lambda / denom *
               std::log(static_cast<double>(N) / gamma);
    return static_cast<std::uint64_t>(std::ceil(m));
}

/// Same budget with an explicit Nikolskii constant squared.
inline std::uint64_t sample_complexity_bound_nikolskii(double nik_squared,
                                                       std::uint64_t N,
                                                       double delta, double gamma) {
    if (!(delta > 0.0 && delta < 1.0) || !(gamma > 0.0 && gamma < 1.0))
        throw ParameterError("require 0 < delta, gamma < 1");
    if (!(nik_squared > 0.0)) throw ParameterError("Nikolskii constant must be > 0");
    double denom = (1.0 - delta) * std::log(1.0 - delta) + delta;
    double m = nik_squared / denom * std::log(static_cast<double>(N) / gamma);
    return static_cast<std::uint64_t>(std::ceil(m));
}

/// Chebyshev polynomial T_n evaluated at x (|x| may exceed 1).
inline double chebyshev_t(int n, double x) {
    if (n == 0) return 1.0;
    double tkm1 = 1.0, tk = x;
    for (int k = 1; k < n; ++k) {
        double tkp1 = 2.0 * x * tk - tkm1;
        tkm1 = tk;
        tk = tkp1;
    }
    return tk;
}

/// Deterministic 1-D conditioning lower bound for Omega of length
/// |Omega| inside (-1,1): cond(A) >= T_{N-1}(4/|Omega| - 1) / N^2.
inline double cond_lower_bound_1d(int N, double omega_length) {
    if (N < 1) throw ParameterError("N must be >= 1");
    if (!(omega_length > 0.0 && omega_length <= 2.0))
        throw ParameterError("require 0 < |Omega| <= 2");
    double arg = 4.0 / omega_length - 1.0;
    return chebyshev_t(N - 1, arg) / (static_cast<double>(N) * N);
}

} // namespace polyframe
