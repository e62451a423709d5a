#pragma once

#include <cmath>
#include <numbers>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "polyframe/errors.hpp"
#include "polyframe/multi_index.hpp"

namespace polyframe {

/// Orthonormal 1-D family on the bounding interval.  Legendre and
/// Chebyshev live on (-1,1) with their natural probability measures;
/// the cosine family lives on (-T,T) with the uniform measure.
struct BasisKind {
    enum class Family { Legendre, Chebyshev, Cosine };
    Family family = Family::Legendre;
    double half_width = 1.0; // T; only meaningful for Cosine

    static BasisKind legendre() { return {Family::Legendre, 1.0}; }
    static BasisKind chebyshev() { return {Family::Chebyshev, 1.0}; }
    static BasisKind cosine(double T) {
        if (T < 1.0) throw ParameterError("cosine half-width T must be >= 1");
        return {Family::Cosine, T};
    }

    std::string name() const {
        switch (family) {
            case Family::Legendre: return "legendre";
            case Family::Chebyshev: return "chebyshev";
            case Family::Cosine: return "cosine";
        }
        return "?";
    }
};

/// sqrt(2n+1) P_n(y): Legendre orthonormal w.r.t. the uniform probability
/// measure on (-1,1), via the standard three-term recurrence.
inline double legendre_1d(int n, double y) {
    if (n < 0) throw ParameterError("degree must be >= 0");
    double pkm1 = 1.0, pk = y;
    if (n == 0) return 1.0;
    for (int k = 1; k < n; ++k) {
        double pkp1 = ((2 * k + 1) * y * pk - k * pkm1) / (k + 1);
        pkm1 = pk;
        pk = pkp1;
    }
    return std::sqrt(2.0 * n + 1.0) * pk;
}

/// Orthonormal Chebyshev w.r.t. the Chebyshev probability measure on
/// (-1,1): 1 for n = 0, sqrt(2) T_n(y) for n >= 1.
inline double chebyshev_1d(int n, double y) {
    if (n < 0) throw ParameterError("degree must be >= 0");
    if (n == 0) return 1.0;
    double tkm1 = 1.0, tk = y;
    for (int k = 1; k < n; ++k) {
        double tkp1 = 2.0 * y * tk - tkm1;
        tkm1 = tk;
        tk = tkp1;
    }
    return std::numbers::sqrt2 * tk;
}

/// Orthonormal cosine on (-T,T) w.r.t. the uniform probability measure:
/// 1 for n = 0, sqrt(2) cos(n pi (y+T)/(2T)) for n >= 1.
inline double cosine_1d(int n, double y, double T) {
    if (n < 0) throw ParameterError("degree must be >= 0");
    if (T < 1.0) throw ParameterError("cosine half-width T must be >= 1");
    if (n == 0) return 1.0;
    return std::numbers::sqrt2 * std::cos(n * std::numbers::pi * (y + T) / (2.0 * T));
}

inline double basis_1d(const BasisKind& basis, int n, double y) {
    switch (basis.family) {
        case BasisKind::Family::Legendre: return legendre_1d(n, y);
        case BasisKind::Family::Chebyshev: return chebyshev_1d(n, y);
        case BasisKind::Family::Cosine: return cosine_1d(n, y, basis.half_width);
    }
    return 0.0;
}

namespace detail {

/// All 1-D values psi_0..psi_maxdeg at y, one recurrence pass.
inline void basis_1d_all(const BasisKind& basis, int maxdeg, double y,
                         std::span<double> out) {
    switch (basis.family) {
        case BasisKind::Family::Legendre: {
            double pkm1 = 1.0, pk = y;
            out[0] = 1.0;
            if (maxdeg >= 1) out[1] = std::sqrt(3.0) * y;
            for (int k = 1; k < maxdeg; ++k) {
                double pkp1 = ((2 * k + 1) * y * pk - k * pkm1) / (k + 1);
                pkm1 = pk;
                pk = pkp1;
                out[k + 1] = std::sqrt(2.0 * (k + 1) + 1.0) * pk;
            }
            break;
        }
        case BasisKind::Family::Chebyshev: {
            double tkm1 = 1.0, tk = y;
            out[0] = 1.0;
            if (maxdeg >= 1) out[1] = std::numbers::sqrt2 * y;
            for (int k = 1; k < maxdeg; ++k) {
                double tkp1 = 2.0 * y * tk - tkm1;
                tkm1 = tk;
                tk = tkp1;
                out[k + 1] = std::numbers::sqrt2 * tk;
            }
            break;
        }
        case BasisKind::Family::Cosine: {
            out[0] = 1.0;
            double u = std::numbers::pi * (y + basis.half_width) /
                       (2.0 * basis.half_width);
            for (int k = 1; k <= maxdeg; ++k)
                out[k] = std::numbers::sqrt2 * std::cos(k * u);
            break;
        }
    }
}

} // namespace detail

/// Tensor-product basis values psi_n(point) for every n in Lambda, in the
/// canonical (lexicographic) order of the set.
inline Eigen::VectorXd tensor_basis_eval(const MultiIndexSet& set,
                                         std::span<const double> point,
                                         const BasisKind& basis) {
    const int d = set.dimension();
    if (static_cast<int>(point.size()) != d)
        throw ShapeError("point dimension does not match index set");
    const int maxdeg = set.max_degree();
    // per-coordinate 1-D tables, then products per index
    std::vector<double> table(static_cast<std::size_t>(d) * (maxdeg + 1));
    for (int k = 0; k < d; ++k)
        detail::basis_1d_all(basis, maxdeg, point[k],
                             std::span<double>(table.data() + k * (maxdeg + 1),
                                               maxdeg + 1));
    Eigen::VectorXd values(static_cast<Eigen::Index>(set.size()));
    for (std::size_t i = 0; i < set.size(); ++i) {
        const MultiIndex& idx = set[i];
        double prod = 1.0;
        for (int k = 0; k < d; ++k)
            prod *= table[k * (maxdeg + 1) + idx[k]];
        values[static_cast<Eigen::Index>(i)] = prod;
    }
    return values;
}

// ---------------------------------------------------------------------
// Legendre-Sobolev weights chi_{n,m}.
// ---------------------------------------------------------------------

struct SobolevWeightKind {
    enum class Variant { Classical, Mixed };
    Variant variant = Variant::Classical;
    int order = 0; // smoothness m >= 0

    static SobolevWeightKind classical(int m) {
        if (m < 0) throw ParameterError("smoothness order m must be >= 0");
        return {Variant::Classical, m};
    }
    static SobolevWeightKind mixed(int m) {
        if (m < 0) throw ParameterError("smoothness order m must be >= 0");
        return {Variant::Mixed, m};
    }
};

/// chi_{n,m} = sum over |j|_1 <= m (classical) or |j|_inf <= m (mixed) of
/// prod_k (n_k(n_k+1))^{j_k}, with the convention 0^0 = 1.
inline double sobolev_weight(const MultiIndex& n, const SobolevWeightKind& kind) {
    const int d = static_cast<int>(n.size());
    const int m = kind.order;
    MultiIndexSet js = kind.variant == SobolevWeightKind::Variant::Classical
                           ? total_degree_set(m, d)
                           : tensor_product_set(m, d);
    double sum = 0.0;
    for (const auto& j : js.indices()) {
        double prod = 1.0;
        for (int k = 0; k < d; ++k) {
            double base = static_cast<double>(n[k]) * (n[k] + 1);
            if (j[k] == 0) continue; // 0^0 = 1
            prod *= std::pow(base, j[k]);
        }
        sum += prod;
    }
    return sum;
}

} // namespace polyframe
