#pragma once

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <numbers>
#include <ostream>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "polyframe/domain.hpp"
#include "polyframe/errors.hpp"
#include "polyframe/rng.hpp"

namespace polyframe {

enum class SampleMeasure { UniformOnOmega, ChebyshevOnOmega };

inline const char* to_string(SampleMeasure m) {
    return m == SampleMeasure::UniformOnOmega ? "uniform" : "chebyshev";
}

/// M i.i.d. draws from a named measure restricted to Omega, with the
/// seed that produced them.  Regeneration with the same seed replays the
/// identical point list bit-for-bit.
struct SampleSet {
    Eigen::MatrixXd points; // M x d, every row inside Omega
    SampleMeasure measure = SampleMeasure::UniformOnOmega;
    std::uint64_t seed = 0;
    DomainSpec domain;
    std::size_t proposals = 0; // total proposals incl. rejections

    Eigen::Index size() const { return points.rows(); }
    int dimension() const { return static_cast<int>(points.cols()); }
    double acceptance_rate() const {
        return proposals ? static_cast<double>(points.rows()) / proposals : 0.0;
    }
};

/// Rejection-sampling proposal cap: 1e4 proposals per requested sample.
inline constexpr std::size_t kRejectionCapFactor = 10'000;

namespace detail {

inline void propose_point(SplitMix64& rng, SampleMeasure measure, double T,
                          std::vector<double>& y) {
    for (double& v : y) {
        double u = rng.next_double();
        v = measure == SampleMeasure::UniformOnOmega
                ? -T + 2.0 * T * u
                : std::cos(std::numbers::pi * u);
    }
}

inline SampleSet draw_samples(const DomainSpec& domain, Eigen::Index M,
                              std::uint64_t seed, SampleMeasure measure) {
    if (M < 1) throw ParameterError("sample count M must be >= 1");
    if (measure == SampleMeasure::ChebyshevOnOmega && domain.half_width() != 1.0)
        throw ParameterError("Chebyshev sampling requires the unit box");
    const int d = domain.dimension();
    SampleSet set;
    set.points.resize(M, d);
    set.measure = measure;
    set.seed = seed;
    set.domain = domain;
    SplitMix64 rng(seed);
    std::vector<double> y(d);
    const std::size_t cap = kRejectionCapFactor * static_cast<std::size_t>(M);
    Eigen::Index accepted = 0;
    std::size_t proposals = 0;
    while (accepted < M) {
        if (proposals >= cap) {
            double rate = static_cast<double>(accepted) / proposals;
            throw SamplingError(
                "rejection sampling exceeded " + std::to_string(cap) +
                " proposals on domain " + domain.name() +
                " (empirical acceptance rate " + std::to_string(rate) + ")");
        }
        propose_point(rng, measure, domain.half_width(), y);
        ++proposals;
        if (domain.contains(y)) {
            for (int k = 0; k < d; ++k) set.points(accepted, k) = y[k];
            ++accepted;
        }
    }
    set.proposals = proposals;
    return set;
}

} // namespace detail

/// i.i.d. draws from the uniform probability measure on Omega, by
/// rejection from uniform proposals on D.
inline SampleSet draw_uniform_samples(const DomainSpec& domain, Eigen::Index M,
                                      std::uint64_t seed) {
    return detail::draw_samples(domain, M, seed, SampleMeasure::UniformOnOmega);
}

/// i.i.d. draws from the tensor Chebyshev measure restricted to Omega;
/// coordinatewise inverse-CDF proposals y = cos(pi u).
inline SampleSet draw_chebyshev_samples(const DomainSpec& domain, Eigen::Index M,
                                        std::uint64_t seed) {
    return detail::draw_samples(domain, M, seed, SampleMeasure::ChebyshevOnOmega);
}

inline SampleSet draw_samples(const DomainSpec& domain, Eigen::Index M,
                              std::uint64_t seed, SampleMeasure measure) {
    return detail::draw_samples(domain, M, seed, measure);
}

struct VolumeEstimate {
    double fraction = 0.0;
    double standard_error = 0.0;
    std::size_t sample_count = 0;
};

/// Monte-Carlo mean of the indicator of Omega under the proposal measure
/// nu on D, with binomial standard error.  For the uniform measure this
/// estimates Vol(Omega)/Vol(D).
inline VolumeEstimate estimate_volume_fraction(
    const DomainSpec& domain, std::size_t K, std::uint64_t seed,
    SampleMeasure measure = SampleMeasure::UniformOnOmega) {
    if (K < 1) throw ParameterError("K must be >= 1");
    SplitMix64 rng(seed);
    std::vector<double> y(domain.dimension());
    std::size_t hits = 0;
    for (std::size_t i = 0; i < K; ++i) {
        detail::propose_point(rng, measure, domain.half_width(), y);
        if (domain.contains(y)) ++hits;
    }
    VolumeEstimate est;
    est.fraction = static_cast<double>(hits) / K;
    est.standard_error = std::sqrt(est.fraction * (1.0 - est.fraction) / K);
    est.sample_count = K;
    return est;
}

/// CSV: metadata header then one point per row.
inline void write_sample_set_csv(std::ostream& os, const SampleSet& set) {
    os << "# domain=" << set.domain.name() << " d=" << set.dimension()
       << " measure=" << to_string(set.measure) << " seed=" << set.seed
       << " M=" << set.size() << "\n";
    char buf[32];
    for (Eigen::Index i = 0; i < set.size(); ++i) {
        for (int k = 0; k < set.dimension(); ++k) {
            std::snprintf(buf, sizeof(buf), "%.17g", set.points(i, k));
            os << (k ? "," : "") << buf;
        }
        os << "\n";
    }
}

} // namespace polyframe
