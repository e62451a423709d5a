#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <limits>
#include <ostream>
#include <string>
#include <vector>

#include "polyframe/config.hpp"
#include "polyframe/diagnostics.hpp"
#include "polyframe/errors.hpp"
#include "polyframe/quadrature.hpp"
#include "polyframe/solver.hpp"
#include "polyframe/targets.hpp"

namespace polyframe {

namespace detail {

inline std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

/// Order-statistics lower median: sorted[(k-1)/2].  Deterministic for
/// even trial counts.
inline double lower_median(std::vector<double> v) {
    if (v.empty()) return std::numeric_limits<double>::quiet_NaN();
    std::sort(v.begin(), v.end());
    return v[(v.size() - 1) / 2];
}

inline void write_config_header(std::ostream& os, const KeyValueConfig& kv) {
    for (const auto& [k, v] : kv.entries()) os << "# " << k << "=" << v << "\n";
    os << "# config_hash=" << kv.hash() << "\n";
}

/// One regression fit: training samples, design matrix, solve.
struct Fit {
    SampleSet samples;
    DesignMatrix A;
    TruncatedSvdSolution solution;
};

template <class F>
Fit run_fit(const ExperimentConfig& cfg, const MultiIndexSet& set,
            std::uint64_t M, std::uint64_t trial_seed, F&& f) {
    SampleSet samples =
        polyframe::draw_samples(cfg.domain, static_cast<Eigen::Index>(M),
                                trial_seed, measure_for_basis(cfg.basis));
    DesignMatrix A = assemble_design_matrix(samples, set, cfg.basis);
    Eigen::VectorXd b = sample_rhs(samples, f);
    TruncatedSvdSolution sol = truncated_svd_solve(A, b, cfg.epsilon);
    return {std::move(samples), std::move(A), std::move(sol)};
}

struct ErrorEstimate {
    double l2 = 0.0;   // L^2(Omega,mu), RMS over a fresh Monte-Carlo set
    double linf = 0.0; // max over the fresh set plus the training set
};

template <class F>
ErrorEstimate estimate_errors(const ExperimentConfig& cfg, const Fit& fit,
                              const MultiIndexSet& set, F&& f,
                              std::uint64_t eval_seed) {
    SampleSet eval = polyframe::draw_samples(
        cfg.domain, static_cast<Eigen::Index>(cfg.error_points), eval_seed,
        measure_for_basis(cfg.basis));
    Eigen::VectorXd approx =
        evaluate_approximant(fit.solution.coefficients, set, cfg.basis, eval.points);
    ErrorEstimate est;
    double sq = 0.0;
    std::vector<double> point(set.dimension());
    for (Eigen::Index i = 0; i < eval.points.rows(); ++i) {
        for (int k = 0; k < set.dimension(); ++k) point[k] = eval.points(i, k);
        double e = std::abs(f(std::span<const double>(point)) - approx[i]);
        sq += e * e;
        est.linf = std::max(est.linf, e);
    }
    est.l2 = std::sqrt(sq / static_cast<double>(eval.points.rows()));
    Eigen::VectorXd train_approx = evaluate_approximant(
        fit.solution.coefficients, set, cfg.basis, fit.samples.points);
    for (Eigen::Index i = 0; i < fit.samples.points.rows(); ++i) {
        for (int k = 0; k < set.dimension(); ++k)
            point[k] = fit.samples.points(i, k);
        est.linf = std::max(est.linf, std::abs(f(std::span<const double>(point)) -
                                               train_approx[i]));
    }
    return est;
}

} // namespace detail

// ---------------------------------------------------------------------
// converge
// ---------------------------------------------------------------------

struct ConvergenceRow {
    std::uint64_t M = 0;
    std::uint64_t N = 0;
    int n = 0;
    double median_l2 = 0.0;
    double median_linf = 0.0;
    double median_coef_norm = 0.0;
    int failed_trials = 0;
    bool flagged = false; // > 20% of trials failed
    std::uint64_t seed = 0;
    std::uint64_t config_hash = 0;
};

inline std::vector<ConvergenceRow> run_convergence(const ExperimentConfig& cfg) {
    TargetFunction f = target_function(cfg.target_id);
    const OversamplingRule& rule = cfg.rules.front();
    std::vector<ConvergenceRow> rows;
    for (std::size_t si = 0; si < cfg.schedule.size(); ++si) {
        int n;
        std::uint64_t M;
        if (cfg.schedule_type == ScheduleType::Budget) {
            M = cfg.schedule[si];
            n = largest_n_for_budget(cfg.index_kind, cfg.domain.dimension(), M, rule);
        } else {
            n = static_cast<int>(cfg.schedule[si]);
            M = rule.min_samples(
                index_set_cardinality(cfg.index_kind, n, cfg.domain.dimension()));
        }
        MultiIndexSet set = make_index_set(cfg.index_kind, n, cfg.domain.dimension());

        std::vector<double> l2s, linfs, coefs;
        int failures = 0;
        for (int t = 0; t < cfg.trials; ++t) {
            std::uint64_t trial_id = si * static_cast<std::uint64_t>(cfg.trials) + t;
            std::uint64_t trial_seed = split_seed(cfg.seed, trial_id);
            try {
                detail::Fit fit = detail::run_fit(cfg, set, M, trial_seed, f);
                detail::ErrorEstimate err = detail::estimate_errors(
                    cfg, fit, set, f, split_seed(trial_seed, 0xE7A1u));
                l2s.push_back(err.l2);
                linfs.push_back(err.linf);
                coefs.push_back(coefficient_l2_norm(fit.solution));
            } catch (const SamplingError&) {
                ++failures;
            } catch (const NumericError&) {
                ++failures;
            }
        }
        ConvergenceRow row;
        row.M = M;
        row.N = set.size();
        row.n = n;
        row.median_l2 = detail::lower_median(l2s);
        row.median_linf = detail::lower_median(linfs);
        row.median_coef_norm = detail::lower_median(coefs);
        row.failed_trials = failures;
        row.flagged = failures * 5 > cfg.trials;
        row.seed = cfg.seed;
        row.config_hash = cfg.config_hash;
        rows.push_back(row);
    }
    return rows;
}

inline void write_convergence_csv(std::ostream& os, const KeyValueConfig& kv,
                                  const std::vector<ConvergenceRow>& rows) {
    detail::write_config_header(os, kv);
    os << "M,N,n,median_l2,median_linf,median_coef_norm,failed_trials,flagged,"
          "seed,config_hash\n";
    for (const auto& r : rows)
        os << r.M << "," << r.N << "," << r.n << "," << detail::fmt(r.median_l2)
           << "," << detail::fmt(r.median_linf) << ","
           << detail::fmt(r.median_coef_norm) << "," << r.failed_trials << ","
           << (r.flagged ? 1 : 0) << "," << r.seed << "," << r.config_hash
           << "\n";
}

// ---------------------------------------------------------------------
// conditioning
// ---------------------------------------------------------------------

struct ConditioningRow {
    std::uint64_t N = 0;
    std::uint64_t M = 0;
    std::string rule;
    double epsilon = 0.0;
    double c_prime = 0.0;
    double c_double_prime = 0.0;
    double c_max = 0.0;
    std::uint64_t seed = 0;
    std::uint64_t config_hash = 0;
};

/// Sweep over degree schedule x rules; medians over trials of the
/// conditioning constants, one precomputed Monte-Carlo Gram grid per
/// sweep point.
inline std::vector<ConditioningRow> run_conditioning_sweep(
    const ExperimentConfig& cfg) {
    if (cfg.schedule_type != ScheduleType::Degree)
        throw ConfigError("conditioning sweeps use a degree schedule");
    std::vector<ConditioningRow> rows;
    for (std::size_t si = 0; si < cfg.schedule.size(); ++si) {
        int n = static_cast<int>(cfg.schedule[si]);
        MultiIndexSet set = make_index_set(cfg.index_kind, n, cfg.domain.dimension());
        GramEstimate gram =
            monte_carlo_gram(cfg.domain, set, cfg.basis, cfg.error_points,
                             split_seed(cfg.seed, 0x6AA2u + si));
        for (std::size_t ri = 0; ri < cfg.rules.size(); ++ri) {
            const OversamplingRule& rule = cfg.rules[ri];
            std::uint64_t M = rule.min_samples(set.size());
            std::vector<double> cps, cdps, cmaxs;
            for (int t = 0; t < cfg.trials; ++t) {
                std::uint64_t trial_id =
                    (si * cfg.rules.size() + ri) * cfg.trials + t;
                std::uint64_t trial_seed = split_seed(cfg.seed, trial_id);
                SampleSet samples =
                    draw_samples(cfg.domain, static_cast<Eigen::Index>(M),
                                 trial_seed, measure_for_basis(cfg.basis));
                DesignMatrix A = assemble_design_matrix(samples, set, cfg.basis);
                ConditionReport rep = condition_constants(A, cfg.epsilon, gram);
                cps.push_back(rep.c_prime);
                cdps.push_back(rep.c_double_prime);
                cmaxs.push_back(rep.c_max);
            }
            ConditioningRow row;
            row.N = set.size();
            row.M = M;
            row.rule = to_string(rule.kind);
            row.epsilon = cfg.epsilon;
            row.c_prime = detail::lower_median(cps);
            row.c_double_prime = detail::lower_median(cdps);
            row.c_max = detail::lower_median(cmaxs);
            row.seed = cfg.seed;
            row.config_hash = cfg.config_hash;
            rows.push_back(row);
        }
    }
    return rows;
}

inline void write_conditioning_csv(std::ostream& os, const KeyValueConfig& kv,
                                   const std::vector<ConditioningRow>& rows) {
    detail::write_config_header(os, kv);
    os << "N,M,rule,epsilon,c_prime,c_double_prime,c_max,seed,config_hash\n";
    for (const auto& r : rows)
        os << r.N << "," << r.M << "," << r.rule << "," << detail::fmt(r.epsilon)
           << "," << detail::fmt(r.c_prime) << ","
           << detail::fmt(r.c_double_prime) << "," << detail::fmt(r.c_max) << ","
           << r.seed << "," << r.config_hash << "\n";
}

// ---------------------------------------------------------------------
// errormap
// ---------------------------------------------------------------------

struct ErrorMapRow {
    double y1 = 0.0;
    double y2 = 0.0;
    double error = 0.0; // sentinel -1 outside Omega
};

inline constexpr double kErrorMapSentinel = -1.0;

/// Single fit, |f - f_eps| on a G x G cell-center grid restricted to
/// Omega.  d = 2 only.
inline std::vector<ErrorMapRow> run_error_map(const ExperimentConfig& cfg) {
    if (cfg.domain.dimension() != 2)
        throw ConfigError("errormap requires a two-dimensional domain");
    TargetFunction f = target_function(cfg.target_id);
    const OversamplingRule& rule = cfg.rules.front();
    int n;
    std::uint64_t M;
    if (cfg.schedule_type == ScheduleType::Budget) {
        M = cfg.schedule.front();
        n = largest_n_for_budget(cfg.index_kind, 2, M, rule);
    } else {
        n = static_cast<int>(cfg.schedule.front());
        M = rule.min_samples(index_set_cardinality(cfg.index_kind, n, 2));
    }
    MultiIndexSet set = make_index_set(cfg.index_kind, n, 2);
    detail::Fit fit = detail::run_fit(cfg, set, M, cfg.seed, f);

    const int G = cfg.grid_size;
    const double T = cfg.domain.half_width();
    std::vector<ErrorMapRow> rows;
    rows.reserve(static_cast<std::size_t>(G) * G);
    std::vector<double> point(2);
    for (int i = 0; i < G; ++i) {
        point[0] = -T + 2.0 * T * (i + 0.5) / G;
        for (int j = 0; j < G; ++j) {
            point[1] = -T + 2.0 * T * (j + 0.5) / G;
            ErrorMapRow row{point[0], point[1], kErrorMapSentinel};
            if (cfg.domain.contains(point)) {
                Eigen::MatrixXd p(1, 2);
                p << point[0], point[1];
                double approx = evaluate_approximant(fit.solution.coefficients,
                                                     set, cfg.basis, p)[0];
                row.error = std::abs(f(point) - approx);
            }
            rows.push_back(row);
        }
    }
    return rows;
}

inline void write_error_map_csv(std::ostream& os, const KeyValueConfig& kv,
                                const std::vector<ErrorMapRow>& rows) {
    detail::write_config_header(os, kv);
    os << "y1,y2,abs_error\n";
    for (const auto& r : rows)
        os << detail::fmt(r.y1) << "," << detail::fmt(r.y2) << ","
           << detail::fmt(r.error) << "\n";
}

// ---------------------------------------------------------------------
// bounds
// ---------------------------------------------------------------------

struct BoundsRow {
    std::string check; // thm51 | coef | cap | trunc
    int n = 0;
    std::uint64_t N = 0;
    std::uint64_t M = 0;
    double lhs = 0.0;
    double rhs = 0.0;
    double slack = 0.0; // rhs - lhs, >= 0 when the bound holds
    std::uint64_t seed = 0;
    std::uint64_t config_hash = 0;
};

/// Measured quantities against the theoretical guarantees: the accuracy
/// inequality, the coefficient bound, the universal 1/(sqrt(v) eps) cap,
/// and the expectation bound for the truncated estimator.
inline std::vector<BoundsRow> run_bounds(const ExperimentConfig& cfg) {
    TargetFunction f = target_function(cfg.target_id);
    const OversamplingRule& rule = cfg.rules.front();
    if (cfg.schedule_type != ScheduleType::Degree)
        throw ConfigError("bounds runs use a degree schedule");
    std::vector<BoundsRow> rows;
    for (std::size_t si = 0; si < cfg.schedule.size(); ++si) {
        int n = static_cast<int>(cfg.schedule[si]);
        const int d = cfg.domain.dimension();
        MultiIndexSet set = make_index_set(cfg.index_kind, n, d);
        const std::uint64_t N = set.size();
        std::uint64_t M = rule.min_samples(N);

        // projection p of f onto P_Lambda over the box
        ProjectionResult proj = projection_coefficients(f, set, cfg.basis);
        const double p_norm = proj.coefficients.norm();

        // estimate ||f-p||_inf and ||f-p||_{L2(Omega,mu)} on a dense set
        SampleSet dense = draw_samples(cfg.domain,
                                       static_cast<Eigen::Index>(cfg.error_points),
                                       split_seed(cfg.seed, 0xD41Fu + si),
                                       measure_for_basis(cfg.basis));
        Eigen::VectorXd p_vals =
            evaluate_approximant(proj.coefficients, set, cfg.basis, dense.points);
        double einf = 0.0, esq = 0.0;
        std::vector<double> point(d);
        for (Eigen::Index i = 0; i < dense.points.rows(); ++i) {
            for (int k = 0; k < d; ++k) point[k] = dense.points(i, k);
            double e = std::abs(f(point) - p_vals[i]);
            einf = std::max(einf, e);
            esq += e * e;
        }
        double el2 = std::sqrt(esq / static_cast<double>(dense.points.rows()));

        detail::Fit fit = detail::run_fit(cfg, set, M, cfg.seed, f);
        GramEstimate gram =
            monte_carlo_gram(cfg.domain, set, cfg.basis, cfg.error_points,
                             split_seed(cfg.seed, 0x6AA2u + si));
        ConditionReport rep = condition_constants(fit.A, cfg.epsilon, gram);
        detail::ErrorEstimate err = detail::estimate_errors(
            cfg, fit, set, f, split_seed(cfg.seed, 0xE7A1u + si));

        auto push = [&](const std::string& check, double lhs, double rhs) {
            rows.push_back({check, n, N, M, lhs, rhs, rhs - lhs, cfg.seed,
                            cfg.config_hash});
        };
        const double e_eps = einf + cfg.epsilon * p_norm;
        push("thm51", err.l2, (1.0 + rep.c_max) * e_eps);
        push("coef", coefficient_l2_norm(fit.solution) * cfg.epsilon, e_eps);

        double v_omega = cfg.domain.analytic_volume_fraction().value_or(
            estimate_volume_fraction(cfg.domain, cfg.error_points,
                                     split_seed(cfg.seed, 0xF00Du),
                                     measure_for_basis(cfg.basis))
                .fraction);
        push("cap", rep.c_max, 1.0 / (std::sqrt(v_omega) * cfg.epsilon));

        // truncated-estimator expectation bound at the Chernoff budget
        NikolskiiEstimate nik = nikolskii_constant_estimate(
            cfg.domain, set, cfg.error_points, split_seed(cfg.seed, 0x217Eu + si),
            cfg.basis, cfg.error_points);
        std::uint64_t M_t = sample_complexity_bound_nikolskii(
            nik.value * nik.value, N, cfg.delta, cfg.gamma);
        double mean_sq = 0.0;
        for (int t = 0; t < cfg.trials; ++t) {
            std::uint64_t trial_seed =
                split_seed(cfg.seed, 0xB0B0u + si * cfg.trials + t);
            detail::Fit tfit = detail::run_fit(cfg, set, M_t, trial_seed, f);
            SampleSet eval = draw_samples(
                cfg.domain, static_cast<Eigen::Index>(cfg.error_points),
                split_seed(trial_seed, 0xE7A1u), measure_for_basis(cfg.basis));
            Eigen::VectorXd approx =
                truncate_pointwise(evaluate_approximant(tfit.solution.coefficients,
                                                        set, cfg.basis, eval.points),
                                   cfg.bound_L);
            double sq = 0.0;
            for (Eigen::Index i = 0; i < eval.points.rows(); ++i) {
                for (int k = 0; k < d; ++k) point[k] = eval.points(i, k);
                double e = f(point) - approx[i];
                sq += e * e;
            }
            mean_sq += sq / static_cast<double>(eval.points.rows());
        }
        mean_sq /= cfg.trials;
        double e_tilde = el2 + cfg.epsilon * p_norm;
        double rhs_trunc = 3.0 * (2.0 - cfg.delta) / (1.0 - cfg.delta) * e_tilde *
                               e_tilde +
                           4.0 * cfg.bound_L * cfg.bound_L * cfg.gamma;
        rows.push_back({"trunc", n, N, M_t, mean_sq, rhs_trunc,
                        rhs_trunc - mean_sq, cfg.seed, cfg.config_hash});
    }
    return rows;
}

inline void write_bounds_csv(std::ostream& os, const KeyValueConfig& kv,
                             const std::vector<BoundsRow>& rows) {
    detail::write_config_header(os, kv);
    os << "check,n,N,M,lhs,rhs,slack,seed,config_hash\n";
    for (const auto& r : rows)
        os << r.check << "," << r.n << "," << r.N << "," << r.M << ","
           << detail::fmt(r.lhs) << "," << detail::fmt(r.rhs) << ","
           << detail::fmt(r.slack) << "," << r.seed << "," << r.config_hash
           << "\n";
}

} // namespace polyframe
