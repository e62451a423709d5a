#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <optional>
#include <span>
#include <string>

#include "polyframe/errors.hpp"
#include "polyframe/targets.hpp"

namespace polyframe {

namespace detail {

/// Volume of the d-dimensional Euclidean ball of radius r.
inline double ball_volume(int d, double r) {
    return std::pow(std::numbers::pi, d / 2.0) /
           std::tgamma(d / 2.0 + 1.0) * std::pow(r, d);
}

/// Vol{u in (0,1)^d : u_1 + ... + u_d <= s} (Irwin-Hall CDF).
inline double unit_cube_simplex_volume(int d, double s) {
    if (s <= 0.0) return 0.0;
    if (s >= d) return 1.0;
    double sum = 0.0, binom = 1.0;
    for (int k = 0; k <= static_cast<int>(s); ++k) {
        sum += (k % 2 ? -binom : binom) * std::pow(s - k, d);
        binom = binom * (d - k) / (k + 1);
    }
    for (int k = 2; k <= d; ++k) sum /= k;
    return sum;
}

} // namespace detail

/// Irregular domain Omega inside the bounding box D = (-T,T)^d: a total
/// membership predicate plus analytic metadata where known.
class DomainSpec {
public:
    enum class Kind {
        FullBox,
        LShape,
        LinearConstraint,
        DiscExclusion,
        Circle,
        Annulus,
        Corner,
        NormExclusion,
        UnitBall,
        ImplicitNonneg,
        Mandelbrot
    };

    DomainSpec() : DomainSpec(Kind::FullBox, 1, 1.0) {}

    static DomainSpec full_box(int d, double T = 1.0) {
        return DomainSpec(Kind::FullBox, d, T);
    }
    /// (-1,1)^2 minus the open top-right quadrant; area 3 of 4.
    static DomainSpec l_shape() { return DomainSpec(Kind::LShape, 2, 1.0); }
    /// {y in (-1,1)^2 : y1 + y2 <= 1}.
    static DomainSpec linear_constraint() {
        return DomainSpec(Kind::LinearConstraint, 2, 1.0);
    }
    /// (-1,1)^2 with the open disc of radius rho removed.
    static DomainSpec disc_exclusion(double rho) {
        if (rho <= 0.0 || rho > 1.0) throw ParameterError("require 0 < rho <= 1");
        DomainSpec s(Kind::DiscExclusion, 2, 1.0);
        s.r_inner_ = rho;
        return s;
    }
    /// Disc of radius r in d = 2.
    static DomainSpec circle(double r) {
        if (r <= 0.0 || r > 1.0) throw ParameterError("require 0 < r <= 1");
        DomainSpec s(Kind::Circle, 2, 1.0);
        s.r_outer_ = r;
        return s;
    }
    /// {r_inner <= |y|_2 <= r_outer} in d dimensions.
    static DomainSpec annulus(double r_inner, double r_outer, int d = 2) {
        if (!(0.0 <= r_inner && r_inner < r_outer && r_outer <= 1.0))
            throw ParameterError("require 0 <= r_inner < r_outer <= 1");
        DomainSpec s(Kind::Annulus, d, 1.0);
        s.r_inner_ = r_inner;
        s.r_outer_ = r_outer;
        return s;
    }
    /// {y in (-1,1)^d : y_1 + ... + y_d <= 1}.
    static DomainSpec corner(int d, double T = 1.0) {
        return DomainSpec(Kind::Corner, d, T);
    }
    /// {y in (-1,1)^d : |y|_2 >= r}.
    static DomainSpec norm_exclusion(double r, int d) {
        if (r <= 0.0 || r > 1.0) throw ParameterError("require 0 < r <= 1");
        DomainSpec s(Kind::NormExclusion, d, 1.0);
        s.r_inner_ = r;
        return s;
    }
    static DomainSpec unit_ball(int d) {
        return DomainSpec(Kind::UnitBall, d, 1.0);
    }
    /// {y in (-1,1)^2 : f(y) >= 0} with f from the target catalog.
    static DomainSpec implicit_nonneg(const std::string& target_id) {
        DomainSpec s(Kind::ImplicitNonneg, 2, 1.0);
        s.implicit_id_ = target_id;
        s.implicit_fn_ = target_function(target_id);
        return s;
    }
    static DomainSpec mandelbrot() { return DomainSpec(Kind::Mandelbrot, 2, 1.0); }

    Kind kind() const { return kind_; }
    int dimension() const { return dimension_; }
    double half_width() const { return half_width_; }
    double r_inner() const { return r_inner_; }
    double r_outer() const { return r_outer_; }
    const std::string& implicit_id() const { return implicit_id_; }

    bool in_box(std::span<const double> y) const {
        if (static_cast<int>(y.size()) != dimension_) return false;
        for (double v : y)
            if (!(std::abs(v) <= half_width_)) return false;
        return true;
    }

    /// Membership test; the point must lie in the bounding box.
    bool contains(std::span<const double> y) const {
        if (!in_box(y))
            throw DomainError("point outside the bounding box D");
        switch (kind_) {
            case Kind::FullBox:
                return true;
            case Kind::LShape:
                return !(y[0] > 0.0 && y[1] > 0.0);
            case Kind::LinearConstraint:
                return y[0] + y[1] <= 1.0;
            case Kind::DiscExclusion:
                return norm2(y) >= r_inner_;
            case Kind::Circle:
                return norm2(y) <= r_outer_;
            case Kind::Annulus: {
                double r = norm2(y);
                return r_inner_ <= r && r <= r_outer_;
            }
            case Kind::Corner: {
                double s = 0.0;
                for (double v : y) s += v;
                return s <= 1.0;
            }
            case Kind::NormExclusion:
                return norm2(y) >= r_inner_;
            case Kind::UnitBall:
                return norm2(y) <= 1.0;
            case Kind::ImplicitNonneg:
                return implicit_fn_(y) >= 0.0;
            case Kind::Mandelbrot:
                return mandelbrot_member(y[0], y[1]);
        }
        return false;
    }

    /// Vol(Omega)/Vol(D) under the uniform measure, where elementary
    /// geometry gives it; absent otherwise.
    std::optional<double> analytic_volume_fraction() const {
        const double box = std::pow(2.0 * half_width_, dimension_);
        switch (kind_) {
            case Kind::FullBox:
                return 1.0;
            case Kind::LShape:
                return 0.75;
            case Kind::LinearConstraint:
                return 7.0 / 8.0;
            case Kind::DiscExclusion:
                return 1.0 - detail::ball_volume(2, r_inner_) / 4.0;
            case Kind::Circle:
                return detail::ball_volume(2, r_outer_) / 4.0;
            case Kind::Annulus:
                return (detail::ball_volume(dimension_, r_outer_) -
                        detail::ball_volume(dimension_, r_inner_)) / box;
            case Kind::Corner: {
                // substitute u = (y+T)/(2T); sum constraint becomes
                // u_1+...+u_d <= (d + 1/T)/2
                double s = (dimension_ + 1.0 / half_width_) / 2.0;
                return detail::unit_cube_simplex_volume(dimension_, s);
            }
            case Kind::NormExclusion:
                return 1.0 - detail::ball_volume(dimension_, r_inner_) / box;
            case Kind::UnitBall:
                return detail::ball_volume(dimension_, 1.0) / box;
            default:
                return std::nullopt;
        }
    }

    /// Analytic lambda-rectangle constant for the catalog members where
    /// the geometry supplies one.  Balls and the Mandelbrot set lack the
    /// property; implicit domains are unknown.
    std::optional<double> lambda_rectangle_constant() const {
        switch (kind_) {
            case Kind::FullBox:
                return 1.0;
            case Kind::LShape:
                // two 1x2 rectangles, min area 2, total area 3
                return 2.0 / 3.0;
            case Kind::LinearConstraint:
                // sliding rectangles [-1,x] x [-1,1-x], min area 2, Vol = 7/2
                return 4.0 / 7.0;
            case Kind::Corner:
                if (dimension_ == 2 && half_width_ == 1.0) return 4.0 / 7.0;
                return std::nullopt;
            default:
                return std::nullopt;
        }
    }

    std::string name() const {
        switch (kind_) {
            case Kind::FullBox: return "fullbox";
            case Kind::LShape: return "lshape";
            case Kind::LinearConstraint: return "linear_constraint";
            case Kind::DiscExclusion: return "disc_exclusion";
            case Kind::Circle: return "circle";
            case Kind::Annulus: return "annulus";
            case Kind::Corner: return "corner";
            case Kind::NormExclusion: return "norm_exclusion";
            case Kind::UnitBall: return "unit_ball";
            case Kind::ImplicitNonneg: return "implicit_" + implicit_id_;
            case Kind::Mandelbrot: return "mandelbrot";
        }
        return "?";
    }

private:
    DomainSpec(Kind kind, int d, double T)
        : kind_(kind), dimension_(d), half_width_(T) {
        if (d < 1) throw ParameterError("dimension must be >= 1");
        if (T < 1.0) throw ParameterError("box half-width must be >= 1");
    }

    static double norm2(std::span<const double> y) {
        double s = 0.0;
        for (double v : y) s += v * v;
        return std::sqrt(s);
    }

    /// Escape-iteration membership: map (y1,y2) in (-1,1)^2 to
    /// c = (1.25 y1 - 0.75) + i 1.15 y2 so the set sits strictly inside
    /// the box; iterate z <- z^2 + c from 0, escape radius 2, 200 steps.
    static bool mandelbrot_member(double y1, double y2) {
        const std::complex<double> c(1.25 * y1 - 0.75, 1.15 * y2);
        std::complex<double> z(0.0, 0.0);
        for (int it = 0; it < 200; ++it) {
            z = z * z + c;
            if (std::norm(z) > 4.0) return false;
        }
        return true;
    }

    Kind kind_;
    int dimension_;
    double half_width_;
    double r_inner_ = 0.0;
    double r_outer_ = 0.0;
    std::string implicit_id_;
    TargetFunction implicit_fn_;
};

} // namespace polyframe
