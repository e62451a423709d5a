#pragma once

#include <cmath>
#include <functional>
#include <span>
#include <string>

#include "polyframe/errors.hpp"

namespace polyframe {

/// Catalog of target functions used by the experiment drivers.
struct TargetFunction {
    std::string id;
    std::function<double(std::span<const double>)> fn;

    double operator()(std::span<const double> y) const { return fn(y); }
};

inline TargetFunction target_function(const std::string& id) {
    if (id == "logdisc")
        return {id, [](std::span<const double> y) {
                    double r2 = y[0] * y[0] + y[1] * y[1];
                    return std::log(8.0 * r2) - 2.0 * r2;
                }};
    if (id == "cossin")
        return {id, [](std::span<const double> y) {
                    return std::cos(2.0 * y[0]) * std::sin(y[1]);
                }};
    if (id == "invsqrt")
        return {id, [](std::span<const double> y) {
                    double s = 0.0;
                    for (double v : y) s += std::sqrt(std::abs(v));
                    return 1.0 / s;
                }};
    if (id == "expmean")
        return {id, [](std::span<const double> y) {
                    double s = 0.0;
                    for (double v : y) s += v;
                    return std::exp(-s / static_cast<double>(y.size()));
                }};
    if (id == "cosmean")
        return {id, [](std::span<const double> y) {
                    double s = 0.0;
                    for (double v : y) s += v;
                    return std::cos(s / static_cast<double>(y.size()));
                }};
    throw ParameterError("unknown target function: " + id);
}

} // namespace polyframe
