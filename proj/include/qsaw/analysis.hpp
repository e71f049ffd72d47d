// Copyright 2026 The qsaw Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "qsaw/evolve.hpp"
#include "qsaw/marginal.hpp"
#include "qsaw/parallel.hpp"
#include "qsaw/series.hpp"

namespace qsaw {

/// A series with no usable points for a log-log fit (e.g. identically zero variance).
struct DegenerateSeriesError : std::domain_error {
    using std::domain_error::domain_error;
};

/// var(t) = k0 + k1 t + k2 t^2
struct PolyFit {
    double k0 = 0.0;
    double k1 = 0.0;
    double k2 = 0.0;
    double residual = 0.0;  ///< sum of squared errors
};

/// var(t) = A t^beta, fitted as a straight line in log-log space.
struct PowerFit {
    double beta = 0.0;
    double log_prefactor = 0.0;  ///< log A
    double r_squared = 0.0;
    std::size_t points = 0;      ///< entries that entered the fit
};

/// Least-squares quadratic over every entry, t = 0 included.
inline PolyFit fit_poly2(const VarianceSeries& series) {
    const auto n = static_cast<Eigen::Index>(series.size());
    if (n < 3) {
        throw std::invalid_argument("fit_poly2: need at least 3 entries, got " + std::to_string(n));
    }
    Eigen::MatrixXd design(n, 3);
    Eigen::VectorXd rhs(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        const double t = series[static_cast<std::size_t>(i)].t;
        design(i, 0) = 1.0;
        design(i, 1) = t;
        design(i, 2) = t * t;
        rhs(i) = series[static_cast<std::size_t>(i)].variance;
    }
    const Eigen::Vector3d k = design.colPivHouseholderQr().solve(rhs);
    return PolyFit{k(0), k(1), k(2), (design * k - rhs).squaredNorm()};
}

/// Slope of log(var) against log(t) over entries with t >= 1 and var > 0.
inline PowerFit fit_power(const VarianceSeries& series) {
    std::vector<double> xs, ys;
    for (const auto& p : series.entries()) {
        if (p.t >= 1 && p.variance > 0.0) {
            xs.push_back(std::log(static_cast<double>(p.t)));
            ys.push_back(std::log(p.variance));
        }
    }
    if (xs.size() < 2) {
        throw DegenerateSeriesError("degenerate series: " + std::to_string(xs.size()) +
                                    " entries with t >= 1 and positive variance, need 2");
    }
    const auto n = static_cast<double>(xs.size());
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        mx += xs[i];
        my += ys[i];
    }
    mx /= n;
    my /= n;
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double dx = xs[i] - mx;
        const double dy = ys[i] - my;
        sxx += dx * dx;
        sxy += dx * dy;
        syy += dy * dy;
    }
    PowerFit fit;
    fit.beta = sxy / sxx;
    fit.log_prefactor = my - fit.beta * mx;
    fit.points = xs.size();
    double ss_res = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double e = ys[i] - (fit.log_prefactor + fit.beta * xs[i]);
        ss_res += e * e;
    }
    // A flat series is fitted exactly by beta = 0.
    fit.r_squared = syy > 0.0 ? std::clamp(1.0 - ss_res / syy, 0.0, 1.0) : 1.0;
    return fit;
}

/// n evenly spaced angles over [0, pi/2], both ends included.
inline std::vector<double> uniform_angle_grid(int n) {
    if (n < 1) {
        throw std::invalid_argument("angle grid needs at least one point");
    }
    if (n == 1) {
        return {0.0};
    }
    std::vector<double> grid(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        grid[static_cast<std::size_t>(i)] = (std::numbers::pi / 2) * i / (n - 1);
    }
    return grid;
}

inline constexpr int kDefaultSweepPoints = 33;
inline constexpr int kDefaultSweepSteps = 7;

/// Final-step variance over a theta_m x theta_b grid; values are row-major in theta_m.
struct SweepSurface {
    std::vector<double> theta_m;
    std::vector<double> theta_b;
    std::vector<double> values;

    double at(std::size_t i_m, std::size_t j_b) const { return values.at(i_m * theta_b.size() + j_b); }
};

inline SweepSurface sweep(const std::vector<double>& theta_m_grid,
                          const std::vector<double>& theta_b_grid, double theta_c, int steps,
                          InputKind input, unsigned max_threads = 0) {
    if (theta_m_grid.empty() || theta_b_grid.empty()) {
        throw std::invalid_argument("sweep: grids must be nonempty");
    }
    SweepSurface out{theta_m_grid, theta_b_grid,
                     std::vector<double>(theta_m_grid.size() * theta_b_grid.size(), 0.0)};
    const std::size_t cols = theta_b_grid.size();
    parallel_for(
        out.values.size(),
        [&](std::size_t k) {
            WalkParams p;
            p.theta_c = theta_c;
            p.theta_b = theta_b_grid[k % cols];
            p.theta_m = theta_m_grid[k / cols];
            p.steps = steps;
            p.input = input;
            out.values[k] = run_walk(p).variances.back().variance;
        },
        max_threads);
    return out;
}

struct BackActionBeta {
    double theta_b = 0.0;
    std::optional<PowerFit> fit;  ///< empty when the variance series is degenerate
};

/// Power-law exponent of the variance series against theta_b at fixed theta_c and theta_m.
inline std::vector<BackActionBeta> beta_vs_theta_b(const std::vector<double>& theta_b_grid, double theta_c,
                                                   double theta_m, int steps, InputKind input,
                                                   unsigned max_threads = 0) {
    std::vector<BackActionBeta> out(theta_b_grid.size());
    parallel_for(
        out.size(),
        [&](std::size_t j) {
            out[j].theta_b = theta_b_grid[j];
            const Trajectory traj = run_walk({theta_c, theta_b_grid[j], theta_m, steps, input});
            try {
                out[j].fit = fit_power(traj.variances);
            } catch (const DegenerateSeriesError&) {
            }
        },
        max_threads);
    return out;
}

/// Angles closer than this are treated as equal when deciding couplings.
inline constexpr double kAngleTolerance = 1e-12;

struct CouplingReport {
    bool coin_couples_all = false;           ///< position, coin and memory
    bool memory_couples_position = false;    ///< position and memory
    bool step_couples_position_coin = true;  ///< always
    std::string description;
};

inline CouplingReport coupling_report(double theta_b, double theta_c, double theta_m) {
    CouplingReport r;
    r.coin_couples_all = std::abs(theta_c - theta_b) > kAngleTolerance;
    r.memory_couples_position = std::abs(theta_m) > kAngleTolerance;
    r.step_couples_position_coin = true;
    r.description = std::string("coin: ") +
                    (r.coin_couples_all ? "couples position, coin and memory (theta_c != theta_b)"
                                        : "acts on the coin alone (theta_c == theta_b)") +
                    "\nmemory: " +
                    (r.memory_couples_position ? "couples position and memory (theta_m != 0)"
                                               : "identity, memory stays blank (theta_m == 0)") +
                    "\nstep: couples position and coin";
    return r;
}

}  // namespace qsaw
