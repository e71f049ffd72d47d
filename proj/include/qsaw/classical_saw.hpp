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

#include <array>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "qsaw/analysis.hpp"
#include "qsaw/parallel.hpp"
#include "qsaw/series.hpp"

namespace qsaw {

/// Philox4x32-10 counter-based generator (Salmon et al., SC'11). Every
/// (key, counter) pair maps to an independent block of 128 random bits, so
/// replicates draw from disjoint streams regardless of execution order.
class Philox4x32 {
public:
    using Counter = std::array<std::uint32_t, 4>;
    using Key = std::array<std::uint32_t, 2>;

    static Counter generate(Counter ctr, Key key) {
        for (int round = 0; round < 10; ++round) {
            if (round > 0) {
                key[0] += kWeyl0;
                key[1] += kWeyl1;
            }
            const std::uint64_t p0 = std::uint64_t{kMul0} * ctr[0];
            const std::uint64_t p1 = std::uint64_t{kMul1} * ctr[2];
            ctr = {static_cast<std::uint32_t>(p1 >> 32) ^ ctr[1] ^ key[0],
                   static_cast<std::uint32_t>(p1),
                   static_cast<std::uint32_t>(p0 >> 32) ^ ctr[3] ^ key[1],
                   static_cast<std::uint32_t>(p0)};
        }
        return ctr;
    }

    /// Uniform double in [0, 1) with 53 random bits.
    static double uniform(Counter ctr, Key key) {
        const Counter out = generate(ctr, key);
        const std::uint64_t bits = (std::uint64_t{out[0]} << 21) | (out[1] >> 11);
        return static_cast<double>(bits) * 0x1.0p-53;
    }

private:
    static constexpr std::uint32_t kMul0 = 0xD2511F53;
    static constexpr std::uint32_t kMul1 = 0xCD9E8D57;
    static constexpr std::uint32_t kWeyl0 = 0x9E3779B9;
    static constexpr std::uint32_t kWeyl1 = 0xBB67AE85;
};

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// Seed for entry `index` of a grid run from a single base seed.
inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index) {
    return splitmix64(base ^ splitmix64(index + 1));
}

struct SawConfig {
    double g = 0.0;  ///< self-avoidance strength
    int steps = 200;
    int replicates = 1000;
    bool mod2 = false;  ///< weight by visit count mod 2 instead of the raw count
    std::uint64_t seed = 0;
};

inline void validate(const SawConfig& c) {
    if (!(c.g >= 0.0)) {
        throw std::invalid_argument("self-avoidance strength g must be >= 0");
    }
    if (c.steps < 1) {
        throw std::invalid_argument("classical walk steps must be >= 1");
    }
    if (c.replicates < 1) {
        throw std::invalid_argument("classical walk replicates must be >= 1");
    }
}

/// Visit counts n_i of an unbounded line and the walker's current site.
class VisitLedger {
public:
    /// Walker at the origin, which already counts as visited once.
    VisitLedger() { counts_[0] = 1; }

    long current() const { return current_; }

    unsigned visits(long site) const {
        auto it = counts_.find(site);
        return it == counts_.end() ? 0U : it->second;
    }

    void set_visits(long site, unsigned n) { counts_[site] = n; }

    void move_to(long site) {
        current_ = site;
        ++counts_[site];
    }

private:
    std::unordered_map<long, unsigned> counts_;
    long current_ = 0;
};

struct StepProbabilities {
    double left = 0.5;
    double right = 0.5;
};

/// g values beyond this are clamped so e^(g * n) stays finite. Already at
/// g = 46 an avoided neighbour is chosen with probability below 1e-20, so
/// "infinite" avoidance is any g past that point, +inf included.
inline constexpr double kMaxAvoidance = 700.0;

/// q_i = e^(-g m_i) / sum_j e^(-g m_j) over the two neighbours, m_i = n_i or n_i mod 2.
inline StepProbabilities step_probabilities(const VisitLedger& ledger, double g, bool mod2) {
    if (!(g >= 0.0)) {
        throw std::invalid_argument("self-avoidance strength g must be >= 0");
    }
    g = std::min(g, kMaxAvoidance);
    auto weight_count = [&](long site) {
        const unsigned n = ledger.visits(site);
        return static_cast<double>(mod2 ? n % 2 : n);
    };
    const double diff = weight_count(ledger.current() + 1) - weight_count(ledger.current() - 1);
    // Logistic form of the normalised exponentials; avoids overflow for large g * n.
    return StepProbabilities{1.0 / (1.0 + std::exp(-g * diff)), 1.0 / (1.0 + std::exp(g * diff))};
}

/// Positions x(0) ... x(steps) of one replicate. Draw t of replicate r uses
/// Philox counter (t, r_lo, r_hi, 0) under the configuration's seed.
inline std::vector<long> simulate_replicate(const SawConfig& config, std::uint64_t replicate) {
    const Philox4x32::Key key{static_cast<std::uint32_t>(config.seed),
                              static_cast<std::uint32_t>(config.seed >> 32)};
    VisitLedger ledger;
    std::vector<long> path;
    path.reserve(static_cast<std::size_t>(config.steps) + 1);
    path.push_back(0);
    for (int t = 0; t < config.steps; ++t) {
        const StepProbabilities q = step_probabilities(ledger, config.g, config.mod2);
        const double u = Philox4x32::uniform({static_cast<std::uint32_t>(t),
                                              static_cast<std::uint32_t>(replicate),
                                              static_cast<std::uint32_t>(replicate >> 32), 0},
                                             key);
        ledger.move_to(ledger.current() + (u < q.left ? -1 : 1));
        path.push_back(ledger.current());
    }
    return path;
}

/// Ensemble mean and (population) variance of position at every t = 0 ... steps.
inline VarianceSeries simulate_saw(const SawConfig& config, unsigned max_threads = 0) {
    validate(config);
    const auto reps = static_cast<std::size_t>(config.replicates);
    std::vector<std::vector<long>> paths(reps);
    parallel_for(
        reps, [&](std::size_t r) { paths[r] = simulate_replicate(config, r); }, max_threads);

    VarianceSeries series;
    for (int t = 0; t <= config.steps; ++t) {
        const auto ti = static_cast<std::size_t>(t);
        double mean = 0.0;
        for (const auto& p : paths) {
            mean += static_cast<double>(p[ti]);
        }
        mean /= static_cast<double>(reps);
        double var = 0.0;
        for (const auto& p : paths) {
            const double d = static_cast<double>(p[ti]) - mean;
            var += d * d;
        }
        series.push({t, mean, var / static_cast<double>(reps)});
    }
    return series;
}

struct BetaPoint {
    double g = 0.0;
    double beta = 0.0;
    double r_squared = 0.0;
};

/// Power-law exponent of the ensemble variance for each g; grid entry i uses
/// seed derive_seed(seed, i).
inline std::vector<BetaPoint> beta_vs_g(const std::vector<double>& g_grid, int steps,
                                        int replicates, bool mod2, std::uint64_t seed,
                                        unsigned max_threads = 0) {
    if (g_grid.empty()) {
        throw std::invalid_argument("beta_vs_g: g grid must be nonempty");
    }
    std::vector<BetaPoint> out;
    out.reserve(g_grid.size());
    for (std::size_t i = 0; i < g_grid.size(); ++i) {
        const SawConfig config{g_grid[i], steps, replicates, mod2, derive_seed(seed, i)};
        const PowerFit fit = fit_power(simulate_saw(config, max_threads));
        out.push_back({g_grid[i], fit.beta, fit.r_squared});
    }
    return out;
}

}  // namespace qsaw
