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
#include <stdexcept>
#include <string>
#include <vector>

#include "qsaw/lattice_state.hpp"
#include "qsaw/marginal.hpp"
#include "qsaw/operators.hpp"
#include "qsaw/series.hpp"

namespace qsaw {

struct EvolveOptions {
    /// Keep the full state after every step. At 7 steps this is a few thousand
    /// entries per step; at the 30-step cap it can reach millions.
    bool keep_states = false;
    /// Magnitude at or below which amplitudes are dropped after each operator.
    /// Anything above 0 loses probability and the norm drifts below 1.
    double prune_threshold = 0.0;
};

struct Trajectory {
    WalkParams params;
    Lattice lattice;
    std::vector<Marginal> marginals;  ///< one per t = 0 ... steps
    VarianceSeries variances;         ///< aligned with marginals
    std::vector<SparseState> states;  ///< filled only with EvolveOptions::keep_states
};

inline void validate(const WalkParams& params) {
    if (!std::isfinite(params.theta_c) || !std::isfinite(params.theta_b) ||
        !std::isfinite(params.theta_m)) {
        throw std::invalid_argument("walk angles must be finite");
    }
    if (params.steps < 0) {
        throw std::invalid_argument("walk steps must be non-negative");
    }
    if (params.steps > kMaxSteps) {
        throw SizingError("walk of " + std::to_string(params.steps) +
                          " steps exceeds the cap of " + std::to_string(kMaxSteps));
    }
}

inline Trajectory run_walk(const WalkParams& params, const EvolveOptions& options = {}) {
    validate(params);
    Trajectory out{params, make_lattice(std::max(params.steps, 1)), {}, {}, {}};
    out.marginals.reserve(static_cast<std::size_t>(params.steps) + 1);

    SparseState state = prepare_input(out.lattice, params.input);
    for (int t = 0;; ++t) {
        Marginal m = marginal(state);
        const Moments mo = moments(m, out.lattice.start_index);
        out.variances.push({t, mo.mean, mo.variance});
        out.marginals.push_back(std::move(m));
        if (options.keep_states) {
            out.states.push_back(state);
        }
        if (t == params.steps) {
            break;
        }
        state = walk_step(state, params, options.prune_threshold);
    }
    return out;
}

}  // namespace qsaw
