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

#include <cmath>
#include <utility>
#include <vector>

#include "qsaw/lattice_state.hpp"

namespace qsaw {

/// Position distribution p_x with coin and memory traced out.
struct Marginal {
    Lattice lattice;
    std::vector<double> probabilities;  ///< indexed by absolute site

    /// Probability at a site given relative to the start site; zero off the lattice.
    double at_offset(int dx) const {
        const int site = lattice.start_index + dx;
        if (site < 0 || site >= lattice.n_sites) {
            return 0.0;
        }
        return probabilities[static_cast<std::size_t>(site)];
    }
};

inline Marginal marginal(const SparseState& state) {
    Marginal out{state.lattice(),
                 std::vector<double>(static_cast<std::size_t>(state.lattice().n_sites), 0.0)};
    for (const auto& [label, amp] : state.entries()) {
        out.probabilities[static_cast<std::size_t>(label.site)] += std::norm(amp);
    }
    return out;
}

struct Moments {
    double mean = 0.0;
    double variance = 0.0;
};

/// Mean and variance of position measured from origin.
inline Moments moments(const Marginal& m, int origin) {
    Moments out;
    for (std::size_t x = 0; x < m.probabilities.size(); ++x) {
        out.mean += m.probabilities[x] * (static_cast<double>(x) - origin);
    }
    for (std::size_t x = 0; x < m.probabilities.size(); ++x) {
        const double d = static_cast<double>(x) - origin - out.mean;
        out.variance += m.probabilities[x] * d * d;
    }
    return out;
}

}  // namespace qsaw
