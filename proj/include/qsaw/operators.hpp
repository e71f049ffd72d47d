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
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>
#include <utility>
#include <vector>

#include "qsaw/lattice_state.hpp"

namespace qsaw {

/// 2x2 coin operator; index 0 is coin -1, index 1 is coin +1.
struct CoinMatrix {
    std::array<std::array<Amplitude, 2>, 2> m{};

    Amplitude operator()(Coin row, Coin col) const { return m[coin_index(row)][coin_index(col)]; }
    Amplitude operator()(int row, int col) const { return m[row][col]; }
};

/// cos and sin of theta. Angles that are multiples of pi/2 up to rounding of
/// the argument give exact 0 and +-1, so the regime corners keep an exactly
/// sparse support.
inline std::pair<double, double> cos_sin(double theta) {
    constexpr double quarter_turn = std::numbers::pi / 2;
    const double k = std::nearbyint(theta / quarter_turn);
    const double slack = 4 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(theta));
    if (std::abs(theta - k * quarter_turn) <= slack) {
        switch (static_cast<int>(std::fmod(std::fmod(k, 4.0) + 4.0, 4.0))) {
            case 0: return {1.0, 0.0};
            case 1: return {0.0, 1.0};
            case 2: return {-1.0, 0.0};
            default: return {0.0, -1.0};
        }
    }
    return {std::cos(theta), std::sin(theta)};
}

/// Pauli-X rotation [[cos t, -i sin t], [-i sin t, cos t]].
inline CoinMatrix rotation(double theta) {
    const auto [c, s] = cos_sin(theta);
    const Amplitude diag{c, 0.0};
    const Amplitude off{0.0, -s};
    return CoinMatrix{{{{diag, off}, {off, diag}}}};
}

/// Probability of reversing direction at a site whose memory qubit is set.
inline double reflectivity(double theta_b) {
    const double s = cos_sin(theta_b).second;
    return s * s;
}

enum class InputKind { symmetrized, unsymmetrized };

inline const char* to_string(InputKind kind) {
    return kind == InputKind::symmetrized ? "sym" : "unsym";
}

/// Full configuration of one walk. Angles are radians; any finite value is accepted.
struct WalkParams {
    double theta_c = std::numbers::pi / 4;  ///< coin used where the local qubit reads 0
    double theta_b = 0.0;                   ///< coin used where the local qubit reads 1
    double theta_m = 0.0;                   ///< memory recording strength
    int steps = 0;
    InputKind input = InputKind::symmetrized;
};

inline SparseState prepare_input(const Lattice& lattice, InputKind kind) {
    return kind == InputKind::symmetrized ? prepare_symmetrized(lattice)
                                          : prepare_unsymmetrized(lattice);
}

/// Rotates the memory qubit of the walker's current site by R(theta_m).
inline SparseState apply_memory(const SparseState& state, double theta_m,
                                double prune_threshold = 0.0) {
    const auto [c, s] = cos_sin(theta_m);
    const Amplitude stay{c, 0.0};
    const Amplitude flip{0.0, -s};
    std::vector<SparseState::Entry> raw;
    raw.reserve(2 * state.size());
    for (const auto& [label, amp] : state.entries()) {
        if (c != 0.0) {
            raw.emplace_back(label, stay * amp);
        }
        if (s != 0.0) {
            raw.emplace_back(label.with_memory_flipped(label.site), flip * amp);
        }
    }
    return SparseState::assemble(state.lattice(), std::move(raw), prune_threshold);
}

/// Mixes the coin with R(theta_c) where q_x = 0 and R(theta_b) where q_x = 1,
/// x being the walker's current site.
inline SparseState apply_coin(const SparseState& state, double theta_c, double theta_b,
                              double prune_threshold = 0.0) {
    const std::array<CoinMatrix, 2> coins{rotation(theta_c), rotation(theta_b)};
    std::vector<SparseState::Entry> raw;
    raw.reserve(2 * state.size());
    for (const auto& [label, amp] : state.entries()) {
        const CoinMatrix& u = coins[label.memory_bit(label.site) ? 1 : 0];
        for (int j = 0; j < 2; ++j) {
            const Amplitude element = u(j, coin_index(label.coin));
            if (element != Amplitude{}) {
                raw.emplace_back(BasisLabel{label.site, coin_from_index(j), label.memory},
                                 element * amp);
            }
        }
    }
    return SparseState::assemble(state.lattice(), std::move(raw), prune_threshold);
}

/// Moves every branch one site in its coin direction.
inline SparseState apply_step(const SparseState& state) {
    const int n = state.lattice().n_sites;
    std::vector<SparseState::Entry> raw;
    raw.reserve(state.size());
    for (const auto& [label, amp] : state.entries()) {
        const int target = label.site + displacement(label.coin);
        if (target < 0 || target >= n) {
            throw SizingError("apply_step: branch at site " + std::to_string(label.site) +
                              " would leave a lattice of " + std::to_string(n) + " sites");
        }
        raw.emplace_back(BasisLabel{target, label.coin, label.memory}, amp);
    }
    return SparseState::assemble(state.lattice(), std::move(raw));
}

/// One step S * C(theta_c, theta_b) * M(theta_m).
inline SparseState walk_step(const SparseState& state, const WalkParams& params,
                             double prune_threshold = 0.0) {
    return apply_step(apply_coin(apply_memory(state, params.theta_m, prune_threshold),
                                 params.theta_c, params.theta_b, prune_threshold));
}

}  // namespace qsaw
