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

#include "qsaw/evolve.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "oracles.hpp"

using namespace qsaw;
using std::numbers::pi;

TEST(Marginal, symmetrized_input_is_a_delta) {
    const Lattice lat = make_lattice(7);
    const Marginal m = marginal(prepare_symmetrized(lat));
    ASSERT_EQ(m.probabilities.size(), 17U);
    for (int x = 0; x < 17; ++x) {
        EXPECT_NEAR(m.probabilities[x], x == 8 ? 1.0 : 0.0, 1e-15);
    }
}

TEST(Marginal, one_balanced_step_splits_evenly) {
    const Trajectory traj = run_walk({pi / 4, pi / 4, 0.0, 1, InputKind::symmetrized});
    const Marginal& m = traj.marginals[1];
    EXPECT_NEAR(m.at_offset(-1), 0.5, 1e-15);
    EXPECT_NEAR(m.at_offset(1), 0.5, 1e-15);
    EXPECT_EQ(m.at_offset(0), 0.0);
}

TEST(Marginal, off_lattice_offsets_read_zero) {
    const Trajectory traj = run_walk({pi / 4, 0.0, 0.0, 2, InputKind::symmetrized});
    EXPECT_EQ(traj.marginals[2].at_offset(100), 0.0);
    EXPECT_EQ(traj.marginals[2].at_offset(-100), 0.0);
}

TEST(RunWalk, trajectory_shape) {
    const Trajectory traj = run_walk({pi / 4, 0.2, 0.3, 5, InputKind::symmetrized});
    EXPECT_EQ(traj.lattice, make_lattice(5));
    ASSERT_EQ(traj.marginals.size(), 6U);
    ASSERT_EQ(traj.variances.size(), 6U);
    EXPECT_TRUE(traj.states.empty());
    for (int t = 0; t <= 5; ++t) EXPECT_EQ(traj.variances[t].t, t);
    EXPECT_EQ(traj.variances[0].variance, 0.0);
}

TEST(RunWalk, keep_states_records_every_step) {
    const Trajectory traj = run_walk({pi / 4, 0.2, 0.3, 4, InputKind::unsymmetrized}, {.keep_states = true});
    ASSERT_EQ(traj.states.size(), 5U);
    EXPECT_EQ(traj.states[0], prepare_unsymmetrized(traj.lattice));
}

TEST(RunWalk, rejects_bad_parameters) {
    EXPECT_THROW(run_walk({pi / 4, 0.0, 0.0, kMaxSteps + 1, InputKind::symmetrized}), SizingError);
    EXPECT_THROW(run_walk({pi / 4, 0.0, 0.0, -1, InputKind::symmetrized}), std::invalid_argument);
    EXPECT_THROW(run_walk({std::nan(""), 0.0, 0.0, 3, InputKind::symmetrized}), std::invalid_argument);
}

TEST(RunWalk, ballistic_symmetrized) {
    const Trajectory traj = run_walk({pi / 4, 0.0, pi / 2, 7, InputKind::symmetrized});
    const Marginal& last = traj.marginals.back();
    int support = 0;
    for (double p : last.probabilities) support += p != 0.0;
    EXPECT_EQ(support, 2);
    EXPECT_NEAR(last.at_offset(7), 0.5, 1e-15);
    EXPECT_NEAR(last.at_offset(-7), 0.5, 1e-15);
    for (int t = 0; t <= 7; ++t) {
        EXPECT_NEAR(traj.variances[t].variance, t * t, 1e-9);
    }
    EXPECT_NEAR(traj.variances.back().variance, 49.0, 1e-12);
}

TEST(RunWalk, ballistic_unsymmetrized_has_zero_variance) {
    const Trajectory traj = run_walk({pi / 4, 0.0, pi / 2, 7, InputKind::unsymmetrized});
    const Marginal& last = traj.marginals.back();
    EXPECT_NEAR(last.at_offset(7), 1.0, 1e-15);
    for (const auto& p : traj.variances.entries()) {
        EXPECT_EQ(p.variance, 0.0);
        EXPECT_EQ(p.mean, p.t);
    }
}

TEST(RunWalk, no_recording_matches_memoryless_walk) {
    for (double tb : {0.0, 0.4, pi / 4, pi / 3, pi / 2, 2.5}) {
        for (InputKind input : {InputKind::symmetrized, InputKind::unsymmetrized}) {
            const Trajectory traj = run_walk({pi / 4, tb, 0.0, 7, input});
            const auto ref = oracle::coined_walk(pi / 4, 7, input == InputKind::symmetrized);
            for (int t = 0; t <= 7; ++t) {
                for (int x = -7; x <= 7; ++x) {
                    EXPECT_NEAR(traj.marginals[t].at_offset(x), ref[t][x + 7], 1e-12);
                }
            }
        }
    }
}

TEST(RunWalk, ideal_walk_variance_series) {
    // Memoryless R(pi/4) walk from the symmetrized input, computed independently
    // with a dense coined-walk reference: 0, 1, 2, 3, 5, 8, 45/4, 59/4.
    const double expected[] = {0, 1, 2, 3, 5, 8, 11.25, 14.75};
    const Trajectory traj = run_walk({pi / 4, 1.1, 0.0, 7, InputKind::symmetrized});
    for (int t = 0; t <= 7; ++t) EXPECT_NEAR(traj.variances[t].variance, expected[t], 1e-12);
}

TEST(RunWalk, generic_angles_variance_series) {
    // Frozen from an independent dictionary-based simulation at (pi/4, pi/3, pi/5).
    const double expected[] = {0.0, 1.0, 1.654508497187474, 2.368699183632777, 3.4965949786138415,
                               4.627610557074212};
    const Trajectory traj = run_walk({pi / 4, pi / 3, pi / 5, 5, InputKind::symmetrized});
    for (int t = 0; t <= 5; ++t) EXPECT_NEAR(traj.variances[t].variance, expected[t], 1e-12);
}

TEST(RunWalk, deterministic) {
    const WalkParams p{pi / 4, 0.7, 1.1, 7, InputKind::symmetrized};
    const Trajectory a = run_walk(p), b = run_walk(p);
    EXPECT_EQ(a.variances, b.variances);
    for (std::size_t t = 0; t < a.marginals.size(); ++t) {
        EXPECT_EQ(a.marginals[t].probabilities, b.marginals[t].probabilities);
    }
}

// Properties over random angle triples: normalisation, light-cone support and
// parity, reflection symmetry of symmetrized walks.
TEST(RunWalk, marginal_properties) {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> angle(0.0, pi);
    for (int k = 0; k < 25; ++k) {
        const WalkParams p{angle(rng), angle(rng), angle(rng), 6,
                           k % 2 ? InputKind::unsymmetrized : InputKind::symmetrized};
        const Trajectory traj = run_walk(p);
        for (int t = 0; t <= p.steps; ++t) {
            const Marginal& m = traj.marginals[t];
            double total = 0.0;
            for (int x = -(p.steps + 1); x <= p.steps + 1; ++x) {
                const double px = m.at_offset(x);
                EXPECT_GE(px, 0.0);
                total += px;
                if (std::abs(x) > t || (x + t) % 2 != 0) {
                    EXPECT_EQ(px, 0.0);
                }
                if (p.input == InputKind::symmetrized) {
                    EXPECT_NEAR(px, m.at_offset(-x), 1e-12);
                }
            }
            EXPECT_NEAR(total, 1.0, 1e-12);
            if (p.input == InputKind::symmetrized) {
                EXPECT_NEAR(traj.variances[t].mean, 0.0, 1e-12);
            }
        }
    }
}
