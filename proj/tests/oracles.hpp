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

// Reference implementations used only by tests. They share no code with the
// engine beyond the label types, so agreement is meaningful.

#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <map>
#include <tuple>
#include <vector>

namespace qsaw::oracle {

using Key = std::tuple<int, int, std::uint64_t>;  // site, coin (+1/-1), memory
using AmplitudeMap = std::map<Key, std::complex<double>>;

/// Matrix element <out|R(theta)|in> for bits in, out in {0, 1}.
inline std::complex<double> rot_element(double theta, int out, int in) {
    return out == in ? std::complex<double>(std::cos(theta), 0.0)
                     : std::complex<double>(0.0, -std::sin(theta));
}

/// Sums over all 4^t branch sequences (memory keep/flip x outgoing coin) of
/// the product of matrix elements along the path, merging only final labels.
inline AmplitudeMap path_sum(double theta_c, double theta_b, double theta_m, int steps,
                             int start_site, bool symmetric) {
    AmplitudeMap result;
    struct Path {
        int x;
        int c;
        std::uint64_t m;
        std::complex<double> a;
    };
    std::vector<Path> roots;
    if (symmetric) {
        roots.push_back({start_site, +1, 0, 1.0 / std::sqrt(2.0)});
        roots.push_back({start_site, -1, 0, 1.0 / std::sqrt(2.0)});
    } else {
        roots.push_back({start_site, +1, 0, 1.0});
    }
    const std::uint64_t branches = std::uint64_t{1} << (2 * steps);
    for (const Path& root : roots) {
        for (std::uint64_t seq = 0; seq < branches; ++seq) {
            Path p = root;
            for (int s = 0; s < steps; ++s) {
                const int choice = static_cast<int>((seq >> (2 * s)) & 3U);
                const int flip = choice & 1;
                const int out_coin = (choice & 2) ? +1 : -1;
                const int old_bit = static_cast<int>((p.m >> p.x) & 1U);
                const int new_bit = old_bit ^ flip;
                p.a *= rot_element(theta_m, new_bit, old_bit);
                if (flip) p.m ^= std::uint64_t{1} << p.x;
                const double th = new_bit ? theta_b : theta_c;
                p.a *= rot_element(th, out_coin == 1 ? 1 : 0, p.c == 1 ? 1 : 0);
                p.c = out_coin;
                p.x += p.c;
            }
            result[Key{p.x, p.c, p.m}] += p.a;
        }
    }
    return result;
}

/// Plain coined walk with coin R(theta) and no memory, dense over offsets
/// [-steps, steps]. Returns p[t][offset + steps] for t = 0 ... steps.
inline std::vector<std::vector<double>> coined_walk(double theta, int steps, bool symmetric) {
    const int width = 2 * steps + 1;
    using Row = std::vector<std::complex<double>>;
    Row minus(static_cast<std::size_t>(width)), plus(static_cast<std::size_t>(width));
    if (symmetric) {
        minus[steps] = plus[steps] = 1.0 / std::sqrt(2.0);
    } else {
        plus[steps] = 1.0;
    }
    const double c = std::cos(theta), s = std::sin(theta);
    const std::complex<double> off(0.0, -s);
    std::vector<std::vector<double>> probs;
    for (int t = 0; t <= steps; ++t) {
        std::vector<double> p(static_cast<std::size_t>(width));
        for (int i = 0; i < width; ++i) p[i] = std::norm(minus[i]) + std::norm(plus[i]);
        probs.push_back(p);
        if (t == steps) break;
        Row nm(width), np(width);
        for (int i = 0; i < width; ++i) {
            const auto m = c * minus[i] + off * plus[i];
            const auto q = off * minus[i] + c * plus[i];
            if (i > 0) nm[i - 1] = m;
            if (i + 1 < width) np[i + 1] = q;
        }
        minus.swap(nm);
        plus.swap(np);
    }
    return probs;
}

}  // namespace qsaw::oracle
