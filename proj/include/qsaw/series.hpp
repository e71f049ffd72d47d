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

#include <stdexcept>
#include <string>
#include <vector>

namespace qsaw {

struct VariancePoint {
    int t = 0;
    double mean = 0.0;
    double variance = 0.0;

    friend bool operator==(const VariancePoint&, const VariancePoint&) = default;
};

/// Per-step mean and variance of position, t strictly increasing.
class VarianceSeries {
public:
    VarianceSeries() = default;
    explicit VarianceSeries(std::vector<VariancePoint> points) {
        entries_.reserve(points.size());
        for (const auto& p : points) {
            push(p);
        }
    }

    void push(VariancePoint p) {
        if (!entries_.empty() && p.t <= entries_.back().t) {
            throw std::invalid_argument("VarianceSeries: t must be strictly increasing (got " +
                                        std::to_string(p.t) + " after " +
                                        std::to_string(entries_.back().t) + ")");
        }
        if (!(p.variance >= 0.0)) {
            throw std::invalid_argument("VarianceSeries: variance must be non-negative at t = " +
                                        std::to_string(p.t));
        }
        entries_.push_back(p);
    }

    const std::vector<VariancePoint>& entries() const { return entries_; }
    std::size_t size() const { return entries_.size(); }
    bool empty() const { return entries_.empty(); }
    const VariancePoint& operator[](std::size_t i) const { return entries_[i]; }
    const VariancePoint& back() const { return entries_.back(); }

    friend bool operator==(const VarianceSeries&, const VarianceSeries&) = default;

private:
    std::vector<VariancePoint> entries_;
};

}  // namespace qsaw
