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
#include <bit>
#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace qsaw {

using Amplitude = std::complex<double>;

/// Memory masks are single machine words, so a lattice holds at most 64 sites.
inline constexpr int kMaxSites = 64;
/// Largest walk length whose centred lattice (2 * steps + 3 sites) fits the mask.
inline constexpr int kMaxSteps = (kMaxSites - 3) / 2;

/// Raised when a walk would leave the finite lattice or exceed the register cap.
struct SizingError : std::out_of_range {
    using std::out_of_range::out_of_range;
};

/// A finite line of sites. Positions reported to users are relative to start_index.
struct Lattice {
    int n_sites = 0;
    int start_index = 0;

    friend bool operator==(const Lattice&, const Lattice&) = default;
};

/// Lattice wide enough that a walk of max_steps steps launched from the
/// centre never touches the two outermost sites on either side.
inline Lattice make_lattice(int max_steps) {
    if (max_steps < 1) {
        throw std::invalid_argument("make_lattice: max_steps must be >= 1, got " +
                                    std::to_string(max_steps));
    }
    if (max_steps > kMaxSteps) {
        throw SizingError("make_lattice: max_steps " + std::to_string(max_steps) +
                          " exceeds the memory register cap of " + std::to_string(kMaxSteps));
    }
    return Lattice{2 * max_steps + 3, max_steps + 1};
}

/// Dimension N * 2^(N+1) of position x coin x memory for an N-site lattice.
inline std::uint64_t hilbert_dimension(int n_sites) {
    if (n_sites < 1) {
        throw std::invalid_argument("hilbert_dimension: n_sites must be positive");
    }
    const int shift = n_sites + 1;
    if (shift >= std::numeric_limits<std::uint64_t>::digits) {
        throw std::overflow_error("hilbert_dimension: 2^" + std::to_string(shift) +
                                  " does not fit in 64 bits");
    }
    const std::uint64_t power = std::uint64_t{1} << shift;
    const auto n = static_cast<std::uint64_t>(n_sites);
    if (n > std::numeric_limits<std::uint64_t>::max() / power) {
        throw std::overflow_error("hilbert_dimension: N * 2^(N+1) overflows for N = " +
                                  std::to_string(n_sites));
    }
    return n * power;
}

inline std::uint64_t hilbert_dimension(const Lattice& lattice) {
    return hilbert_dimension(lattice.n_sites);
}

/// Coin direction. Matrix rows and columns are ordered (minus, plus).
enum class Coin : int { minus = -1, plus = +1 };

constexpr int coin_index(Coin c) { return c == Coin::minus ? 0 : 1; }
constexpr Coin coin_from_index(int i) { return i == 0 ? Coin::minus : Coin::plus; }
constexpr int displacement(Coin c) { return static_cast<int>(c); }
constexpr Coin opposite(Coin c) { return c == Coin::minus ? Coin::plus : Coin::minus; }

/// One computational basis element |site, coin, q_0 ... q_{N-1}>; bit i of memory is q_i.
struct BasisLabel {
    int site = 0;
    Coin coin = Coin::plus;
    std::uint64_t memory = 0;

    constexpr bool memory_bit(int i) const { return ((memory >> i) & 1U) != 0; }
    constexpr BasisLabel with_memory_flipped(int i) const {
        return BasisLabel{site, coin, memory ^ (std::uint64_t{1} << i)};
    }

    friend constexpr auto operator<=>(const BasisLabel&, const BasisLabel&) = default;
};

/// Sparse amplitude map over the basis of a fixed lattice.
///
/// Entries are kept sorted by label with no duplicates and no exactly-zero
/// amplitudes, so two states with the same content compare equal entry by
/// entry and iteration order is deterministic.
class SparseState {
public:
    using Entry = std::pair<BasisLabel, Amplitude>;

    SparseState() = default;
    explicit SparseState(Lattice lattice) : lattice_(lattice) {}

    /// Builds a state from unsorted, possibly repeated entries. Repeated labels
    /// are summed in the order given. Entries whose magnitude is <= prune_threshold
    /// are dropped; the default of 0 removes only exact zeros. A positive
    /// threshold discards probability, so the norm drifts below 1.
    static SparseState assemble(Lattice lattice, std::vector<Entry> raw,
                                double prune_threshold = 0.0) {
        SparseState out(lattice);
        for (const auto& [label, amp] : raw) {
            out.check_label(label);
        }
        std::stable_sort(raw.begin(), raw.end(),
                         [](const Entry& a, const Entry& b) { return a.first < b.first; });
        out.entries_.reserve(raw.size());
        for (auto it = raw.begin(); it != raw.end();) {
            const BasisLabel label = it->first;
            Amplitude sum = it->second;
            for (++it; it != raw.end() && it->first == label; ++it) {
                sum += it->second;
            }
            if (keep(sum, prune_threshold)) {
                out.entries_.emplace_back(label, sum);
            }
        }
        return out;
    }

    const Lattice& lattice() const { return lattice_; }
    std::span<const Entry> entries() const { return entries_; }
    std::size_t size() const { return entries_.size(); }
    bool empty() const { return entries_.empty(); }

    /// Amplitude of a label, zero when absent.
    Amplitude amplitude(const BasisLabel& label) const {
        auto it = find(label);
        return it == entries_.end() ? Amplitude{} : it->second;
    }

    /// Adds amp to the stored amplitude of label; an exact-zero result erases the entry.
    void add(const BasisLabel& label, Amplitude amp) {
        check_label(label);
        auto it = std::lower_bound(entries_.begin(), entries_.end(), label,
                                   [](const Entry& e, const BasisLabel& l) { return e.first < l; });
        if (it != entries_.end() && it->first == label) {
            it->second += amp;
            if (it->second == Amplitude{}) {
                entries_.erase(it);
            }
        } else if (amp != Amplitude{}) {
            entries_.insert(it, Entry{label, amp});
        }
    }

    friend bool operator==(const SparseState&, const SparseState&) = default;

private:
    static bool keep(Amplitude a, double threshold) {
        if (threshold <= 0.0) {
            return a != Amplitude{};
        }
        return std::abs(a) > threshold;
    }

    std::vector<Entry>::const_iterator find(const BasisLabel& label) const {
        auto it = std::lower_bound(entries_.begin(), entries_.end(), label,
                                   [](const Entry& e, const BasisLabel& l) { return e.first < l; });
        return (it != entries_.end() && it->first == label) ? it : entries_.end();
    }

    void check_label(const BasisLabel& label) const {
        if (label.site < 0 || label.site >= lattice_.n_sites) {
            throw SizingError("basis label site " + std::to_string(label.site) +
                              " outside lattice of " + std::to_string(lattice_.n_sites) + " sites");
        }
        if (lattice_.n_sites < kMaxSites && (label.memory >> lattice_.n_sites) != 0) {
            throw SizingError("basis label memory has bits set beyond the lattice");
        }
    }

    Lattice lattice_{};
    std::vector<Entry> entries_;
};

inline double norm_squared(const SparseState& state) {
    double total = 0.0;
    for (const auto& [label, amp] : state.entries()) {
        total += std::norm(amp);
    }
    return total;
}

/// (|+1> + |-1>) / sqrt(2) at the start site with blank memory.
inline SparseState prepare_symmetrized(const Lattice& lattice) {
    const double h = 1.0 / std::sqrt(2.0);
    return SparseState::assemble(lattice, {{BasisLabel{lattice.start_index, Coin::plus, 0}, h},
                                           {BasisLabel{lattice.start_index, Coin::minus, 0}, h}});
}

/// |start, +1> with blank memory.
inline SparseState prepare_unsymmetrized(const Lattice& lattice) {
    return SparseState::assemble(lattice, {{BasisLabel{lattice.start_index, Coin::plus, 0}, 1.0}});
}

}  // namespace qsaw
