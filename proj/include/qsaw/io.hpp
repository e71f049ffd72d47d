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
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "qsaw/analysis.hpp"
#include "qsaw/classical_saw.hpp"
#include "qsaw/evolve.hpp"
#include "qsaw/series.hpp"

namespace qsaw::io {

/// Malformed input text (angle literal, CSV).
struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A file that could not be opened, read or written.
struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class Format { csv, json };

inline std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

inline std::optional<double> parse_real(std::string_view s) {
    s = trim(s);
    if (!s.empty() && s.front() == '+') s.remove_prefix(1);
    double v = 0.0;
    const auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || ec != std::errc{} || end != s.data() + s.size() || !std::isfinite(v)) {
        return std::nullopt;
    }
    return v;
}

/// Radians as a plain real ("0.785") or a multiple of pi: "pi", "-pi/4",
/// "3pi/8", "3*pi/8". "pi/4" evaluates to exactly std::numbers::pi / 4.
inline double parse_angle(std::string_view text) {
    std::string s;
    for (char ch : trim(text)) s.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(ch))));
    const auto pos = s.find("pi");
    if (pos == std::string::npos) {
        if (auto v = parse_real(s)) return *v;
        throw ParseError("invalid angle '" + std::string(text) + "'");
    }
    std::string_view coef = trim(std::string_view(s).substr(0, pos));
    std::string_view rest = trim(std::string_view(s).substr(pos + 2));
    double sign = 1.0;
    if (!coef.empty() && (coef.front() == '-' || coef.front() == '+')) {
        sign = coef.front() == '-' ? -1.0 : 1.0;
        coef = trim(coef.substr(1));
    }
    if (!coef.empty() && coef.back() == '*') coef = trim(coef.substr(0, coef.size() - 1));
    double numerator = 1.0;
    if (!coef.empty()) {
        auto v = parse_real(coef);
        if (!v || coef.front() == '-') throw ParseError("invalid angle coefficient in '" + std::string(text) + "'");
        numerator = *v;
    }
    double denominator = 1.0;
    if (!rest.empty()) {
        if (rest.front() != '/') throw ParseError("invalid angle '" + std::string(text) + "'");
        auto v = parse_real(rest.substr(1));
        if (!v || *v == 0.0) throw ParseError("invalid angle denominator in '" + std::string(text) + "'");
        denominator = *v;
    }
    return sign * (std::numbers::pi * numerator) / denominator;
}

inline InputKind parse_input_kind(std::string_view s) {
    s = trim(s);
    if (s == "sym" || s == "symmetrized") return InputKind::symmetrized;
    if (s == "unsym" || s == "unsymmetrized") return InputKind::unsymmetrized;
    throw ParseError("input kind must be 'sym' or 'unsym', got '" + std::string(s) + "'");
}

/// 17 significant digits, enough to round-trip any double. Zero prints as "0".
inline std::string format_number(double v) {
    if (v == 0.0) return "0";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

inline std::string series_csv(const VarianceSeries& series) {
    std::string out = "t,mean,variance\n";
    for (const auto& p : series.entries()) {
        out += std::to_string(p.t) + ',' + format_number(p.mean) + ',' + format_number(p.variance) + '\n';
    }
    return out;
}

inline nlohmann::json series_json(const VarianceSeries& series) {
    auto rows = nlohmann::json::array();
    for (const auto& p : series.entries()) {
        rows.push_back({{"t", p.t}, {"mean", p.mean}, {"variance", p.variance}});
    }
    return rows;
}

/// Rows t,x,p for every t and every x in [-steps, steps] relative to the start site.
inline std::string distribution_csv(const Trajectory& traj) {
    std::string out = "t,x,p\n";
    const int steps = traj.params.steps;
    for (std::size_t t = 0; t < traj.marginals.size(); ++t) {
        for (int x = -steps; x <= steps; ++x) {
            out += std::to_string(t) + ',' + std::to_string(x) + ',' +
                   format_number(traj.marginals[t].at_offset(x)) + '\n';
        }
    }
    return out;
}

inline nlohmann::json distribution_json(const Trajectory& traj) {
    auto rows = nlohmann::json::array();
    const int steps = traj.params.steps;
    for (std::size_t t = 0; t < traj.marginals.size(); ++t) {
        for (int x = -steps; x <= steps; ++x) {
            rows.push_back({{"t", t}, {"x", x}, {"p", traj.marginals[t].at_offset(x)}});
        }
    }
    return rows;
}

inline std::string sweep_csv(const SweepSurface& s) {
    std::string out = "theta_m,theta_b,final_variance\n";
    for (std::size_t i = 0; i < s.theta_m.size(); ++i) {
        for (std::size_t j = 0; j < s.theta_b.size(); ++j) {
            out += format_number(s.theta_m[i]) + ',' + format_number(s.theta_b[j]) + ',' +
                   format_number(s.at(i, j)) + '\n';
        }
    }
    return out;
}

inline nlohmann::json sweep_json(const SweepSurface& s) {
    auto rows = nlohmann::json::array();
    for (std::size_t i = 0; i < s.theta_m.size(); ++i) {
        for (std::size_t j = 0; j < s.theta_b.size(); ++j) {
            rows.push_back({{"theta_m", s.theta_m[i]}, {"theta_b", s.theta_b[j]}, {"final_variance", s.at(i, j)}});
        }
    }
    return rows;
}

inline std::string beta_csv(const std::vector<BetaPoint>& points) {
    std::string out = "g,beta,r_squared\n";
    for (const auto& p : points) {
        out += format_number(p.g) + ',' + format_number(p.beta) + ',' + format_number(p.r_squared) + '\n';
    }
    return out;
}

inline nlohmann::json beta_json(const std::vector<BetaPoint>& points) {
    auto rows = nlohmann::json::array();
    for (const auto& p : points) {
        rows.push_back({{"g", p.g}, {"beta", p.beta}, {"r_squared", p.r_squared}});
    }
    return rows;
}

/// Rows theta_b,beta,r_squared; degenerate series print nan.
inline std::string back_action_beta_csv(const std::vector<BackActionBeta>& points) {
    std::string out = "theta_b,beta,r_squared\n";
    for (const auto& p : points) {
        out += format_number(p.theta_b) + ',' + (p.fit ? format_number(p.fit->beta) : "nan") + ',' +
               (p.fit ? format_number(p.fit->r_squared) : "nan") + '\n';
    }
    return out;
}

/// Parses a `t,mean,variance` CSV as written by series_csv.
inline VarianceSeries read_series_csv(std::string_view text) {
    std::istringstream in{std::string(text)};
    std::string line;
    int line_no = 0;
    bool header_seen = false;
    VarianceSeries series;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string_view row = trim(line);
        if (row.empty()) continue;
        if (!header_seen) {
            if (row != "t,mean,variance") {
                throw ParseError("line " + std::to_string(line_no) + ": expected header 't,mean,variance'");
            }
            header_seen = true;
            continue;
        }
        std::vector<std::string_view> fields;
        std::size_t start = 0;
        for (std::size_t comma; (comma = row.find(',', start)) != std::string_view::npos; start = comma + 1) {
            fields.push_back(row.substr(start, comma - start));
        }
        fields.push_back(row.substr(start));
        if (fields.size() != 3) {
            throw ParseError("line " + std::to_string(line_no) + ": expected 3 fields, got " +
                             std::to_string(fields.size()));
        }
        int t = 0;
        const auto tf = trim(fields[0]);
        const auto [end, ec] = std::from_chars(tf.data(), tf.data() + tf.size(), t);
        const auto mean = parse_real(fields[1]);
        const auto var = parse_real(fields[2]);
        if (tf.empty() || ec != std::errc{} || end != tf.data() + tf.size() || !mean || !var) {
            throw ParseError("line " + std::to_string(line_no) + ": malformed number");
        }
        try {
            series.push({t, *mean, *var});
        } catch (const std::invalid_argument& e) {
            throw ParseError("line " + std::to_string(line_no) + ": " + e.what());
        }
    }
    if (!header_seen) throw ParseError("empty series file");
    return series;
}

/// k0, k1, k2, beta and r_squared as one JSON object. beta and r_squared
/// are null when the series has no points for a log-log fit.
inline nlohmann::json fit_summary(const PolyFit& poly, const std::optional<PowerFit>& power) {
    nlohmann::json j{{"k0", poly.k0}, {"k1", poly.k1}, {"k2", poly.k2}};
    if (power) {
        j["beta"] = power->beta;
        j["r_squared"] = power->r_squared;
    } else {
        j["beta"] = nullptr;
        j["r_squared"] = nullptr;
    }
    return j;
}

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open '" + path + "' for reading");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline void write_file(const std::string& path, std::string_view content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open '" + path + "' for writing");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw IoError("failed writing '" + path + "'");
}

}  // namespace qsaw::io
