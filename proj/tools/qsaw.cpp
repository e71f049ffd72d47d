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

// qsaw: command-line driver for self-avoiding quantum walks and their
// classical counterpart. Subcommands: run, sweep, classical, fit.

#include <cstdio>
#include <exception>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "qsaw/analysis.hpp"
#include "qsaw/classical_saw.hpp"
#include "qsaw/evolve.hpp"
#include "qsaw/io.hpp"

namespace {

enum ExitCode : int {
    kOk = 0,
    kUsage = 1,
    kParse = 2,
    kDegenerate = 3,
    kIo = 4,
};

struct Options {
    std::string theta_c = "pi/4";
    std::string theta_b = "0";
    std::string theta_m = "0";
    int steps = 0;
    std::string input = "sym";
    std::string out;
    std::string format = "csv";
    double prune = 0.0;
    int grid_m = qsaw::kDefaultSweepPoints;
    int grid_b = qsaw::kDefaultSweepPoints;
    double g = 0.0;
    std::vector<double> g_grid;
    int reps = 1000;
    bool mod2 = false;
    std::uint64_t seed = 0;
    unsigned threads = 0;
    std::string fit_path;
    std::string beta_out;
    std::string beta_theta_m = "pi/2";
};

qsaw::io::Format parse_format(const std::string& s) {
    if (s == "csv") return qsaw::io::Format::csv;
    if (s == "json") return qsaw::io::Format::json;
    throw qsaw::io::ParseError("--format must be csv or json");
}

const char* extension(qsaw::io::Format f) { return f == qsaw::io::Format::csv ? "csv" : "json"; }

std::optional<qsaw::PowerFit> try_fit_power(const qsaw::VarianceSeries& series) {
    try {
        return qsaw::fit_power(series);
    } catch (const qsaw::DegenerateSeriesError&) {
        return std::nullopt;
    }
}

void write_series(const std::string& path, qsaw::io::Format f, const qsaw::VarianceSeries& s) {
    qsaw::io::write_file(path, f == qsaw::io::Format::csv ? qsaw::io::series_csv(s)
                                                          : qsaw::io::series_json(s).dump(2) + "\n");
}

int cmd_run(const Options& o) {
    if (o.steps < 1) {
        std::cerr << "qsaw run: --steps must be >= 1\n";
        return kUsage;
    }
    qsaw::WalkParams p;
    p.theta_c = qsaw::io::parse_angle(o.theta_c);
    p.theta_b = qsaw::io::parse_angle(o.theta_b);
    p.theta_m = qsaw::io::parse_angle(o.theta_m);
    p.steps = o.steps;
    p.input = qsaw::io::parse_input_kind(o.input);
    const auto fmt = parse_format(o.format);
    if (o.prune > 0.0) {
        std::cerr << "qsaw run: warning: --prune " << o.prune
                  << " discards amplitudes; probabilities will no longer sum to 1\n";
    }
    const qsaw::Trajectory traj = qsaw::run_walk(p, {.keep_states = false, .prune_threshold = o.prune});

    const std::string prefix = o.out.empty() ? "walk" : o.out;
    write_series(prefix + ".series." + extension(fmt), fmt, traj.variances);
    qsaw::io::write_file(prefix + ".dist." + extension(fmt),
                         fmt == qsaw::io::Format::csv ? qsaw::io::distribution_csv(traj)
                                                      : qsaw::io::distribution_json(traj).dump(2) + "\n");
    std::cout << qsaw::io::fit_summary(qsaw::fit_poly2(traj.variances), try_fit_power(traj.variances)).dump()
              << '\n';
    return kOk;
}

int cmd_sweep(const Options& o) {
    const int steps = o.steps == 0 ? qsaw::kDefaultSweepSteps : o.steps;
    if (steps < 1) {
        std::cerr << "qsaw sweep: --steps must be >= 1\n";
        return kUsage;
    }
    const auto fmt = parse_format(o.format);
    const qsaw::SweepSurface s =
        qsaw::sweep(qsaw::uniform_angle_grid(o.grid_m), qsaw::uniform_angle_grid(o.grid_b),
                    qsaw::io::parse_angle(o.theta_c), steps, qsaw::io::parse_input_kind(o.input), o.threads);
    const std::string path = o.out.empty() ? std::string("sweep.") + extension(fmt) : o.out;
    qsaw::io::write_file(path, fmt == qsaw::io::Format::csv ? qsaw::io::sweep_csv(s)
                                                            : qsaw::io::sweep_json(s).dump(2) + "\n");
    if (!o.beta_out.empty()) {
        const auto points =
            qsaw::beta_vs_theta_b(s.theta_b, qsaw::io::parse_angle(o.theta_c), qsaw::io::parse_angle(o.beta_theta_m),
                                  steps, qsaw::io::parse_input_kind(o.input), o.threads);
        qsaw::io::write_file(o.beta_out, qsaw::io::back_action_beta_csv(points));
    }
    return kOk;
}

int cmd_classical(const Options& o) {
    const int steps = o.steps == 0 ? 200 : o.steps;
    const auto fmt = parse_format(o.format);
    const qsaw::SawConfig config{o.g, steps, o.reps, o.mod2, o.seed};
    qsaw::validate(config);
    const std::string prefix = o.out.empty() ? "classical" : o.out;

    const qsaw::VarianceSeries series = qsaw::simulate_saw(config, o.threads);
    write_series(prefix + ".series." + extension(fmt), fmt, series);
    std::cout << qsaw::io::fit_summary(qsaw::fit_poly2(series), try_fit_power(series)).dump() << '\n';

    if (!o.g_grid.empty()) {
        const auto points = qsaw::beta_vs_g(o.g_grid, steps, o.reps, o.mod2, o.seed, o.threads);
        qsaw::io::write_file(prefix + ".beta." + extension(fmt),
                             fmt == qsaw::io::Format::csv ? qsaw::io::beta_csv(points)
                                                          : qsaw::io::beta_json(points).dump(2) + "\n");
    }
    return kOk;
}

int cmd_fit(const Options& o) {
    const qsaw::VarianceSeries series = qsaw::io::read_series_csv(qsaw::io::read_file(o.fit_path));
    if (series.size() < 3) {
        throw qsaw::io::ParseError("series needs at least 3 rows for the quadratic fit");
    }
    const qsaw::PowerFit power = qsaw::fit_power(series);
    std::cout << qsaw::io::fit_summary(qsaw::fit_poly2(series), power).dump() << '\n';
    return kOk;
}

void add_walk_flags(CLI::App* sub, Options& o) {
    sub->add_option("--theta-c", o.theta_c, "coin angle where the local qubit is 0 (radians or pi/N)")
        ->capture_default_str();
    sub->add_option("--input", o.input, "input state: sym or unsym")->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Self-avoiding quantum walk simulator"};
    app.require_subcommand(1);
    Options o;

    auto* run = app.add_subcommand("run", "evolve one walk and write its variance series and distribution");
    add_walk_flags(run, o);
    run->add_option("--theta-b", o.theta_b, "coin angle where the local qubit is 1")->capture_default_str();
    run->add_option("--theta-m", o.theta_m, "memory recording angle")->capture_default_str();
    run->add_option("--steps", o.steps, "number of steps")->required();
    run->add_option("--out", o.out, "output prefix; writes <out>.series.* and <out>.dist.*");
    run->add_option("--format", o.format, "csv or json")->capture_default_str();
    run->add_option("--prune", o.prune, "drop amplitudes with magnitude <= this (breaks normalisation)");

    auto* sw = app.add_subcommand("sweep", "final variance over a theta_m x theta_b grid on [0, pi/2]^2");
    add_walk_flags(sw, o);
    sw->add_option("--steps", o.steps, "number of steps (default 7)");
    sw->add_option("--grid-m", o.grid_m, "theta_m grid points")->capture_default_str();
    sw->add_option("--grid-b", o.grid_b, "theta_b grid points")->capture_default_str();
    sw->add_option("--out", o.out, "output file (default sweep.csv)");
    sw->add_option("--format", o.format, "csv or json")->capture_default_str();
    sw->add_option("--threads", o.threads, "worker threads (0 = hardware concurrency)");
    sw->add_option("--beta-out", o.beta_out, "also write theta_b,beta,r_squared over the theta_b grid");
    sw->add_option("--beta-theta-m", o.beta_theta_m, "theta_m used for --beta-out")->capture_default_str();

    auto* cl = app.add_subcommand("classical", "Monte Carlo classical self-avoiding random walk");
    cl->add_option("--g", o.g, "self-avoidance strength")->capture_default_str();
    cl->add_option("--g-grid", o.g_grid, "comma-separated g values; also writes <out>.beta.*")->delimiter(',');
    cl->add_option("--steps", o.steps, "steps per walk (default 200)");
    cl->add_option("--reps", o.reps, "replicates")->capture_default_str();
    cl->add_flag("--mod2", o.mod2, "weight by visit count modulo 2");
    cl->add_option("--seed", o.seed, "base seed")->capture_default_str();
    cl->add_option("--out", o.out, "output prefix (default classical)");
    cl->add_option("--format", o.format, "csv or json")->capture_default_str();
    cl->add_option("--threads", o.threads, "worker threads (0 = hardware concurrency)");

    auto* fit = app.add_subcommand("fit", "fit an existing t,mean,variance CSV");
    fit->add_option("series", o.fit_path, "series CSV file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kOk : kUsage;
    }

    try {
        if (run->parsed()) return cmd_run(o);
        if (sw->parsed()) return cmd_sweep(o);
        if (cl->parsed()) return cmd_classical(o);
        return cmd_fit(o);
    } catch (const qsaw::io::ParseError& e) {
        std::cerr << "qsaw: parse error: " << e.what() << '\n';
        return kParse;
    } catch (const qsaw::DegenerateSeriesError& e) {
        std::cerr << "qsaw: " << e.what() << '\n';
        return kDegenerate;
    } catch (const qsaw::io::IoError& e) {
        std::cerr << "qsaw: " << e.what() << '\n';
        return kIo;
    } catch (const std::exception& e) {
        std::cerr << "qsaw: " << e.what() << '\n';
        return kUsage;
    }
}
