// Copyright 2026 The qent Authors
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


// qent command-line front end: scatter, profile, bell-curve, plot-script.

#include <charconv>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "qent/qent.hpp"

namespace {

constexpr int kExitInvalidConfig = 2;
constexpr int kExitIo = 3;
constexpr int kExitNumerical = 4;

int exit_code_for(qent::ErrorCode code) {
    using qent::ErrorCode;
    switch (code) {
        case ErrorCode::Io:
            return kExitIo;
        case ErrorCode::NotHermitian:
        case ErrorCode::NoConvergence:
        case ErrorCode::NegativeEigenvalueBeyondTolerance:
        case ErrorCode::InvalidState:
        case ErrorCode::NonOrthonormalFrame:
            return kExitNumerical;
        default:
            return kExitInvalidConfig;
    }
}

struct Options {
    std::uint64_t samples = 200000;
    std::optional<std::uint64_t> seed;
    std::size_t bins = 50;
    std::size_t workers = qent::default_workers();
    std::vector<std::string> q = {"0.5", "1", "2", "10", "inf"};
    std::string family = "renyi";
    std::string quantity = "mean";
    std::string ensemble = "full";
    std::string out;
    std::optional<double> synthetic_constant;

    std::size_t points = 200;
    std::vector<double> c2;

    std::vector<std::string> inputs;
    std::string title;
};

std::uint64_t resolve_seed(const Options &o) {
    if (o.seed) {
        return *o.seed;
    }
    if (const char *env = std::getenv("QENT_SEED"); env && *env) {
        const std::string text(env);
        std::uint64_t value = 0;
        const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
        if (ec != std::errc() || ptr != text.data() + text.size()) {
            throw qent::Error(qent::ErrorCode::InvalidConfig, "QENT_SEED is not an unsigned integer: '" + text + "'");
        }
        return value;
    }
    return 0;
}

qent::RunConfig run_config(const Options &o) {
    qent::RunConfig c;
    c.samples = o.samples;
    c.seed = resolve_seed(o);
    c.bins = o.bins;
    c.workers = o.workers;
    c.family = qent::parse_family(o.family);
    c.ensemble = qent::parse_ensemble(o.ensemble);
    for (const auto &q : o.q) {
        c.q_list.push_back(qent::EntropicOrder::parse(q));
    }
    c.validate();
    return c;
}

/// Writes `body` to `path`, or to stdout when the path is empty.
template <class Body>
void emit(const std::string &path, Body &&body) {
    if (path.empty()) {
        body(std::cout);
        std::cout.flush();
        return;
    }
    std::ofstream file(path, std::ios::binary);
    if (!file) {
        throw qent::Error(qent::ErrorCode::Io, "cannot open '" + path + "' for writing");
    }
    body(file);
    file.flush();
    if (!file) {
        throw qent::Error(qent::ErrorCode::Io, "failed writing '" + path + "'");
    }
}

void cmd_scatter(const Options &o) {
    const auto config = run_config(o);
    const auto records = qent::sample_records(config);
    emit(o.out, [&](std::ostream &os) { qent::write_scatter_csv(os, config, records); });
}

/// Accumulator with every entropy value replaced by a constant; C^2 still
/// comes from the sampled states. Used to check the dispersion pipeline.
qent::BinnedAccumulator constant_accumulator(const qent::RunConfig &config, double value) {
    qent::BinnedAccumulator acc(config.bins, config.q_list.size());
    const std::vector<double> values(config.q_list.size(), value);
    for (const auto &r : qent::sample_records(config)) {
        acc.accumulate(r.c_squared, values);
    }
    return acc;
}

void cmd_profile(const Options &o) {
    const auto config = run_config(o);
    const auto quantity = qent::parse_quantity(o.quantity);
    const auto channels = config.channels();
    const auto acc = o.synthetic_constant ? constant_accumulator(config, *o.synthetic_constant)
                                          : qent::accumulate_run(config);
    const auto profiles = qent::profiles_from(acc, channels, true);
    for (std::size_t k = 0; k < profiles.size(); ++k) {
        std::string path = o.out;
        if (!path.empty() && profiles.size() > 1) {
            path = qent::labelled_path(path, profiles[k].channel.label());
        }
        if (path.empty() && k > 0) {
            std::cout << '\n';
        }
        emit(path, [&](std::ostream &os) { qent::write_profile_csv(os, config, quantity, profiles[k]); });
    }
}

void cmd_bell_curve(const Options &o) {
    const auto grid = o.c2.empty() ? qent::uniform_c2_grid(o.points) : o.c2;
    const auto points = qent::bell_r_infinity_curve(grid);
    emit(o.out, [&](std::ostream &os) { qent::write_bell_curve_csv(os, points); });
}

void cmd_plot_script(const Options &o) {
    const auto script = qent::plot_script(o.inputs, o.title);
    emit(o.out, [&](std::ostream &os) { os << script; });
}

void add_run_flags(CLI::App *cmd, Options &o) {
    cmd->add_option("--samples", o.samples, "Number of sampled states")->capture_default_str();
    cmd->add_option("--seed", o.seed, "Master seed (default: $QENT_SEED, else 0)");
    cmd->add_option("--bins", o.bins, "Number of C^2 bins")->capture_default_str();
    cmd->add_option("--workers", o.workers, "Worker threads")->capture_default_str();
    cmd->add_option("--q", o.q, "Entropic order; repeatable; accepts decimals, 1 and inf")
        ->take_all()
        ->capture_default_str();
    cmd->add_option("--family", o.family, "renyi | tsallis | tsallis-normalized")->capture_default_str();
    cmd->add_option("--ensemble", o.ensemble, "full | bell-diagonal")->capture_default_str();
    cmd->add_option("--out", o.out, "Output CSV path (default: stdout)");
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Monte Carlo statistics of q-entropies versus entanglement for two-qubit states"};
    app.set_version_flag("--version", std::string(qent::kVersion));
    app.require_subcommand(1);

    Options o;

    auto *scatter = app.add_subcommand("scatter", "One CSV row per sampled state");
    add_run_flags(scatter, o);

    auto *profile = app.add_subcommand("profile", "Binned mean, dispersion, derivative and ratio per q");
    add_run_flags(profile, o);
    profile->add_option("--quantity", o.quantity, "mean | dispersion | derivative | ratio")->capture_default_str();
    profile->add_option("--synthetic-constant", o.synthetic_constant,
                        "Replace every entropy value by this constant (pipeline check)")
        ->group("");

    auto *bell = app.add_subcommand("bell-curve", "Analytic R_inf(C^2) for Bell-diagonal states");
    bell->add_option("--points", o.points, "Uniform grid size, k/n for k = 1..n")->capture_default_str();
    bell->add_option("--c2", o.c2, "Explicit grid point; repeatable")->take_all();
    bell->add_option("--out", o.out, "Output CSV path (default: stdout)");

    auto *plot = app.add_subcommand("plot-script", "gnuplot script for existing CSVs");
    plot->add_option("inputs", o.inputs, "CSV files written by qent")->required();
    plot->add_option("--title", o.title, "Plot title");
    plot->add_option("--out", o.out, "Script path (default: stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp &e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        app.exit(e);
        return kExitInvalidConfig;
    }

    try {
        if (*scatter) {
            cmd_scatter(o);
        } else if (*profile) {
            cmd_profile(o);
        } else if (*bell) {
            cmd_bell_curve(o);
        } else if (*plot) {
            cmd_plot_script(o);
        }
    } catch (const qent::Error &e) {
        std::cerr << "qent: " << e.what() << '\n';
        return exit_code_for(e.code());
    } catch (const std::exception &e) {
        std::cerr << "qent: internal error: " << e.what() << '\n';
        return kExitNumerical;
    }
    return 0;
}
