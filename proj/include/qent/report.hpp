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


#pragma once

#include <charconv>
#include <fstream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "qent/belldiag.hpp"
#include "qent/error.hpp"
#include "qent/montecarlo.hpp"

// CSV layout shared by every writer: '#'-prefixed "key: value" metadata lines,
// one header row, then data rows. Doubles use the shortest round-trip form and
// absent values are written as "nan".

namespace qent {

inline constexpr std::string_view kVersion = "0.1.0";

enum class Quantity { Mean, Dispersion, Derivative, Ratio };

inline std::string_view quantity_name(Quantity q) {
    switch (q) {
        case Quantity::Mean:
            return "mean";
        case Quantity::Dispersion:
            return "dispersion";
        case Quantity::Derivative:
            return "derivative";
        case Quantity::Ratio:
            return "ratio";
    }
    return "?";
}

inline Quantity parse_quantity(std::string_view text) {
    for (Quantity q : {Quantity::Mean, Quantity::Dispersion, Quantity::Derivative, Quantity::Ratio}) {
        if (quantity_name(q) == text) {
            return q;
        }
    }
    throw Error(ErrorCode::InvalidConfig, "unknown quantity '" + std::string(text) + "'");
}

inline std::string format_double(double x) {
    if (std::isnan(x)) {
        return "nan";
    }
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), x);
    return std::string(buf, res.ptr);
}

inline std::string format_optional(const std::optional<double> &x) {
    return x ? format_double(*x) : "nan";
}

inline std::string join_orders(const std::vector<EntropicOrder> &orders) {
    std::string out;
    for (std::size_t k = 0; k < orders.size(); ++k) {
        out += (k ? "," : "") + orders[k].label();
    }
    return out;
}

/// Metadata common to sampled datasets. The worker count is omitted since
/// output does not depend on it.
inline void write_run_metadata(std::ostream &out, std::string_view kind, const RunConfig &config) {
    out << "# qent " << kVersion << '\n';
    out << "# kind: " << kind << '\n';
    out << "# ensemble: " << ensemble_name(config.ensemble) << '\n';
    out << "# family: " << family_name(config.family) << '\n';
    out << "# q_list: " << join_orders(config.q_list) << '\n';
    out << "# seed: " << config.seed << '\n';
    out << "# samples: " << config.samples << '\n';
    out << "# bins: " << config.bins << '\n';
    out << "# units: q-entropies in nats, eof in bits, c2 dimensionless\n";
}

/// One row per state: c2, eof, then one column per channel.
inline void write_scatter_csv(std::ostream &out, const RunConfig &config, const std::vector<SampleRecord> &records) {
    write_run_metadata(out, "scatter", config);
    out << "c2,eof";
    for (const auto &ch : config.channels()) {
        out << ',' << ch.label();
    }
    out << '\n';
    for (const auto &r : records) {
        out << format_double(r.c_squared) << ',' << format_double(r.eof_bits);
        for (double v : r.values) {
            out << ',' << format_double(v);
        }
        out << '\n';
    }
}

inline void write_profile_csv(std::ostream &out, const RunConfig &config, Quantity quantity,
                              const ChannelProfile &profile) {
    write_run_metadata(out, "profile", config);
    out << "# quantity: " << quantity_name(quantity) << '\n';
    out << "# q: " << profile.channel.order.label() << '\n';
    out << "# channel: " << profile.channel.label() << '\n';
    out << "bin_center_c2,count,mean,dispersion,derivative,ratio,ratio_defined,low_confidence\n";
    for (const auto &row : profile.rows) {
        out << format_double(row.bin_center) << ',' << row.count << ',' << format_optional(row.mean) << ','
            << format_optional(row.dispersion) << ',' << format_optional(row.derivative) << ','
            << format_optional(row.ratio) << ',' << (row.ratio ? 1 : 0) << ',' << (row.low_confidence ? 1 : 0)
            << '\n';
    }
}

inline void write_bell_curve_csv(std::ostream &out, const std::vector<BellCurvePoint> &points) {
    out << "# qent " << kVersion << '\n';
    out << "# kind: bell-curve\n";
    out << "# units: r_infinity in nats, c2 dimensionless\n";
    out << "c2,r_infinity\n";
    for (const auto &p : points) {
        out << format_double(p.c_squared) << ',' << format_double(p.r_infinity) << '\n';
    }
}

/// "out.csv" with label "renyi_q2" becomes "out_renyi_q2.csv".
inline std::string labelled_path(const std::string &path, const std::string &label) {
    const auto slash = path.find_last_of('/');
    const auto dot = path.find_last_of('.');
    if (dot == std::string::npos || (slash != std::string::npos && dot < slash)) {
        return path + "_" + label;
    }
    return path.substr(0, dot) + "_" + label + path.substr(dot);
}

/// '#' metadata of a CSV written by this library, plus its header columns.
struct CsvDescription {
    std::string path;
    std::map<std::string, std::string> meta;
    std::vector<std::string> columns;
};

inline CsvDescription describe_csv(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw Error(ErrorCode::Io, "cannot open '" + path + "'");
    }
    CsvDescription d;
    d.path = path;
    std::string line;
    while (std::getline(in, line)) {
        if (line.rfind("# ", 0) == 0) {
            const auto colon = line.find(": ");
            if (colon != std::string::npos) {
                d.meta[line.substr(2, colon - 2)] = line.substr(colon + 2);
            }
            continue;
        }
        std::stringstream header(line);
        std::string col;
        while (std::getline(header, col, ',')) {
            d.columns.push_back(col);
        }
        break;
    }
    if (!d.meta.count("kind")) {
        throw Error(ErrorCode::Io, "'" + path + "' is not a qent dataset");
    }
    return d;
}

namespace detail {

inline std::string entropy_symbol(const std::string &family) {
    if (family == "tsallis") {
        return "S_q";
    }
    if (family == "tsallis-normalized") {
        return "S_q/S_q^{max}";
    }
    return "R_q";
}

inline std::string y_label(const CsvDescription &d) {
    const std::string sym = entropy_symbol(d.meta.count("family") ? d.meta.at("family") : "renyi");
    if (d.meta.at("kind") == "bell-curve") {
        return "R_inf";
    }
    if (d.meta.at("kind") == "scatter") {
        return sym;
    }
    const std::string q = d.meta.count("quantity") ? d.meta.at("quantity") : "mean";
    if (q == "dispersion") {
        return "sigma_q^{(R)}";
    }
    if (q == "derivative") {
        return "d<" + sym + ">/d(C^2)";
    }
    if (q == "ratio") {
        return "r";
    }
    return "<" + sym + ">";
}

inline int quantity_column(const std::string &quantity) {
    if (quantity == "dispersion") {
        return 4;
    }
    if (quantity == "derivative") {
        return 5;
    }
    if (quantity == "ratio") {
        return 6;
    }
    return 3;
}

inline std::string quoted(const std::string &s) {
    std::string out = "'";
    for (char c : s) {
        out += c == '\'' ? std::string("''") : std::string(1, c);
    }
    return out + "'";
}

}  // namespace detail

/// gnuplot script that draws the given datasets with the axes of the matching
/// figure. Profiles become solid lines, the analytic Bell-diagonal curve a
/// dashed line, and scatter files one point series per entropy column. The
/// script only reads the CSVs; it computes nothing.
inline std::string plot_script(const std::vector<std::string> &paths, const std::string &title = "") {
    if (paths.empty()) {
        throw Error(ErrorCode::InvalidConfig, "plot-script needs at least one dataset");
    }
    std::vector<CsvDescription> inputs;
    for (const auto &p : paths) {
        inputs.push_back(describe_csv(p));
    }
    const CsvDescription *axis_source = &inputs.front();
    for (const auto &d : inputs) {
        if (d.meta.at("kind") != "bell-curve") {
            axis_source = &d;
            break;
        }
    }

    std::ostringstream s;
    s << "# generated by qent " << kVersion << " plot-script\n";
    s << "set datafile separator ','\n";
    s << "set datafile commentschars '#'\n";
    s << "set datafile missing 'nan'\n";
    if (!title.empty()) {
        s << "set title " << detail::quoted(title) << '\n';
    }
    s << "set xlabel 'C^2'\n";
    s << "set ylabel " << detail::quoted(detail::y_label(*axis_source)) << '\n';
    s << "set xrange [0:1]\n";

    std::vector<std::string> series;
    for (const auto &d : inputs) {
        const std::string &kind = d.meta.at("kind");
        if (kind == "bell-curve") {
            series.push_back(detail::quoted(d.path) +
                             " every ::1 using 1:2 with lines dashtype 2 lw 2 title 'Bell-diagonal R_inf'");
        } else if (kind == "profile") {
            const int col = detail::quantity_column(d.meta.count("quantity") ? d.meta.at("quantity") : "mean");
            const std::string name = d.meta.count("channel") ? d.meta.at("channel") : d.path;
            series.push_back(detail::quoted(d.path) + " every ::1 using 1:" + std::to_string(col) +
                             " with lines lw 2 title " + detail::quoted(name));
        } else if (kind == "scatter") {
            for (std::size_t c = 2; c < d.columns.size(); ++c) {
                series.push_back(detail::quoted(d.path) + " every ::1 using 1:" + std::to_string(c + 1) +
                                 " with dots title " + detail::quoted(d.columns[c]));
            }
        } else {
            throw Error(ErrorCode::Io, "'" + d.path + "' has unknown kind '" + kind + "'");
        }
    }
    s << "plot ";
    for (std::size_t k = 0; k < series.size(); ++k) {
        s << (k ? ", \\\n     " : "") << series[k];
    }
    s << '\n';
    return s.str();
}

}  // namespace qent
